"""Trigram fuzzy search over category names and descriptions.

Text is lowercased and split on anything that is not a letter or digit; each
token is padded with two leading spaces and one trailing space before the
3-character windows are taken (so short queries still prefix-match well).
Scores are set Jaccard over the trigram sets; a category's score is
``max(name_similarity, description_weight * description_similarity)``.

Matched categories are returned as-is: children of a match are never injected
into the result list (doing so buries the relevant rows under noise). An
experimental expansion path is kept for benchmarking only, behind
``_EXPAND_CHILDREN_EXPERIMENT``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptyQuery
from .taxonomy import Taxonomy

# benchmark-only: append children of matched categories to the results
_EXPAND_CHILDREN_EXPERIMENT = False

_SEPARATORS = re.compile(r"[\W_]+", re.UNICODE)

NAME = "name"
DESCRIPTION = "description"


def normalize(text: str) -> list[str]:
    """Lowercase word tokens; every non-letter/digit acts as a separator."""
    return [token for token in _SEPARATORS.split(text.lower()) if token]


def trigrams(text: str) -> set[str]:
    """Union of padded 3-grams over all normalized tokens of ``text``."""
    grams: set[str] = set()
    for token in normalize(text):
        padded = f"  {token} "
        grams.update(padded[i : i + 3] for i in range(len(padded) - 2))
    return grams


def similarity(a: set[str], b: set[str]) -> float:
    """Set Jaccard; 0.0 when both sides are empty."""
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


@dataclass(frozen=True)
class SearchHit:
    category_id: str
    score: float
    matched_field: str  # NAME or DESCRIPTION


@dataclass
class SearchIndex:
    name_grams: dict[str, set[str]]
    desc_grams: dict[str, set[str]]
    description_weight: float
    names: dict[str, str]
    # postings: gram -> category ids whose name/description contains it
    _name_postings: dict[str, list[str]] = field(default_factory=dict, repr=False)
    _desc_postings: dict[str, list[str]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for grams, postings in (
            (self.name_grams, self._name_postings),
            (self.desc_grams, self._desc_postings),
        ):
            for category_id, gram_set in grams.items():
                for gram in gram_set:
                    postings.setdefault(gram, []).append(category_id)

    def __len__(self) -> int:
        return len(self.name_grams)


def build_index(taxonomy: Taxonomy, description_weight: float = 0.5) -> SearchIndex:
    """Index every non-blacklisted category of ``taxonomy``."""
    if not 0.0 <= description_weight <= 1.0:
        raise ValueError(f"description_weight must be in [0, 1], got {description_weight}")
    name_grams: dict[str, set[str]] = {}
    desc_grams: dict[str, set[str]] = {}
    names: dict[str, str] = {}
    for category in taxonomy.categories.values():
        if category.is_blacklisted:
            continue
        name_grams[category.id] = trigrams(category.name)
        desc_grams[category.id] = trigrams(category.description)
        names[category.id] = category.name
    return SearchIndex(
        name_grams=name_grams,
        desc_grams=desc_grams,
        description_weight=description_weight,
        names=names,
    )


def _candidate_overlaps(query: set[str], postings: dict[str, list[str]]) -> Counter[str]:
    overlaps: Counter[str] = Counter()
    for gram in query:
        for category_id in postings.get(gram, ()):
            overlaps[category_id] += 1
    return overlaps


def search(
    index: SearchIndex,
    query: str,
    limit: int = 30,
    threshold: float = 0.05,
    _expand_children_with: Taxonomy | None = None,
) -> list[SearchHit]:
    """Ranked hits with score > threshold, best first, at most ``limit``.

    Ties are broken by category name ascending. Raises EmptyQuery when the
    query normalizes to nothing.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must be in [0, 1), got {threshold}")
    query_grams = trigrams(query)
    if not query_grams:
        raise EmptyQuery()

    scores: dict[str, tuple[float, str]] = {}
    for overlaps, grams, weight, fieldname in (
        (_candidate_overlaps(query_grams, index._name_postings), index.name_grams, 1.0, NAME),
        (
            _candidate_overlaps(query_grams, index._desc_postings),
            index.desc_grams,
            index.description_weight,
            DESCRIPTION,
        ),
    ):
        if weight == 0.0:
            continue
        for category_id, inter in overlaps.items():
            union = len(query_grams) + len(grams[category_id]) - inter
            score = weight * (inter / union)
            best = scores.get(category_id)
            if best is None or score > best[0]:
                scores[category_id] = (score, fieldname)

    hits = [
        SearchHit(category_id=cid, score=score, matched_field=fieldname)
        for cid, (score, fieldname) in scores.items()
        if score > threshold
    ]
    hits.sort(key=lambda h: (-h.score, index.names[h.category_id]))

    if _EXPAND_CHILDREN_EXPERIMENT and _expand_children_with is not None:
        hits = _expand_with_children(hits, index, _expand_children_with)

    return hits[:limit]


def _expand_with_children(
    hits: list[SearchHit], index: SearchIndex, taxonomy: Taxonomy
) -> list[SearchHit]:
    # discarded from the product: swamps the list and hides the relevant rows
    seen = {h.category_id for h in hits}
    expanded = list(hits)
    for hit in hits:
        for child in taxonomy.children(hit.category_id):
            if child not in seen and child in index.names:
                seen.add(child)
                expanded.append(SearchHit(category_id=child, score=hit.score, matched_field=hit.matched_field))
    return expanded
