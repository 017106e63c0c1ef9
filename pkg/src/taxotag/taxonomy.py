"""Rooted-DAG taxonomy: loading, validation and traversal.

The on-disk format is the published AudioSet ontology file: a JSON array of
records with ``id``, ``name``, ``description``, ``citation_uri``,
``positive_examples``, ``child_ids`` and ``restrictions``. Unknown fields are
ignored; missing optional fields default to empty. A category may have several
parents (the graph is a DAG, not a tree), so "where does this live" questions
return every root-to-node path.

A loaded Taxonomy is immutable and safe to share across threads.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    CycleDetected,
    DanglingChildReference,
    DuplicateId,
    ParseError,
    UnknownCategory,
)

ABSTRACT = "abstract"
BLACKLIST = "blacklist"
_KNOWN_RESTRICTIONS = {ABSTRACT, BLACKLIST}


@dataclass(frozen=True)
class Category:
    id: str
    name: str
    description: str = ""
    citation_uri: str = ""
    example_uris: tuple[str, ...] = ()
    child_ids: tuple[str, ...] = ()
    restrictions: frozenset[str] = frozenset()

    @property
    def is_abstract(self) -> bool:
        return ABSTRACT in self.restrictions

    @property
    def is_blacklisted(self) -> bool:
        return BLACKLIST in self.restrictions


@dataclass(frozen=True)
class Taxonomy:
    categories: dict[str, Category]
    parent_edges: dict[str, frozenset[str]]
    roots: tuple[str, ...]  # document order

    def __len__(self) -> int:
        return len(self.categories)

    def __contains__(self, category_id: str) -> bool:
        return category_id in self.categories

    def get(self, category_id: str) -> Category:
        try:
            return self.categories[category_id]
        except KeyError:
            raise UnknownCategory(category_id) from None

    def children(self, category_id: str) -> list[str]:
        """Child ids in source-document order."""
        return list(self.get(category_id).child_ids)

    def parents(self, category_id: str) -> set[str]:
        self.get(category_id)
        return set(self.parent_edges.get(category_id, frozenset()))

    def siblings(self, category_id: str) -> set[str]:
        """Union of every parent's children, minus the category itself."""
        out: set[str] = set()
        for parent in self.parents(category_id):
            out.update(self.categories[parent].child_ids)
        out.discard(category_id)
        return out

    def ancestor_paths(self, category_id: str) -> list[tuple[str, ...]]:
        """Every distinct root-to-category path, sorted lexicographically by ids."""
        self.get(category_id)
        paths: list[tuple[str, ...]] = []

        def climb(node: str, below: tuple[str, ...]) -> None:
            above = self.parent_edges.get(node, frozenset())
            if not above:
                paths.append((node, *below))
                return
            for parent in above:
                climb(parent, (node, *below))

        climb(category_id, ())
        paths.sort()
        return paths

    def descendants(self, category_id: str) -> set[str]:
        """Transitive closure of the child relation, excluding the category itself."""
        self.get(category_id)
        seen: set[str] = set()
        frontier = list(self.categories[category_id].child_ids)
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            frontier.extend(self.categories[node].child_ids)
        return seen

    def is_descendant(self, ancestor: str, node: str) -> bool:
        self.get(ancestor)
        self.get(node)
        return node in self.descendants(ancestor)


def _parse_record(raw: object, position: int) -> Category:
    if not isinstance(raw, dict):
        raise ParseError(f"record {position} is not an object")
    category_id = raw.get("id")
    if not isinstance(category_id, str) or not category_id:
        raise ParseError(f"record {position} has no usable 'id'")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError(f"record {category_id!r} has no usable 'name'")

    child_ids = raw.get("child_ids", [])
    if not isinstance(child_ids, list) or not all(isinstance(c, str) for c in child_ids):
        raise ParseError(f"record {category_id!r} has a malformed 'child_ids'")
    if len(set(child_ids)) != len(child_ids):
        raise ParseError(f"record {category_id!r} lists a child twice")
    if category_id in child_ids:
        raise ParseError(f"record {category_id!r} lists itself as a child")

    examples = raw.get("positive_examples", [])
    if not isinstance(examples, list) or not all(isinstance(e, str) for e in examples):
        raise ParseError(f"record {category_id!r} has malformed 'positive_examples'")

    restrictions = raw.get("restrictions", [])
    if not isinstance(restrictions, list) or not set(restrictions) <= _KNOWN_RESTRICTIONS:
        raise ParseError(f"record {category_id!r} has unknown 'restrictions'")

    return Category(
        id=category_id,
        name=name,
        description=str(raw.get("description", "") or ""),
        citation_uri=str(raw.get("citation_uri", "") or ""),
        example_uris=tuple(examples),
        child_ids=tuple(child_ids),
        restrictions=frozenset(restrictions),
    )


def _find_cycle(categories: dict[str, Category]) -> list[str] | None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(categories, WHITE)
    for start in categories:
        if color[start] != WHITE:
            continue
        # iterative DFS, keeping the grey path for the error message
        stack: list[tuple[str, int]] = [(start, 0)]
        path: list[str] = []
        while stack:
            node, child_pos = stack.pop()
            if child_pos == 0:
                color[node] = GREY
                path.append(node)
            kids = categories[node].child_ids
            if child_pos < len(kids):
                stack.append((node, child_pos + 1))
                nxt = kids[child_pos]
                if color[nxt] == GREY:
                    return path[path.index(nxt):] + [nxt]
                if color[nxt] == WHITE:
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                path.pop()
    return None


def load_ontology(raw: bytes | str) -> Taxonomy:
    """Parse and validate an ontology document into an immutable Taxonomy.

    Raises ParseError, DuplicateId, DanglingChildReference or CycleDetected;
    on success every structural invariant (unique ids, resolvable children,
    acyclicity, at least one root, derived parent edges) holds.
    """
    try:
        document = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, list):
        raise ParseError("ontology document must be a top-level array")

    categories: dict[str, Category] = {}
    for position, record in enumerate(document):
        category = _parse_record(record, position)
        if category.id in categories:
            raise DuplicateId(category.id)
        categories[category.id] = category

    parent_edges: dict[str, set[str]] = {}
    for category in categories.values():
        for child in category.child_ids:
            if child not in categories:
                raise DanglingChildReference(child, category.id)
            parent_edges.setdefault(child, set()).add(category.id)

    cycle = _find_cycle(categories)
    if cycle is not None:
        raise CycleDetected(cycle)

    if not categories:
        raise ParseError("ontology document is empty")
    # a non-empty acyclic graph always has at least one parentless node
    roots = tuple(cid for cid in categories if cid not in parent_edges)

    return Taxonomy(
        categories=categories,
        parent_edges={cid: frozenset(ps) for cid, ps in parent_edges.items()},
        roots=roots,
    )
