from __future__ import annotations

import json
import os
import random
from pathlib import Path

import pytest

from taxotag.clock import ManualClock
from taxotag.session import SoundResource
from taxotag.taxonomy import Taxonomy, load_ontology

REPO_ROOT = Path(__file__).resolve().parent.parent

# The bundled ontology fixture has the full published scale and format; a
# different ontology document (e.g. the published file itself) can be swapped
# in through this environment variable.
ONTOLOGY_PATH = Path(os.environ.get("TAXOTAG_ONTOLOGY_PATH", REPO_ROOT / "fixtures" / "ontology.json"))
SOUNDS_PATH = REPO_ROOT / "fixtures" / "sounds.ndjson"
CANDIDATES_PATH = REPO_ROOT / "fixtures" / "candidates.ndjson"


def make_ontology(
    children: dict[str, list[str]],
    abstract: tuple[str, ...] = (),
    blacklist: tuple[str, ...] = (),
    descriptions: dict[str, str] | None = None,
) -> bytes:
    """Builds an ontology document where ids equal names, for readable tests."""
    descriptions = descriptions or {}
    records = []
    for name, kids in children.items():
        restrictions = []
        if name in abstract:
            restrictions.append("abstract")
        if name in blacklist:
            restrictions.append("blacklist")
        records.append(
            {
                "id": name,
                "name": name,
                "description": descriptions.get(name, ""),
                "citation_uri": "",
                "positive_examples": [],
                "child_ids": kids,
                "restrictions": restrictions,
            }
        )
    return json.dumps(records).encode("utf-8")


def make_sound(sound_id: str = "s1", duration_s: float = 30.0) -> SoundResource:
    return SoundResource(
        sound_id=sound_id,
        title=f"clip {sound_id}",
        audio_uri=f"/audio/{sound_id}.wav",
        duration_s=duration_s,
        description=f"a field recording called {sound_id}",
        tags=["field", sound_id],
    )


def make_move_dag(node_count: int = 50, seed: int = 50) -> bytes:
    """A layered multi-parent DAG fixture for refinement move fuzzing."""
    rng = random.Random(seed)
    layers: list[list[str]] = [["n00"]]
    produced = 1
    while produced < node_count:
        width = min(node_count - produced, rng.randint(6, 14))
        layer = [f"n{produced + i:02d}" for i in range(width)]
        layers.append(layer)
        produced += width
    children: dict[str, list[str]] = {f"n{i:02d}": [] for i in range(node_count)}
    for upper, lower in zip(layers, layers[1:]):
        for node in lower:
            for parent in rng.sample(upper, k=min(len(upper), rng.randint(1, 2))):
                children[parent].append(node)
    return make_ontology(children)


@pytest.fixture(scope="session")
def ontology_raw() -> bytes:
    return ONTOLOGY_PATH.read_bytes()


@pytest.fixture(scope="session")
def ontology_records(ontology_raw: bytes) -> list[dict]:
    return json.loads(ontology_raw)


@pytest.fixture(scope="session")
def full_taxonomy(ontology_raw: bytes) -> Taxonomy:
    return load_ontology(ontology_raw)


@pytest.fixture
def clock() -> ManualClock:
    return ManualClock()


TOY = {
    "root": ["a", "b", "c"],
    "a": ["x", "deep"],
    "b": ["x"],
    "c": [],
    "x": [],
    "deep": ["leaf"],
    "leaf": [],
}


@pytest.fixture
def toy_taxonomy() -> Taxonomy:
    return load_ontology(
        make_ontology(
            TOY,
            abstract=("root",),
            descriptions={"a": "first branch of the toy graph", "x": "a shared child"},
        )
    )
