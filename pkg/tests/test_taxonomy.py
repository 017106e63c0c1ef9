from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taxotag.errors import (
    CycleDetected,
    DanglingChildReference,
    DuplicateId,
    ParseError,
    UnknownCategory,
)
from taxotag.taxonomy import load_ontology

from .conftest import make_ontology
from .oracles import (
    oracle_children,
    oracle_descendants,
    oracle_parents,
    oracle_path_count,
    oracle_paths,
    oracle_siblings,
)


class TestLoading:
    def test_minimal_document(self):
        tax = load_ontology(make_ontology({"only": []}))
        assert len(tax) == 1
        assert tax.roots == ("only",)
        assert tax.children("only") == []

    def test_counts_match_source_records(self, ontology_raw, ontology_records, full_taxonomy):
        assert len(full_taxonomy) == len(ontology_records)
        ids = {r["id"] for r in ontology_records}
        assert set(full_taxonomy.categories) == ids

    def test_dangling_child_reference(self):
        doc = make_ontology({"a": ["missing"]})
        with pytest.raises(DanglingChildReference) as err:
            load_ontology(doc)
        assert "missing" in str(err.value)

    def test_duplicate_id(self):
        records = json.loads(make_ontology({"a": []}))
        records.append(dict(records[0]))
        with pytest.raises(DuplicateId):
            load_ontology(json.dumps(records).encode())

    def test_cycle_detected_with_path(self):
        doc = make_ontology({"a": ["b"], "b": ["c"], "c": ["a"]})
        with pytest.raises(CycleDetected) as err:
            load_ontology(doc)
        message = str(err.value)
        assert "a" in message and "b" in message and "c" in message

    def test_self_child_rejected(self):
        with pytest.raises(ParseError):
            load_ontology(make_ontology({"a": ["a"]}))

    def test_duplicate_child_entry_rejected(self):
        doc = make_ontology({"a": ["b", "b"], "b": []})
        with pytest.raises(ParseError):
            load_ontology(doc)

    def test_empty_document_rejected(self):
        with pytest.raises(ParseError):
            load_ontology(b"[]")

    def test_non_array_rejected(self):
        with pytest.raises(ParseError):
            load_ontology(b'{"id": "a"}')

    def test_malformed_bytes_rejected(self):
        with pytest.raises(ParseError):
            load_ontology(b"not a document")

    def test_unknown_restriction_rejected(self):
        records = json.loads(make_ontology({"a": []}))
        records[0]["restrictions"] = ["shadowban"]
        with pytest.raises(ParseError):
            load_ontology(json.dumps(records).encode())

    def test_unknown_fields_ignored_and_optionals_default(self):
        records = [{"id": "a", "name": "A", "unrelated": {"x": 1}}]
        tax = load_ontology(json.dumps(records).encode())
        cat = tax.get("a")
        assert cat.description == ""
        assert cat.citation_uri == ""
        assert cat.example_uris == ()
        assert cat.child_ids == ()
        assert not cat.restrictions

    def test_determinism_across_loads(self, ontology_raw):
        first = load_ontology(ontology_raw)
        second = load_ontology(ontology_raw)
        assert first.roots == second.roots
        assert list(first.categories) == list(second.categories)
        for cid in first.categories:
            assert first.children(cid) == second.children(cid)


class TestTraversal:
    def test_children_of_leaf_empty(self, toy_taxonomy):
        assert toy_taxonomy.children("x") == []

    def test_children_match_source_record(self, ontology_records, full_taxonomy):
        guitar = next(r for r in ontology_records if r["name"] == "Guitar")
        assert full_taxonomy.children(guitar["id"]) == oracle_children(
            ontology_records, guitar["id"]
        )

    def test_children_order_preserved(self, ontology_records, full_taxonomy):
        for record in ontology_records[::7]:
            assert full_taxonomy.children(record["id"]) == record.get("child_ids", [])

    def test_unknown_category(self, toy_taxonomy):
        with pytest.raises(UnknownCategory):
            toy_taxonomy.children("nope")
        with pytest.raises(UnknownCategory):
            toy_taxonomy.parents("nope")
        with pytest.raises(UnknownCategory):
            toy_taxonomy.siblings("nope")
        with pytest.raises(UnknownCategory):
            toy_taxonomy.ancestor_paths("nope")
        with pytest.raises(UnknownCategory):
            toy_taxonomy.descendants("nope")

    def test_parents_of_root_empty(self, toy_taxonomy):
        assert toy_taxonomy.parents("root") == set()

    def test_parents_single(self, toy_taxonomy):
        assert toy_taxonomy.parents("c") == {"root"}

    def test_parents_multi_parent_full_scan(self, ontology_records, full_taxonomy):
        multi = [
            r["id"]
            for r in ontology_records
            if len(oracle_parents(ontology_records, r["id"])) > 1
        ]
        assert multi, "fixture ontology should contain multi-parent nodes"
        for cid in multi:
            assert full_taxonomy.parents(cid) == oracle_parents(ontology_records, cid)

    def test_siblings_of_root_empty(self, toy_taxonomy):
        assert toy_taxonomy.siblings("root") == set()

    def test_siblings_fixture(self, toy_taxonomy):
        assert toy_taxonomy.siblings("a") == {"b", "c"}

    def test_siblings_scan_equivalence(self, ontology_records, full_taxonomy):
        for record in ontology_records[::11]:
            assert full_taxonomy.siblings(record["id"]) == oracle_siblings(
                ontology_records, record["id"]
            )

    def test_sibling_symmetry(self, ontology_records, full_taxonomy):
        for record in ontology_records[::13]:
            cid = record["id"]
            for sibling in full_taxonomy.siblings(cid):
                assert cid in full_taxonomy.siblings(sibling)

    def test_ancestor_paths_of_root(self, toy_taxonomy):
        assert toy_taxonomy.ancestor_paths("root") == [("root",)]

    def test_ancestor_paths_two_routes(self, toy_taxonomy):
        assert toy_taxonomy.ancestor_paths("x") == [
            ("root", "a", "x"),
            ("root", "b", "x"),
        ]

    def test_ancestor_paths_lexicographic_and_sound(self, ontology_records, full_taxonomy):
        for record in ontology_records[::17]:
            paths = full_taxonomy.ancestor_paths(record["id"])
            assert paths == sorted(paths)
            for path in paths:
                assert path[0] in full_taxonomy.roots
                assert path[-1] == record["id"]
                for parent, child in zip(path, path[1:]):
                    assert child in full_taxonomy.children(parent)

    def test_path_count_matches_dfs_oracle(self, ontology_records, full_taxonomy):
        deepest = max(
            (r["id"] for r in ontology_records),
            key=lambda cid: oracle_path_count(ontology_records, cid),
        )
        assert len(full_taxonomy.ancestor_paths(deepest)) == oracle_path_count(
            ontology_records, deepest
        )
        sample = [r["id"] for r in ontology_records[::23]]
        for cid in sample:
            assert [list(p) for p in full_taxonomy.ancestor_paths(cid)] == oracle_paths(
                ontology_records, cid
            )

    def test_descendants_of_leaf_empty(self, toy_taxonomy):
        assert toy_taxonomy.descendants("leaf") == set()

    def test_descendants_fixture(self, toy_taxonomy):
        assert toy_taxonomy.descendants("a") == {"x", "deep", "leaf"}

    def test_descendants_closure_oracle(self, ontology_records, full_taxonomy):
        for root in full_taxonomy.roots:
            assert full_taxonomy.descendants(root) == oracle_descendants(ontology_records, root)

    def test_is_descendant_excludes_self(self, toy_taxonomy):
        assert not toy_taxonomy.is_descendant("x", "x")

    def test_is_descendant_fixture(self, toy_taxonomy):
        assert toy_taxonomy.is_descendant("root", "leaf")
        assert not toy_taxonomy.is_descendant("leaf", "root")

    def test_is_descendant_matches_closure(self, ontology_records, full_taxonomy):
        ids = [r["id"] for r in ontology_records]
        for ancestor in ids[::29]:
            closure = oracle_descendants(ontology_records, ancestor)
            for node in ids[::31]:
                assert full_taxonomy.is_descendant(ancestor, node) == (node in closure)

    def test_edge_inversion_full(self, full_taxonomy):
        for cid in full_taxonomy.categories:
            for child in full_taxonomy.children(cid):
                assert cid in full_taxonomy.parents(child)
            for parent in full_taxonomy.parents(cid):
                assert cid in full_taxonomy.children(parent)


# random DAGs: edges only point from lower to higher index, so the input is
# acyclic by construction and must always load
@st.composite
def random_dag(draw):
    size = draw(st.integers(min_value=1, max_value=12))
    names = [f"n{i}" for i in range(size)]
    children: dict[str, list[str]] = {name: [] for name in names}
    for i in range(size):
        for j in range(i + 1, size):
            if draw(st.booleans()):
                children[names[i]].append(names[j])
    return children


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(random_dag())
    def test_random_dags_load_with_inverted_edges(self, children):
        tax = load_ontology(make_ontology(children))
        for parent, kids in children.items():
            assert tax.children(parent) == kids
            for kid in kids:
                assert parent in tax.parents(kid)
        roots = {n for n, _ in children.items() if not any(n in k for k in children.values())}
        assert set(tax.roots) == roots

    @settings(max_examples=40, deadline=None)
    @given(random_dag(), st.data())
    def test_injected_back_edge_raises_cycle(self, children, data):
        chains = [(p, c) for p, kids in children.items() for c in kids]
        if not chains:
            return
        parent, child = data.draw(st.sampled_from(chains))
        mutated = {n: list(k) for n, k in children.items()}
        if parent not in mutated[child] and parent != child:
            mutated[child].append(parent)
            with pytest.raises(CycleDetected):
                load_ontology(make_ontology(mutated))
