"""Release acceptance gate.

One test per shipping criterion. Each test prints a single
``[ACCEPTANCE] <name>: PASS (<evidence>)`` line so a log scrape of this
module gives the complete verdict. Oracles from tests.oracles are the
authority wherever a criterion demands independent validation.
"""
from __future__ import annotations

import json
import random
import string
import time

import pytest
from fastapi.testclient import TestClient

from taxotag.api import create_app
from taxotag.clock import ManualClock
from taxotag.errors import EffortGateNotMet, TaskFinalized
from taxotag.search import build_index, search, similarity, trigrams
from taxotag.session import AnnotationEngine, PresenceVerdict
from taxotag.store import Store
from taxotag.taxonomy import load_ontology

from .conftest import (
    CANDIDATES_PATH,
    ONTOLOGY_PATH,
    SOUNDS_PATH,
    TOY,
    make_move_dag,
    make_ontology,
    make_sound,
)
from .oracles import (
    oracle_jaccard,
    oracle_search,
    oracle_trigrams,
    oracle_validate_history,
)

EXPECTED_CATEGORY_COUNT = 632


def report(name: str, evidence: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS ({evidence})")


def test_ontology_scale() -> None:
    """The bundled ontology ingests in under a second with exactly 632
    categories, no dangling child references, and no cycles."""
    raw = ONTOLOGY_PATH.read_bytes()
    started = time.perf_counter()
    taxonomy = load_ontology(raw)
    elapsed = time.perf_counter() - started

    assert len(taxonomy) == EXPECTED_CATEGORY_COUNT
    assert elapsed < 1.0, f"ingest took {elapsed:.3f}s"

    # independent structural scan over the raw document
    records = json.loads(raw.decode("utf-8"))
    ids = {r["id"] for r in records}
    assert len(ids) == EXPECTED_CATEGORY_COUNT, "duplicate ids in source"
    dangling = [
        (r["id"], child)
        for r in records
        for child in r["child_ids"]
        if child not in ids
    ]
    assert dangling == []

    children_of = {r["id"]: list(r["child_ids"]) for r in records}
    WHITE, GRAY, BLACK = 0, 1, 2
    color = dict.fromkeys(ids, WHITE)
    for start in ids:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        color[start] = GRAY
        while stack:
            node, idx = stack[-1]
            if idx < len(children_of[node]):
                stack[-1] = (node, idx + 1)
                nxt = children_of[node][idx]
                assert color[nxt] != GRAY, f"cycle through {nxt}"
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                stack.pop()

    report(
        "ontology-scale",
        f"{len(taxonomy)} categories, 0 dangling, 0 cycles, {elapsed * 1000:.0f} ms",
    )


def test_similarity_equals_bruteforce_on_random_pairs() -> None:
    """1,000 randomized string pairs score identically under similarity()
    and an independently written brute-force trigram overlap."""
    rng = random.Random(0x51AB)
    alphabet = string.ascii_letters + string.digits + string.punctuation + "  \t" + "éüßñç日本"

    def random_text() -> str:
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))

    pairs = 1000
    for _ in range(pairs):
        a, b = random_text(), random_text()
        expected = oracle_jaccard(oracle_trigrams(a), oracle_trigrams(b))
        got = similarity(trigrams(a), trigrams(b))
        assert got == expected, f"{a!r} vs {b!r}: {got} != {expected}"

    report("similarity-oracle", f"{pairs} random pairs, exact equality")


def test_search_ranking_and_threshold() -> None:
    """On the full bundled index, 'guitar' puts the category named Guitar
    first at score 1.0, and no query ever returns a hit whose own score is
    at or below the threshold (results are never padded with children)."""
    taxonomy = load_ontology(ONTOLOGY_PATH.read_bytes())
    records = json.loads(ONTOLOGY_PATH.read_text(encoding="utf-8"))
    index = build_index(taxonomy)

    hits = search(index, "guitar")
    assert hits, "no hits for 'guitar'"
    top = taxonomy.get(hits[0].category_id)
    assert top.name == "Guitar"
    assert hits[0].score == 1.0

    threshold = 0.05
    queries = ["guitar", "gitar", "music", "dog", "bark", "noise", "strum", "bell"]
    checked = 0
    for query in queries:
        module_hits = search(index, query, threshold=threshold)
        expected = oracle_search(records, query, threshold=threshold)
        assert [
            (h.score, taxonomy.get(h.category_id).name, h.category_id) for h in module_hits
        ] == expected
        query_grams = trigrams(query)
        for hit in module_hits:
            category = taxonomy.get(hit.category_id)
            own = max(
                similarity(query_grams, trigrams(category.name)),
                0.5 * similarity(query_grams, trigrams(category.description)),
            )
            assert own > threshold, f"{category.name} padded into results for {query!r}"
            checked += 1

    report(
        "search-ranking",
        f"'guitar' -> Guitar @ 1.0; {checked} hits over {len(queries)} queries all above threshold",
    )


def test_refinement_reachability_fuzz() -> None:
    """10,000 randomized legal move sequences over a 50-node DAG: replaying
    every row's history reproduces current_category, and each recorded step
    is validated against an independent children()/siblings() scan."""
    raw = make_move_dag(50)
    records = json.loads(raw.decode("utf-8"))
    taxonomy = load_ontology(raw)
    clock = ManualClock()
    engine = AnnotationEngine(taxonomy, clock=clock)
    sound = make_sound("fuzz-sound")
    nodes = sorted(taxonomy.categories)
    verdicts = list(PresenceVerdict)
    rng = random.Random(0xDA6)

    sequences = 10_000
    moves_applied = 0
    rows_validated = 0
    for _ in range(sequences):
        task = engine.new_refinement_task(sound, [rng.choice(nodes)], "fuzzer")
        for _ in range(rng.randint(0, 10)):
            row = rng.choice(task.rows)
            options: list[tuple[str, str]] = []
            options.extend(("child", c) for c in taxonomy.children(row.current_category))
            options.extend(("sibling", s) for s in sorted(taxonomy.siblings(row.current_category)))
            if row.move_history and row.move_history[-1].kind.value != "duplicate_origin":
                options.append(("undo", ""))
            if len(task.rows) < 4:
                options.append(("duplicate", ""))
            if not options:
                break
            op, target = rng.choice(options)
            if op == "child":
                engine.refine_to_child(task, row.row_id, target)
            elif op == "sibling":
                engine.move_to_sibling(task, row.row_id, target)
            elif op == "undo":
                engine.undo_move(task, row.row_id)
            else:
                engine.duplicate_row(task, row.row_id)
            moves_applied += 1
        for row in task.rows:
            engine.set_presence(task, row.row_id, rng.choice(verdicts))
        annotations = engine.submit_refinement(task)

        assert len(annotations) == len(task.rows)
        for row, annotation in zip(task.rows, annotations):
            assert row.replay() == row.current_category
            assert annotation.category_id == row.current_category
            assert annotation.original_category == row.original_category
            final = oracle_validate_history(records, row.to_dict())
            assert final == annotation.category_id
            rows_validated += 1

    report(
        "refinement-reachability",
        f"{sequences} sequences, {moves_applied} moves, {rows_validated} rows validated, 0 violations",
    )


def test_finalization_immutability_fuzz(tmp_path) -> None:
    """Fuzzed post-submit operations: every mutation attempt on a submitted
    task raises TaskFinalized and the stored task document stays
    byte-identical."""
    store = Store(tmp_path / "final.db")
    store.save_ontology(make_ontology(TOY, abstract=("root",)))
    store.add_sound(make_sound("s1", duration_s=30.0))
    clock = ManualClock()
    engine = AnnotationEngine(store.require_taxonomy(), clock=clock)
    sound = store.get_sound("s1")
    rng = random.Random(0xF1A7)

    rounds = 150
    attempts = 0
    for round_no in range(rounds):
        if round_no % 2 == 0:
            task = engine.new_generation_task(sound, annotator_id="fuzzer")
            store.save_task(task)
            engine.add_label(task, "a")
            if rng.random() < 0.5:
                engine.add_label(task, "x")
            clock.advance(rng.randint(1, 90))
            annotations = engine.submit_generation(task)
            mutations = [
                lambda t=task: engine.add_label(t, "b"),
                lambda t=task: engine.remove_label(t, "a"),
                lambda t=task: engine.submit_generation(t),
            ]
        else:
            task = engine.new_refinement_task(sound, ["a", "b"], "fuzzer")
            store.save_task(task)
            engine.refine_to_child(task, "r1", rng.choice(["x", "deep"]))
            for row in task.rows:
                engine.set_presence(task, row.row_id, PresenceVerdict.PRESENT)
            clock.advance(rng.randint(1, 90))
            annotations = engine.submit_refinement(task)
            mutations = [
                lambda t=task: engine.refine_to_child(t, "r2", "x"),
                lambda t=task: engine.move_to_sibling(t, "r1", "b"),
                lambda t=task: engine.undo_move(t, "r1"),
                lambda t=task: engine.duplicate_row(t, "r1"),
                lambda t=task: engine.set_presence(t, "r1", PresenceVerdict.UNSURE),
                lambda t=task: engine.submit_refinement(t),
            ]
        store.record_annotations(annotations)
        store.save_task(task)
        frozen = store.raw_task_doc(task.task_id)

        mutations.extend(
            [
                lambda t=task: engine.record_playback(t, "completed", 1.0),
                lambda t=task: engine.request_metadata(t),
                lambda t=task: store.save_task(t),
            ]
        )
        rng.shuffle(mutations)
        for mutate in mutations:
            with pytest.raises(TaskFinalized):
                mutate()
            attempts += 1
        assert store.raw_task_doc(task.task_id) == frozen
    store.close()

    report(
        "finalization-immutability",
        f"{rounds} submitted tasks, {attempts} blocked mutations, stored bytes unchanged",
    )


def test_effort_gate_combinations() -> None:
    """Exhaustive over the four (playback completed, 30 s elapsed) states:
    metadata is released when either signal is present and only then."""
    taxonomy = load_ontology(make_ontology(TOY))
    outcomes = []
    for completed in (False, True):
        for elapsed in (False, True):
            clock = ManualClock()
            engine = AnnotationEngine(taxonomy, clock=clock)
            task = engine.new_generation_task(make_sound("s1", duration_s=45.0), annotator_id="x")
            clock.advance(30.0 if elapsed else 29.0)
            if completed:
                engine.record_playback(task, "completed", 45.0)
            expected = completed or elapsed
            assert engine.gate_satisfied(task) is expected
            if expected:
                metadata = engine.request_metadata(task)
                assert "description" in metadata
                assert task.metadata_revealed is True
            else:
                with pytest.raises(EffortGateNotMet):
                    engine.request_metadata(task)
                assert task.metadata_revealed is False
            outcomes.append((completed, elapsed, expected))

    assert [o[2] for o in outcomes] == [False, True, True, True]
    report("effort-gate", "4/4 gate combinations behave as required")


def test_export_import_export_round_trip(tmp_path) -> None:
    """Export of a store holding 100+ annotations of all three provenances,
    imported into a fresh store, re-exports byte-identically."""
    ontology = make_ontology(TOY, abstract=("root",))
    sound_ids = [f"s{i}" for i in range(1, 9)]

    def fresh(name: str) -> Store:
        s = Store(tmp_path / name)
        s.save_ontology(ontology)
        for sid in sound_ids:
            s.add_sound(make_sound(sid, duration_s=60.0))
        return s

    source = fresh("source.db")
    categories = ["a", "b", "c", "x", "deep", "leaf", "root"]
    candidate_lines = "".join(
        json.dumps({"sound_id": sid, "category_id": cat, "source": "gen-v1"}) + "\n"
        for sid in sound_ids
        for cat in categories
    )
    candidate_count = len(sound_ids) * len(categories)
    assert source.import_candidates(candidate_lines).imported == candidate_count

    clock = ManualClock()
    engine = AnnotationEngine(source.require_taxonomy(), clock=clock)
    generated = refined = 0
    for i, sid in enumerate(sound_ids):
        sound = source.get_sound(sid)

        gen = engine.new_generation_task(sound, annotator_id=f"annotator-{i % 2}")
        source.save_task(gen)
        for cat in ("a", "b", "c", "x", "leaf"):
            engine.add_label(gen, cat)
        clock.advance(31 + i)
        annotations = engine.submit_generation(gen)
        source.record_annotations(annotations)
        source.save_task(gen)
        generated += len(annotations)

        ref = engine.new_refinement_task(sound, ["a", "b"], f"annotator-{i % 2}")
        source.save_task(ref)
        engine.refine_to_child(ref, "r1", "x")
        engine.duplicate_row(ref, "r1")
        engine.refine_to_child(ref, "r3", "deep")
        for row_id, verdict in (
            ("r1", PresenceVerdict.PRESENT),
            ("r2", PresenceVerdict.NOT_PRESENT),
            ("r3", PresenceVerdict.UNSURE),
        ):
            engine.set_presence(ref, row_id, verdict)
        clock.advance(45 + i)
        annotations = engine.submit_refinement(ref)
        source.record_annotations(annotations)
        source.save_task(ref)
        refined += len(annotations)

    total = candidate_count + generated + refined
    assert total >= 100, f"fixture too small: {total}"

    first_export = source.export_dataset()
    assert first_export.count("\n") == total
    for provenance in ("candidate_automatic", "manual_generated", "manual_refined"):
        assert f'"{provenance}"' in first_export
    source.close()

    replica = fresh("replica.db")
    imported = replica.import_dataset(first_export)
    assert imported == total
    second_export = replica.export_dataset()
    replica.close()

    assert second_export == first_export

    report(
        "export-round-trip",
        f"{total} annotations ({candidate_count} candidate / {generated} generated"
        f" / {refined} refined), byte-identical",
    )


def test_scripted_workflow_replay(tmp_path) -> None:
    """A scripted client annotates 9 sounds by generation and 15 by
    refinement over HTTP; per-task durations computed from stored events
    match the synthetic clock advances exactly."""
    store = Store(tmp_path / "workflow.db")
    store.save_ontology(ONTOLOGY_PATH.read_bytes())
    sounds_report = store.import_sounds(SOUNDS_PATH.read_text(encoding="utf-8"))
    assert sounds_report.imported == 24 and not sounds_report.issues
    candidates_report = store.import_candidates(CANDIDATES_PATH.read_text(encoding="utf-8"))
    assert not candidates_report.issues

    clock = ManualClock()
    taxonomy = store.require_taxonomy()
    client = TestClient(create_app(store, clock=clock))

    label_pool = sorted(
        cid
        for cid, cat in taxonomy.categories.items()
        if not cat.is_abstract and not cat.is_blacklisted
    )
    sound_ids = [f"s{i:02d}" for i in range(1, 25)]
    generation_ids, refinement_ids = sound_ids[:9], sound_ids[9:]
    assert (len(generation_ids), len(refinement_ids)) == (9, 15)

    expected_durations: dict[str, float] = {}

    for i, sound_id in enumerate(generation_ids):
        created = client.post(
            "/tasks/generation", json={"sound_id": sound_id}, headers={"annotator_id": "scripted"}
        )
        assert created.status_code == 201
        task_id = created.json()["task_id"]
        for offset in range(1 + i % 3):
            added = client.post(
                f"/tasks/{task_id}/labels",
                json={"category_id": label_pool[(7 * i + offset) % len(label_pool)]},
            )
            assert added.status_code == 200
        duration = 23.0 + 7 * i
        clock.advance(duration)
        submitted = client.post(f"/tasks/{task_id}/submit")
        assert submitted.status_code == 200
        assert submitted.json()["task"]["state"] == "submitted"
        expected_durations[task_id] = duration

    verdict_cycle = ["present", "not_present", "unsure"]
    for i, sound_id in enumerate(refinement_ids):
        created = client.post(
            "/tasks/refinement", json={"sound_id": sound_id}, headers={"annotator_id": "scripted"}
        )
        assert created.status_code == 201
        task = created.json()
        task_id = task["task_id"]
        assert task["rows"], f"no candidate rows for {sound_id}"

        first = task["rows"][0]
        children = taxonomy.children(first["current_category"])
        if children:
            moved = client.post(f"/tasks/{task_id}/rows/{first['row_id']}/refine", json={"child": children[0]})
            assert moved.status_code == 200
        if i % 4 == 0:
            duplicated = client.post(f"/tasks/{task_id}/rows/{first['row_id']}/duplicate")
            assert duplicated.status_code == 200

        rows = client.get(f"/tasks/{task_id}").json()["rows"]
        for j, row in enumerate(rows):
            verdict = client.post(
                f"/tasks/{task_id}/rows/{row['row_id']}/verdict",
                json={"verdict": verdict_cycle[(i + j) % 3]},
            )
            assert verdict.status_code == 200
        duration = 40.0 + 11 * i
        clock.advance(duration)
        submitted = client.post(f"/tasks/{task_id}/submit")
        assert submitted.status_code == 200
        expected_durations[task_id] = duration

    assert len(expected_durations) == 24

    api_stats = {s["task_id"]: s for s in client.get("/stats").json()}
    store_stats = {s.task_id: s for s in store.compute_stats()}
    assert set(api_stats) == set(expected_durations) == set(store_stats)
    for task_id, duration in expected_durations.items():
        assert api_stats[task_id]["duration_s"] == duration
        assert store_stats[task_id].duration_s == duration
        assert api_stats[task_id]["annotator_id"] == "scripted"

    kinds = [s["kind"] for s in api_stats.values()]
    assert kinds.count("generation") == 9 and kinds.count("refinement") == 15
    store.close()

    report(
        "workflow-replay",
        "24 HTTP sessions (9 generation / 15 refinement), 24/24 exact durations",
    )
