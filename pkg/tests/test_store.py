from __future__ import annotations

import json

import pytest

from taxotag.clock import ManualClock
from taxotag.config import PlatformConfig
from taxotag.errors import (
    MalformedRecord,
    ParseError,
    TaskFinalized,
    TaskNotSubmitted,
    UnknownSound,
    UnknownTask,
)
from taxotag.session import (
    PROVENANCE_CANDIDATE,
    PROVENANCE_GENERATED,
    PROVENANCE_REFINED,
    AnnotationEngine,
    PresenceVerdict,
)
from taxotag.store import Store

from .conftest import TOY, make_ontology, make_sound


@pytest.fixture
def store(tmp_path):
    s = Store(tmp_path / "test.db")
    s.save_ontology(make_ontology(TOY))
    s.add_sound(make_sound("s1"))
    s.add_sound(make_sound("s2"))
    yield s
    s.close()


@pytest.fixture
def engine(store, clock):
    return AnnotationEngine(store.taxonomy, PlatformConfig(), clock)


def submit_generation(store, engine, clock, sound_id="s1", labels=("a", "b"), advance=60):
    task = engine.new_generation_task(store.get_sound(sound_id), "alice")
    store.save_task(task)
    for label in labels:
        engine.add_label(task, label)
    clock.advance(advance)
    annotations = engine.submit_generation(task)
    store.record_annotations(annotations)
    store.save_task(task)
    return task, annotations


def submit_refinement(store, engine, clock, sound_id="s2", advance=90, verdicts=None):
    task = engine.new_refinement_task(store.get_sound(sound_id), ["a", "b", "c"], "bob")
    store.save_task(task)
    verdicts = verdicts or [PresenceVerdict.PRESENT] * 3
    for row, verdict in zip(task.rows, verdicts):
        engine.set_presence(task, row.row_id, verdict)
    clock.advance(advance)
    annotations = engine.submit_refinement(task)
    store.record_annotations(annotations)
    store.save_task(task)
    return task, annotations


class TestOntologyPersistence:
    def test_persists_across_reopen(self, tmp_path):
        path = tmp_path / "p.db"
        first = Store(path)
        first.save_ontology(make_ontology(TOY))
        first.close()
        second = Store(path)
        assert second.taxonomy is not None
        assert set(second.taxonomy.categories) == set(TOY)
        second.close()

    def test_invalid_document_not_persisted(self, tmp_path):
        s = Store(tmp_path / "p.db")
        with pytest.raises(ParseError):
            s.save_ontology(b"[]")
        assert s.taxonomy is None
        s.close()

    def test_fresh_store_has_no_taxonomy(self, tmp_path):
        s = Store(tmp_path / "p.db")
        assert s.taxonomy is None
        s.close()


class TestSounds:
    def test_get_round_trip(self, store):
        sound = store.get_sound("s1")
        assert sound == make_sound("s1")

    def test_unknown_sound(self, store):
        with pytest.raises(UnknownSound):
            store.get_sound("nope")

    def test_import_partial_failure(self, store):
        lines = [
            json.dumps(make_sound("s3").to_dict()),
            "{ broken",
            json.dumps({"sound_id": "s4"}),  # no audio_uri
            json.dumps(make_sound("s5").to_dict()),
        ]
        report = store.import_sounds("\n".join(lines))
        assert report.imported == 2
        assert [i.line_no for i in report.issues] == [2, 3]
        assert all(i.code == "MalformedRecord" for i in report.issues)
        assert store.has_sound("s3") and store.has_sound("s5")

    def test_reimport_adds_nothing(self, store):
        text = json.dumps(make_sound("s3").to_dict())
        assert store.import_sounds(text).imported == 1
        assert store.import_sounds(text).imported == 0


class TestTasks:
    def test_round_trip_and_raw_doc(self, store, engine, clock):
        task = engine.new_generation_task(store.get_sound("s1"), "alice")
        engine.add_label(task, "x")
        store.save_task(task)
        loaded = store.get_task(task.task_id)
        assert loaded.to_dict() == task.to_dict()
        assert json.loads(store.raw_task_doc(task.task_id)) == task.to_dict()

    def test_unknown_task(self, store):
        with pytest.raises(UnknownTask):
            store.get_task("missing")

    def test_submitted_task_never_rewritten(self, store, engine, clock):
        task, _ = submit_generation(store, engine, clock)
        frozen = store.raw_task_doc(task.task_id)
        with pytest.raises(TaskFinalized):
            store.save_task(task)
        assert store.raw_task_doc(task.task_id) == frozen

    def test_open_task_can_be_updated(self, store, engine):
        task = engine.new_generation_task(store.get_sound("s1"), "alice")
        store.save_task(task)
        engine.add_label(task, "a")
        store.save_task(task)
        assert store.get_task(task.task_id).selected == ["a"]

    def test_list_task_ids_submitted_filter(self, store, engine, clock):
        open_task = engine.new_generation_task(store.get_sound("s1"), "alice")
        store.save_task(open_task)
        done_task, _ = submit_generation(store, engine, clock)
        all_ids = store.list_task_ids()
        submitted = store.list_task_ids(submitted_only=True)
        assert set(all_ids) == {open_task.task_id, done_task.task_id}
        assert submitted == [done_task.task_id]


CANDIDATES = "\n".join(
    [
        json.dumps({"sound_id": "s1", "category_id": "a", "source": "gen-v1"}),
        json.dumps({"sound_id": "s1", "category_id": "b", "source": "gen-v1"}),
        json.dumps({"sound_id": "s2", "category_id": "x", "source": "gen-v1"}),
    ]
)


class TestCandidateImport:
    def test_three_valid_records(self, store):
        report = store.import_candidates(CANDIDATES)
        assert report.imported == 3
        assert not report.issues
        stored = store.annotations({PROVENANCE_CANDIDATE})
        assert {(a.sound_id, a.category_id) for a in stored} == {
            ("s1", "a"),
            ("s1", "b"),
            ("s2", "x"),
        }

    def test_reimport_is_idempotent(self, store):
        store.import_candidates(CANDIDATES)
        before = store.export_dataset()
        report = store.import_candidates(CANDIDATES)
        assert report.imported == 0
        assert store.export_dataset() == before

    def test_bad_lines_reported_good_lines_committed(self, store):
        text = "\n".join(
            [
                json.dumps({"sound_id": "s1", "category_id": "a", "source": "v"}),
                json.dumps({"sound_id": "s1", "category_id": "ghost", "source": "v"}),
                json.dumps({"sound_id": "ghost", "category_id": "a", "source": "v"}),
                "not json at all",
                json.dumps({"category_id": "a", "source": "v"}),
                json.dumps({"sound_id": "s2", "category_id": "b", "source": "v"}),
            ]
        )
        report = store.import_candidates(text)
        assert report.imported == 2
        assert [(i.line_no, i.code) for i in report.issues] == [
            (2, "UnknownCategory"),
            (3, "UnknownSound"),
            (4, "MalformedRecord"),
            (5, "MalformedRecord"),
        ]

    def test_candidate_timestamps(self, store):
        store.import_candidates(CANDIDATES, clock_timestamp="2021-06-01T10:00:00Z")
        for annotation in store.annotations({PROVENANCE_CANDIDATE}):
            assert annotation.created_at.isoformat().startswith("2021-06-01")


class TestExport:
    def test_empty_store_empty_document(self, store):
        assert store.export_dataset() == ""

    def test_deterministic_bytes(self, store, engine, clock):
        store.import_candidates(CANDIDATES)
        submit_generation(store, engine, clock)
        assert store.export_dataset() == store.export_dataset()

    def test_field_order_per_line(self, store, engine, clock):
        store.import_candidates(CANDIDATES)
        submit_refinement(store, engine, clock)
        spec_order = [
            "sound_id",
            "category_id",
            "provenance",
            "original_category",
            "verdict",
            "annotator_id",
            "task_id",
            "created_at",
        ]
        for line in store.export_dataset().splitlines():
            keys = list(json.loads(line).keys())
            assert keys == [k for k in spec_order if k in keys]

    def test_provenance_filter(self, store, engine, clock):
        store.import_candidates(CANDIDATES)
        submit_generation(store, engine, clock)
        submit_refinement(store, engine, clock)
        refined_only = store.export_dataset({PROVENANCE_REFINED})
        assert refined_only
        for line in refined_only.splitlines():
            assert json.loads(line)["provenance"] == PROVENANCE_REFINED
        both = store.export_dataset({PROVENANCE_REFINED, PROVENANCE_GENERATED})
        assert len(both.splitlines()) == 5

    def test_round_trip_into_fresh_store(self, store, engine, clock, tmp_path):
        store.import_candidates(CANDIDATES)
        submit_generation(store, engine, clock)
        submit_refinement(store, engine, clock)
        exported = store.export_dataset()

        fresh = Store(tmp_path / "fresh.db")
        fresh.save_ontology(make_ontology(TOY))
        fresh.add_sound(make_sound("s1"))
        fresh.add_sound(make_sound("s2"))
        assert fresh.import_dataset(exported) == len(exported.splitlines())
        assert fresh.export_dataset() == exported
        fresh.close()

    def test_import_dataset_strict(self, store):
        with pytest.raises(MalformedRecord):
            store.import_dataset('{"sound_id": "s1"}\n')
        with pytest.raises(MalformedRecord):
            store.import_dataset("garbage\n")

    def test_durability_across_reopen(self, tmp_path, clock):
        path = tmp_path / "durable.db"
        s = Store(path)
        s.save_ontology(make_ontology(TOY))
        s.add_sound(make_sound("s1"))
        s.add_sound(make_sound("s2"))
        engine = AnnotationEngine(s.taxonomy, PlatformConfig(), clock)
        s.import_candidates(CANDIDATES)
        submit_generation(s, engine, clock)
        exported = s.export_dataset()
        s.close()
        reopened = Store(path)
        assert reopened.export_dataset() == exported
        reopened.close()


class TestStats:
    def test_duration_from_synthetic_clock(self, store, engine, clock):
        task, _ = submit_generation(store, engine, clock, advance=2100)
        (stats,) = store.compute_stats([task.task_id])
        assert stats.duration_s == 2100.0
        assert stats.kind == "generation"
        assert stats.annotator_id == "alice"
        assert stats.label_count == 2

    def test_verdict_counts(self, store, engine, clock):
        task = engine.new_refinement_task(store.get_sound("s2"), ["a", "b", "c"], "bob")
        engine.duplicate_row(task, "r1")
        store.save_task(task)
        for row_id, verdict in (
            ("r1", PresenceVerdict.PRESENT),
            ("r2", PresenceVerdict.PRESENT),
            ("r3", PresenceVerdict.NOT_PRESENT),
            ("r4", PresenceVerdict.PRESENT),
        ):
            engine.set_presence(task, row_id, verdict)
        annotations = engine.submit_refinement(task)
        store.record_annotations(annotations)
        store.save_task(task)
        (stats,) = store.compute_stats([task.task_id])
        assert stats.verdict_counts == {"present": 3, "not_present": 1, "unsure": 0}
        assert stats.label_count == 4

    def test_open_task_rejected(self, store, engine):
        task = engine.new_generation_task(store.get_sound("s1"), "alice")
        store.save_task(task)
        with pytest.raises(TaskNotSubmitted):
            store.compute_stats([task.task_id])

    def test_defaults_to_all_submitted(self, store, engine, clock):
        open_task = engine.new_generation_task(store.get_sound("s1"), "alice")
        store.save_task(open_task)
        submit_generation(store, engine, clock)
        submit_refinement(store, engine, clock)
        results = store.compute_stats()
        assert len(results) == 2
        assert {s.kind for s in results} == {"generation", "refinement"}
