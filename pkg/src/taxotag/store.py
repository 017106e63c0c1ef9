"""Durable persistence: one SQLite file holds the ontology document, sounds,
tasks and the append-only annotation log.

Mutations are serialized behind a lock (single writer, many readers); the
annotation table is append-only — corrections are new rows, never edits. The
candidate import commits valid lines and reports bad ones instead of failing
wholesale, since candidate files arrive in the hundreds of thousands of lines.
"""
from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .errors import (
    MalformedRecord,
    TaskFinalized,
    TaskNotSubmitted,
    TaxonomyNotLoaded,
    UnknownSound,
    UnknownTask,
)
from .session import (
    Annotation,
    PresenceVerdict,
    PROVENANCE_CANDIDATE,
    PROVENANCES,
    SoundResource,
    Task,
    task_from_dict,
)
from .taxonomy import Taxonomy, load_ontology

_SCHEMA = """
CREATE TABLE IF NOT EXISTS meta (
    key TEXT PRIMARY KEY,
    value BLOB NOT NULL
);
CREATE TABLE IF NOT EXISTS sounds (
    sound_id TEXT PRIMARY KEY,
    doc TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS tasks (
    task_id TEXT PRIMARY KEY,
    kind TEXT NOT NULL,
    annotator_id TEXT NOT NULL,
    created_at TEXT NOT NULL,
    submitted INTEGER NOT NULL DEFAULT 0,
    doc TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS annotations (
    seq INTEGER PRIMARY KEY AUTOINCREMENT,
    sound_id TEXT NOT NULL,
    category_id TEXT NOT NULL,
    provenance TEXT NOT NULL,
    original_category TEXT,
    verdict TEXT,
    annotator_id TEXT,
    task_id TEXT,
    created_at TEXT NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS idx_candidate_once
    ON annotations (sound_id, category_id) WHERE provenance = 'candidate_automatic';
CREATE INDEX IF NOT EXISTS idx_annotations_task ON annotations (task_id);
"""


@dataclass
class ImportIssue:
    line_no: int
    code: str
    message: str


@dataclass
class ImportReport:
    imported: int = 0
    issues: list[ImportIssue] = field(default_factory=list)


@dataclass
class TaskStats:
    task_id: str
    annotator_id: str
    kind: str
    duration_s: float
    label_count: int
    verdict_counts: dict[str, int]

    def to_dict(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "annotator_id": self.annotator_id,
            "kind": self.kind,
            "duration_s": self.duration_s,
            "label_count": self.label_count,
            "verdict_counts": dict(self.verdict_counts),
        }


def _annotation_row(a: Annotation) -> tuple:
    return (
        a.sound_id,
        a.category_id,
        a.provenance,
        a.original_category,
        a.verdict.value if a.verdict else None,
        a.annotator_id,
        a.task_id,
        a.to_dict()["created_at"],
    )


def _annotation_from_row(row: sqlite3.Row) -> Annotation:
    doc = {
        "sound_id": row["sound_id"],
        "category_id": row["category_id"],
        "provenance": row["provenance"],
        "created_at": row["created_at"],
    }
    for key in ("original_category", "verdict", "annotator_id", "task_id"):
        if row[key] is not None:
            doc[key] = row[key]
    return Annotation.from_dict(doc)


class Store:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)
        self._taxonomy: Taxonomy | None = None
        raw = self._meta("ontology")
        if raw is not None:
            self._taxonomy = load_ontology(raw)

    def close(self) -> None:
        self._conn.close()

    def _meta(self, key: str) -> bytes | None:
        with self._lock:
            row = self._conn.execute("SELECT value FROM meta WHERE key = ?", (key,)).fetchone()
        return None if row is None else row["value"]

    # --- taxonomy ---

    @property
    def taxonomy(self) -> Taxonomy | None:
        return self._taxonomy

    def require_taxonomy(self) -> Taxonomy:
        if self._taxonomy is None:
            raise TaxonomyNotLoaded()
        return self._taxonomy

    def save_ontology(self, raw: bytes) -> Taxonomy:
        """Validate and persist the ontology document (replacing any previous one)."""
        taxonomy = load_ontology(raw)
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO meta (key, value) VALUES ('ontology', ?) "
                "ON CONFLICT(key) DO UPDATE SET value = excluded.value",
                (raw,),
            )
        self._taxonomy = taxonomy
        return taxonomy

    # --- sounds ---

    def add_sound(self, sound: SoundResource) -> None:
        doc = json.dumps(sound.to_dict(), sort_keys=True)
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO sounds (sound_id, doc) VALUES (?, ?) "
                "ON CONFLICT(sound_id) DO UPDATE SET doc = excluded.doc",
                (sound.sound_id, doc),
            )

    def has_sound(self, sound_id: str) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM sounds WHERE sound_id = ?", (sound_id,)
            ).fetchone()
        return row is not None

    def get_sound(self, sound_id: str) -> SoundResource:
        with self._lock:
            row = self._conn.execute(
                "SELECT doc FROM sounds WHERE sound_id = ?", (sound_id,)
            ).fetchone()
        if row is None:
            raise UnknownSound(sound_id)
        return SoundResource.from_dict(json.loads(row["doc"]))

    def list_sounds(self) -> list[SoundResource]:
        with self._lock:
            rows = self._conn.execute("SELECT doc FROM sounds ORDER BY sound_id").fetchall()
        return [SoundResource.from_dict(json.loads(r["doc"])) for r in rows]

    def import_sounds(self, text: str) -> ImportReport:
        """NDJSON sound records; valid lines commit, bad lines are reported.

        Re-importing a sound refreshes its stored document but is not counted
        as an import, so a repeated run reports 0 added.
        """
        report = ImportReport()
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
                sound = SoundResource.from_dict(doc)
                if not sound.sound_id or not sound.audio_uri:
                    raise KeyError("sound_id/audio_uri")
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                report.issues.append(ImportIssue(line_no, "MalformedRecord", str(exc)))
                continue
            known = self.has_sound(sound.sound_id)
            self.add_sound(sound)
            if not known:
                report.imported += 1
        return report

    # --- tasks ---

    def save_task(self, task: Task) -> None:
        doc = json.dumps(task.to_dict(), sort_keys=True)
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT submitted FROM tasks WHERE task_id = ?", (task.task_id,)
            ).fetchone()
            if row is not None and row["submitted"]:
                raise TaskFinalized(task.task_id)
            self._conn.execute(
                "INSERT INTO tasks (task_id, kind, annotator_id, created_at, submitted, doc) "
                "VALUES (?, ?, ?, ?, ?, ?) "
                "ON CONFLICT(task_id) DO UPDATE SET submitted = excluded.submitted, doc = excluded.doc",
                (
                    task.task_id,
                    task.kind,
                    task.annotator_id,
                    task.to_dict()["created_at"],
                    int(not task.is_open),
                    doc,
                ),
            )

    def get_task(self, task_id: str) -> Task:
        with self._lock:
            row = self._conn.execute(
                "SELECT doc FROM tasks WHERE task_id = ?", (task_id,)
            ).fetchone()
        if row is None:
            raise UnknownTask(task_id)
        return task_from_dict(json.loads(row["doc"]))

    def raw_task_doc(self, task_id: str) -> str:
        """Stored byte-form of the task, for immutability checks."""
        with self._lock:
            row = self._conn.execute(
                "SELECT doc FROM tasks WHERE task_id = ?", (task_id,)
            ).fetchone()
        if row is None:
            raise UnknownTask(task_id)
        return row["doc"]

    def list_task_ids(self, submitted_only: bool = False) -> list[str]:
        query = "SELECT task_id FROM tasks"
        if submitted_only:
            query += " WHERE submitted = 1"
        query += " ORDER BY created_at, task_id"
        with self._lock:
            rows = self._conn.execute(query).fetchall()
        return [r["task_id"] for r in rows]

    # --- annotations ---

    def record_annotations(self, annotations: Iterable[Annotation]) -> int:
        taxonomy = self.require_taxonomy()
        count = 0
        with self._lock, self._conn:
            for a in annotations:
                if a.provenance not in PROVENANCES:
                    raise ValueError(f"unknown provenance {a.provenance!r}")
                if not self.has_sound(a.sound_id):
                    raise UnknownSound(a.sound_id)
                taxonomy.get(a.category_id)
                self._conn.execute(
                    "INSERT INTO annotations (sound_id, category_id, provenance, original_category,"
                    " verdict, annotator_id, task_id, created_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                    _annotation_row(a),
                )
                count += 1
        return count

    def annotations(self, provenances: set[str] | None = None) -> list[Annotation]:
        rows = self._annotation_rows(provenances)
        return [_annotation_from_row(r) for r in rows]

    def _annotation_rows(self, provenances: set[str] | None) -> list[sqlite3.Row]:
        query = (
            "SELECT * FROM annotations {where} "
            "ORDER BY sound_id, category_id, created_at, provenance, COALESCE(task_id, ''), seq"
        )
        params: tuple = ()
        if provenances is not None:
            marks = ",".join("?" for _ in provenances)
            query = query.format(where=f"WHERE provenance IN ({marks})")
            params = tuple(sorted(provenances))
        else:
            query = query.format(where="")
        with self._lock:
            return self._conn.execute(query, params).fetchall()

    def import_candidates(self, text: str, clock_timestamp: str | None = None) -> ImportReport:
        """Bulk-load automatically generated candidate labels.

        One JSON object per line: {"sound_id", "category_id", "source"?,
        "created_at"?}. Idempotent on (sound_id, category_id): re-importing
        the same file adds nothing. Valid lines commit even when others fail.
        """
        taxonomy = self.require_taxonomy()
        report = ImportReport()
        default_ts = clock_timestamp or "1970-01-01T00:00:00Z"
        with self._lock, self._conn:
            for line_no, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    doc = json.loads(line)
                    sound_id = doc["sound_id"]
                    category_id = doc["category_id"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    report.issues.append(ImportIssue(line_no, "MalformedRecord", str(exc)))
                    continue
                if not self.has_sound(sound_id):
                    report.issues.append(ImportIssue(line_no, "UnknownSound", f"unknown sound {sound_id!r}"))
                    continue
                if category_id not in taxonomy:
                    report.issues.append(
                        ImportIssue(line_no, "UnknownCategory", f"unknown category {category_id!r}")
                    )
                    continue
                cursor = self._conn.execute(
                    "INSERT INTO annotations (sound_id, category_id, provenance, annotator_id,"
                    " created_at) VALUES (?, ?, ?, ?, ?) "
                    "ON CONFLICT DO NOTHING",
                    (
                        sound_id,
                        category_id,
                        PROVENANCE_CANDIDATE,
                        doc.get("source"),
                        doc.get("created_at", default_ts),
                    ),
                )
                report.imported += cursor.rowcount
        return report

    def export_dataset(self, provenances: set[str] | None = None) -> str:
        """Newline-delimited JSON, one annotation per line, deterministic order."""
        lines = [
            json.dumps(_annotation_from_row(r).to_dict(), separators=(",", ":"))
            for r in self._annotation_rows(provenances)
        ]
        return "".join(line + "\n" for line in lines)

    def import_dataset(self, text: str) -> int:
        """Lossless restore of an export document (all provenances, strict)."""
        annotations = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                annotations.append(Annotation.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise MalformedRecord(line_no, str(exc)) from exc
        return self.record_annotations(annotations)

    # --- statistics ---

    def compute_stats(self, task_ids: list[str] | None = None) -> list[TaskStats]:
        """Per-task timing and label counts; tasks must be submitted."""
        if task_ids is None:
            task_ids = self.list_task_ids(submitted_only=True)
        out = []
        for task_id in task_ids:
            task = self.get_task(task_id)
            if task.is_open or task.submitted_at is None:
                raise TaskNotSubmitted(task_id)
            with self._lock:
                rows = self._conn.execute(
                    "SELECT verdict, COUNT(*) AS n FROM annotations WHERE task_id = ? GROUP BY verdict",
                    (task_id,),
                ).fetchall()
            label_count = sum(r["n"] for r in rows)
            verdict_counts = {v.value: 0 for v in PresenceVerdict}
            for r in rows:
                if r["verdict"] is not None:
                    verdict_counts[r["verdict"]] = r["n"]
            out.append(
                TaskStats(
                    task_id=task_id,
                    annotator_id=task.annotator_id,
                    kind=task.kind,
                    duration_s=(task.submitted_at - task.created_at).total_seconds(),
                    label_count=label_count,
                    verdict_counts=verdict_counts,
                )
            )
        return out
