"""Per-sound annotation workflows.

Two state machines, each owning one sound at a time:

* generation — search/browse the taxonomy and attach missing labels;
* refinement — take proposed labels as rows, iteratively specialize each one
  (children, optionally siblings), duplicate rows to split a proposal, and
  record a presence verdict per row before submitting.

Every event carries a timestamp from the injected Clock. Once submitted a
task is immutable: every mutating operation raises TaskFinalized.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any

from .clock import Clock, SystemClock, from_rfc3339, to_rfc3339
from .config import PlatformConfig
from .errors import (
    AbstractCategoryNotSelectable,
    DuplicateSelection,
    EffortGateNotMet,
    EmptyProposalList,
    MissingVerdicts,
    NotAChild,
    NotASibling,
    NothingToUndo,
    NotSelected,
    PositionOutOfRange,
    SiblingExplorationDisabled,
    TaskFinalized,
    UnknownRow,
)
from .taxonomy import Taxonomy

GENERATION = "generation"
REFINEMENT = "refinement"

OPEN = "open"
SUBMITTED = "submitted"


class PresenceVerdict(str, Enum):
    PRESENT = "present"
    NOT_PRESENT = "not_present"
    UNSURE = "unsure"


class MoveKind(str, Enum):
    TO_CHILD = "to_child"
    TO_SIBLING = "to_sibling"
    UNDO = "undo"  # audit-log only; undo_move pops rather than appends
    DUPLICATE_ORIGIN = "duplicate_origin"


PROVENANCE_CANDIDATE = "candidate_automatic"
PROVENANCE_GENERATED = "manual_generated"
PROVENANCE_REFINED = "manual_refined"
PROVENANCES = (PROVENANCE_CANDIDATE, PROVENANCE_GENERATED, PROVENANCE_REFINED)


@dataclass
class SoundResource:
    sound_id: str
    title: str
    audio_uri: str
    duration_s: float
    description: str = ""
    tags: list[str] = field(default_factory=list)
    spectrogram_uri: str | None = None

    def metadata(self) -> dict[str, Any]:
        return {"description": self.description, "tags": list(self.tags)}

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "sound_id": self.sound_id,
            "title": self.title,
            "audio_uri": self.audio_uri,
            "duration_s": self.duration_s,
            "metadata": self.metadata(),
        }
        if self.spectrogram_uri is not None:
            doc["spectrogram_uri"] = self.spectrogram_uri
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "SoundResource":
        meta = doc.get("metadata") or {}
        return cls(
            sound_id=doc["sound_id"],
            title=doc.get("title", ""),
            audio_uri=doc["audio_uri"],
            duration_s=float(doc.get("duration_s", 0.0)),
            description=meta.get("description", ""),
            tags=list(meta.get("tags", [])),
            spectrogram_uri=doc.get("spectrogram_uri"),
        )


@dataclass
class Event:
    kind: str
    at: datetime
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "at": to_rfc3339(self.at), "detail": self.detail}

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Event":
        return cls(kind=doc["kind"], at=from_rfc3339(doc["at"]), detail=doc.get("detail", {}))


@dataclass
class Move:
    kind: MoveKind
    from_id: str
    to_id: str
    at: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "from": self.from_id,
            "to": self.to_id,
            "at": to_rfc3339(self.at),
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Move":
        return cls(
            kind=MoveKind(doc["kind"]),
            from_id=doc["from"],
            to_id=doc["to"],
            at=from_rfc3339(doc["at"]),
        )


@dataclass
class LabelRow:
    row_id: str
    original_category: str
    current_category: str
    move_history: list[Move] = field(default_factory=list)
    verdict: PresenceVerdict | None = None

    def replay(self) -> str:
        """Category reached by applying move_history from the original."""
        current = self.original_category
        for move in self.move_history:
            if move.kind is MoveKind.DUPLICATE_ORIGIN:
                continue
            current = move.to_id
        return current

    def to_dict(self) -> dict[str, Any]:
        return {
            "row_id": self.row_id,
            "original_category": self.original_category,
            "current_category": self.current_category,
            "move_history": [m.to_dict() for m in self.move_history],
            "verdict": self.verdict.value if self.verdict else None,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "LabelRow":
        return cls(
            row_id=doc["row_id"],
            original_category=doc["original_category"],
            current_category=doc["current_category"],
            move_history=[Move.from_dict(m) for m in doc.get("move_history", [])],
            verdict=PresenceVerdict(doc["verdict"]) if doc.get("verdict") else None,
        )


@dataclass
class Annotation:
    sound_id: str
    category_id: str
    provenance: str
    created_at: datetime
    original_category: str | None = None
    verdict: PresenceVerdict | None = None
    annotator_id: str | None = None
    task_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "sound_id": self.sound_id,
            "category_id": self.category_id,
            "provenance": self.provenance,
        }
        if self.original_category is not None:
            doc["original_category"] = self.original_category
        if self.verdict is not None:
            doc["verdict"] = self.verdict.value
        if self.annotator_id is not None:
            doc["annotator_id"] = self.annotator_id
        if self.task_id is not None:
            doc["task_id"] = self.task_id
        doc["created_at"] = to_rfc3339(self.created_at)
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Annotation":
        return cls(
            sound_id=doc["sound_id"],
            category_id=doc["category_id"],
            provenance=doc["provenance"],
            created_at=from_rfc3339(doc["created_at"]),
            original_category=doc.get("original_category"),
            verdict=PresenceVerdict(doc["verdict"]) if doc.get("verdict") else None,
            annotator_id=doc.get("annotator_id"),
            task_id=doc.get("task_id"),
        )


@dataclass
class _TaskBase:
    task_id: str
    sound: SoundResource
    annotator_id: str
    created_at: datetime
    events: list[Event] = field(default_factory=list)
    state: str = OPEN
    submitted_at: datetime | None = None
    metadata_revealed: bool = False

    @property
    def is_open(self) -> bool:
        return self.state == OPEN

    def _base_dict(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "kind": self.kind,  # type: ignore[attr-defined]
            "sound": self.sound.to_dict(),
            "annotator_id": self.annotator_id,
            "created_at": to_rfc3339(self.created_at),
            "submitted_at": to_rfc3339(self.submitted_at) if self.submitted_at else None,
            "state": self.state,
            "metadata_revealed": self.metadata_revealed,
            "events": [e.to_dict() for e in self.events],
        }


@dataclass
class GenerationTask(_TaskBase):
    kind = GENERATION
    selected: list[str] = field(default_factory=list)  # insertion order, no duplicates

    def to_dict(self) -> dict[str, Any]:
        doc = self._base_dict()
        doc["selected"] = list(self.selected)
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "GenerationTask":
        task = cls(
            task_id=doc["task_id"],
            sound=SoundResource.from_dict(doc["sound"]),
            annotator_id=doc["annotator_id"],
            created_at=from_rfc3339(doc["created_at"]),
            state=doc["state"],
            metadata_revealed=doc.get("metadata_revealed", False),
            selected=list(doc.get("selected", [])),
        )
        task.submitted_at = from_rfc3339(doc["submitted_at"]) if doc.get("submitted_at") else None
        task.events = [Event.from_dict(e) for e in doc.get("events", [])]
        return task


@dataclass
class RefinementTask(_TaskBase):
    kind = REFINEMENT
    rows: list[LabelRow] = field(default_factory=list)
    _row_seq: int = 0

    def row(self, row_id: str) -> LabelRow:
        for row in self.rows:
            if row.row_id == row_id:
                return row
        raise UnknownRow(row_id)

    def to_dict(self) -> dict[str, Any]:
        doc = self._base_dict()
        doc["rows"] = [r.to_dict() for r in self.rows]
        doc["row_seq"] = self._row_seq
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "RefinementTask":
        task = cls(
            task_id=doc["task_id"],
            sound=SoundResource.from_dict(doc["sound"]),
            annotator_id=doc["annotator_id"],
            created_at=from_rfc3339(doc["created_at"]),
            state=doc["state"],
            metadata_revealed=doc.get("metadata_revealed", False),
            rows=[LabelRow.from_dict(r) for r in doc.get("rows", [])],
        )
        task._row_seq = doc.get("row_seq", len(task.rows))
        task.submitted_at = from_rfc3339(doc["submitted_at"]) if doc.get("submitted_at") else None
        task.events = [Event.from_dict(e) for e in doc.get("events", [])]
        return task


Task = GenerationTask | RefinementTask


def task_from_dict(doc: dict[str, Any]) -> Task:
    if doc.get("kind") == REFINEMENT:
        return RefinementTask.from_dict(doc)
    return GenerationTask.from_dict(doc)


class AnnotationEngine:
    """Applies workflow operations to tasks, validating every step against
    the taxonomy and the platform configuration."""

    def __init__(
        self,
        taxonomy: Taxonomy,
        config: PlatformConfig | None = None,
        clock: Clock | None = None,
    ):
        self.taxonomy = taxonomy
        self.config = config or PlatformConfig()
        self.clock = clock or SystemClock()

    # --- shared plumbing ---

    def _require_open(self, task: Task) -> None:
        if not task.is_open:
            raise TaskFinalized(task.task_id)

    def _log(self, task: Task, kind: str, **detail: Any) -> None:
        task.events.append(Event(kind=kind, at=self.clock.now(), detail=detail))

    def record_playback(self, task: Task, kind: str, position_s: float) -> Task:
        if kind not in ("started", "completed"):
            raise ValueError(f"playback kind must be 'started' or 'completed', got {kind!r}")
        self._require_open(task)
        if not 0.0 <= position_s <= task.sound.duration_s:
            raise PositionOutOfRange(position_s, task.sound.duration_s)
        self._log(task, f"playback_{kind}", position_s=position_s)
        return task

    def record_search(self, task: Task, query: str, hit_count: int) -> Task:
        self._require_open(task)
        self._log(task, "search", query=query, hit_count=hit_count)
        return task

    def gate_satisfied(self, task: Task) -> bool:
        """Effort gate: a completed playback was logged, or >= the configured
        seconds have elapsed since task creation."""
        if any(e.kind == "playback_completed" for e in task.events):
            return True
        elapsed = (self.clock.now() - task.created_at).total_seconds()
        return elapsed >= self.config.metadata_gate_seconds

    def request_metadata(self, task: Task) -> dict[str, Any]:
        self._require_open(task)
        if not self.gate_satisfied(task):
            raise EffortGateNotMet()
        task.metadata_revealed = True
        self._log(task, "metadata_revealed")
        return task.sound.metadata()

    # --- generation workflow ---

    def new_generation_task(self, sound: SoundResource, annotator_id: str) -> GenerationTask:
        task = GenerationTask(
            task_id=uuid.uuid4().hex,
            sound=sound,
            annotator_id=annotator_id,
            created_at=self.clock.now(),
        )
        self._log(task, "created")
        return task

    def add_label(self, task: GenerationTask, category_id: str) -> GenerationTask:
        self._require_open(task)
        category = self.taxonomy.get(category_id)
        if category.is_abstract and not self.config.allow_abstract_labels:
            raise AbstractCategoryNotSelectable(category_id)
        if category_id in task.selected:
            raise DuplicateSelection(category_id)
        task.selected.append(category_id)
        self._log(task, "select", category_id=category_id)
        return task

    def remove_label(self, task: GenerationTask, category_id: str) -> GenerationTask:
        self._require_open(task)
        if category_id not in task.selected:
            raise NotSelected(category_id)
        task.selected.remove(category_id)
        self._log(task, "deselect", category_id=category_id)
        return task

    def submit_generation(self, task: GenerationTask) -> list[Annotation]:
        self._require_open(task)
        now = self.clock.now()
        task.state = SUBMITTED
        task.submitted_at = now
        self._log(task, "submit", label_count=len(task.selected))
        return [
            Annotation(
                sound_id=task.sound.sound_id,
                category_id=category_id,
                provenance=PROVENANCE_GENERATED,
                created_at=now,
                annotator_id=task.annotator_id,
                task_id=task.task_id,
            )
            for category_id in task.selected
        ]

    # --- refinement workflow ---

    def new_refinement_task(
        self, sound: SoundResource, proposals: list[str], annotator_id: str
    ) -> RefinementTask:
        if not proposals:
            raise EmptyProposalList()
        for proposal in proposals:
            self.taxonomy.get(proposal)
        task = RefinementTask(
            task_id=uuid.uuid4().hex,
            sound=sound,
            annotator_id=annotator_id,
            created_at=self.clock.now(),
        )
        for proposal in proposals:
            task._row_seq += 1
            task.rows.append(
                LabelRow(
                    row_id=f"r{task._row_seq}",
                    original_category=proposal,
                    current_category=proposal,
                )
            )
        self._log(task, "created", proposals=list(proposals))
        return task

    def refine_to_child(self, task: RefinementTask, row_id: str, child: str) -> RefinementTask:
        self._require_open(task)
        row = task.row(row_id)
        self.taxonomy.get(child)
        if child not in self.taxonomy.children(row.current_category):
            raise NotAChild(child, row.current_category)
        row.move_history.append(
            Move(kind=MoveKind.TO_CHILD, from_id=row.current_category, to_id=child, at=self.clock.now())
        )
        row.current_category = child
        row.verdict = None  # a verdict applies to one category; moving invalidates it
        self._log(task, "refine_child", row_id=row_id, to=child)
        return task

    def move_to_sibling(self, task: RefinementTask, row_id: str, sibling: str) -> RefinementTask:
        self._require_open(task)
        if not self.config.sibling_moves_enabled:
            raise SiblingExplorationDisabled()
        row = task.row(row_id)
        self.taxonomy.get(sibling)
        if sibling not in self.taxonomy.siblings(row.current_category):
            raise NotASibling(sibling, row.current_category)
        row.move_history.append(
            Move(kind=MoveKind.TO_SIBLING, from_id=row.current_category, to_id=sibling, at=self.clock.now())
        )
        row.current_category = sibling
        row.verdict = None
        self._log(task, "move_sibling", row_id=row_id, to=sibling)
        return task

    def undo_move(self, task: RefinementTask, row_id: str) -> RefinementTask:
        self._require_open(task)
        row = task.row(row_id)
        # the duplicate_origin marker is bookkeeping, not a reversible move
        if not row.move_history or row.move_history[-1].kind is MoveKind.DUPLICATE_ORIGIN:
            raise NothingToUndo(row_id)
        move = row.move_history.pop()
        row.current_category = move.from_id
        row.verdict = None
        self._log(task, "undo", row_id=row_id, back_to=move.from_id)
        return task

    def duplicate_row(self, task: RefinementTask, row_id: str) -> RefinementTask:
        self._require_open(task)
        source = task.row(row_id)
        task._row_seq += 1
        copy = LabelRow(
            row_id=f"r{task._row_seq}",
            original_category=source.original_category,
            current_category=source.original_category,
            move_history=[
                Move(
                    kind=MoveKind.DUPLICATE_ORIGIN,
                    from_id=source.original_category,
                    to_id=source.original_category,
                    at=self.clock.now(),
                )
            ],
        )
        task.rows.append(copy)
        self._log(task, "duplicate", source_row=row_id, new_row=copy.row_id)
        return task

    def set_presence(self, task: RefinementTask, row_id: str, verdict: PresenceVerdict) -> RefinementTask:
        self._require_open(task)
        row = task.row(row_id)
        row.verdict = verdict
        self._log(task, "verdict", row_id=row_id, verdict=verdict.value)
        return task

    def submit_refinement(self, task: RefinementTask) -> list[Annotation]:
        self._require_open(task)
        missing = [row.row_id for row in task.rows if row.verdict is None]
        if missing:
            raise MissingVerdicts(missing)
        now = self.clock.now()
        task.state = SUBMITTED
        task.submitted_at = now
        self._log(task, "submit", label_count=len(task.rows))
        return [
            Annotation(
                sound_id=task.sound.sound_id,
                category_id=row.current_category,
                provenance=PROVENANCE_REFINED,
                created_at=now,
                original_category=row.original_category,
                verdict=row.verdict,
                annotator_id=task.annotator_id,
                task_id=task.task_id,
            )
            for row in task.rows
        ]
