"""Exception hierarchy shared by every layer.

Each class carries a stable ``code`` (its class name) so the HTTP layer and
the CLI can surface machine-readable errors without maintaining a parallel
enum.
"""
from __future__ import annotations


class PlatformError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- taxonomy loading / traversal ---


class ParseError(PlatformError):
    pass


class DuplicateId(PlatformError):
    def __init__(self, category_id: str):
        super().__init__(f"duplicate category id {category_id!r}")
        self.category_id = category_id


class DanglingChildReference(PlatformError):
    def __init__(self, child_id: str, referenced_by: str):
        super().__init__(f"{referenced_by!r} lists unknown child {child_id!r}")
        self.child_id = child_id
        self.referenced_by = referenced_by


class CycleDetected(PlatformError):
    def __init__(self, path: list[str]):
        super().__init__("cycle: " + " -> ".join(path))
        self.path = path


class UnknownCategory(PlatformError):
    def __init__(self, category_id: str):
        super().__init__(f"unknown category {category_id!r}")
        self.category_id = category_id


# --- search ---


class EmptyQuery(PlatformError):
    def __init__(self) -> None:
        super().__init__("query contains no searchable text")


# --- annotation sessions ---


class UnknownSound(PlatformError):
    def __init__(self, sound_id: str):
        super().__init__(f"unknown sound {sound_id!r}")
        self.sound_id = sound_id


class UnknownTask(PlatformError):
    def __init__(self, task_id: str):
        super().__init__(f"unknown task {task_id!r}")
        self.task_id = task_id


class UnknownRow(PlatformError):
    def __init__(self, row_id: str):
        super().__init__(f"unknown label row {row_id!r}")
        self.row_id = row_id


class TaskFinalized(PlatformError):
    def __init__(self, task_id: str):
        super().__init__(f"task {task_id!r} is submitted and immutable")
        self.task_id = task_id


class AbstractCategoryNotSelectable(PlatformError):
    def __init__(self, category_id: str):
        super().__init__(f"category {category_id!r} is abstract and not selectable as a label")
        self.category_id = category_id


class DuplicateSelection(PlatformError):
    def __init__(self, category_id: str):
        super().__init__(f"category {category_id!r} is already selected")
        self.category_id = category_id


class NotSelected(PlatformError):
    def __init__(self, category_id: str):
        super().__init__(f"category {category_id!r} is not selected")
        self.category_id = category_id


class EmptyProposalList(PlatformError):
    def __init__(self) -> None:
        super().__init__("a refinement task needs at least one proposed label")


class NotAChild(PlatformError):
    def __init__(self, target: str, current: str):
        super().__init__(f"{target!r} is not a child of {current!r}")
        self.target = target
        self.current = current


class NotASibling(PlatformError):
    def __init__(self, target: str, current: str):
        super().__init__(f"{target!r} is not a sibling of {current!r}")
        self.target = target
        self.current = current


class SiblingExplorationDisabled(PlatformError):
    def __init__(self) -> None:
        super().__init__("sibling exploration is disabled by configuration")


class NothingToUndo(PlatformError):
    def __init__(self, row_id: str):
        super().__init__(f"row {row_id!r} has no move to undo")
        self.row_id = row_id


class MissingVerdicts(PlatformError):
    def __init__(self, row_ids: list[str]):
        super().__init__("rows without a presence verdict: " + ", ".join(row_ids))
        self.row_ids = row_ids


class EffortGateNotMet(PlatformError):
    def __init__(self) -> None:
        super().__init__("metadata is released only after a completed playback or 30 s of work")


class PositionOutOfRange(PlatformError):
    def __init__(self, position_s: float, duration_s: float):
        super().__init__(f"position {position_s} s outside clip of {duration_s} s")
        self.position_s = position_s
        self.duration_s = duration_s


# --- store ---


class TaxonomyNotLoaded(PlatformError):
    def __init__(self) -> None:
        super().__init__("no ontology ingested into this database")


class MalformedRecord(PlatformError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class TaskNotSubmitted(PlatformError):
    def __init__(self, task_id: str):
        super().__init__(f"task {task_id!r} is not submitted yet")
        self.task_id = task_id
