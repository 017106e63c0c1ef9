"""Audio annotation platform: a DAG taxonomy of sound categories, trigram
fuzzy search over it, and two human labeling workflows (label generation and
label refinement) backed by an embedded store and an HTTP API."""

from .clock import Clock, ManualClock, SystemClock, from_rfc3339, to_rfc3339
from .config import PlatformConfig
from .errors import PlatformError
from .search import SearchHit, SearchIndex, build_index, search, similarity, trigrams
from .session import (
    Annotation,
    AnnotationEngine,
    GenerationTask,
    LabelRow,
    PresenceVerdict,
    RefinementTask,
    SoundResource,
    Task,
)
from .store import ImportReport, Store, TaskStats
from .taxonomy import Category, Taxonomy, load_ontology

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "AnnotationEngine",
    "Category",
    "Clock",
    "GenerationTask",
    "ImportReport",
    "LabelRow",
    "ManualClock",
    "PlatformConfig",
    "PlatformError",
    "PresenceVerdict",
    "RefinementTask",
    "SearchHit",
    "SearchIndex",
    "SoundResource",
    "Store",
    "SystemClock",
    "Task",
    "TaskStats",
    "Taxonomy",
    "build_index",
    "from_rfc3339",
    "load_ontology",
    "search",
    "similarity",
    "to_rfc3339",
    "trigrams",
    "__version__",
]
