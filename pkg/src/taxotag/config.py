"""Runtime configuration knobs shared by search, sessions, API and CLI."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class PlatformConfig:
    # refinement: sibling moves ship enabled but can be switched off wholesale
    sibling_moves_enabled: bool = True
    # generation: abstract categories are navigable but refused as final labels
    allow_abstract_labels: bool = False
    # search defaults; description matches count half as much as name matches
    description_weight: float = 0.5
    search_threshold: float = 0.05
    search_limit: int = 30
    # effort gate: seconds of elapsed work that substitute for a completed playback
    metadata_gate_seconds: float = 30.0
