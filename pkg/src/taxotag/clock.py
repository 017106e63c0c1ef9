"""Injectable time source plus RFC 3339 helpers.

All event timestamps flow through a Clock so scripted sessions and tests are
fully deterministic; only the CLI/serve entry points use SystemClock.
"""
from __future__ import annotations

from datetime import datetime, timedelta, timezone
from typing import Protocol


class Clock(Protocol):
    def now(self) -> datetime: ...


class SystemClock:
    def now(self) -> datetime:
        return datetime.now(timezone.utc)


class ManualClock:
    """Clock advanced explicitly by the caller."""

    def __init__(self, start: datetime | None = None):
        self._now = start or datetime(2020, 1, 1, tzinfo=timezone.utc)

    def now(self) -> datetime:
        return self._now

    def advance(self, seconds: float) -> None:
        self._now += timedelta(seconds=seconds)

    def set(self, moment: datetime) -> None:
        self._now = moment


def to_rfc3339(moment: datetime) -> str:
    """Canonical RFC 3339 rendering (UTC, trailing Z)."""
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    text = moment.astimezone(timezone.utc).isoformat()
    return text.replace("+00:00", "Z")


def from_rfc3339(text: str) -> datetime:
    # datetime.fromisoformat on 3.10 rejects the Z suffix
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    moment = datetime.fromisoformat(text)
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc)
