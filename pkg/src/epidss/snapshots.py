"""Append-only decision snapshot log (newline-delimited JSON).

Every forecast/allocation/lockdown decision is recorded with its full
request, response, and the engine config in force, before the caller is
acknowledged. Replay re-executes a recorded request and reports any
divergence, naming the config fields and response paths that changed.
"""

from __future__ import annotations

import datetime as dt
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import StorageError

SNAPSHOT_KINDS = ("forecast", "allocation", "lockdown")


def canonical_json(obj) -> str:
    """The one JSON serialization used for responses and snapshots."""
    return json.dumps(obj, separators=(",", ":"), sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class Snapshot:
    timestamp: str
    kind: str
    request: dict
    response: dict
    config: dict

    def to_record(self) -> dict:
        return {
            "timestamp": self.timestamp,
            "kind": self.kind,
            "request": self.request,
            "response": self.response,
            "config": self.config,
        }

    @classmethod
    def from_record(cls, record: dict) -> "Snapshot":
        return cls(
            timestamp=record["timestamp"],
            kind=record["kind"],
            request=record["request"],
            response=record["response"],
            config=record["config"],
        )


class SnapshotStore:
    """Serialized appender over a JSONL file; fsync before acknowledging."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise StorageError(f"snapshot log {self.path} unwritable: {exc}") from exc

    def append(self, kind: str, request: dict, response: dict, config: dict) -> Snapshot:
        if kind not in SNAPSHOT_KINDS:
            raise ValueError(f"unknown snapshot kind {kind!r}")
        snapshot = Snapshot(
            timestamp=dt.datetime.now(dt.timezone.utc).isoformat(),
            kind=kind,
            request=request,
            response=response,
            config=config,
        )
        line = canonical_json(snapshot.to_record()) + "\n"
        with self._lock:
            try:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line)
                    fh.flush()
                    os.fsync(fh.fileno())
            except OSError as exc:
                raise StorageError(f"snapshot append failed: {exc}") from exc
        return snapshot

    def list(self) -> list[Snapshot]:
        snapshots = []
        with self._lock:
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        snapshots.append(Snapshot.from_record(json.loads(line)))
        return snapshots


def diff_paths(recorded, current, prefix="") -> list[str]:
    """Paths at which two JSON-like values differ (dot/bracket notation)."""
    if isinstance(recorded, dict) and isinstance(current, dict):
        paths = []
        for key in sorted(set(recorded) | set(current)):
            sub = f"{prefix}.{key}" if prefix else key
            if key not in recorded or key not in current:
                paths.append(sub)
            else:
                paths.extend(diff_paths(recorded[key], current[key], sub))
        return paths
    if isinstance(recorded, list) and isinstance(current, list):
        if len(recorded) != len(current):
            return [f"{prefix}.length" if prefix else "length"]
        paths = []
        for i, (a, b) in enumerate(zip(recorded, current)):
            paths.extend(diff_paths(a, b, f"{prefix}[{i}]"))
        return paths
    if recorded != current:
        return [prefix or "."]
    return []


@dataclass(frozen=True)
class ReplayResult:
    match: bool
    config_diff: tuple[str, ...]
    response_diff: tuple[str, ...]


def replay(snapshot: Snapshot, execute, current_config: dict) -> ReplayResult:
    """Re-run a snapshot's request through `execute` and diff the outcome.

    `execute(kind, request)` must return the response payload the service
    would produce now.
    """
    response = execute(snapshot.kind, snapshot.request)
    config_diff = tuple(diff_paths(snapshot.config, current_config))
    response_diff = tuple(diff_paths(snapshot.response, response))
    return ReplayResult(
        match=not response_diff,
        config_diff=config_diff,
        response_diff=response_diff,
    )
