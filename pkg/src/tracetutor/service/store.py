"""Exercise directory and the append-only attempt log.

Persistence is one JSON-lines file. Every record carries its own UTC
timestamp, so statistics are a pure function of the log's contents: a
fresh process replaying the file reconstructs them exactly. The log is the
only mutable resource in the service; appends are serialized through one
lock, reads work on immutable snapshots.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from tracetutor.errors import ExerciseFormatError
from tracetutor.exercises import Exercise, load_exercise

START = "start"
ATTEMPT = "attempt"
TASK_KINDS = ("selection", "fillin", "ordering")


def _default_clock() -> datetime:
    return datetime.now(timezone.utc)


class ExerciseStore:
    """Immutable collection of exercises loaded from a directory of JSON
    documents (``*.json``). Documents without choices get them generated
    with the store's seed."""

    def __init__(self, directory: str | Path, seed: int = 0):
        self.directory = Path(directory)
        self._exercises: dict[str, Exercise] = {}
        for path in sorted(self.directory.glob("*.json")):
            exercise = load_exercise(path, seed=seed)
            if exercise.id in self._exercises:
                raise ExerciseFormatError(
                    f"duplicate exercise id '{exercise.id}' in {path.name}")
            self._exercises[exercise.id] = exercise

    def ids(self) -> list[str]:
        return list(self._exercises)

    def get(self, exercise_id: str) -> Exercise | None:
        return self._exercises.get(exercise_id)

    def __len__(self) -> int:
        return len(self._exercises)


@dataclass(frozen=True)
class SessionStats:
    """One completed learning session: counts of answer submissions and the
    wall-clock span from first exercise fetch to fill-in completion."""

    learner: str
    exercise_id: str
    selection_attempts: int
    fillin_attempts: int
    learning_duration_seconds: float
    started_at: str
    completed_at: str

    def to_dict(self) -> dict:
        return {
            "learner": self.learner,
            "exercise_id": self.exercise_id,
            "selection_attempts": self.selection_attempts,
            "fillin_attempts": self.fillin_attempts,
            "learning_duration_seconds": self.learning_duration_seconds,
            "started_at": self.started_at,
            "completed_at": self.completed_at,
        }


class AttemptLog:
    """Append-only JSON-lines log of session starts and graded attempts."""

    def __init__(self, path: str | Path,
                 clock: Callable[[], datetime] | None = None):
        self.path = Path(path)
        self._clock = clock or _default_clock
        self._lock = threading.Lock()
        self._records: list[dict] = []
        self._attempt_counts: dict[tuple[str, str, str], int] = {}
        if self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._absorb(json.loads(line))

    def _absorb(self, record: dict) -> None:
        self._records.append(record)
        if record["kind"] == ATTEMPT:
            key = (record["learner"], record["exercise_id"], record["task"])
            self._attempt_counts[key] = record["attempt_number"]

    def _append(self, record: dict) -> dict:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
        self._records.append(record)
        return record

    def log_start(self, learner: str, exercise_id: str) -> dict:
        with self._lock:
            return self._append({
                "kind": START,
                "learner": learner,
                "exercise_id": exercise_id,
                "at": self._clock().isoformat(),
            })

    def log_attempt(self, learner: str, exercise_id: str, task: str,
                    payload: dict, correct: bool, detail: dict) -> dict:
        if task not in TASK_KINDS:
            raise ValueError(f"unknown task kind '{task}'")
        with self._lock:
            key = (learner, exercise_id, task)
            number = self._attempt_counts.get(key, 0) + 1
            record = self._append({
                "kind": ATTEMPT,
                "learner": learner,
                "exercise_id": exercise_id,
                "task": task,
                "attempt_number": number,
                "at": self._clock().isoformat(),
                "payload": payload,
                "verdict": {"correct": correct, **detail},
            })
            self._attempt_counts[key] = number
            return record

    def records(self) -> list[dict]:
        with self._lock:
            return list(self._records)


def build_session_stats(records: Iterable[dict]) -> list[SessionStats]:
    """Fold the log into completed sessions, in completion order.

    A session opens at a learner's first start (or first attempt, when they
    skipped the exercise screen) for an exercise and closes at the first
    all-correct fill-in attempt; later events open a fresh session. The
    ordering task is a separate test and never touches sessions.
    """
    open_sessions: dict[tuple[str, str], dict] = {}
    stats: list[SessionStats] = []
    for record in records:
        if record["kind"] == ATTEMPT and record["task"] == "ordering":
            continue
        key = (record["learner"], record["exercise_id"])
        session = open_sessions.get(key)
        if session is None:
            session = {"started_at": record["at"], "selection": 0, "fillin": 0}
            open_sessions[key] = session
        if record["kind"] != ATTEMPT:
            continue
        session[record["task"]] += 1
        if record["task"] == "fillin" and record["verdict"].get("completed"):
            started = datetime.fromisoformat(session["started_at"])
            completed = datetime.fromisoformat(record["at"])
            stats.append(SessionStats(
                learner=record["learner"],
                exercise_id=record["exercise_id"],
                selection_attempts=session["selection"],
                fillin_attempts=session["fillin"],
                learning_duration_seconds=(completed - started).total_seconds(),
                started_at=session["started_at"],
                completed_at=record["at"],
            ))
            del open_sessions[key]
    return stats
