"""HTTP facade, exercise store, attempt persistence, and the CLI."""

from tracetutor.service.app import create_app
from tracetutor.service.store import AttemptLog, ExerciseStore, SessionStats, build_session_stats

__all__ = ["create_app", "AttemptLog", "ExerciseStore", "SessionStats",
           "build_session_stats"]
