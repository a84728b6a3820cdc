"""HTTP facade over the exercise engine.

All grading happens here on the server; responses sent before a correct
submission never contain the answer key (the correct choice index, the
expected cell values, or the reference retrieval-update order). Learners
are identified by a plain name, as entered on the home screen.
"""

from __future__ import annotations

from datetime import datetime
from pathlib import Path
from random import Random
from typing import Callable

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from tracetutor.errors import ArrangementError, TraceFormatError
from tracetutor.exercises import (
    Exercise,
    expected_value_timeline,
    grade_fill_in,
    is_correct_choice,
)
from tracetutor.explore import feasible
from tracetutor.grading import grade_ordering
from tracetutor.layout import layout
from tracetutor.replay import Schedule, replay
from tracetutor.service.store import AttemptLog, ExerciseStore, build_session_stats
from tracetutor.trace import resolve_trace_lines


class SelectionAttempt(BaseModel):
    learner: str = Field(min_length=1)
    exercise_id: str
    choice_index: int


class FillInAttempt(BaseModel):
    learner: str = Field(min_length=1)
    exercise_id: str
    answers: dict[str, dict[str, int | None]]


class OrderingAttempt(BaseModel):
    learner: str = Field(min_length=1)
    exercise_id: str
    ordered_lines: list[str]


def _choice_rows(exercise: Exercise, lines: tuple[str, ...]) -> list[dict]:
    program = exercise.program
    resolved = resolve_trace_lines(list(lines), program)
    rows = []
    for row, (line, r) in enumerate(zip(lines, resolved), 1):
        statement = program.method(r.ref.method).body[r.ref.index]
        rows.append({
            "row": row,
            "thread": r.thread_name,
            "text": line.split("] ", 1)[1],
            "source_line": statement.source_line,
        })
    return rows


def _choice_layout(exercise: Exercise, choice_index: int) -> dict | None:
    """Box geometry for a choice, when its order is actually schedulable;
    rearrangements that break program order have no event tree."""
    program = exercise.program
    lines = exercise.choices[choice_index].lines
    resolved = resolve_trace_lines(list(lines), program)
    order = [(r.thread_name, r.ref) for r in resolved]
    if not feasible(program, order):
        return None
    schedule = Schedule(tuple(name for name, _ in order))
    return layout(replay(program, schedule).trace).to_dict()


def _scrambled_ordering_items(exercise: Exercise) -> list[str]:
    items = list(exercise.ordering_items)
    rng = Random(f"{exercise.id}:ordering")
    rng.shuffle(items)
    if items == list(exercise.ordering_items) and len(items) > 1:
        items.append(items.pop(0))
    return items


def _exercise_view(exercise: Exercise) -> dict:
    sheets = [expected_value_timeline(exercise.correct_execution, var)
              for var in exercise.tracked_vars]
    input_rows = sorted({row for sheet in sheets for row in sheet.rows})
    return {
        "id": exercise.id,
        "title": exercise.title,
        "program_source": exercise.program_source,
        "source_lines": list(exercise.program.source_lines),
        "given_output": list(exercise.given_output),
        "choices": [{"index": i, "lines": list(c.lines)}
                    for i, c in enumerate(exercise.choices)],
        "tracked_vars": list(exercise.tracked_vars),
        "fill_in": {"variables": list(exercise.tracked_vars), "rows": input_rows},
        "layout": layout(exercise.correct_execution.trace).to_dict(),
        "ordering_items": _scrambled_ordering_items(exercise),
    }


def create_app(data_dir: str | Path, log_path: str | Path, seed: int = 0,
               clock: Callable[[], datetime] | None = None) -> FastAPI:
    store = ExerciseStore(data_dir, seed=seed)
    log = AttemptLog(log_path, clock=clock)
    views = {eid: _exercise_view(store.get(eid)) for eid in store.ids()}

    app = FastAPI(title="tracetutor", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store
    app.state.log = log

    def _exercise_or_404(exercise_id: str) -> Exercise:
        exercise = store.get(exercise_id)
        if exercise is None:
            raise HTTPException(404, f"no exercise '{exercise_id}'")
        return exercise

    @app.get("/exercises")
    def list_exercises() -> dict:
        return {"exercises": [
            {"id": eid, "title": store.get(eid).title,
             "tasks": ["selection", "fillin", "ordering"]}
            for eid in store.ids()
        ]}

    @app.get("/exercises/{exercise_id}")
    def get_exercise(exercise_id: str, learner: str | None = None) -> dict:
        _exercise_or_404(exercise_id)
        if learner:
            log.log_start(learner, exercise_id)
        return views[exercise_id]

    @app.get("/exercises/{exercise_id}/replay")
    def replay_cursor(exercise_id: str, choice: int = Query(...),
                      cursor: int = 1,
                      dir: str | None = Query(None)) -> dict:
        exercise = _exercise_or_404(exercise_id)
        if not 0 <= choice < len(exercise.choices):
            raise HTTPException(400, "choice index out of range")
        rows = _choice_rows(exercise, exercise.choices[choice].lines)
        n = len(rows)
        if n == 0:
            raise HTTPException(400, "choice has no rows to replay")
        if dir is not None and dir not in ("forward", "backward"):
            raise HTTPException(400, "dir must be 'forward' or 'backward'")
        cursor = min(max(cursor, 1), n)
        if dir == "forward":
            cursor = min(cursor + 1, n)
        elif dir == "backward":
            cursor = max(cursor - 1, 1)
        row = rows[cursor - 1]
        return {"cursor": cursor, "trace_row": cursor,
                "source_line": row["source_line"], "thread": row["thread"],
                "text": row["text"]}

    @app.post("/attempts/selection")
    def submit_selection(attempt: SelectionAttempt) -> dict:
        exercise = _exercise_or_404(attempt.exercise_id)
        if not 0 <= attempt.choice_index < len(exercise.choices):
            raise HTTPException(400, "choice index out of range")
        correct = is_correct_choice(exercise, attempt.choice_index)
        record = log.log_attempt(
            attempt.learner, attempt.exercise_id, "selection",
            payload={"choice_index": attempt.choice_index},
            correct=correct, detail={})
        rows = _choice_rows(exercise, exercise.choices[attempt.choice_index].lines)
        return {
            "correct": correct,
            "attempt_number": record["attempt_number"],
            "must_retry": not correct,
            "next_unlocked": correct,
            "replay": {
                "choice_index": attempt.choice_index,
                "rows": rows,
                "layout": _choice_layout(exercise, attempt.choice_index),
                "initial": {"cursor": 1, "trace_row": 1,
                            "source_line": rows[0]["source_line"]},
                "step_url": (f"/exercises/{attempt.exercise_id}/replay"
                             f"?choice={attempt.choice_index}"),
            },
        }

    @app.post("/attempts/fillin")
    def submit_fill_in(attempt: FillInAttempt) -> dict:
        exercise = _exercise_or_404(attempt.exercise_id)
        unknown = set(attempt.answers) - set(exercise.tracked_vars)
        if unknown:
            raise HTTPException(400, f"not tracked variables: {sorted(unknown)}")
        results = {}
        completed = True
        for variable in exercise.tracked_vars:
            sheet = expected_value_timeline(exercise.correct_execution, variable)
            submitted = attempt.answers.get(variable, {})
            try:
                by_row = {int(row): value for row, value in submitted.items()}
            except ValueError:
                raise HTTPException(400, "answer rows must be integers")
            if not set(by_row) <= set(sheet.rows):
                raise HTTPException(400, f"unknown rows for '{variable}'")
            grade = grade_fill_in(sheet, by_row)
            completed = completed and grade.all_correct
            results[variable] = {
                "all_correct": grade.all_correct,
                "cells": [{"row": v.row, "submitted": v.submitted,
                           "correct": v.correct} for v in grade.verdicts],
                "hint_rows": list(grade.hint_rows),
            }
        record = log.log_attempt(
            attempt.learner, attempt.exercise_id, "fillin",
            payload={"answers": attempt.answers},
            correct=completed, detail={"completed": completed})
        return {
            "correct": completed,
            "completed": completed,
            "must_retry": not completed,
            "attempt_number": record["attempt_number"],
            "results": results,
        }

    @app.post("/attempts/ordering")
    def submit_ordering(attempt: OrderingAttempt) -> dict:
        exercise = _exercise_or_404(attempt.exercise_id)
        try:
            report = grade_ordering(exercise, attempt.ordered_lines)
        except (ArrangementError, TraceFormatError) as exc:
            raise HTTPException(400, str(exc))
        record = log.log_attempt(
            attempt.learner, attempt.exercise_id, "ordering",
            payload={"ordered_lines": attempt.ordered_lines},
            correct=report.errors == 0,
            detail={"errors": report.errors,
                    "accuracy": float(report.accuracy)})
        return {"report": report.to_dict(),
                "attempt_number": record["attempt_number"]}

    @app.get("/learners/{learner}/stats")
    def learner_stats(learner: str) -> dict:
        stats = [s.to_dict() for s in build_session_stats(log.records())
                 if s.learner == learner]
        return {"learner": learner, "stats": stats}

    return app
