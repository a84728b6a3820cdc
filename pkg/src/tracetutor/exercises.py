"""Exercises: trace-selection choices and variable-value fill-in sheets.

An exercise pairs a program and one of its outputs with several candidate
traces, exactly one of which both respects the scheduling rules and
reproduces that output. After the selection task, the learner fills in the
tracked variable's value at every row of the correct trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from random import Random
from typing import Mapping

from tracetutor.errors import (
    DistractorBudgetError,
    ExerciseFormatError,
    TraceFormatError,
    UninitializedVariableError,
)
from tracetutor.explore import feasible, sample_schedule
from tracetutor.grading import output_reading_events, updating_events
from tracetutor.model import ProgramModel, StatementKind, plan_for
from tracetutor.parser import parse_program
from tracetutor.replay import ExecutionResult, Schedule, replay
from tracetutor.trace import Trace, parse_trace_text, render_trace_text

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ChoiceTrace:
    """One selection-question candidate: trace text lines, which are always
    a permutation of the correct trace's lines."""

    lines: tuple[str, ...]


@dataclass(frozen=True)
class Exercise:
    id: str
    title: str
    program_source: str
    given_output: tuple[str, ...]
    correct_schedule: Schedule
    choices: tuple[ChoiceTrace, ...]
    correct_choice_index: int
    tracked_vars: tuple[str, ...]
    ordering_items: tuple[str, ...]

    @cached_property
    def program(self) -> ProgramModel:
        return parse_program(self.program_source)

    @cached_property
    def correct_execution(self) -> ExecutionResult:
        return replay(self.program, self.correct_schedule)


@dataclass(frozen=True)
class FillInSheet:
    """Answer key for one variable: the expected value immediately after
    each row's event, for every row from the variable's initialization row
    to the end of the trace. ``update_rows`` are the rows whose events set
    the value (construction, ++, --); the checker returns them as hints."""

    variable: str
    cells: tuple[tuple[int, int], ...]
    update_rows: frozenset[int]

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(row for row, _ in self.cells)


@dataclass(frozen=True)
class CellVerdict:
    row: int
    submitted: int | None
    expected: int
    correct: bool


@dataclass(frozen=True)
class FillInGrade:
    verdicts: tuple[CellVerdict, ...]
    all_correct: bool
    hint_rows: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {"valid": self.ok, "issues": list(self.issues)}


def _order_is_correct(program: ProgramModel, lines: tuple[str, ...],
                      given_output: tuple[str, ...]) -> bool:
    order = parse_trace_text(list(lines), program)
    if not feasible(program, order):
        return False
    schedule = Schedule(tuple(thread for thread, _ in order))
    return replay(program, schedule).output_lines == given_output


def is_correct_choice(exercise: Exercise, choice_index: int) -> bool:
    """True when the choice's line order is schedulable and replaying it
    reproduces the exercise's given output exactly."""
    if not 0 <= choice_index < len(exercise.choices):
        raise IndexError(f"choice index {choice_index} out of range")
    return _order_is_correct(exercise.program,
                             exercise.choices[choice_index].lines,
                             exercise.given_output)


def validate_exercise(exercise: Exercise) -> ValidationReport:
    """Check every well-formedness rule, reporting all violations at once."""
    issues: list[str] = []
    try:
        program = exercise.program
    except Exception as exc:
        return ValidationReport((f"program source does not parse: {exc}",))

    try:
        execution = exercise.correct_execution
    except Exception as exc:
        return ValidationReport((f"correct schedule does not replay: {exc}",))
    if execution.output_lines != exercise.given_output:
        issues.append("replaying the correct schedule does not produce the "
                      "given output")

    correct_lines = tuple(render_trace_text(execution.trace))
    if not 0 <= exercise.correct_choice_index < len(exercise.choices):
        issues.append(f"correct choice index {exercise.correct_choice_index} "
                      "is out of range")
    for i, choice in enumerate(exercise.choices):
        if sorted(choice.lines) != sorted(correct_lines):
            issues.append(f"choice {i} is not a permutation of the correct "
                          "trace's lines")
    for i in range(len(exercise.choices)):
        for j in range(i + 1, len(exercise.choices)):
            if exercise.choices[i].lines == exercise.choices[j].lines:
                issues.append(f"choices {i} and {j} are identical")

    correct_indices = []
    for i in range(len(exercise.choices)):
        try:
            if is_correct_choice(exercise, i):
                correct_indices.append(i)
        except TraceFormatError:
            pass    # unresolvable lines cannot be the correct choice
    if len(correct_indices) != 1:
        issues.append("exactly one choice must be correct; correct choices: "
                      f"{correct_indices}")
    elif correct_indices[0] != exercise.correct_choice_index:
        issues.append(f"declared correct choice {exercise.correct_choice_index} "
                      f"is wrong; choice {correct_indices[0]} is the correct one")

    plan = plan_for(program)
    for variable in exercise.tracked_vars:
        if variable not in program.shared_names:
            issues.append(f"tracked variable '{variable}' is not a shared variable")
            continue
        ordinal = program.shared_names.index(variable)
        writers = sum(
            1 for tp in plan.threads
            if any(t.statement.kind in (StatementKind.INC_SHARED,
                                        StatementKind.DEC_SHARED)
                   and t.shared_slot == ordinal for t in tp.events))
        if writers < 2:
            issues.append(f"tracked variable '{variable}' is updated by "
                          f"{writers} thread(s); needs at least 2")
        if not any(output_reading_events(tp, ordinal) for tp in plan.threads):
            issues.append(f"tracked variable '{variable}' never reaches the "
                          "printed output")

    if tuple(exercise.ordering_items) != correct_lines:
        issues.append("ordering items must be the correct trace's lines in "
                      "recorded order")
    return ValidationReport(tuple(issues))


def expected_value_timeline(execution: ExecutionResult,
                            variable: str) -> FillInSheet:
    """The fill-in answer key: the variable's value immediately after each
    event, from its initialization row onward."""
    series = execution.timelines.get(variable)
    if series is None:
        raise UninitializedVariableError(
            f"'{variable}' is never initialized in this execution")
    program = execution.program
    plan = plan_for(program)
    ordinal = program.shared_names.index(variable)
    update_by_thread = [updating_events(tp, ordinal) for tp in plan.threads]
    counters = [0] * len(plan.threads)
    update_rows = set()
    for event in execution.trace.events:
        t = plan.thread_index[event.thread_name]
        counters[t] += 1
        if counters[t] in update_by_thread[t]:
            update_rows.add(event.seq)
    return FillInSheet(variable, tuple(series), frozenset(update_rows))


def grade_fill_in(sheet: FillInSheet,
                  answers: Mapping[int, int | None]) -> FillInGrade:
    """Exact-match grading; a blank (None or missing) cell is incorrect.
    Hint rows name the events that write the variable."""
    verdicts = []
    for row, expected in sheet.cells:
        submitted = answers.get(row)
        verdicts.append(CellVerdict(
            row=row, submitted=submitted, expected=expected,
            correct=submitted is not None and submitted == expected))
    return FillInGrade(
        verdicts=tuple(verdicts),
        all_correct=all(v.correct for v in verdicts),
        hint_rows=tuple(sorted(sheet.update_rows)),
    )


def generate_distractors(program: ProgramModel, correct_trace: Trace,
                         given_output: tuple[str, ...], count: int,
                         seed: int) -> list[ChoiceTrace]:
    """Produce ``count`` distinct wrong choices, deterministically in
    ``seed``. Three strategies rotate: swapping a call event with its first
    nested event (breaks program order), replaying a different schedule
    whose output differs, and swapping two adjacent events of different
    threads (rejected if the result still checks out)."""
    if count == 0:
        return []
    rng = Random(seed)
    correct_lines = tuple(render_trace_text(correct_trace))
    events = correct_trace.events
    call_pairs = [i for i in range(len(events) - 1)
                  if events[i + 1].parent_seq == events[i].seq]
    cross_pairs = [i for i in range(len(events) - 1)
                   if events[i + 1].thread_name != events[i].thread_name]

    found: list[tuple[str, ...]] = []
    budget = 40 * count + 40
    strategy = 0
    while len(found) < count and budget > 0:
        budget -= 1
        candidate: tuple[str, ...] | None = None
        if strategy == 0 and call_pairs:
            i = call_pairs[rng.randrange(len(call_pairs))]
            lines = list(correct_lines)
            lines[i], lines[i + 1] = lines[i + 1], lines[i]
            candidate = tuple(lines)
        elif strategy == 1:
            result = replay(program, sample_schedule(program, rng))
            if result.output_lines != given_output:
                candidate = tuple(render_trace_text(result.trace))
        elif strategy == 2 and cross_pairs:
            i = cross_pairs[rng.randrange(len(cross_pairs))]
            lines = list(correct_lines)
            lines[i], lines[i + 1] = lines[i + 1], lines[i]
            candidate = tuple(lines)
        strategy = (strategy + 1) % 3
        if candidate is None or candidate == correct_lines or candidate in found:
            continue
        if _order_is_correct(program, candidate, given_output):
            continue
        found.append(candidate)
    if len(found) < count:
        raise DistractorBudgetError(
            f"only {len(found)} of {count} distractors found within the "
            "retry budget")
    return [ChoiceTrace(lines) for lines in found]


# --- exercise documents ------------------------------------------------------

def exercise_to_dict(exercise: Exercise) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "id": exercise.id,
        "title": exercise.title,
        "program_source": exercise.program_source,
        "given_output": list(exercise.given_output),
        "correct_schedule": list(exercise.correct_schedule.steps),
        "choices": [list(c.lines) for c in exercise.choices],
        "correct_choice_index": exercise.correct_choice_index,
        "tracked_vars": list(exercise.tracked_vars),
        "ordering_items": list(exercise.ordering_items),
    }


def _require(data: dict, key: str, kind: type):
    if key not in data:
        raise ExerciseFormatError(f"missing field '{key}'")
    value = data[key]
    if not isinstance(value, kind):
        raise ExerciseFormatError(
            f"field '{key}' must be {kind.__name__}, got {type(value).__name__}")
    return value


def _string_list(data: dict, key: str) -> tuple[str, ...]:
    value = _require(data, key, list)
    if not all(isinstance(x, str) for x in value):
        raise ExerciseFormatError(f"field '{key}' must hold strings only")
    return tuple(value)


def exercise_from_dict(data: dict, seed: int | None = None) -> Exercise:
    """Build an Exercise from its document form. A document may omit
    ``choices``/``correct_choice_index``; they are then generated with
    ``seed`` (an error when no seed is given)."""
    if not isinstance(data, dict):
        raise ExerciseFormatError("exercise document must be a JSON object")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ExerciseFormatError(f"unsupported schema version {schema!r}")
    exercise_id = _require(data, "id", str)
    title = _require(data, "title", str)
    source = _require(data, "program_source", str)
    given_output = _string_list(data, "given_output")
    schedule = Schedule(tuple(_string_list(data, "correct_schedule")))
    tracked = _string_list(data, "tracked_vars")
    ordering = _string_list(data, "ordering_items")

    if "choices" in data:
        raw = _require(data, "choices", list)
        choices = []
        for i, lines in enumerate(raw):
            if not isinstance(lines, list) or not all(isinstance(x, str) for x in lines):
                raise ExerciseFormatError(f"choice {i} must be a list of strings")
            choices.append(ChoiceTrace(tuple(lines)))
        index = _require(data, "correct_choice_index", int)
        return Exercise(exercise_id, title, source, given_output, schedule,
                        tuple(choices), index, tracked, ordering)

    if seed is None:
        raise ExerciseFormatError(
            "document has no choices and no generation seed was given")
    program = parse_program(source)
    execution = replay(program, schedule)
    correct = ChoiceTrace(tuple(render_trace_text(execution.trace)))
    distractors = generate_distractors(program, execution.trace, given_output,
                                       3, seed)
    index = Random(seed).randrange(len(distractors) + 1)
    choices = distractors[:index] + [correct] + distractors[index:]
    return Exercise(exercise_id, title, source, given_output, schedule,
                    tuple(choices), index, tracked, ordering)


def load_exercise(path: str | Path, seed: int | None = None) -> Exercise:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExerciseFormatError(f"not valid JSON: {exc}") from exc
    return exercise_from_dict(data, seed=seed)


def save_exercise(exercise: Exercise, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(exercise_to_dict(exercise), indent=2) + "\n",
        encoding="utf-8")
