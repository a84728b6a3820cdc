"""Grader for the trace-ordering test.

A learner rearranges the lines of a known-correct trace; the grade counts
misplaced events. Two error classes exist, checked in order:

1. Execution-order violations: scanning positions 1..N, position i is a
   violation when event i's prerequisite (its program-order predecessor
   within its thread, or the start() event for a thread's first event) has
   not already appeared.
2. Retrieval-update violations, counted only when there are no
   execution-order violations: the arrangement is projected onto the
   events that read or write a tracked variable, and a projected event is
   a violation when its predecessor in the reference retrieval-update
   order is missing from the earlier projection.

The error count is divided by the arrangement length and subtracted from
one, so a perfect arrangement scores 1.0.

``execution_order_violations`` must stay an independent reimplementation
of the scheduling rules: tests cross-check it against
:func:`tracetutor.explore.feasible`, so neither may call the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from tracetutor.errors import ArrangementError
from tracetutor.model import ProgramModel, StatementKind, ThreadPlan, plan_for
from tracetutor.replay import ExecutionResult
from tracetutor.trace import resolve_trace_lines

if TYPE_CHECKING:
    from tracetutor.exercises import Exercise

RETRIEVAL = "retrieval"
UPDATE = "update"


@dataclass(frozen=True)
class Arrangement:
    """A learner's ordering answer: trace text lines in their chosen order."""

    ordered_lines: tuple[str, ...]

    @classmethod
    def coerce(cls, value: "Arrangement | list[str] | tuple[str, ...]") -> "Arrangement":
        if isinstance(value, Arrangement):
            return value
        return cls(tuple(value))


class RUEvent(NamedTuple):
    """One element of a retrieval-update order: an event identified by
    thread name and per-thread event index, tagged R or U."""

    thread_name: str
    event_index: int
    kind: str


@dataclass(frozen=True)
class RUOrder:
    """Reference sequence of reads and writes of one variable, in the
    order the correct trace records them."""

    variable: str
    sequence: tuple[RUEvent, ...]


@dataclass(frozen=True)
class GradeReport:
    exec_violation_positions: tuple[int, ...]
    ru_violation_positions: tuple[int, ...]
    errors: int
    total_choices: int
    accuracy: Fraction

    def to_dict(self) -> dict:
        return {
            "exec_violation_positions": list(self.exec_violation_positions),
            "ru_violation_positions": list(self.ru_violation_positions),
            "errors": self.errors,
            "total_choices": self.total_choices,
            "accuracy": float(self.accuracy),
            "accuracy_exact": f"{self.accuracy.numerator}/{self.accuracy.denominator}",
        }


def _slot_uses(code: tuple) -> set[int]:
    if not code:
        return set()
    if code[0] == "slot":
        return {code[1]}
    if code[0] == "concat" and code[2] is not None and code[2][0] == "slot":
        return {code[2][1]}
    return set()


def _reads_shared(code: tuple, var_ordinal: int) -> bool:
    if not code:
        return False
    if code[0] == "shared":
        return code[1] == var_ordinal
    if code[0] == "concat" and code[2] is not None:
        return code[2][0] == "shared" and code[2][1] == var_ordinal
    return False


def output_reading_events(thread_plan: ThreadPlan, var_ordinal: int) -> set[int]:
    """Per-thread event indices that read the variable into a value that
    reaches printed output. A print reading the variable qualifies
    directly; an assignment or a return qualifies when the local slot it
    writes is still live at a later print (straight-line liveness walked
    backward; the language has no branches, so this is exact)."""
    live: set[int] = set()
    reading: set[int] = set()
    for tmpl in reversed(thread_plan.events):
        kind = tmpl.statement.kind
        if kind is StatementKind.PRINT:
            if _reads_shared(tmpl.code, var_ordinal):
                reading.add(tmpl.index)
            live |= _slot_uses(tmpl.code)
        elif kind in (StatementKind.LOCAL_DECL, StatementKind.ASSIGN_LOCAL):
            if tmpl.slot in live:
                if _reads_shared(tmpl.code, var_ordinal):
                    reading.add(tmpl.index)
                live.discard(tmpl.slot)
                live |= _slot_uses(tmpl.code)
        elif kind is StatementKind.RETURN_EXPR and tmpl.return_slot >= 0:
            if tmpl.return_slot in live:
                if _reads_shared(tmpl.code, var_ordinal):
                    reading.add(tmpl.index)
                live.discard(tmpl.return_slot)
                live |= _slot_uses(tmpl.code)
    return reading


def updating_events(thread_plan: ThreadPlan, var_ordinal: int) -> set[int]:
    """Per-thread event indices that write the variable: construction
    initializes every shared variable; ++/-- touch one."""
    rows: set[int] = set()
    for tmpl in thread_plan.events:
        kind = tmpl.statement.kind
        if kind is StatementKind.SHARED_INIT or (
                kind in (StatementKind.INC_SHARED, StatementKind.DEC_SHARED)
                and tmpl.shared_slot == var_ordinal):
            rows.add(tmpl.index)
    return rows


def ru_order(execution: ExecutionResult, variable: str) -> RUOrder:
    """Project an execution onto the reads and writes of one variable."""
    program = execution.program
    plan = plan_for(program)
    var_ordinal = program.shared_names.index(variable)
    retrieval_by_thread = [output_reading_events(tp, var_ordinal) for tp in plan.threads]
    update_by_thread = [updating_events(tp, var_ordinal) for tp in plan.threads]

    counters = [0] * len(plan.threads)
    sequence: list[RUEvent] = []
    for name in execution.schedule.steps:
        t = plan.thread_index[name]
        counters[t] += 1
        index = counters[t]
        if index in update_by_thread[t]:
            sequence.append(RUEvent(name, index, UPDATE))
        elif index in retrieval_by_thread[t]:
            sequence.append(RUEvent(name, index, RETRIEVAL))
    return RUOrder(variable, tuple(sequence))


def execution_order_violations(program: ProgramModel,
                               arrangement: Arrangement | list[str]) -> list[int]:
    """1-based positions whose event's prerequisite is not placed earlier."""
    lines = Arrangement.coerce(arrangement).ordered_lines
    plan = plan_for(program)
    resolved = resolve_trace_lines(list(lines), program)
    seen: set[tuple[int, int]] = set()
    violations: list[int] = []
    for pos, r in enumerate(resolved, 1):
        if r.event_index > 1:
            prerequisite = (r.thread_ordinal, r.event_index - 1)
        elif r.thread_ordinal != 0:
            prerequisite = (0, plan.spawn_step[r.thread_ordinal])
        else:
            prerequisite = None
        if prerequisite is not None and prerequisite not in seen:
            violations.append(pos)
        seen.add((r.thread_ordinal, r.event_index))
    return violations


def retrieval_update_violations(exercise: "Exercise",
                                arrangement: Arrangement | list[str]) -> list[int]:
    """1-based positions breaking a tracked variable's reference
    retrieval-update order, unioned over the exercise's tracked variables."""
    lines = Arrangement.coerce(arrangement).ordered_lines
    program = exercise.program
    resolved = resolve_trace_lines(list(lines), program)
    positions: set[int] = set()
    for variable in exercise.tracked_vars:
        order = ru_order(exercise.correct_execution, variable)
        predecessor: dict[tuple[str, int], tuple[str, int] | None] = {}
        previous = None
        for ev in order.sequence:
            key = (ev.thread_name, ev.event_index)
            predecessor[key] = previous
            previous = key
        projected: set[tuple[str, int]] = set()
        for pos, r in enumerate(resolved, 1):
            key = (r.thread_name, r.event_index)
            if key not in predecessor:
                continue
            required = predecessor[key]
            if required is not None and required not in projected:
                positions.add(pos)
            projected.add(key)
    return sorted(positions)


def grade_ordering(exercise: "Exercise",
                   arrangement: Arrangement | list[str]) -> GradeReport:
    """Grade an arrangement of the exercise's ordering items. Execution-order
    violations take precedence; retrieval-update violations are only counted
    when there are none."""
    lines = Arrangement.coerce(arrangement).ordered_lines
    if sorted(lines) != sorted(exercise.ordering_items):
        raise ArrangementError(
            "arrangement is not a permutation of the exercise's ordering items")
    total = len(lines)
    exec_positions = tuple(execution_order_violations(exercise.program, lines))
    if exec_positions:
        ru_positions: tuple[int, ...] = ()
        errors = len(exec_positions)
    else:
        ru_positions = tuple(retrieval_update_violations(exercise, lines))
        errors = len(ru_positions)
    accuracy = Fraction(1) if total == 0 else 1 - Fraction(errors, total)
    return GradeReport(
        exec_violation_positions=exec_positions,
        ru_violation_positions=ru_positions,
        errors=errors,
        total_choices=total,
        accuracy=accuracy,
    )
