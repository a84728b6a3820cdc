"""Deterministic replay of a program under an explicit schedule.

A schedule names, step by step, which thread executes its next pending
statement; each step records exactly one event. Replay is pure: the same
program and schedule always produce byte-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from tracetutor.errors import (
    IncompleteScheduleError,
    InfeasibleStepError,
    UninitializedVariableError,
)
from tracetutor.model import (
    MAIN_THREAD,
    ProgramModel,
    ProgramPlan,
    StatementKind,
    StatementRef,
    plan_for,
)
from tracetutor.trace import Event, Trace

_UNSET = object()


@dataclass(frozen=True)
class Schedule:
    """Global interleaving: one thread name per executed event, covering the
    program's complete execution."""

    steps: tuple[str, ...]

    @classmethod
    def of(cls, *runs: tuple[str, int] | str) -> "Schedule":
        """Build from runs, e.g. ``Schedule.of(("main", 5), ("thread-1", 2))``."""
        steps: list[str] = []
        for run in runs:
            if isinstance(run, str):
                steps.append(run)
            else:
                name, count = run
                steps.extend([name] * count)
        return cls(tuple(steps))

    @classmethod
    def from_ordinals(cls, plan: ProgramPlan, ordinals: bytes) -> "Schedule":
        names = tuple(t.name for t in plan.threads)
        return cls(tuple(names[o] for o in ordinals))

    def __len__(self) -> int:
        return len(self.steps)


def _eval(code: tuple, slots: list, shared: list):
    op = code[0]
    if op == "int":
        return code[1]
    if op == "slot":
        value = slots[code[1]]
        if value is _UNSET:
            raise UninitializedVariableError("local read before assignment")
        return value
    if op == "shared":
        value = shared[code[1]]
        if value is None:
            raise UninitializedVariableError(
                "shared variable read before construction")
        return value
    raise AssertionError(code)


def _format_print(code: tuple, slots: list, shared: list) -> str:
    if code[0] == "concat":
        _, text, ref = code
        if ref is None:
            return text
        return text + str(_eval(ref, slots, shared))
    return str(_eval(code, slots, shared))


def run_schedule(plan: ProgramPlan, ordinals: list[int]):
    """Core interpreter over thread ordinals. Returns
    (events, output_lines, timelines, final_values) with events as raw
    tuples ``(tmpl, thread_ordinal)``; callers shape the public types."""
    n_threads = len(plan.threads)
    next_index = [0] * n_threads
    started = [False] * n_threads
    started[0] = True
    shared: list = [None] * len(plan.shared_inits)
    slots = [[_UNSET] * t.n_slots for t in plan.threads]
    events: list = []
    output: list[str] = []
    timelines: list[list[tuple[int, int]]] = [[] for _ in plan.shared_inits]

    for step_no, t in enumerate(ordinals, 1):
        if t < 0 or t >= n_threads:
            raise InfeasibleStepError(step_no, "unknown thread")
        tplan = plan.threads[t]
        if not started[t]:
            raise InfeasibleStepError(step_no, f"thread '{tplan.name}' not yet started")
        if next_index[t] >= len(tplan.events):
            raise InfeasibleStepError(step_no, f"thread '{tplan.name}' already finished")
        tmpl = tplan.events[next_index[t]]
        next_index[t] += 1
        kind = tmpl.statement.kind
        if kind is StatementKind.SHARED_INIT:
            shared[:] = plan.shared_inits
        elif kind is StatementKind.SPAWN_START:
            started[tmpl.spawn_target] = True
        elif kind is StatementKind.INC_SHARED or kind is StatementKind.DEC_SHARED:
            j = tmpl.shared_slot
            if shared[j] is None:
                raise UninitializedVariableError(
                    f"'{tmpl.statement.var}' updated before construction")
            shared[j] += 1 if kind is StatementKind.INC_SHARED else -1
        elif kind in (StatementKind.LOCAL_DECL, StatementKind.ASSIGN_LOCAL):
            slots[t][tmpl.slot] = _eval(tmpl.code, slots[t], shared)
        elif kind is StatementKind.PRINT:
            output.append(_format_print(tmpl.code, slots[t], shared))
        elif kind is StatementKind.RETURN_EXPR:
            value = _eval(tmpl.code, slots[t], shared)
            if tmpl.return_slot >= 0:
                slots[t][tmpl.return_slot] = value
        # THREAD_DECL, CALL_VOID, CALL_ASSIGN change no state at their own row
        events.append((tmpl, t))
        for j, value in enumerate(shared):
            if value is not None:
                timelines[j].append((step_no, value))

    if any(next_index[t] < len(plan.threads[t].events) for t in range(n_threads)):
        raise IncompleteScheduleError(
            "schedule ends before every thread finished "
            f"(after {len(ordinals)} of {plan.total_events} events)")
    return events, output, timelines, shared


class ExecutionResult:
    """Replay outcome: the trace, printed output, per-variable value
    timelines (dense from the initialization row), and final values.

    Results coming out of schedule enumeration carry output and final
    values eagerly but materialize the trace and timelines on first use.
    """

    __slots__ = ("program", "schedule", "_output_lines", "_final_values",
                 "_trace", "_timelines", "__dict__")

    def __init__(self, program: ProgramModel, schedule: Schedule,
                 output_lines: tuple[str, ...] | None = None,
                 final_values: dict[str, int] | None = None):
        self.program = program
        self.schedule = schedule
        self._output_lines = output_lines
        self._final_values = final_values
        self._trace: Trace | None = None
        self._timelines: dict[str, tuple[tuple[int, int], ...]] | None = None

    def _materialize(self) -> None:
        plan = plan_for(self.program)
        ordinals = [plan.thread_index.get(name, -1) for name in self.schedule.steps]
        raw_events, output, raw_timelines, shared = run_schedule(plan, ordinals)
        events = []
        # per-thread map from per-thread index to the global seq it got
        seq_of = [dict() for _ in plan.threads]
        for seq, (tmpl, t) in enumerate(raw_events, 1):
            seq_of[t][tmpl.index] = seq
            parent_seq = seq_of[t][tmpl.parent] if tmpl.parent else 0
            events.append(Event(
                seq=seq, thread_name=plan.threads[t].name, ref=tmpl.ref,
                depth=tmpl.depth, parent_seq=parent_seq,
                display_text=tmpl.display_text, source_line=tmpl.source_line,
            ))
        self._trace = Trace(self.program, tuple(events), self.schedule)
        names = self.program.shared_names
        self._timelines = {
            names[j]: tuple(series) for j, series in enumerate(raw_timelines) if series
        }
        if self._output_lines is None:
            self._output_lines = tuple(output)
        if self._final_values is None:
            self._final_values = {
                names[j]: value for j, value in enumerate(shared) if value is not None
            }

    @property
    def trace(self) -> Trace:
        if self._trace is None:
            self._materialize()
        return self._trace

    @property
    def output_lines(self) -> tuple[str, ...]:
        if self._output_lines is None:
            self._materialize()
        return self._output_lines

    @property
    def timelines(self) -> dict[str, tuple[tuple[int, int], ...]]:
        if self._timelines is None:
            self._materialize()
        return self._timelines

    @property
    def final_values(self) -> dict[str, int]:
        if self._final_values is None:
            self._materialize()
        return self._final_values

    @cached_property
    def event_order(self) -> list[tuple[str, StatementRef]]:
        """The (thread, statement) identity sequence, cheap to compute."""
        plan = plan_for(self.program)
        counters = [0] * len(plan.threads)
        order = []
        for name in self.schedule.steps:
            t = plan.thread_index[name]
            order.append((name, plan.threads[t].events[counters[t]].ref))
            counters[t] += 1
        return order


def replay(program: ProgramModel, schedule: Schedule) -> ExecutionResult:
    """Replay ``schedule`` to completion; raises
    :class:`~tracetutor.errors.InfeasibleStepError` (with the 1-based step)
    when a step names a thread that is finished or not yet started."""
    result = ExecutionResult(program, schedule)
    result._materialize()   # validates eagerly and fills every field
    return result
