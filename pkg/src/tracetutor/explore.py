"""Schedule-space exploration: feasibility checking and exhaustive
enumeration of every interleaving a program admits.

``feasible`` and ``enumerate_schedules`` are deliberately independent
implementations so each can vouch for the other in tests: the checker walks
event orders against the static per-thread plans, while enumeration runs a
backtracking interpreter (see ``_kernel_py``/``_kernel``). Do not reroute
one through the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterator, NamedTuple

from tracetutor import _backend
from tracetutor.errors import EnumerationBoundError
from tracetutor.model import (
    ProgramModel,
    ProgramPlan,
    StatementKind,
    StatementRef,
    plan_for,
)
from tracetutor.replay import ExecutionResult, Schedule

# Keeps an accidental call on a big program from running for hours: 30 events
# over three threads is already around ten million schedules.
DEFAULT_MAX_EVENTS = 30

# Kernel opcodes (see encode_plan): one (op, a, b, c) quad per event.
OP_NOP = 0          # threadDecl, spawnStart, call events
OP_INIT = 1         # sharedInit: reset every shared variable to its declared value
OP_INC = 2          # a = shared ordinal
OP_DEC = 3          # a = shared ordinal
OP_SET = 4          # localDecl/assignLocal: a = dest slot, (b, c) = source
OP_RET = 5          # returnExpr: a = dest slot or -1, (b, c) = source
OP_PRINT = 6        # a = print id, (b, c) = source

# Source operand kinds (the b of a quad; c is its argument).
SRC_CONST = 0
SRC_SLOT = 1
SRC_SHARED = 2
SRC_NONE = 3

# Print line shapes.
FMT_LITERAL = 0     # text only
FMT_CONCAT = 1      # text + str(value)
FMT_VALUE = 2       # str(value)


@dataclass(frozen=True)
class Feasibility:
    """Outcome of a feasibility check. ``violation`` is the 1-based position
    of the first event whose prerequisite is missing, or 0 when the order is
    feasible."""

    ok: bool
    violation: int = 0

    def __bool__(self) -> bool:
        return self.ok


def feasible(program: ProgramModel,
             event_order: list[tuple[str, StatementRef]]) -> Feasibility:
    """Check an event order against the two scheduling rules: every thread's
    subsequence must equal its program order, and a spawned thread's first
    event must come after its start() in main."""
    plan = plan_for(program)
    progress = [0] * len(plan.threads)
    for pos, (tname, ref) in enumerate(event_order, 1):
        t = plan.thread_index.get(tname, -1)
        if t < 0:
            return Feasibility(False, pos)
        events = plan.threads[t].events
        k = progress[t]
        if k >= len(events) or events[k].ref != ref:
            return Feasibility(False, pos)
        if k == 0 and t != 0 and progress[0] < plan.spawn_step[t]:
            return Feasibility(False, pos)
        progress[t] = k + 1
    return Feasibility(True, 0)


class PlanCode(NamedTuple):
    """Flat numeric encoding of a ProgramPlan for the enumeration kernels.

    ``ops[t]`` holds four integers per event of thread ``t`` (op, a, b, c);
    ``print_formats[i]`` is ``(shape, text)`` for print id ``i``.
    """

    counts: tuple[int, ...]
    spawn_step: tuple[int, ...]
    ops: tuple[tuple[int, ...], ...]
    shared_inits: tuple[int, ...]
    n_slots: tuple[int, ...]
    print_formats: tuple[tuple[int, str], ...]


def _encode_source(code: tuple) -> tuple[int, int]:
    tag = code[0]
    if tag == "int":
        return SRC_CONST, code[1]
    if tag == "slot":
        return SRC_SLOT, code[1]
    if tag == "shared":
        return SRC_SHARED, code[1]
    raise AssertionError(code)


def encode_plan(plan: ProgramPlan) -> PlanCode:
    formats: list[tuple[int, str]] = []
    per_thread: list[tuple[int, ...]] = []
    for tp in plan.threads:
        quads: list[int] = []
        for tmpl in tp.events:
            kind = tmpl.statement.kind
            if kind is StatementKind.SHARED_INIT:
                quads += [OP_INIT, 0, 0, 0]
            elif kind is StatementKind.INC_SHARED:
                quads += [OP_INC, tmpl.shared_slot, 0, 0]
            elif kind is StatementKind.DEC_SHARED:
                quads += [OP_DEC, tmpl.shared_slot, 0, 0]
            elif kind in (StatementKind.LOCAL_DECL, StatementKind.ASSIGN_LOCAL):
                src, arg = _encode_source(tmpl.code)
                quads += [OP_SET, tmpl.slot, src, arg]
            elif kind is StatementKind.RETURN_EXPR:
                src, arg = _encode_source(tmpl.code)
                quads += [OP_RET, tmpl.return_slot, src, arg]
            elif kind is StatementKind.PRINT:
                code = tmpl.code
                if code[0] == "concat":
                    text, ref = code[1], code[2]
                    if ref is None:
                        formats.append((FMT_LITERAL, text))
                        quads += [OP_PRINT, len(formats) - 1, SRC_NONE, 0]
                    else:
                        formats.append((FMT_CONCAT, text))
                        src, arg = _encode_source(ref)
                        quads += [OP_PRINT, len(formats) - 1, src, arg]
                else:
                    formats.append((FMT_VALUE, ""))
                    src, arg = _encode_source(code)
                    quads += [OP_PRINT, len(formats) - 1, src, arg]
            else:
                quads += [OP_NOP, 0, 0, 0]
        per_thread.append(tuple(quads))
    return PlanCode(
        counts=tuple(len(tp.events) for tp in plan.threads),
        spawn_step=plan.spawn_step,
        ops=tuple(per_thread),
        shared_inits=plan.shared_inits,
        n_slots=tuple(tp.n_slots for tp in plan.threads),
        print_formats=tuple(formats),
    )


def _format_line(fmt: tuple[int, str], value: int) -> str:
    shape, text = fmt
    if shape == FMT_LITERAL:
        return text
    if shape == FMT_CONCAT:
        return text + str(value)
    return str(value)


def enumerate_schedules(program: ProgramModel,
                        max_events: int = DEFAULT_MAX_EVENTS,
                        ) -> Iterator[ExecutionResult]:
    """Yield one ExecutionResult per feasible schedule, exactly once each.

    Schedules come out in lexicographic order of their step sequences, with
    threads ordered main first and then by declaration. Output lines and
    final values are computed during the walk; traces and timelines
    materialize lazily on access.
    """
    plan = plan_for(program)
    if plan.total_events > max_events:
        raise EnumerationBoundError(
            f"program has {plan.total_events} events, above the bound of "
            f"{max_events}; raise max_events to enumerate anyway")
    code = encode_plan(plan)
    names = tuple(tp.name for tp in plan.threads)
    formats = code.print_formats
    shared_names = program.shared_names
    for steps, prints, finals in _backend.kernel.enumerate_runs(
            code.counts, code.spawn_step, code.ops, code.shared_inits,
            code.n_slots):
        schedule = Schedule(tuple(names[b] for b in steps))
        output = tuple(_format_line(formats[pid], value) for pid, value in prints)
        final_values = dict(zip(shared_names, finals))
        yield ExecutionResult(program, schedule, output, final_values)


def count_schedules(program: ProgramModel,
                    max_events: int = DEFAULT_MAX_EVENTS) -> int:
    return sum(1 for _ in enumerate_schedules(program, max_events))


def backend_name() -> str:
    """Which enumeration kernel is active: "compiled" or "pure"."""
    return _backend.BACKEND


def sample_schedule(program: ProgramModel, rng: Random) -> Schedule:
    """One random feasible schedule: at every step pick uniformly among the
    threads that can run. Deterministic for a given rng state."""
    plan = plan_for(program)
    counts = [len(tp.events) for tp in plan.threads]
    progress = [0] * len(plan.threads)
    steps: list[str] = []
    for _ in range(plan.total_events):
        ready = [t for t in range(len(counts))
                 if progress[t] < counts[t]
                 and (t == 0 or progress[0] >= plan.spawn_step[t])]
        t = ready[rng.randrange(len(ready))] if len(ready) > 1 else ready[0]
        steps.append(plan.threads[t].name)
        progress[t] += 1
    return Schedule(tuple(steps))


def sample_schedules(program: ProgramModel, n: int, seed: int = 0,
                     ) -> list[Schedule]:
    rng = Random(seed)
    return [sample_schedule(program, rng) for _ in range(n)]
