"""Thread-tagged event traces and the bracketed trace text format.

A trace line reads ``[thread-name] statement text``. Within one thread,
visually identical lines (two ``return c`` events, say) are resolved by the
k-th-occurrence rule: the k-th occurrence of a text in the input maps to
the k-th event carrying that text in the thread's static event sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from tracetutor.errors import TraceFormatError, UnknownThreadError
from tracetutor.model import ProgramModel, StatementRef, plan_for

if TYPE_CHECKING:
    from tracetutor.replay import Schedule

_RE_TRACE_LINE = re.compile(r"^\[([^\]]+)\] (.*)$")


@dataclass(frozen=True)
class Event:
    """One executed statement. ``seq`` is the 1-based global row number;
    ``parent_seq`` points at the enclosing call event, 0 meaning the
    thread's synthetic root (main()/run()), which has no row of its own."""

    seq: int
    thread_name: str
    ref: StatementRef
    depth: int
    parent_seq: int
    display_text: str
    source_line: int


@dataclass(frozen=True)
class Trace:
    program: ProgramModel
    events: tuple[Event, ...]
    schedule: "Schedule"


class ResolvedLine(NamedTuple):
    """A trace text line resolved to a concrete event identity."""

    thread_ordinal: int
    thread_name: str
    event_index: int        # 1-based index within the thread's event sequence
    ref: StatementRef


def render_trace_text(trace: Trace) -> list[str]:
    return [f"[{e.thread_name}] {e.display_text}" for e in trace.events]


def resolve_trace_lines(lines: list[str], program: ProgramModel) -> list[ResolvedLine]:
    """Map trace text lines to event identities via the k-th-occurrence rule."""
    plan = plan_for(program)
    # occurrences[t][text] = per-thread event indices carrying that text
    occurrences: list[dict[str, list[int]]] = []
    for tplan in plan.threads:
        occ: dict[str, list[int]] = {}
        for tmpl in tplan.events:
            occ.setdefault(tmpl.display_text, []).append(tmpl.index)
        occurrences.append(occ)

    seen: dict[tuple[int, str], int] = {}
    resolved: list[ResolvedLine] = []
    for lineno, line in enumerate(lines, 1):
        m = _RE_TRACE_LINE.match(line)
        if not m:
            raise TraceFormatError(f"not a '[thread] text' line: {line!r}", lineno)
        tname, text = m.group(1), m.group(2)
        ordinal = plan.thread_index.get(tname)
        if ordinal is None:
            raise TraceFormatError(f"unknown thread '{tname}'", lineno)
        candidates = occurrences[ordinal].get(text)
        if candidates is None:
            raise TraceFormatError(
                f"thread '{tname}' never executes {text!r}", lineno)
        k = seen.get((ordinal, text), 0)
        if k >= len(candidates):
            raise TraceFormatError(
                f"{text!r} occurs more often than thread '{tname}' executes it",
                lineno)
        seen[(ordinal, text)] = k + 1
        index = candidates[k]
        resolved.append(ResolvedLine(ordinal, tname,
                                     index, plan.threads[ordinal].events[index - 1].ref))
    return resolved


def parse_trace_text(lines: list[str],
                     program: ProgramModel) -> list[tuple[str, StatementRef]]:
    return [(r.thread_name, r.ref) for r in resolve_trace_lines(lines, program)]


def project_thread(trace: Trace, thread_name: str) -> tuple[Event, ...]:
    if thread_name not in trace.program.thread_names:
        raise UnknownThreadError(thread_name)
    return tuple(e for e in trace.events if e.thread_name == thread_name)
