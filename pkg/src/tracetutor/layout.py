"""Geometry for the enhanced trace table and the replay cursor.

The table puts one event per row. Each thread owns a column holding a tree
of boxes: a synthetic root spanning the thread's first through last row
(idle stretches stay inside it as empty gap rows), one box per call event
spanning its row through its last nested event's row, and one single-row
box per leaf event. Rows at which no box of a thread starts are that
column's gaps. Everything here is pure geometry in row/depth units; pixel
sizing and the color palette (color 0 = yellow for main, 1 = green, ...)
are the client's business.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from tracetutor.errors import EmptyTraceError
from tracetutor.model import StatementKind, plan_for
from tracetutor.trace import Trace

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class Box:
    thread_name: str
    depth: int
    start_row: int
    end_row: int
    label: str
    synthetic: bool
    color_index: int

    def to_dict(self) -> dict:
        return {
            "thread": self.thread_name,
            "depth": self.depth,
            "start_row": self.start_row,
            "end_row": self.end_row,
            "label": self.label,
            "synthetic": self.synthetic,
            "color_index": self.color_index,
        }


@dataclass(frozen=True)
class TableLayout:
    row_count: int
    thread_columns: tuple[str, ...]
    boxes: tuple[Box, ...]
    input_rows: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "row_count": self.row_count,
            "thread_columns": list(self.thread_columns),
            "boxes": [b.to_dict() for b in self.boxes],
            "input_rows": list(self.input_rows),
        }


@dataclass(frozen=True)
class ReplayState:
    """Cursor over trace rows with the matching source line; stepping
    saturates at the first and last row instead of wrapping or failing."""

    cursor: int
    highlighted_source_line: int
    highlighted_trace_row: int

    def to_dict(self) -> dict:
        return {
            "cursor": self.cursor,
            "source_line": self.highlighted_source_line,
            "trace_row": self.highlighted_trace_row,
        }


def layout(trace: Trace) -> TableLayout:
    """Compute the box tree of a trace. Columns list main first, then the
    other threads by start() order; a thread whose run() is empty keeps its
    column but contributes no boxes."""
    plan = plan_for(trace.program)
    events = trace.events

    ordered = sorted(plan.threads, key=lambda tp: (tp.ordinal != 0,
                                                   plan.spawn_step[tp.ordinal]))
    columns = tuple(tp.name for tp in ordered)

    rows_of: dict[str, list[int]] = {tp.name: [] for tp in plan.threads}
    for e in events:
        rows_of[e.thread_name].append(e.seq)

    boxes: list[Box] = []
    for tp in plan.threads:
        rows = rows_of[tp.name]
        if rows:
            boxes.append(Box(
                thread_name=tp.name, depth=0, start_row=rows[0],
                end_row=rows[-1], label=f"{tp.entry_method}()",
                synthetic=True, color_index=tp.ordinal,
            ))

    # last_descendant[seq] = the deepest row its call subtree reaches
    last_descendant = {e.seq: e.seq for e in events}
    for e in reversed(events):
        if e.parent_seq:
            parent_last = last_descendant[e.parent_seq]
            last_descendant[e.parent_seq] = max(parent_last, last_descendant[e.seq])

    for e in events:
        color = plan.thread_index[e.thread_name]
        boxes.append(Box(
            thread_name=e.thread_name, depth=e.depth + 1, start_row=e.seq,
            end_row=last_descendant[e.seq], label=e.display_text,
            synthetic=False, color_index=color,
        ))

    init_rows = [e.seq for e in events
                 if _kind(trace, e) is StatementKind.SHARED_INIT]
    if init_rows:
        input_rows = tuple(range(init_rows[0], len(events) + 1))
    else:
        input_rows = ()
    return TableLayout(
        row_count=len(events),
        thread_columns=columns,
        boxes=tuple(boxes),
        input_rows=input_rows,
    )


def _kind(trace: Trace, event) -> StatementKind:
    method = trace.program.method(event.ref.method)
    return method.body[event.ref.index].kind


def replay_init(trace: Trace) -> ReplayState:
    if not trace.events:
        raise EmptyTraceError("cannot replay an empty trace")
    first = trace.events[0]
    return ReplayState(cursor=1, highlighted_source_line=first.source_line,
                       highlighted_trace_row=1)


def replay_step(state: ReplayState, direction: str, trace: Trace) -> ReplayState:
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"direction must be '{FORWARD}' or '{BACKWARD}'")
    n = len(trace.events)
    cursor = state.cursor + (1 if direction == FORWARD else -1)
    cursor = min(max(cursor, 1), n)
    event = trace.events[cursor - 1]
    return replace(state, cursor=cursor,
                   highlighted_source_line=event.source_line,
                   highlighted_trace_row=cursor)
