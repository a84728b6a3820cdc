"""Cross-checking oracles shared by the test suite.

``step_through`` is a deliberately naive third implementation of the
execution semantics (dict-based, template-driven). It shares no code with
the replay interpreter or the enumeration kernels, so their results can be
checked against it without circularity.
"""

from __future__ import annotations

from dataclasses import dataclass

from tracetutor.layout import layout
from tracetutor.model import StatementKind, plan_for


@dataclass
class ReferenceRun:
    """Per-row shared values, print records, and write rows of one run.

    ``prints`` holds ``(row, value, fixed_row)`` per print: the row it
    executed on, the integer it showed (None for pure literals), and the
    row where that integer was last written into the printed local (the
    print row itself when the print reads a variable directly).
    """

    after: list[dict[int, int]]
    prints: list[tuple[int, int | None, int]]
    update_rows: dict[int, list[int]]


def step_through(program, schedule) -> ReferenceRun:
    plan = plan_for(program)
    progress = [0] * len(plan.threads)
    slots = [[None] * tp.n_slots for tp in plan.threads]
    fixed = [dict() for _ in plan.threads]
    shared: dict[int, int] = {}
    after: list[dict[int, int]] = []
    prints: list[tuple[int, int | None, int]] = []
    update_rows: dict[int, list[int]] = {}

    def evaluate(t: int, code: tuple) -> tuple[int, int | None]:
        if code[0] == "int":
            return code[1], None
        if code[0] == "slot":
            return slots[t][code[1]], fixed[t][code[1]]
        if code[0] == "shared":
            return shared[code[1]], None
        raise AssertionError(code)

    for row, name in enumerate(schedule.steps, 1):
        t = plan.thread_index[name]
        tmpl = plan.threads[t].events[progress[t]]
        progress[t] += 1
        kind = tmpl.statement.kind
        if kind is StatementKind.SHARED_INIT:
            for j, value in enumerate(plan.shared_inits):
                shared[j] = value
                update_rows.setdefault(j, []).append(row)
        elif kind is StatementKind.INC_SHARED:
            shared[tmpl.shared_slot] += 1
            update_rows.setdefault(tmpl.shared_slot, []).append(row)
        elif kind is StatementKind.DEC_SHARED:
            shared[tmpl.shared_slot] -= 1
            update_rows.setdefault(tmpl.shared_slot, []).append(row)
        elif kind in (StatementKind.LOCAL_DECL, StatementKind.ASSIGN_LOCAL):
            slots[t][tmpl.slot], _ = evaluate(t, tmpl.code)
            fixed[t][tmpl.slot] = row
        elif kind is StatementKind.RETURN_EXPR and tmpl.return_slot >= 0:
            slots[t][tmpl.return_slot], _ = evaluate(t, tmpl.code)
            fixed[t][tmpl.return_slot] = row
        elif kind is StatementKind.PRINT:
            code = tmpl.code
            ref = code[2] if code[0] == "concat" else code
            if ref is None:
                prints.append((row, None, row))
            else:
                value, fix = evaluate(t, ref)
                prints.append((row, value, row if fix is None else fix))
        after.append(dict(shared))
    return ReferenceRun(after, prints, update_rows)


def check_layout_invariants(trace):
    """Assert the geometric invariants of a trace's table layout; returns
    the layout so callers can make fixture-specific checks on top."""
    table = layout(trace)
    events = trace.events
    n = len(events)
    assert table.row_count == n

    real = [b for b in table.boxes if not b.synthetic]
    roots = {b.thread_name: b for b in table.boxes if b.synthetic}

    # one box per event, keyed bijectively by its start row
    assert sorted(b.start_row for b in real) == list(range(1, n + 1))
    by_start = {b.start_row: b for b in real}

    for e in events:
        box = by_start[e.seq]
        assert box.thread_name == e.thread_name
        assert box.depth == e.depth + 1
        assert box.start_row <= box.end_row <= n
        root = roots[e.thread_name]
        assert root.start_row <= box.start_row and box.end_row <= root.end_row
        if e.parent_seq:
            parent = by_start[e.parent_seq]
            assert parent.thread_name == box.thread_name
            assert parent.depth == box.depth - 1
            assert parent.start_row < box.start_row
            assert box.end_row <= parent.end_row

    groups: dict[tuple[str, int], list] = {}
    for b in real:
        groups.setdefault((b.thread_name, b.depth), []).append(b)
    for group in groups.values():
        group.sort(key=lambda b: b.start_row)
        for left, right in zip(group, group[1:]):
            assert left.end_row < right.start_row

    for tname, root in roots.items():
        rows = [e.seq for e in events if e.thread_name == tname]
        assert root.depth == 0
        assert root.start_row == rows[0] and root.end_row == rows[-1]
    return table
