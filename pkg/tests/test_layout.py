import pytest

from helpers import check_layout_invariants
from tracetutor.errors import EmptyTraceError
from tracetutor.explore import sample_schedules
from tracetutor.layout import (
    BACKWARD,
    FORWARD,
    Box,
    ReplayState,
    layout,
    replay_init,
    replay_step,
)
from tracetutor.replay import replay
from tracetutor.trace import Trace


def _root(table, thread_name):
    return next(b for b in table.boxes if b.synthetic
                and b.thread_name == thread_name)


def test_counter_fixture_spans(race_execution):
    table = check_layout_invariants(race_execution.trace)
    assert table.row_count == 25
    assert table.thread_columns == ("main", "thread-1", "thread-2")

    main = _root(table, "main")
    t1 = _root(table, "thread-1")
    t2 = _root(table, "thread-2")
    assert (main.start_row, main.end_row) == (1, 5)
    assert (t1.start_row, t1.end_row) == (6, 17)
    assert (t2.start_row, t2.end_row) == (8, 25)
    assert main.label == "main()"
    assert t1.label == t2.label == "run()"
    assert (main.color_index, t1.color_index, t2.color_index) == (0, 1, 2)


def test_call_boxes_span_their_bodies(race_execution):
    table = layout(race_execution.trace)
    by_start = {b.start_row: b for b in table.boxes if not b.synthetic}
    increment = by_start[6]
    assert increment.label == "this.increment()"
    assert (increment.depth, increment.end_row) == (1, 7)
    inner = by_start[7]
    assert inner.label == "c++"
    assert (inner.depth, inner.start_row, inner.end_row) == (2, 7, 7)


def test_gap_rows_stay_inside_the_root(race_execution):
    table = layout(race_execution.trace)
    # thread-1 pauses during rows 8-9 while thread-2 runs; no thread-1 box
    # starts there, yet its root still covers them
    t1_starts = {b.start_row for b in table.boxes
                 if b.thread_name == "thread-1" and not b.synthetic}
    assert t1_starts.isdisjoint({8, 9})
    root = _root(table, "thread-1")
    assert root.start_row <= 8 and 9 <= root.end_row


def test_input_rows_run_from_construction_to_the_end(race_execution):
    table = layout(race_execution.trace)
    assert table.input_rows == tuple(range(1, 26))


def test_layout_invariants_hold_for_sampled_schedules(program):
    for schedule in sample_schedules(program, 30, seed=11):
        check_layout_invariants(replay(program, schedule).trace)


def test_layout_serializes(race_execution):
    data = layout(race_execution.trace).to_dict()
    assert data["row_count"] == 25
    assert data["thread_columns"] == ["main", "thread-1", "thread-2"]
    assert len(data["boxes"]) == 25 + 3
    assert all(set(b) == {"thread", "depth", "start_row", "end_row", "label",
                          "synthetic", "color_index"} for b in data["boxes"])


def test_replay_init_points_at_the_first_row(race_execution):
    state = replay_init(race_execution.trace)
    assert state == ReplayState(cursor=1, highlighted_source_line=4,
                                highlighted_trace_row=1)


def test_replay_stepping_tracks_source_lines(race_execution):
    state = replay_init(race_execution.trace)
    state = replay_step(state, FORWARD, race_execution.trace)
    assert (state.cursor, state.highlighted_source_line) == (2, 5)
    for _ in range(4):
        state = replay_step(state, FORWARD, race_execution.trace)
    # row 6 is thread-1's this.increment() on source line 20
    assert (state.cursor, state.highlighted_source_line) == (6, 20)


def test_replay_saturates_at_both_ends(race_execution):
    trace = race_execution.trace
    state = replay_init(trace)
    assert replay_step(state, BACKWARD, trace).cursor == 1
    for _ in range(40):
        state = replay_step(state, FORWARD, trace)
    assert state.cursor == 25
    assert replay_step(state, FORWARD, trace).cursor == 25


def test_forward_then_backward_is_identity_inside(race_execution):
    trace = race_execution.trace
    state = replay_init(trace)
    for _ in range(7):
        state = replay_step(state, FORWARD, trace)
    round_trip = replay_step(replay_step(state, FORWARD, trace),
                             BACKWARD, trace)
    assert round_trip == state


def test_bad_direction_is_rejected(race_execution):
    state = replay_init(race_execution.trace)
    with pytest.raises(ValueError):
        replay_step(state, "sideways", race_execution.trace)


def test_empty_trace_cannot_start_replay(program, race_execution):
    empty = Trace(program, (), race_execution.trace.schedule)
    with pytest.raises(EmptyTraceError):
        replay_init(empty)


def test_box_serialization_round_trip_fields():
    box = Box(thread_name="main", depth=0, start_row=1, end_row=5,
              label="main()", synthetic=True, color_index=0)
    assert box.to_dict() == {
        "thread": "main", "depth": 0, "start_row": 1, "end_row": 5,
        "label": "main()", "synthetic": True, "color_index": 0,
    }
