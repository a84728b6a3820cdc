import pytest

from tracetutor.errors import TraceFormatError
from tracetutor.fixtures import RACE_TRACE_LINES
from tracetutor.model import StatementRef
from tracetutor.trace import (
    parse_trace_text,
    project_thread,
    render_trace_text,
    resolve_trace_lines,
)


def test_race_trace_renders_byte_exactly(race_execution):
    assert render_trace_text(race_execution.trace) == list(RACE_TRACE_LINES)


def test_events_carry_sequence_thread_and_source(race_execution):
    events = race_execution.trace.events
    assert [e.seq for e in events] == list(range(1, 26))
    assert events[0].thread_name == "main"
    assert events[0].source_line == 4
    assert events[6].display_text == "c++"
    assert events[6].thread_name == "thread-1"


def test_resolver_distinguishes_repeated_lines(program):
    resolved = resolve_trace_lines(list(RACE_TRACE_LINES), program)
    # "return c" appears twice per thread; the k-th occurrence must map to
    # the k-th matching event of that thread, so all four differ
    returns = [r for line, r in zip(RACE_TRACE_LINES, resolved)
               if line.endswith("return c")]
    assert len(returns) == 4
    assert len({(r.thread_name, r.event_index) for r in returns}) == 4
    first, second = returns[0], returns[1]
    assert first.thread_name == second.thread_name == "thread-1"
    assert first.event_index < second.event_index


def test_resolved_lines_carry_statement_refs(program):
    resolved = resolve_trace_lines(list(RACE_TRACE_LINES), program)
    assert resolved[0].ref == StatementRef("main", 0)
    assert resolved[6].ref == StatementRef("increment", 0)


def test_parse_trace_text_round_trips(program, race_execution):
    order = parse_trace_text(list(RACE_TRACE_LINES), program)
    expected = [(e.thread_name, e.ref) for e in race_execution.trace.events]
    assert order == expected


def test_malformed_line_is_rejected(program):
    with pytest.raises(TraceFormatError):
        resolve_trace_lines(["no thread tag here"], program)


def test_unknown_thread_is_rejected(program):
    with pytest.raises(TraceFormatError):
        resolve_trace_lines(["[thread-9] c++"], program)


def test_text_not_in_thread_program_is_rejected(program):
    with pytest.raises(TraceFormatError, match="never executes"):
        resolve_trace_lines(["[main] c++"], program)


def test_too_many_occurrences_are_rejected(program):
    lines = list(RACE_TRACE_LINES) + ["[thread-1] c++"]
    with pytest.raises(TraceFormatError):
        resolve_trace_lines(lines, program)


def test_project_thread_preserves_order(race_execution):
    events = project_thread(race_execution.trace, "thread-2")
    assert [e.thread_name for e in events] == ["thread-2"] * 10
    assert [e.seq for e in events] == sorted(e.seq for e in events)
    assert [e.seq for e in events] == [8, 9] + list(range(18, 26))
