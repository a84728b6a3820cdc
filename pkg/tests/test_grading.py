from fractions import Fraction

import pytest

from tracetutor.errors import ArrangementError
from tracetutor.fixtures import RACE_TRACE_LINES, SEQUENTIAL_SCHEDULE
from tracetutor.grading import (
    RETRIEVAL,
    UPDATE,
    Arrangement,
    execution_order_violations,
    grade_ordering,
    retrieval_update_violations,
    ru_order,
)
from tracetutor.replay import replay
from tracetutor.trace import render_trace_text


@pytest.fixture(scope="module")
def seq_lines(program):
    return render_trace_text(replay(program, SEQUENTIAL_SCHEDULE).trace)


def test_ru_order_of_the_race_execution(race_execution):
    order = ru_order(race_execution, "c")
    assert order.variable == "c"
    assert [(e.thread_name, e.kind) for e in order.sequence] == [
        ("main", UPDATE),        # construction initializes c
        ("thread-1", UPDATE),    # c++
        ("thread-2", UPDATE),    # c++
        ("thread-1", RETRIEVAL),  # return c feeding the first print
        ("thread-1", UPDATE),    # c--
        ("thread-1", RETRIEVAL),
        ("thread-2", RETRIEVAL),
        ("thread-2", UPDATE),    # c--
        ("thread-2", RETRIEVAL),
    ]


def test_ru_order_ignores_reads_that_never_reach_output(race_execution):
    # every retrieval in the counter program feeds a print through `value`;
    # the call and print events themselves are not retrievals
    order = ru_order(race_execution, "c")
    assert all(e.kind in (RETRIEVAL, UPDATE) for e in order.sequence)
    assert len(order.sequence) == 9


def test_identity_arrangement_is_perfect(exercise):
    report = grade_ordering(exercise, list(RACE_TRACE_LINES))
    assert report.accuracy == Fraction(1)
    assert report.errors == 0
    assert report.exec_violation_positions == ()
    assert report.ru_violation_positions == ()
    assert report.total_choices == 25


def test_swapping_call_and_body_costs_one_position(exercise):
    lines = list(RACE_TRACE_LINES)
    lines[5], lines[6] = lines[6], lines[5]
    report = grade_ordering(exercise, lines)
    assert report.exec_violation_positions == (6,)
    assert report.errors == 1
    assert report.accuracy == Fraction(24, 25)


def test_sequential_arrangement_breaks_the_ru_order_once(exercise, seq_lines):
    report = grade_ordering(exercise, seq_lines)
    assert report.exec_violation_positions == ()
    assert report.ru_violation_positions == (9,)
    assert report.errors == 1
    assert report.accuracy == Fraction(24, 25)


def test_execution_violations_suppress_ru_counting(exercise):
    lines = list(reversed(RACE_TRACE_LINES))
    report = grade_ordering(exercise, lines)
    assert report.exec_violation_positions
    assert report.ru_violation_positions == ()
    assert report.errors == len(report.exec_violation_positions)


def test_non_permutation_is_rejected(exercise):
    with pytest.raises(ArrangementError):
        grade_ordering(exercise, list(RACE_TRACE_LINES[:-1]))
    with pytest.raises(ArrangementError):
        grade_ordering(exercise,
                       list(RACE_TRACE_LINES[:-1]) + [RACE_TRACE_LINES[0]])


def test_violation_positions_are_one_based_and_sorted(exercise, program):
    lines = list(RACE_TRACE_LINES)
    lines[0], lines[1] = lines[1], lines[0]
    positions = execution_order_violations(program, Arrangement(tuple(lines)))
    assert positions == [1]


def test_ru_violations_report_projected_positions(exercise, seq_lines):
    positions = retrieval_update_violations(exercise, seq_lines)
    assert positions == [9]
    # position 9 is thread-1's second retrieval: in the sequential order it
    # projects before thread-2's c++, which the race reference puts earlier
    assert seq_lines[8] == "[thread-1] return c"


def test_report_serializes_with_exact_accuracy(exercise, seq_lines):
    report = grade_ordering(exercise, seq_lines)
    data = report.to_dict()
    assert data["accuracy"] == pytest.approx(0.96)
    assert data["accuracy_exact"] == "24/25"
    assert data["errors"] == 1
    assert data["total_choices"] == 25
    assert data["ru_violation_positions"] == [9]
