from random import Random

import pytest

from tracetutor.errors import EnumerationBoundError
from tracetutor.explore import (
    backend_name,
    count_schedules,
    enumerate_schedules,
    feasible,
    sample_schedule,
    sample_schedules,
)
from tracetutor.fixtures import RACE_SCHEDULE
from tracetutor.parser import parse_program
from tracetutor.replay import replay

TWO_STEP_SOURCE = """\
shared n = 5

method main()
    Worker w = new Worker()
    Thread a = new Thread(w)
    Thread b = new Thread(w)
    a.start()
    b.start()

method run()
    n++
    n--
"""


@pytest.fixture(scope="module")
def small_program():
    return parse_program(TWO_STEP_SOURCE)


def test_feasible_accepts_the_recorded_order(program, race_execution):
    result = feasible(program, race_execution.event_order)
    assert result.ok and bool(result) and result.violation == 0


def test_feasible_rejects_swapped_call_and_body(program, race_execution):
    order = list(race_execution.event_order)
    order[5], order[6] = order[6], order[5]
    result = feasible(program, order)
    assert not result.ok and result.violation == 6


def test_feasible_rejects_reversed_order(program, race_execution):
    result = feasible(program, list(reversed(race_execution.event_order)))
    assert not result.ok and result.violation == 1


def test_feasible_rejects_thread_before_spawn(program, race_execution):
    order = race_execution.event_order
    # thread-1's first event moved before t1.start() (position 4)
    reordered = order[:3] + [order[5]] + order[3:5] + order[6:]
    result = feasible(program, reordered)
    assert not result.ok and result.violation == 4


def test_feasible_rejects_unknown_thread(program, race_execution):
    order = [("ghost", race_execution.event_order[0][1])]
    result = feasible(program, order)
    assert not result.ok and result.violation == 1


def test_enumeration_counts_the_small_program(small_program):
    # main's first four events are a fixed prefix; the remaining b.start()
    # interleaves with thread a's two events, and thread b joins after it:
    # words over {m, a, a, b, b} with m before the first b make 10
    assert count_schedules(small_program) == 10


def test_enumeration_is_lexicographic_and_feasible(small_program):
    orders = []
    for execution in enumerate_schedules(small_program):
        assert feasible(small_program, execution.event_order)
        orders.append(execution.schedule.steps)
    assert orders == sorted(orders)
    assert len(set(orders)) == len(orders)


def test_enumeration_finds_every_output(small_program):
    outputs = {e.output_lines for e in enumerate_schedules(small_program)}
    # no prints in this program: all interleavings agree
    assert outputs == {()}
    finals = {tuple(e.final_values.items()) for e in enumerate_schedules(small_program)}
    assert finals == {(("n", 5),)}


def test_enumeration_respects_the_event_bound(program):
    with pytest.raises(EnumerationBoundError):
        next(enumerate_schedules(program, max_events=10))
    # 25 events sit exactly at a bound of 25, which is allowed
    first = next(enumerate_schedules(program, max_events=25))
    assert first.schedule.steps[:5] == ("main",) * 5


def test_backend_name_is_known():
    assert backend_name() in ("compiled", "pure")


def test_sampled_schedules_replay_cleanly(program):
    for schedule in sample_schedules(program, 25, seed=7):
        execution = replay(program, schedule)
        assert feasible(program, execution.event_order)


def test_sampling_is_deterministic(program):
    first = sample_schedules(program, 10, seed=3)
    second = sample_schedules(program, 10, seed=3)
    assert first == second
    assert sample_schedule(program, Random(3)).steps == first[0].steps


def test_race_schedule_is_among_samples_eventually(program):
    # not a distribution test, just that sampling covers real interleavings
    seen = {s.steps for s in sample_schedules(program, 200, seed=0)}
    assert len(seen) > 150
    assert all(steps[0] == "main" for steps in seen)
    assert RACE_SCHEDULE.steps[:5] == ("main",) * 5
