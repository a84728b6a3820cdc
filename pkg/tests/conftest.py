import pytest

from tracetutor.fixtures import (
    RACE_SCHEDULE,
    SEQUENTIAL_SCHEDULE,
    build_counter_exercise,
    counter_program,
)
from tracetutor.replay import replay


@pytest.fixture(scope="session")
def program():
    return counter_program()


@pytest.fixture(scope="session")
def race_execution(program):
    return replay(program, RACE_SCHEDULE)


@pytest.fixture(scope="session")
def seq_execution(program):
    return replay(program, SEQUENTIAL_SCHEDULE)


@pytest.fixture(scope="session")
def exercise():
    return build_counter_exercise()
