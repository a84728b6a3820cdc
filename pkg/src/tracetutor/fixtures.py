"""Bundled counter program: two threads racing on one shared counter.

Each thread increments the counter, prints it, decrements it, and prints it
again. Under the fully sequential schedule the printed values alternate
1, 0, 1, 0; under the racy schedule both increments land before the first
print, so the values come out 2, 1, 1, 0.
"""

from __future__ import annotations

from tracetutor.model import ProgramModel
from tracetutor.parser import parse_program
from tracetutor.replay import Schedule, replay

COUNTER_SOURCE = """\
shared c = 0

method main()
    Counter counter = new Counter()
    Thread t1 = new Thread(counter)
    Thread t2 = new Thread(counter)
    t1.start()
    t2.start()

method increment()
    c++

method decrement()
    c--

method getValue()
    return c

method run()
    this.increment()
    int value = this.getValue()
    System.out.println("Value for Thread After increment " + value)
    this.decrement()
    value = this.getValue()
    System.out.println("Value for Thread at last " + value)
"""

# Both increments run back-to-back before either thread reads the counter.
RACE_SCHEDULE = Schedule.of(
    ("main", 5), ("thread-1", 2), ("thread-2", 2), ("thread-1", 8), ("thread-2", 8),
)

# Threads run to completion one after the other.
SEQUENTIAL_SCHEDULE = Schedule.of(("main", 5), ("thread-1", 10), ("thread-2", 10))

RACE_OUTPUT = (
    "Value for Thread After increment 2",
    "Value for Thread at last 1",
    "Value for Thread After increment 1",
    "Value for Thread at last 0",
)

SEQUENTIAL_OUTPUT = (
    "Value for Thread After increment 1",
    "Value for Thread at last 0",
    "Value for Thread After increment 1",
    "Value for Thread at last 0",
)

RACE_TRACE_LINES = (
    "[main] Counter counter = new Counter()",
    "[main] Thread t1 = new Thread(counter)",
    "[main] Thread t2 = new Thread(counter)",
    "[main] t1.start()",
    "[main] t2.start()",
    "[thread-1] this.increment()",
    "[thread-1] c++",
    "[thread-2] this.increment()",
    "[thread-2] c++",
    "[thread-1] int value = this.getValue()",
    "[thread-1] return c",
    '[thread-1] System.out.println("Value for Thread After increment " + value)',
    "[thread-1] this.decrement()",
    "[thread-1] c--",
    "[thread-1] value = this.getValue()",
    "[thread-1] return c",
    '[thread-1] System.out.println("Value for Thread at last " + value)',
    "[thread-2] int value = this.getValue()",
    "[thread-2] return c",
    '[thread-2] System.out.println("Value for Thread After increment " + value)',
    "[thread-2] this.decrement()",
    "[thread-2] c--",
    "[thread-2] value = this.getValue()",
    "[thread-2] return c",
    '[thread-2] System.out.println("Value for Thread at last " + value)',
)


def counter_program() -> ProgramModel:
    return parse_program(COUNTER_SOURCE)


def build_counter_exercise(seed: int = 42):
    """The bundled exercise: pick the racy trace, then fill in c's values.
    ``data/counter-race.json`` is this object frozen to disk."""
    from random import Random

    from tracetutor.exercises import ChoiceTrace, Exercise, generate_distractors

    program = counter_program()
    execution = replay(program, RACE_SCHEDULE)
    distractors = generate_distractors(program, execution.trace, RACE_OUTPUT,
                                       3, seed)
    index = Random(seed).randrange(len(distractors) + 1)
    choices = list(distractors)
    choices.insert(index, ChoiceTrace(RACE_TRACE_LINES))
    return Exercise(
        id="counter-race",
        title="Two threads racing on a shared counter",
        program_source=COUNTER_SOURCE,
        given_output=RACE_OUTPUT,
        correct_schedule=RACE_SCHEDULE,
        choices=tuple(choices),
        correct_choice_index=index,
        tracked_vars=("c",),
        ordering_items=RACE_TRACE_LINES,
    )
