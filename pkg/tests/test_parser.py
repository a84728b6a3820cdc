import pytest

from tracetutor.errors import ParseError
from tracetutor.fixtures import COUNTER_SOURCE
from tracetutor.model import StatementKind
from tracetutor.parser import parse_program

GOOD_MINIMAL = """\
shared x = 3

method main()
    Worker w = new Worker()
    Thread a = new Thread(w)
    a.start()

method run()
    x++
"""


def test_counter_program_shape():
    program = parse_program(COUNTER_SOURCE)
    assert program.shared_names == ("c",)
    assert program.shared_vars == (("c", 0),)
    assert program.thread_names == ("main", "thread-1", "thread-2")
    assert {m.name for m in program.methods} == {
        "main", "increment", "decrement", "getValue", "run"}
    assert program.method("getValue").returns_value
    assert not program.method("run").returns_value


def test_display_text_is_the_trimmed_source_line():
    program = parse_program(COUNTER_SOURCE)
    main = program.method("main")
    assert main.body[0].display_text == "Counter counter = new Counter()"
    assert main.body[3].display_text == "t1.start()"
    run = program.method("run")
    assert run.body[2].display_text == (
        'System.out.println("Value for Thread After increment " + value)')


def test_source_lines_round_trip():
    program = parse_program(COUNTER_SOURCE)
    assert program.source_lines == tuple(COUNTER_SOURCE.splitlines())
    for method in program.methods:
        for statement in method.body:
            line = program.source_lines[statement.source_line - 1]
            assert line.strip() == statement.display_text


def test_statement_kinds_of_main():
    program = parse_program(COUNTER_SOURCE)
    kinds = [s.kind for s in program.method("main").body]
    assert kinds == [
        StatementKind.SHARED_INIT,
        StatementKind.THREAD_DECL,
        StatementKind.THREAD_DECL,
        StatementKind.SPAWN_START,
        StatementKind.SPAWN_START,
    ]


def test_thread_names_follow_start_order():
    source = GOOD_MINIMAL.replace(
        "    Thread a = new Thread(w)\n    a.start()",
        "    Thread a = new Thread(w)\n    Thread b = new Thread(w)\n"
        "    b.start()\n    a.start()")
    program = parse_program(source)
    # declaration order names the threads; start order does not rename them
    assert program.thread_names == ("main", "thread-1", "thread-2")
    assert program.thread_decls == (("thread-1", "run"), ("thread-2", "run"))


@pytest.mark.parametrize("mutation, message", [
    ("shared c = 0\n", "duplicate shared variable"),
    ("method increment()\n    c++\n", "duplicate method"),
])
def test_duplicate_declarations_are_rejected(mutation, message):
    with pytest.raises(ParseError, match=message):
        parse_program(COUNTER_SOURCE + mutation)


def test_missing_main_is_rejected():
    with pytest.raises(ParseError, match="must define a 'main' method"):
        parse_program("shared x = 1\n\nmethod run()\n    x++\n")


def test_unstarted_thread_is_rejected():
    source = GOOD_MINIMAL.replace("    a.start()\n", "")
    with pytest.raises(ParseError, match="never started"):
        parse_program(source)


def test_thread_constructor_requires_the_shared_object():
    source = GOOD_MINIMAL.replace("new Thread(w)", "new Thread()")
    with pytest.raises(ParseError, match="Thread constructor needs"):
        parse_program(source)


def test_shared_use_before_construction_is_rejected():
    source = """\
shared x = 0

method main()
    Worker w = new Worker()
    Thread a = new Thread(w)
    a.start()

method run()
    x++
"""
    broken = source.replace("    Worker w = new Worker()\n", "") \
                   .replace("new Thread(w)", "new Thread(x)")
    with pytest.raises(ParseError):
        parse_program(broken)


def test_shared_read_before_init_row_is_rejected():
    source = """\
shared x = 0

method main()
    System.out.println("before " + x)
    Worker w = new Worker()
    Thread a = new Thread(w)
    a.start()

method run()
    x++
"""
    with pytest.raises(ParseError, match="before construction"):
        parse_program(source)


def test_integer_literals_are_capped_at_32_bits():
    with pytest.raises(ParseError, match="out of range"):
        parse_program(GOOD_MINIMAL.replace("shared x = 3",
                                           "shared x = 2147483648"))
    parse_program(GOOD_MINIMAL.replace("shared x = 3",
                                       "shared x = 2147483647"))


def test_return_must_close_its_method():
    source = GOOD_MINIMAL + "\nmethod get()\n    return x\n    x++\n"
    with pytest.raises(ParseError, match="last statement"):
        parse_program(source)


def test_call_to_unknown_method_is_rejected():
    source = GOOD_MINIMAL.replace("    x++", "    this.missing()")
    with pytest.raises(ParseError, match="unresolved reference"):
        parse_program(source)


def test_void_method_cannot_be_assigned():
    source = COUNTER_SOURCE.replace("int value = this.getValue()",
                                    "int value = this.increment()")
    with pytest.raises(ParseError, match="does not return a value"):
        parse_program(source)


def test_threads_start_only_from_main():
    source = GOOD_MINIMAL.replace("    x++", "    a.start()")
    with pytest.raises(ParseError, match="only.*from main"):
        parse_program(source)


def test_local_shadowing_a_shared_variable_is_rejected():
    source = GOOD_MINIMAL.replace("    x++", "    int x = 1")
    with pytest.raises(ParseError, match="shadows"):
        parse_program(source)


def test_parse_error_carries_the_line_number():
    source = GOOD_MINIMAL + "\nmethod extra()\n    nonsense here\n"
    with pytest.raises(ParseError) as err:
        parse_program(source)
    assert err.value.line == len(source.splitlines())
