"""Parser for MiniConc source text.

The format is line-oriented UTF-8. Top-level lines declare shared variables
(``shared c = 0``) and methods (``method run()``); indented lines form the
body of the preceding method. Statement spelling is deliberately Java-
flavored (``this.increment()``, ``c++``, ``System.out.println(...)``)
because the trimmed source line doubles as the event text shown in traces.
``docs/grammar.md`` holds the full EBNF.
"""

from __future__ import annotations

import re

from tracetutor.errors import ParseError
from tracetutor.model import (
    ExprKind,
    Expression,
    Method,
    ProgramModel,
    ProgramPlan,
    Statement,
    StatementKind,
    plan_for,
)

_RE_SHARED_DECL = re.compile(r"^shared\s+([A-Za-z_]\w*)\s*=\s*([+-]?\d+)$")
_RE_METHOD_DEF = re.compile(r"^method\s+([A-Za-z_]\w*)\(\)$")
_RE_THREAD_DECL = re.compile(
    r"^Thread\s+([A-Za-z_]\w*)\s*=\s*new\s+Thread\(\s*([A-Za-z_]\w*)"
    r"(?:\s*,\s*\"([^\"]+)\")?\s*\)$"
)
_RE_SHARED_INIT = re.compile(
    r"^([A-Z]\w*)\s+([A-Za-z_]\w*)\s*=\s*new\s+([A-Z]\w*)\(\)$"
)
_RE_SPAWN_START = re.compile(r"^([A-Za-z_]\w*)\.start\(\)$")
_RE_CALL_VOID = re.compile(r"^this\.([A-Za-z_]\w*)\(\)$")
_RE_CALL_ASSIGN_DECL = re.compile(
    r"^(?:int|local)\s+([A-Za-z_]\w*)\s*=\s*this\.([A-Za-z_]\w*)\(\)$"
)
_RE_CALL_ASSIGN = re.compile(r"^([A-Za-z_]\w*)\s*=\s*this\.([A-Za-z_]\w*)\(\)$")
_RE_LOCAL_DECL = re.compile(r"^(?:int|local)\s+([A-Za-z_]\w*)\s*=\s*(.+)$")
_RE_ASSIGN = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.+)$")
_RE_INC = re.compile(r"^([A-Za-z_]\w*)\+\+$")
_RE_DEC = re.compile(r"^([A-Za-z_]\w*)--$")
_RE_PRINT = re.compile(r"^(?:System\.out\.println|print)\((.*)\)$")
_RE_RETURN = re.compile(r"^return\s+(.+)$")
_RE_INT = re.compile(r"^[+-]?\d+$")
_RE_IDENT = re.compile(r"^[A-Za-z_]\w*$")

# Values live in 64-bit cells during enumeration; capping literals at 32
# bits leaves schedule-length increments far from overflow.
_INT_MIN, _INT_MAX = -(2**31), 2**31 - 1
_RE_CONCAT = re.compile(r"^\"([^\"]*)\"(?:\s*\+\s*([A-Za-z_]\w*))?$")


class _MethodDraft:
    def __init__(self, name: str, source_line: int):
        self.name = name
        self.source_line = source_line
        self.lines: list[tuple[int, str]] = []   # (source_line, trimmed text)


def parse_program(source: str) -> ProgramModel:
    """Parse and validate MiniConc source; raises :class:`ParseError` with
    a 1-based location on rejection."""
    shared_vars: list[tuple[str, int]] = []
    drafts: list[_MethodDraft] = []
    current: _MethodDraft | None = None

    for lineno, raw in enumerate(source.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("//") or stripped.startswith("#"):
            continue
        indented = raw[0] in (" ", "\t")
        if indented:
            if current is None:
                raise ParseError("statement outside any method body", lineno,
                                 len(raw) - len(raw.lstrip()) + 1)
            current.lines.append((lineno, stripped))
            continue
        current = None
        m = _RE_SHARED_DECL.match(stripped)
        if m:
            name, init = m.group(1), int(m.group(2))
            if any(name == n for n, _ in shared_vars):
                raise ParseError(f"duplicate shared variable '{name}'", lineno)
            if not _INT_MIN <= init <= _INT_MAX:
                raise ParseError("integer literal out of range", lineno)
            shared_vars.append((name, init))
            continue
        m = _RE_METHOD_DEF.match(stripped)
        if m:
            name = m.group(1)
            if any(d.name == name for d in drafts):
                raise ParseError(f"duplicate method '{name}'", lineno)
            current = _MethodDraft(name, lineno)
            drafts.append(current)
            continue
        raise ParseError(f"unrecognized top-level line: {stripped!r}", lineno)

    return _analyze(source, shared_vars, drafts)


def _parse_expr(text: str, lineno: int, locals_seen: set[str],
                shared_names: set[str]) -> Expression:
    text = text.strip()
    if _RE_INT.match(text):
        value = int(text)
        if not _INT_MIN <= value <= _INT_MAX:
            raise ParseError("integer literal out of range", lineno)
        return Expression(ExprKind.INT, value=value)
    if _RE_IDENT.match(text):
        if text in locals_seen:
            return Expression(ExprKind.LOCAL, name=text)
        if text in shared_names:
            return Expression(ExprKind.SHARED, name=text)
        raise ParseError(f"unresolved reference '{text}'", lineno)
    raise ParseError(f"cannot parse expression: {text!r}", lineno)


def _parse_print_arg(text: str, lineno: int, locals_seen: set[str],
                     shared_names: set[str]) -> Expression:
    text = text.strip()
    m = _RE_CONCAT.match(text)
    if m:
        literal, ref_name = m.group(1), m.group(2)
        ref = None
        if ref_name is not None:
            ref = _parse_expr(ref_name, lineno, locals_seen, shared_names)
        return Expression(ExprKind.CONCAT, text=literal, ref=ref)
    return _parse_expr(text, lineno, locals_seen, shared_names)


def _analyze(source: str, shared_vars: list[tuple[str, int]],
             drafts: list[_MethodDraft]) -> ProgramModel:
    method_names = {d.name for d in drafts}
    mains = [d for d in drafts if d.name == "main"]
    if not mains:
        raise ParseError("program must define a 'main' method", 1)
    shared_names = {n for n, _ in shared_vars}

    class_name: str | None = None
    object_var: str | None = None
    thread_vars: dict[str, str] = {}          # variable -> thread name
    thread_decls: list[tuple[str, str]] = []  # (thread name, entry method)
    started: set[str] = set()
    methods: list[Method] = []
    pending_calls: list[tuple[str, int, bool]] = []  # (callee, line, wants value)

    for draft in drafts:
        in_main = draft.name == "main"
        locals_seen: set[str] = set()
        body: list[Statement] = []
        for lineno, text in draft.lines:
            stmt = _parse_statement(
                text, lineno, in_main, locals_seen, shared_names, method_names,
                shared_vars, thread_vars, thread_decls, started, pending_calls,
                class_name, object_var,
            )
            if stmt.kind is StatementKind.SHARED_INIT:
                class_name = stmt.display_text.split()[0]
                object_var = stmt.target
            body.append(stmt)
        for i, stmt in enumerate(body[:-1]):
            if stmt.kind is StatementKind.RETURN_EXPR:
                raise ParseError("'return' must be the last statement of its method",
                                 stmt.source_line)
        methods.append(Method(draft.name, tuple(body), draft.source_line))

    by_name = {m.name: m for m in methods}
    for callee, lineno, wants_value in pending_calls:
        target = by_name[callee]
        if wants_value and not target.returns_value:
            raise ParseError(f"method '{callee}' does not return a value", lineno)
    for tname, entry in thread_decls:
        if entry not in by_name:
            raise ParseError(f"thread '{tname}' entry method '{entry}' is not defined", 1)
        if by_name[entry].returns_value:
            raise ParseError(f"thread entry method '{entry}' must not return a value",
                             by_name[entry].source_line)
    for tname, _ in thread_decls:
        if tname not in started:
            raise ParseError(f"thread '{tname}' is declared but never started", 1)

    program = ProgramModel(
        name=class_name or "program",
        shared_vars=tuple(shared_vars),
        methods=tuple(methods),
        thread_decls=tuple(thread_decls),
        source=source,
    )
    # surfaces recursion errors at parse time
    _check_shared_after_init(plan_for(program))
    return program


def _code_reads_shared(code: tuple) -> bool:
    if not code:
        return False
    if code[0] == "shared":
        return True
    return code[0] == "concat" and code[2] is not None and code[2][0] == "shared"


def _check_shared_after_init(plan: ProgramPlan) -> None:
    # Shared variables come to life at the construction event, so nothing
    # main runs before it may read or update them. Other threads are gated
    # behind their start() in main, which the thread-declaration rules
    # already place after construction.
    init_seen = False
    for tmpl in plan.threads[0].events:
        if tmpl.statement.kind is StatementKind.SHARED_INIT:
            init_seen = True
        elif not init_seen and (tmpl.shared_slot >= 0 or _code_reads_shared(tmpl.code)):
            raise ParseError("shared variable used before construction",
                             tmpl.source_line)


def _parse_statement(text: str, lineno: int, in_main: bool,
                     locals_seen: set[str], shared_names: set[str],
                     method_names: set[str], shared_vars, thread_vars,
                     thread_decls, started, pending_calls,
                     class_name, object_var) -> Statement:
    m = _RE_THREAD_DECL.match(text)
    if m:
        if not in_main:
            raise ParseError("thread declarations are only allowed in main", lineno)
        var, target, explicit = m.group(1), m.group(2), m.group(3)
        if target != object_var:
            raise ParseError(f"unresolved reference '{target}': no constructed object",
                             lineno)
        if var in thread_vars:
            raise ParseError(f"duplicate thread variable '{var}'", lineno)
        tname = explicit if explicit else f"thread-{len(thread_decls) + 1}"
        if tname == "main" or any(tname == n for n, _ in thread_decls):
            raise ParseError(f"duplicate thread name '{tname}'", lineno)
        thread_vars[var] = tname
        thread_decls.append((tname, "run"))
        if "run" not in method_names:
            raise ParseError("thread declaration requires a 'run' method", lineno)
        return Statement(StatementKind.THREAD_DECL, text, lineno,
                         thread_name=tname, entry_method="run", target=var)
    m = _RE_SHARED_INIT.match(text)
    if m:
        if not in_main:
            raise ParseError("object construction is only allowed in main", lineno)
        if m.group(3) == "Thread":
            # new Thread() without an object argument lands here
            raise ParseError("Thread constructor needs the shared object", lineno)
        if m.group(1) != m.group(3):
            raise ParseError("constructor class must match the declared type", lineno)
        if object_var is not None or class_name is not None:
            raise ParseError("object is already constructed", lineno)
        return Statement(StatementKind.SHARED_INIT, text, lineno, target=m.group(2))
    m = _RE_SPAWN_START.match(text)
    if m:
        if not in_main:
            raise ParseError("threads can only be started from main", lineno)
        var = m.group(1)
        if var not in thread_vars:
            raise ParseError(f"unresolved reference '{var}': not a declared thread",
                             lineno)
        tname = thread_vars[var]
        if tname in started:
            raise ParseError(f"thread '{tname}' is started twice", lineno)
        started.add(tname)
        return Statement(StatementKind.SPAWN_START, text, lineno, thread_name=tname)
    m = _RE_CALL_VOID.match(text)
    if m:
        callee = m.group(1)
        if callee not in method_names:
            raise ParseError(f"unresolved reference: method '{callee}'", lineno)
        if callee == "main":
            raise ParseError("the main method cannot be called", lineno)
        pending_calls.append((callee, lineno, False))
        return Statement(StatementKind.CALL_VOID, text, lineno, callee=callee)
    m = _RE_CALL_ASSIGN_DECL.match(text)
    if m:
        target, callee = m.group(1), m.group(2)
        _check_new_local(target, lineno, locals_seen, shared_names)
        if callee not in method_names or callee == "main":
            raise ParseError(f"unresolved reference: method '{callee}'", lineno)
        pending_calls.append((callee, lineno, True))
        locals_seen.add(target)
        return Statement(StatementKind.CALL_ASSIGN, text, lineno,
                         target=target, callee=callee, declares=True)
    m = _RE_CALL_ASSIGN.match(text)
    if m:
        target, callee = m.group(1), m.group(2)
        if target not in locals_seen:
            raise ParseError(f"unresolved reference '{target}': assign before declaration",
                             lineno)
        if callee not in method_names or callee == "main":
            raise ParseError(f"unresolved reference: method '{callee}'", lineno)
        pending_calls.append((callee, lineno, True))
        return Statement(StatementKind.CALL_ASSIGN, text, lineno,
                         target=target, callee=callee, declares=False)
    m = _RE_INC.match(text)
    if m:
        var = m.group(1)
        if var not in shared_names:
            raise ParseError(f"unresolved reference '{var}': not a shared variable",
                             lineno)
        return Statement(StatementKind.INC_SHARED, text, lineno, var=var)
    m = _RE_DEC.match(text)
    if m:
        var = m.group(1)
        if var not in shared_names:
            raise ParseError(f"unresolved reference '{var}': not a shared variable",
                             lineno)
        return Statement(StatementKind.DEC_SHARED, text, lineno, var=var)
    m = _RE_PRINT.match(text)
    if m:
        expr = _parse_print_arg(m.group(1), lineno, locals_seen, shared_names)
        return Statement(StatementKind.PRINT, text, lineno, expr=expr)
    m = _RE_RETURN.match(text)
    if m:
        expr = _parse_expr(m.group(1), lineno, locals_seen, shared_names)
        return Statement(StatementKind.RETURN_EXPR, text, lineno, expr=expr)
    m = _RE_LOCAL_DECL.match(text)
    if m:
        target, rhs = m.group(1), m.group(2)
        _check_new_local(target, lineno, locals_seen, shared_names)
        expr = _parse_expr(rhs, lineno, locals_seen, shared_names)
        locals_seen.add(target)
        return Statement(StatementKind.LOCAL_DECL, text, lineno,
                         target=target, expr=expr, declares=True)
    m = _RE_ASSIGN.match(text)
    if m:
        target, rhs = m.group(1), m.group(2)
        if target not in locals_seen:
            raise ParseError(f"unresolved reference '{target}': assign before declaration",
                             lineno)
        expr = _parse_expr(rhs, lineno, locals_seen, shared_names)
        return Statement(StatementKind.ASSIGN_LOCAL, text, lineno,
                         target=target, expr=expr)
    raise ParseError(f"cannot parse statement: {text!r}", lineno)


def _check_new_local(name: str, lineno: int, locals_seen: set[str],
                     shared_names: set[str]) -> None:
    if name in locals_seen:
        raise ParseError(f"local '{name}' is already declared", lineno)
    if name in shared_names:
        raise ParseError(f"local '{name}' shadows a shared variable", lineno)
