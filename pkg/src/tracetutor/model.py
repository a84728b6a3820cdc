"""Program model for MiniConc, a line-oriented mini concurrent language.

A program is a set of shared integer variables plus methods; ``main`` runs
on the main thread, constructs the shared state, and starts the declared
threads. Statements are atomic: replay records exactly one event per
executed statement. Because the language has no branching, every thread's
event sequence is static, which is what makes schedules enumerable and
replay deterministic.

This module holds the parsed representation (:class:`ProgramModel`) and the
compiled per-thread event templates (:class:`ProgramPlan`) that the
replayer, the enumerator, and the trace-text resolver all share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from tracetutor.errors import ParseError

MAIN_THREAD = "main"


class StatementKind(Enum):
    SHARED_INIT = "sharedInit"
    THREAD_DECL = "threadDecl"
    SPAWN_START = "spawnStart"
    LOCAL_DECL = "localDecl"
    ASSIGN_LOCAL = "assignLocal"
    INC_SHARED = "incShared"
    DEC_SHARED = "decShared"
    CALL_VOID = "callVoid"
    CALL_ASSIGN = "callAssign"
    PRINT = "print"
    RETURN_EXPR = "returnExpr"


class ExprKind(Enum):
    INT = "int"
    LOCAL = "local"
    SHARED = "shared"
    CONCAT = "concat"


@dataclass(frozen=True)
class Expression:
    """Right-hand side of an assignment, return, or print argument.

    ``CONCAT`` (a string literal optionally followed by ``+ ref``) is only
    legal inside print statements; the parser enforces that.
    """

    kind: ExprKind
    value: int = 0
    name: str = ""
    text: str = ""
    ref: "Expression | None" = None


@dataclass(frozen=True)
class Statement:
    """One executable source line. ``display_text`` is the trimmed raw
    line and is what trace rendering emits verbatim."""

    kind: StatementKind
    display_text: str
    source_line: int
    callee: str | None = None
    target: str | None = None
    var: str | None = None
    expr: Expression | None = None
    thread_name: str | None = None
    entry_method: str | None = None
    declares: bool = False


@dataclass(frozen=True)
class Method:
    name: str
    body: tuple[Statement, ...]
    source_line: int

    @property
    def returns_value(self) -> bool:
        return bool(self.body) and self.body[-1].kind is StatementKind.RETURN_EXPR


@dataclass(frozen=True)
class ProgramModel:
    """Validated program: construction happens through
    :func:`tracetutor.parser.parse_program` only."""

    name: str
    shared_vars: tuple[tuple[str, int], ...]
    methods: tuple[Method, ...]
    thread_decls: tuple[tuple[str, str], ...]
    source: str
    main_method: str = "main"

    def method(self, name: str) -> Method:
        for m in self.methods:
            if m.name == name:
                return m
        raise KeyError(name)

    @property
    def thread_names(self) -> tuple[str, ...]:
        return (MAIN_THREAD,) + tuple(name for name, _ in self.thread_decls)

    @property
    def shared_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.shared_vars)

    @property
    def source_lines(self) -> tuple[str, ...]:
        return tuple(self.source.splitlines())


class StatementRef(NamedTuple):
    """Identifies a statement by its method and 0-based body index."""

    method: str
    index: int


@dataclass(frozen=True)
class EventTemplate:
    """One event of a thread's static event sequence, with replay operands
    pre-resolved (local slots, shared ordinals, compiled expressions)."""

    index: int                      # 1-based position within the thread
    ref: StatementRef
    statement: Statement
    depth: int                      # 0 = directly inside the thread's root method
    parent: int                     # per-thread index of enclosing call event; 0 = root
    slot: int = -1                  # destination local slot for assignments
    return_slot: int = -1           # RETURN_EXPR: caller slot receiving the value
    spawn_target: int = -1          # SPAWN_START: ordinal of the thread it enables
    shared_slot: int = -1           # INC/DEC: ordinal of the shared variable
    code: tuple = ()                # compiled expression, see _compile_expr

    @property
    def display_text(self) -> str:
        return self.statement.display_text

    @property
    def source_line(self) -> int:
        return self.statement.source_line


@dataclass(frozen=True)
class ThreadPlan:
    name: str
    ordinal: int                    # 0 = main
    entry_method: str
    events: tuple[EventTemplate, ...]
    n_slots: int


@dataclass(frozen=True)
class ProgramPlan:
    """Static expansion of a program into per-thread event sequences."""

    program: ProgramModel
    threads: tuple[ThreadPlan, ...]
    shared_inits: tuple[int, ...]
    spawn_step: tuple[int, ...]     # per ordinal: 1-based main event enabling it; 0 for main
    total_events: int
    thread_index: dict[str, int] = field(compare=False, hash=False, default_factory=dict)

    def thread(self, name: str) -> ThreadPlan:
        return self.threads[self.thread_index[name]]


# --- compiled expression opcodes -------------------------------------------

def _compile_expr(expr: Expression, env: dict[str, int],
                  shared_index: dict[str, int]) -> tuple:
    if expr.kind is ExprKind.INT:
        return ("int", expr.value)
    if expr.kind is ExprKind.LOCAL:
        return ("slot", env[expr.name])
    if expr.kind is ExprKind.SHARED:
        return ("shared", shared_index[expr.name])
    if expr.kind is ExprKind.CONCAT:
        ref = None
        if expr.ref is not None:
            ref = _compile_expr(expr.ref, env, shared_index)
        return ("concat", expr.text, ref)
    raise AssertionError(expr.kind)


class _Draft:
    """Mutable template under construction; frozen into EventTemplate."""

    __slots__ = ("index", "ref", "statement", "depth", "parent", "slot",
                 "return_slot", "spawn_target", "shared_slot", "code")

    def __init__(self, index: int, ref: StatementRef, statement: Statement,
                 depth: int, parent: int):
        self.index = index
        self.ref = ref
        self.statement = statement
        self.depth = depth
        self.parent = parent
        self.slot = -1
        self.return_slot = -1
        self.spawn_target = -1
        self.shared_slot = -1
        self.code = ()

    def freeze(self) -> EventTemplate:
        return EventTemplate(
            index=self.index, ref=self.ref, statement=self.statement,
            depth=self.depth, parent=self.parent, slot=self.slot,
            return_slot=self.return_slot, spawn_target=self.spawn_target,
            shared_slot=self.shared_slot, code=self.code,
        )


def _expand_method(program: ProgramModel, method_name: str, depth: int,
                   parent: int, env: dict[str, int], out: list[_Draft],
                   alloc: list[int], shared_index: dict[str, int],
                   thread_ordinal: dict[str, int], stack: tuple[str, ...]) -> None:
    if method_name in stack:
        method = program.method(method_name)
        raise ParseError(f"recursive call to method '{method_name}'",
                         method.source_line)
    stack = stack + (method_name,)
    method = program.method(method_name)
    for i, stmt in enumerate(method.body):
        draft = _Draft(len(out) + 1, StatementRef(method_name, i), stmt, depth, parent)
        out.append(draft)
        kind = stmt.kind
        if kind in (StatementKind.LOCAL_DECL, StatementKind.ASSIGN_LOCAL):
            if stmt.declares:
                env[stmt.target] = alloc[0]
                alloc[0] += 1
            draft.slot = env[stmt.target]
            draft.code = _compile_expr(stmt.expr, env, shared_index)
        elif kind in (StatementKind.CALL_VOID, StatementKind.CALL_ASSIGN):
            if kind is StatementKind.CALL_ASSIGN and stmt.declares:
                env[stmt.target] = alloc[0]
                alloc[0] += 1
            call_index = draft.index
            child_env: dict[str, int] = {}
            _expand_method(program, stmt.callee, depth + 1, call_index, child_env,
                           out, alloc, shared_index, thread_ordinal, stack)
            if kind is StatementKind.CALL_ASSIGN:
                # The callee is value-returning, so the last event of its
                # expansion is its RETURN_EXPR; route the value to our slot.
                out[-1].return_slot = env[stmt.target]
        elif kind in (StatementKind.PRINT, StatementKind.RETURN_EXPR):
            draft.code = _compile_expr(stmt.expr, env, shared_index)
        elif kind is StatementKind.SPAWN_START:
            draft.spawn_target = thread_ordinal[stmt.thread_name]
        elif kind in (StatementKind.INC_SHARED, StatementKind.DEC_SHARED):
            draft.shared_slot = shared_index[stmt.var]
        # SHARED_INIT and THREAD_DECL carry no extra operands.


@lru_cache(maxsize=256)
def plan_for(program: ProgramModel) -> ProgramPlan:
    """Compile a program into its static per-thread event sequences."""
    shared_index = {name: i for i, (name, _) in enumerate(program.shared_vars)}
    thread_ordinal = {name: i + 1 for i, (name, _) in enumerate(program.thread_decls)}
    thread_ordinal[MAIN_THREAD] = 0

    plans: list[ThreadPlan] = []
    entries = [(MAIN_THREAD, program.main_method)] + list(program.thread_decls)
    for ordinal, (tname, entry) in enumerate(entries):
        drafts: list[_Draft] = []
        alloc = [0]
        _expand_method(program, entry, 0, 0, {}, drafts, alloc, shared_index,
                       thread_ordinal, ())
        plans.append(ThreadPlan(
            name=tname, ordinal=ordinal, entry_method=entry,
            events=tuple(d.freeze() for d in drafts), n_slots=alloc[0],
        ))

    spawn_step = [0] * len(plans)
    for tmpl in plans[0].events:
        if tmpl.statement.kind is StatementKind.SPAWN_START:
            spawn_step[tmpl.spawn_target] = tmpl.index

    plan = ProgramPlan(
        program=program,
        threads=tuple(plans),
        shared_inits=tuple(init for _, init in program.shared_vars),
        spawn_step=tuple(spawn_step),
        total_events=sum(len(p.events) for p in plans),
    )
    plan.thread_index.update({p.name: p.ordinal for p in plans})
    return plan
