"""tracetutor: a learning platform for multi-threaded program behavior.

Small concurrent programs are replayed deterministically under explicit
schedules to produce thread-tagged traces; exercises built on those traces
(trace selection, variable-value fill-in, trace ordering) are checked and
graded server-side, and trace-table geometry plus a replay cursor drive a
web learner UI.
"""

from tracetutor.errors import (
    ArrangementError,
    DistractorBudgetError,
    EmptyTraceError,
    EnumerationBoundError,
    ExerciseFormatError,
    IncompleteScheduleError,
    InfeasibleStepError,
    ParseError,
    ReplayError,
    TraceFormatError,
    TraceTutorError,
    UninitializedVariableError,
    UnknownThreadError,
)
from tracetutor.exercises import (
    CellVerdict,
    ChoiceTrace,
    Exercise,
    FillInGrade,
    FillInSheet,
    ValidationReport,
    exercise_from_dict,
    exercise_to_dict,
    expected_value_timeline,
    generate_distractors,
    grade_fill_in,
    is_correct_choice,
    load_exercise,
    save_exercise,
    validate_exercise,
)
from tracetutor.explore import (
    Feasibility,
    backend_name,
    count_schedules,
    enumerate_schedules,
    feasible,
    sample_schedule,
    sample_schedules,
)
from tracetutor.fixtures import build_counter_exercise, counter_program
from tracetutor.grading import (
    Arrangement,
    GradeReport,
    RUEvent,
    RUOrder,
    execution_order_violations,
    grade_ordering,
    retrieval_update_violations,
    ru_order,
)
from tracetutor.layout import (
    Box,
    ReplayState,
    TableLayout,
    layout,
    replay_init,
    replay_step,
)
from tracetutor.model import ProgramModel, StatementRef
from tracetutor.parser import parse_program
from tracetutor.replay import ExecutionResult, Schedule, replay
from tracetutor.trace import (
    Event,
    Trace,
    parse_trace_text,
    project_thread,
    render_trace_text,
    resolve_trace_lines,
)

__version__ = "0.1.0"

__all__ = [
    "ArrangementError", "DistractorBudgetError", "EmptyTraceError",
    "EnumerationBoundError", "ExerciseFormatError", "IncompleteScheduleError",
    "InfeasibleStepError", "ParseError", "ReplayError", "TraceFormatError",
    "TraceTutorError", "UninitializedVariableError", "UnknownThreadError",
    "CellVerdict", "ChoiceTrace", "Exercise", "FillInGrade", "FillInSheet",
    "ValidationReport", "exercise_from_dict", "exercise_to_dict",
    "expected_value_timeline", "generate_distractors", "grade_fill_in",
    "is_correct_choice", "load_exercise", "save_exercise", "validate_exercise",
    "Feasibility", "backend_name", "count_schedules", "enumerate_schedules",
    "feasible", "sample_schedule", "sample_schedules",
    "build_counter_exercise", "counter_program",
    "Arrangement", "GradeReport", "RUEvent", "RUOrder",
    "execution_order_violations", "grade_ordering",
    "retrieval_update_violations", "ru_order",
    "Box", "ReplayState", "TableLayout", "layout", "replay_init", "replay_step",
    "ProgramModel", "StatementRef", "parse_program",
    "ExecutionResult", "Schedule", "replay",
    "Event", "Trace", "parse_trace_text", "project_thread",
    "render_trace_text", "resolve_trace_lines",
    "__version__",
]
