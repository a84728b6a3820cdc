"""Authoring and operations command line.

validate        check an exercise file; exit 0 when valid, 1 when not
enumerate       count every schedule of an exercise's program and the
                distinct outputs they produce; exit 1 when over budget
grade-ordering  grade a proposed arrangement of the reference trace;
                exit 0 when violation-free, 1 when violations were found
serve           run the HTTP service

All reports are JSON on standard output; diagnostics go to standard
error with exit code 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from tracetutor.errors import TraceTutorError
from tracetutor.exercises import load_exercise, validate_exercise
from tracetutor.explore import DEFAULT_MAX_EVENTS, backend_name, enumerate_schedules
from tracetutor.grading import grade_ordering

DEFAULT_LOG = "attempts.jsonl"


def default_data_dir() -> Path:
    return Path(str(resources.files("tracetutor") / "data"))


def _read_arrangement(path: Path) -> list[str]:
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return [line for line in text.splitlines() if line.strip()]
    if isinstance(data, dict):
        data = data.get("ordered_lines")
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise ValueError("arrangement must be a list of trace lines")
    return data


def _cmd_validate(args: argparse.Namespace) -> int:
    exercise = load_exercise(args.exercise, seed=args.seed)
    report = validate_exercise(exercise)
    print(json.dumps({"exercise": exercise.id, **report.to_dict()}, indent=2))
    return 0 if report.ok else 1


def _cmd_enumerate(args: argparse.Namespace) -> int:
    exercise = load_exercise(args.exercise, seed=args.seed)
    outputs: dict[tuple[str, ...], int] = {}
    count = 0
    for execution in enumerate_schedules(exercise.program,
                                         max_events=args.max_events):
        count += 1
        key = tuple(execution.output_lines)
        outputs[key] = outputs.get(key, 0) + 1
    print(json.dumps({
        "exercise": exercise.id,
        "backend": backend_name(),
        "max_events": args.max_events,
        "schedules": count,
        "distinct_outputs": len(outputs),
        "outputs": [{"output": list(key), "schedules": n}
                    for key, n in sorted(outputs.items())],
    }, indent=2))
    return 0


def _cmd_grade_ordering(args: argparse.Namespace) -> int:
    exercise = load_exercise(args.exercise, seed=args.seed)
    arrangement = _read_arrangement(args.arrangement)
    report = grade_ordering(exercise, arrangement)
    print(json.dumps({"exercise": exercise.id, **report.to_dict()}, indent=2))
    return 0 if report.errors == 0 else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from tracetutor.service.app import create_app

    app = create_app(args.data_dir, args.log_file, seed=args.seed)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracetutor",
        description="author, check, and serve concurrency trace exercises")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for generated answer choices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an exercise file")
    p.add_argument("exercise", type=Path)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("enumerate",
                       help="count all schedules and their outputs")
    p.add_argument("exercise", type=Path)
    p.add_argument("--max-events", type=int, default=DEFAULT_MAX_EVENTS)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("grade-ordering",
                       help="grade an arrangement of the reference trace")
    p.add_argument("exercise", type=Path)
    p.add_argument("arrangement", type=Path,
                   help="JSON list, {'ordered_lines': [...]}, or plain lines")
    p.set_defaults(func=_cmd_grade_ordering)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", type=Path, default=default_data_dir())
    p.add_argument("--log-file", type=Path, default=Path(DEFAULT_LOG))
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TraceTutorError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
