"""The compiled enumeration kernel and its pure-Python fallback must be
interchangeable: same schedules, same prints, same final values, same order.
"""

import os
import subprocess
import sys

import pytest

from tracetutor import _kernel_py
from tracetutor.explore import encode_plan
from tracetutor.model import plan_for

compiled = pytest.importorskip(
    "tracetutor._kernel", reason="compiled kernel not built")


def _streams(kernel, program):
    code = encode_plan(plan_for(program))
    return kernel.enumerate_runs(code.counts, code.spawn_step, code.ops,
                                 code.shared_inits, code.n_slots)


def test_kernel_names_differ():
    assert _kernel_py.NAME == "pure"
    assert compiled.NAME == "compiled"


def test_kernels_agree_on_the_counter_program(program):
    pairs = zip(_streams(_kernel_py, program), _streams(compiled, program),
                strict=True)
    for pure_record, compiled_record in pairs:
        assert pure_record == compiled_record


def test_environment_variable_forces_the_pure_kernel():
    script = ("import tracetutor.explore as e; print(e.backend_name())")
    env = dict(os.environ, TRACETUTOR_PURE="1")
    out = subprocess.run([sys.executable, "-c", script], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"

    env.pop("TRACETUTOR_PURE")
    out = subprocess.run([sys.executable, "-c", script], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "compiled"
