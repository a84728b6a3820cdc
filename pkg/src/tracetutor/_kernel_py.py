"""Pure-Python enumeration kernel.

Walks the schedule tree depth-first with incremental apply/undo, visiting
every feasible interleaving exactly once in lexicographic thread order.
``_kernel.pyx`` compiles the same algorithm; this module is the fallback
when the extension is unavailable (or TRACETUTOR_PURE=1).

Opcode quads and source-operand kinds are defined in
:mod:`tracetutor.explore` (OP_* / SRC_*); the numeric values are fixed and
mirrored here rather than imported to keep this module import-light.
"""

from __future__ import annotations

from typing import Iterator

NAME = "pure"


def enumerate_runs(counts, spawn_step, ops, shared_inits, n_slots,
                   ) -> Iterator[tuple[bytes, tuple, tuple]]:
    """Yield ``(steps, prints, finals)`` per feasible schedule: the thread
    ordinal per step as bytes, the ``(print_id, value)`` pairs emitted, and
    the final shared values."""
    n_threads = len(counts)
    total = sum(counts)
    shared = list(shared_inits)
    slots = [[0] * n for n in n_slots]
    prints: list[tuple[int, int]] = []
    progress = [0] * n_threads
    steps = bytearray(total)
    # one (thread, undo) pair per executed step; undo restores the mutation
    stack: list[tuple[int, tuple]] = []

    if total == 0:
        yield b"", (), tuple(shared)
        return

    pos = 0
    t = 0
    while True:
        if pos == total:
            yield bytes(steps), tuple(prints), tuple(shared)
            t = n_threads              # force a backtrack
        while t < n_threads:
            if progress[t] < counts[t] and (t == 0 or progress[0] >= spawn_step[t]):
                break
            t += 1
        if t == n_threads:
            if not stack:
                return
            t, undo = stack.pop()
            pos -= 1
            progress[t] -= 1
            tag = undo[0]
            if tag == 1:
                shared[undo[1]] -= undo[2]
            elif tag == 2:
                slots[t][undo[1]] = undo[2]
            elif tag == 3:
                prints.pop()
            elif tag == 4:
                shared[:] = undo[1]
            t += 1
            continue

        base = progress[t] * 4
        row = ops[t]
        op = row[base]
        undo = (0,)
        if op != 0:
            a, src, arg = row[base + 1], row[base + 2], row[base + 3]
            if op == 2:                          # inc shared
                shared[a] += 1
                undo = (1, a, 1)
            elif op == 3:                        # dec shared
                shared[a] -= 1
                undo = (1, a, -1)
            elif op == 4 or op == 5:             # set local / return
                if a >= 0:
                    value = (arg if src == 0
                             else slots[t][arg] if src == 1
                             else shared[arg])
                    undo = (2, a, slots[t][a])
                    slots[t][a] = value
            elif op == 6:                        # print
                value = (arg if src == 0
                         else slots[t][arg] if src == 1
                         else shared[arg] if src == 2
                         else 0)
                prints.append((row[base + 1], value))
                undo = (3,)
            else:                                # shared init
                undo = (4, tuple(shared))
                shared[:] = shared_inits
        steps[pos] = t
        stack.append((t, undo))
        progress[t] += 1
        pos += 1
        t = 0
