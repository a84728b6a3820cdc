# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same contract and visit order as tracetutor._kernel_py (the reference
implementation); state lives in flat C arrays so the per-step apply/undo
work runs without interpreter overhead. Integer literals are capped to
32 bits by the parser, so 64-bit cells cannot overflow.
"""

from cpython cimport array
import array

NAME = "compiled"

_INT_TEMPLATE = array.array("i", [])
_VAL_TEMPLATE = array.array("q", [])


def enumerate_runs(counts, spawn_step, ops, shared_inits, n_slots):
    """Yield (steps, prints, finals) per feasible schedule; see _kernel_py."""
    cdef int n_threads = len(counts)
    cdef int n_shared = len(shared_inits)
    cdef int total = 0
    cdef int i, k, t, pos, base, op, a, src, n_prints
    cdef long long value

    cdef array.array counts_a = array.array("i", counts)
    cdef array.array spawn_a = array.array("i", spawn_step)
    cdef int[::1] counts_v = counts_a
    cdef int[::1] spawn_v = spawn_a
    for i in range(n_threads):
        total += counts_v[i]

    if total == 0:
        yield b"", (), tuple(shared_inits)
        return

    # per-thread opcode quads, flattened; thread t's events start at off[t]
    cdef array.array off_a = array.clone(_INT_TEMPLATE, n_threads + 1, zero=True)
    cdef int[::1] off = off_a
    for i in range(n_threads):
        off[i + 1] = off[i] + counts_v[i]
    flat = []
    for row in ops:
        flat.extend(row)
    cdef array.array code_a = array.array("q", flat)
    cdef long long[::1] code = code_a

    cdef array.array soff_a = array.clone(_INT_TEMPLATE, n_threads + 1, zero=True)
    cdef int[::1] soff = soff_a
    for i in range(n_threads):
        soff[i + 1] = soff[i] + n_slots[i]
    cdef array.array slots_a = array.clone(_VAL_TEMPLATE, soff[n_threads], zero=True)
    cdef long long[::1] slots = slots_a

    cdef array.array inits_a = array.array("q", shared_inits)
    cdef long long[::1] inits = inits_a
    cdef array.array shared_a = array.array("q", shared_inits)
    cdef long long[::1] shared = shared_a
    cdef array.array init_old_a = array.clone(_VAL_TEMPLATE, n_shared, zero=True)
    cdef long long[::1] init_old = init_old_a

    cdef array.array progress_a = array.clone(_INT_TEMPLATE, n_threads, zero=True)
    cdef int[::1] progress = progress_a

    steps_b = bytearray(total)
    cdef unsigned char[::1] steps = steps_b
    cdef array.array chosen_a = array.clone(_INT_TEMPLATE, total, zero=True)
    cdef int[::1] chosen = chosen_a
    cdef array.array utag_a = array.clone(_INT_TEMPLATE, total, zero=True)
    cdef int[::1] utag = utag_a
    cdef array.array ua_a = array.clone(_INT_TEMPLATE, total, zero=True)
    cdef int[::1] ua = ua_a
    cdef array.array uold_a = array.clone(_VAL_TEMPLATE, total, zero=True)
    cdef long long[::1] uold = uold_a
    cdef array.array pid_a = array.clone(_INT_TEMPLATE, total, zero=True)
    cdef int[::1] print_ids = pid_a
    cdef array.array pval_a = array.clone(_VAL_TEMPLATE, total, zero=True)
    cdef long long[::1] print_vals = pval_a

    pos = 0
    t = 0
    n_prints = 0
    while True:
        if pos == total:
            plist = []
            for i in range(n_prints):
                plist.append((print_ids[i], print_vals[i]))
            yield (bytes(steps_b), tuple(plist), tuple(shared_a))
            t = n_threads
        while t < n_threads:
            if progress[t] < counts_v[t] and (t == 0 or progress[0] >= spawn_v[t]):
                break
            t += 1
        if t == n_threads:
            if pos == 0:
                return
            pos -= 1
            t = chosen[pos]
            progress[t] -= 1
            op = utag[pos]
            if op == 1:
                shared[ua[pos]] -= uold[pos]
            elif op == 2:
                slots[ua[pos]] = uold[pos]
            elif op == 3:
                n_prints -= 1
            elif op == 4:
                for i in range(n_shared):
                    shared[i] = init_old[i]
            t += 1
            continue

        base = (off[t] + progress[t]) * 4
        op = <int> code[base]
        utag[pos] = 0
        if op != 0:
            a = <int> code[base + 1]
            src = <int> code[base + 2]
            if op == 2:
                shared[a] += 1
                utag[pos] = 1
                ua[pos] = a
                uold[pos] = 1
            elif op == 3:
                shared[a] -= 1
                utag[pos] = 1
                ua[pos] = a
                uold[pos] = -1
            elif op == 4 or op == 5:
                if a >= 0:
                    if src == 0:
                        value = code[base + 3]
                    elif src == 1:
                        value = slots[soff[t] + <int> code[base + 3]]
                    else:
                        value = shared[<int> code[base + 3]]
                    utag[pos] = 2
                    ua[pos] = soff[t] + a
                    uold[pos] = slots[soff[t] + a]
                    slots[soff[t] + a] = value
            elif op == 6:
                if src == 0:
                    value = code[base + 3]
                elif src == 1:
                    value = slots[soff[t] + <int> code[base + 3]]
                elif src == 2:
                    value = shared[<int> code[base + 3]]
                else:
                    value = 0
                print_ids[n_prints] = a
                print_vals[n_prints] = value
                n_prints += 1
                utag[pos] = 3
            else:
                for i in range(n_shared):
                    init_old[i] = shared[i]
                    shared[i] = inits[i]
                utag[pos] = 4
        steps[pos] = <unsigned char> t
        chosen[pos] = t
        progress[t] += 1
        pos += 1
        t = 0
