# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled DP kernel: one-step state-count propagation.

Same contract as ``_kernel_py.advance`` and bit-identical results.  When
the final counts provably fit in signed 64-bit integers the loop runs on
C arrays; otherwise it runs on Python ints (still with a C-level loop).
"""

from libc.stdlib cimport calloc, free

COMPILED = True

# conservative headroom below 2^63-1
cdef object _I64_SAFE = (<object>1) << 62


def advance(trans, Py_ssize_t num_states, Py_ssize_t domain_size, list counts, Py_ssize_t steps=1):
    """Run `steps` DP steps: new[trans[s*D + j]] += counts[s] for all s, j."""
    cdef const int[::1] tv = trans
    if tv.shape[0] != num_states * domain_size:
        raise ValueError("transition table size mismatch")
    if steps <= 0:
        return list(counts)
    total = 0
    for c in counts:
        total += c
    # every intermediate entry is bounded by total * domain_size**steps
    if total * (<object>domain_size) ** steps < _I64_SAFE:
        return _advance_i64(tv, num_states, domain_size, counts, steps)
    return _advance_obj(tv, num_states, domain_size, counts, steps)


cdef list _advance_i64(const int[::1] tv, Py_ssize_t S, Py_ssize_t D, list counts, Py_ssize_t steps):
    cdef long long* cur = <long long*> calloc(S, sizeof(long long))
    cdef long long* nxt = <long long*> calloc(S, sizeof(long long))
    cdef long long* tmp
    cdef Py_ssize_t s, j, base, step
    cdef long long c
    if cur == NULL or nxt == NULL:
        free(cur)
        free(nxt)
        raise MemoryError()
    try:
        for s in range(S):
            cur[s] = counts[s]
        for step in range(steps):
            for s in range(S):
                nxt[s] = 0
            for s in range(S):
                c = cur[s]
                if c != 0:
                    base = s * D
                    for j in range(D):
                        nxt[tv[base + j]] += c
            tmp = cur
            cur = nxt
            nxt = tmp
        return [cur[s] for s in range(S)]
    finally:
        free(cur)
        free(nxt)


cdef list _advance_obj(const int[::1] tv, Py_ssize_t S, Py_ssize_t D, list counts, Py_ssize_t steps):
    cdef Py_ssize_t s, j, base, t, step
    cdef list cur = counts
    cdef list new
    cdef object c
    for step in range(steps):
        new = [0] * S
        for s in range(S):
            c = cur[s]
            if c:
                base = s * D
                for j in range(D):
                    t = tv[base + j]
                    new[t] = new[t] + c
        cur = new
    return cur if cur is not counts else list(counts)
