"""Pure-Python DP kernel: one-step state-count propagation.

Reference implementation of the hot loop; the compiled Cython kernel in
``_kernel.pyx`` implements the same contract and must produce bit-identical
results.  Counts are Python ints, so results are exact at any size.
"""

from __future__ import annotations

COMPILED = False


def advance(trans, num_states: int, domain_size: int, counts: list, steps: int = 1) -> list:
    """Run `steps` DP steps: new[trans[s*D + j]] += counts[s] for all s, j.

    `trans` is a flat transition table of length num_states*domain_size
    (any integer-indexable sequence).  Returns a fresh list; the input
    list is never mutated.
    """
    cur = counts
    for _ in range(steps):
        new = [0] * num_states
        for s in range(num_states):
            c = cur[s]
            if c:
                base = s * domain_size
                for j in range(domain_size):
                    new[trans[base + j]] += c
        cur = new
    return list(cur) if cur is counts else cur
