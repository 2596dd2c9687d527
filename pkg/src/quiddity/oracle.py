"""Ground-truth enumeration: count eta-product solutions by dynamic programming.

Counts sequences (c_1, ..., c_n) with bracket(c_1, ..., c_n) = A for all
targets A at once.  States are the matrices reachable from the identity
under right-multiplication by eta(c); since det(eta(c)) = 1 they all lie
in SL2(Z/N), so the state set is enumerated once per (modulus, entry
domain) by breadth-first closure and the DP runs over an integer-indexed
transition table.  All counts are exact Python ints.

The inner transition loop is delegated to a compiled kernel when the
extension built, with a pure-Python fallback selected at import time;
both produce bit-identical tables.

Desk-scale guard: runs are refused when length, modulus, or the estimated
number of transition operations exceed the configured ceiling (env var
QUIDDITY_MAX_BUDGET overrides the default).  Mass conservation (the table
sums to |domain|^n) is asserted on every computed row and each run is
recorded in ``run_log()``.
"""

from __future__ import annotations

import os
import warnings
from array import array
from dataclasses import dataclass
from typing import Literal

from .matrices import Mat2, lambda_diag
from .ring import RingCtx, UnsupportedRingError

try:  # compiled kernel if the extension built, else pure Python
    from . import _kernel as _kern
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernel_py as _kern

BigCount = int
EntryDomain = Literal["all", "ideal_only"]

MAX_MODULUS = 50
MAX_LENGTH = 20
DEFAULT_MAX_OPS = 200_000_000


class BudgetError(RuntimeError):
    """The requested oracle run exceeds the desk-scale guard."""


def kernel_name() -> str:
    return "compiled" if _kern.COMPILED else "pure-python"


def max_ops() -> int:
    """Operation ceiling for one DP run; QUIDDITY_MAX_BUDGET overrides."""
    raw = os.environ.get("QUIDDITY_MAX_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            warnings.warn(f"ignoring non-integer QUIDDITY_MAX_BUDGET={raw!r}")
    return DEFAULT_MAX_OPS


@dataclass(frozen=True)
class RunRecord:
    modulus: int
    entry_domain: str
    n: int
    total: BigCount
    expected_total: BigCount


_RUN_LOG: list[RunRecord] = []


def run_log() -> tuple[RunRecord, ...]:
    """Every freshly computed DP row, with its verified mass-conservation totals."""
    return tuple(_RUN_LOG)


def _domain_values(ctx: RingCtx, entry_domain: EntryDomain) -> tuple[int, ...]:
    if entry_domain == "all":
        return tuple(range(ctx.modulus))
    if entry_domain == "ideal_only":
        if not ctx.is_prime_power:
            raise UnsupportedRingError(
                "ideal_only needs a prime-power modulus; CRT-split composite moduli first"
            )
        return ctx.ideal()
    raise ValueError(f"unknown entry domain {entry_domain!r}")


class StateSpace:
    """Matrices reachable from Id under right-multiplication by eta(c), c in domain.

    Holds the flat transition table and incrementally cached count rows:
    row n maps state index -> number of length-n sequences reaching it.
    Rows for second-entry-restricted counts are cached separately.
    """

    def __init__(self, ctx: RingCtx, entry_domain: EntryDomain):
        if ctx.modulus > MAX_MODULUS:
            raise BudgetError(
                f"modulus {ctx.modulus} exceeds the desk-scale bound {MAX_MODULUS}"
            )
        self.ctx = ctx
        self.entry_domain = entry_domain
        self.domain = _domain_values(ctx, entry_domain)
        self._build()
        self._rows: dict[int, list[int]] = {0: self._delta(self.index[self._pack(1, 0, 0, 1)])}
        # second-entry rows: (c2, n) -> counts over states for sequences
        # (c1, c2, ..., c_n) with the given second entry
        self._second_rows: dict[tuple[int, int], list[int]] = {}

    # -- construction ------------------------------------------------------

    def _pack(self, a: int, b: int, c: int, d: int) -> int:
        N = self.ctx.modulus
        return ((a * N + b) * N + c) * N + d

    def _unpack(self, key: int) -> tuple[int, int, int, int]:
        N = self.ctx.modulus
        key, d = divmod(key, N)
        key, c = divmod(key, N)
        a, b = divmod(key, N)
        return a, b, c, d

    def _build(self):
        N = self.ctx.modulus
        domain = self.domain
        D = len(domain)
        index: dict[int, int] = {}
        states: list[int] = []
        trans = array("i")

        def add(key: int) -> int:
            idx = index.get(key)
            if idx is None:
                idx = len(states)
                index[key] = idx
                states.append(key)
            return idx

        add(self._pack(1, 0, 0, 1))
        pos = 0
        while pos < len(states):
            a, b, c, d = self._unpack(states[pos])
            na, nc = (-a) % N, (-c) % N
            row = [0] * D
            for j, e in enumerate(domain):
                row[j] = add(self._pack((a * e + b) % N, na, (c * e + d) % N, nc))
            trans.extend(row)
            pos += 1

        self.index = index
        self.states = states
        self.trans = trans

    def _delta(self, idx: int) -> list[int]:
        v = [0] * len(self.states)
        v[idx] = 1
        return v

    # -- index helpers -----------------------------------------------------

    def index_of(self, M: Mat2) -> int | None:
        return self.index.get(self._pack(*M.values()))

    def matrix_at(self, idx: int) -> Mat2:
        return Mat2.of(self.ctx, *self._unpack(self.states[idx]))

    # -- rows --------------------------------------------------------------

    def _check_budget(self, n: int, extra_runs: int = 1):
        if n > MAX_LENGTH:
            raise BudgetError(f"length {n} exceeds the desk-scale bound {MAX_LENGTH}")
        ops = len(self.states) * len(self.domain) * n * extra_runs
        ceiling = max_ops()
        if ops > ceiling:
            raise BudgetError(
                f"estimated {ops} transition ops exceed the ceiling {ceiling} "
                "(set QUIDDITY_MAX_BUDGET to raise it)"
            )

    def row(self, n: int) -> list[int]:
        """Counts over states for all length-n sequences (cached incrementally)."""
        if n < 0:
            raise ValueError("length must be >= 0")
        if n not in self._rows:
            self._check_budget(n)
            have = max(k for k in self._rows if k <= n)
            cur = self._rows[have]
            D = len(self.domain)
            S = len(self.states)
            for k in range(have + 1, n + 1):
                cur = _kern.advance(self.trans, S, D, cur, 1)
                self._log_row(cur, k, D**k)
                self._rows[k] = cur
        return self._rows[n]

    def second_entry_row(self, c2: int, n: int) -> list[int]:
        """Counts over states for length-n sequences with second entry c2.

        Only meaningful for the all-entries domain and n >= 2.
        """
        if n < 2:
            raise ValueError("second-entry rows need length >= 2")
        key = (c2, n)
        if key not in self._second_rows:
            self._check_budget(n, extra_runs=1)
            D = len(self.domain)
            S = len(self.states)
            base_key = (c2, 2)
            if base_key not in self._second_rows:
                v = [0] * S
                for c1 in self.domain:
                    M = (Mat2.of(self.ctx, c1, -1, 1, 0) @ Mat2.of(self.ctx, c2, -1, 1, 0))
                    v[self.index[self._pack(*M.values())]] += 1
                self._second_rows[base_key] = v
            have = max(k for (u, k) in self._second_rows if u == c2 and k <= n)
            cur = self._second_rows[(c2, have)]
            for k in range(have + 1, n + 1):
                cur = _kern.advance(self.trans, S, D, cur, 1)
                self._log_row(cur, k, D ** (k - 1), tag=f"second_entry={c2}")
                self._second_rows[(c2, k)] = cur
        return self._second_rows[key]

    def _log_row(self, counts: list[int], n: int, expected: int, tag: str = ""):
        total = sum(counts)
        if total != expected:
            raise AssertionError(
                f"mass conservation violated over Z/{self.ctx.modulus} "
                f"({self.entry_domain}{' ' + tag if tag else ''}, n={n}): "
                f"{total} != {expected}"
            )
        _RUN_LOG.append(
            RunRecord(self.ctx.modulus, self.entry_domain + (":" + tag if tag else ""),
                      n, total, expected)
        )


_spaces: dict[tuple[int, str], StateSpace] = {}


def state_space(ctx: RingCtx, entry_domain: EntryDomain = "all") -> StateSpace:
    key = (ctx.modulus, entry_domain)
    if key not in _spaces:
        _spaces[key] = StateSpace(ctx, entry_domain)
    return _spaces[key]


def clear_caches():
    """Drop cached state spaces and the run log (mainly for tests)."""
    _spaces.clear()
    _RUN_LOG.clear()


@dataclass(frozen=True)
class CountTable:
    """Map from reached target matrix to the exact number of sequences."""

    ctx: RingCtx
    n: int
    entry_domain: str
    counts: dict  # Mat2 -> BigCount, only reached targets

    def __getitem__(self, M: Mat2) -> BigCount:
        return self.counts.get(M, 0)

    def total(self) -> BigCount:
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)


def count_all_targets(ctx: RingCtx, n: int, entry_domain: EntryDomain = "all") -> CountTable:
    """Table of all length-n solution counts, one DP pass for every target.

    n = 0 returns {Id: 1} (the empty product) by convention.
    """
    space = state_space(ctx, entry_domain)
    row = space.row(n)
    counts = {space.matrix_at(i): v for i, v in enumerate(row) if v}
    return CountTable(ctx, n, entry_domain, counts)


def count_quiddity(ctx: RingCtx, n: int, eps: int) -> BigCount:
    """Number of length-n sequences with bracket = eps*Id, eps in {1, -1}."""
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    space = state_space(ctx, "all")
    idx = space.index_of(Mat2.scalar(ctx, eps))
    if idx is None:
        return 0
    return space.row(n)[idx]


def count_sigma(ctx: RingCtx, n: int, level: int) -> BigCount:
    """Number of all-ideal-entry length-n sequences with bracket = lambda_z,
    for the standard target z = (-1)^(n/2) + p^level.

    Odd lengths admit no such sequence: returns 0 with a warning.
    """
    p, r = ctx.p, ctx.r
    if not 1 <= level <= r:
        raise ValueError(f"level must be in [1, {r}], got {level}")
    if n % 2 == 1:
        warnings.warn(f"no all-ideal solutions exist at odd length {n}; returning 0")
        return 0
    z = ctx.residue((-1) ** (n // 2) + p**level)
    space = state_space(ctx, "ideal_only")
    idx = space.index_of(lambda_diag(z))
    if idx is None:
        return 0
    return space.row(n)[idx]


def count_fixed_second(ctx: RingCtx, n: int, A: Mat2) -> dict[int, BigCount]:
    """Counts of length-n solutions of bracket = A, split by the second entry.

    Returns {u: count} over all canonical residues u; the values sum to
    the total solution count for A.  Targets with det != 1 are unreachable:
    returns the zero map with a warning.
    """
    if n < 3:
        raise ValueError(f"fixed-second counts need n >= 3, got {n}")
    if A.ctx != ctx:
        raise ValueError("target matrix lives in a different ring")
    if A.det().value != 1:
        warnings.warn("target has det != 1; no eta product reaches it")
        return {u: 0 for u in range(ctx.modulus)}
    space = state_space(ctx, "all")
    out = {}
    for u in range(ctx.modulus):
        row = space.second_entry_row(u, n)
        idx = space.index_of(A)
        out[u] = 0 if idx is None else row[idx]
    return out
