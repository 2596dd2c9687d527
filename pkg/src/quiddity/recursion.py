"""Recursive counting engines and their oracle cross-checks.

* sigma tables: the even-length all-ideal counts computed by length
  reduction instead of the closed form (rows n and n-2 are linked by a
  level-weighted convolution; base rows n = 2, 4 are immediate).
* pi tables: counts of solutions of bracket = A split by the second
  entry, extended from oracle-seeded base rows n = 3, 4 by the two-step
  recursion with weights step1_weight / step2_weight.
* tau: the unit-second-entry total, which satisfies a two-term linear
  recursion with constant coefficients.
* residue classes: the partition of Z/p^r by congruence depth towards
  -1, 0, 1 plus the generic class, on which the recursion weights only
  depend through the class; aggregate values have closed forms.

Base rows always come from the enumeration oracle, never from formulas:
the recursions are only valid from n = 5 (pi/tau) resp. n = 6 (sigma)
onward, and seeding them independently keeps the cross-checks honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .formulas import ideal_pair_count, level_size
from .matrices import Mat2, lambda_diag
from .ring import RingCtx, UnsupportedRingError, valuation_in

BigCount = int


# -- sigma tables --------------------------------------------------------------


@dataclass(frozen=True)
class SigmaTable:
    """Rows indexed by even length n; row[level-1] is the count at that level."""

    p: int
    r: int
    rows: dict[int, tuple[BigCount, ...]]

    def value(self, n: int, level: int) -> BigCount:
        if not 1 <= level <= self.r:
            raise ValueError(f"level must be in [1, {self.r}], got {level}")
        return self.rows[n][level - 1]


def sigma_recursive(p: int, r: int, n_max: int) -> SigmaTable:
    """Sigma counts for even n <= n_max via the length-reduction recursion.

    Base rows: n = 2 is the delta row (only level r is hit, once); n = 4
    counts pairs (c3, c4) in the ideal with product at the given level.
    Each later row is a convolution of the previous row with the pair
    counts; the top level uses the plain convolution, lower levels split
    off the self-transition term.
    """
    if n_max < 2 or n_max % 2 == 1:
        raise ValueError(f"n_max must be even and >= 2, got {n_max}")
    rows: dict[int, tuple[BigCount, ...]] = {}
    rows[2] = tuple(1 if level == r else 0 for level in range(1, r + 1))
    if n_max >= 4:
        row4 = []
        for level in range(1, r + 1):
            if level == r:
                row4.append((r - 1) * p**r - (r - 2) * p ** (r - 1))
            elif level == 1:
                row4.append(0)
            else:
                row4.append((level - 1) * (p**r - p ** (r - 1)))
        rows[4] = tuple(row4)
    for n in range(6, n_max + 1, 2):
        prev = rows[n - 2]
        row = []
        for level in range(1, r + 1):
            if level == r:
                total = sum(
                    level_size(j, p, r) * prev[j - 1] * ideal_pair_count(j, p, r)
                    for j in range(1, r + 1)
                )
            else:
                total = sum(
                    level_size(j, p, r) * prev[j - 1] * ideal_pair_count(j, p, r)
                    for j in range(1, level)
                )
                total += sum(
                    level_size(j, p, r) * prev[j - 1] * ideal_pair_count(level, p, r)
                    for j in range(level + 1, r + 1)
                )
                self_weight = ideal_pair_count(level, p, r) * (p - 2) * p ** (
                    r - level - 1
                ) + sum(
                    level_size(j, p, r) * ideal_pair_count(j, p, r)
                    for j in range(level + 1, r + 1)
                )
                total += prev[level - 1] * self_weight
            row.append(total)
        rows[n] = tuple(row)
    return SigmaTable(p, r, rows)


def sigma_reduction_check(ctx: RingCtx, z: int, n: int) -> bool:
    """Oracle check of the one-step length reduction for all-ideal counts.

    For a unit z in eps + I and even n > 3, the count at target
    diag(z, z^-1) must equal the sum over x in -eps + I of the length
    (n-2) count at x times |{(u, v) in I^2 : uv - 1 = x/z}|.
    """
    p, r = ctx.p, ctx.r
    N = ctx.modulus
    if n <= 3 or n % 2 == 1:
        raise ValueError(f"need even n > 3, got {n}")
    z %= N
    if (z - 1) % p == 0:
        eps = 1
    elif (z + 1) % p == 0:
        eps = -1
    else:
        raise ValueError(f"z = {z} is not in (+-1) + I over Z/{N}")
    ideal = ctx.ideal()
    table_n = oracle.count_all_targets(ctx, n, "ideal_only")
    table_prev = oracle.count_all_targets(ctx, n - 2, "ideal_only")
    lhs = table_n[lambda_diag(ctx.residue(z))]
    zinv = pow(z, -1, N)
    rhs = 0
    for i in ideal:
        x = (-eps + i) % N
        ratio = (x * zinv) % N
        pairs = sum(1 for u in ideal for v in ideal if (u * v - 1) % N == ratio)
        rhs += table_prev[lambda_diag(ctx.residue(x))] * pairs
    return lhs == rhs


def valuation_class_check(ctx: RingCtx, n: int) -> bool:
    """Oracle check that the all-ideal count at diag(z, z^-1) depends only on
    the valuation of z - (-1)^(n/2)."""
    p, r = ctx.p, ctx.r
    N = ctx.modulus
    if n % 2 == 1:
        raise ValueError(f"need even n, got {n}")
    s = (-1) ** (n // 2) % N
    table = oracle.count_all_targets(ctx, n, "ideal_only")
    by_level: dict[int, set[BigCount]] = {}
    for i in ctx.ideal():
        z = (s + i) % N
        lvl = valuation_in((z - s) % N, p, r)
        by_level.setdefault(lvl, set()).add(table[lambda_diag(ctx.residue(z))])
    return all(len(vals) == 1 for vals in by_level.values())


# -- the fixed-second-entry recursion ------------------------------------------


def step1_weight(ctx: RingCtx, x: int, u: int) -> BigCount:
    """Number of one-step reductions producing second entry x from entry u.

    Equals p^val(u) when val(u) <= val(x+1), else 0.
    """
    p, r = ctx.p, ctx.r
    vu = valuation_in(u, p, r)
    return p**vu if vu <= valuation_in(x + 1, p, r) else 0


def step2_weight(ctx: RingCtx, x: int, u: int) -> BigCount:
    """Number of two-step reductions producing second entry x from entry u.

    Zero unless x is a unit and x + u is not; the all-of-ideal case
    x + u = 0 has its own count.
    """
    p, r = ctx.p, ctx.r
    N = ctx.modulus
    if math.gcd(x, N) != 1 or math.gcd(x + u, N) == 1:
        return 0
    if (x + u) % N == 0:
        return r * p**r - (r - 1) * p ** (r - 1)
    return (p**r - p ** (r - 1)) * valuation_in(x + u, p, r)


@dataclass(frozen=True)
class PiTable:
    """Rows indexed by length n; row[u] counts solutions with second entry u."""

    ctx: RingCtx
    target: Mat2
    rows: dict[int, dict[int, BigCount]]

    def row_total(self, n: int) -> BigCount:
        return sum(self.rows[n].values())

    def unit_total(self, n: int) -> BigCount:
        units = set(self.ctx.units())
        return sum(v for u, v in self.rows[n].items() if u in units)


def pi_recursive(ctx: RingCtx, A: Mat2, n_max: int) -> PiTable:
    """Fixed-second-entry counts for target A up to n_max.

    Rows 3 and 4 are oracle-seeded; rows from 5 on follow the recursion
    row_n[u] = sum over units x of row_(n-1)[x]*step1 + row_(n-2)[x]*step2.
    """
    ctx._require_prime_power()
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max}")
    N = ctx.modulus
    rows = {3: oracle.count_fixed_second(ctx, 3, A)}
    if n_max >= 4:
        rows[4] = oracle.count_fixed_second(ctx, 4, A)
    units = ctx.units()
    step1 = {(x, u): step1_weight(ctx, x, u) for x in units for u in range(N)}
    step2 = {(x, u): step2_weight(ctx, x, u) for x in units for u in range(N)}
    for n in range(5, n_max + 1):
        prev1, prev2 = rows[n - 1], rows[n - 2]
        rows[n] = {
            u: sum(prev1[x] * step1[x, u] + prev2[x] * step2[x, u] for x in units)
            for u in range(N)
        }
    return PiTable(ctx, A, rows)


def tau_recursive(ctx: RingCtx, A: Mat2, n_max: int) -> dict[int, BigCount]:
    """Unit-second-entry totals for target A: tau_3, tau_4 from the oracle,
    then tau_n = (p^r - p^(r-1))*tau_(n-1) + p^(2r-1)*tau_(n-2)."""
    ctx._require_prime_power()
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max}")
    p, r = ctx.p, ctx.r
    units = set(ctx.units())
    tau: dict[int, BigCount] = {}
    for n in (3, 4):
        if n <= n_max or n == 3:
            row = oracle.count_fixed_second(ctx, n, A)
            tau[n] = sum(v for u, v in row.items() if u in units)
    for n in range(5, n_max + 1):
        tau[n] = (p**r - p ** (r - 1)) * tau[n - 1] + p ** (2 * r - 1) * tau[n - 2]
    return tau


# -- residue classes -----------------------------------------------------------

ClassId = tuple  # ('u', d, i) for d in {-1, 0, 1}, 1 <= i <= r, or ('e',)


def residue_classes(ctx: RingCtx) -> dict[ClassId, tuple[int, ...]]:
    """Partition of Z/p^r by congruence depth towards -1, 0, 1 (p >= 3).

    ('u', d, i) holds the residues congruent to d exactly modulo p^i
    (with ('u', d, r) = {d}); ('e',) holds everything not congruent to
    -1, 0 or 1 modulo p.  For p = 2 the near-1 and near--1 families
    overlap and no such partition exists.
    """
    p, r = ctx.p, ctx.r
    if p < 3:
        raise UnsupportedRingError("residue classes need p >= 3 (families collide mod 2)")
    N = ctx.modulus
    out: dict[ClassId, tuple[int, ...]] = {}
    for d in (-1, 0, 1):
        for i in range(1, r):
            out[("u", d, i)] = tuple(
                u for u in range(N) if (u - d) % p**i == 0 and (u - d) % p ** (i + 1) != 0
            )
        out[("u", d, r)] = (d % N,)
    out[("e",)] = tuple(u for u in range(N) if u % p not in ((-1) % p, 0, 1))
    return out


def class_of(ctx: RingCtx, u: int) -> ClassId:
    """The class of u in the partition above."""
    p, r = ctx.p, ctx.r
    if p < 3:
        raise UnsupportedRingError("residue classes need p >= 3 (families collide mod 2)")
    for d in (-1, 0, 1):
        k = valuation_in(u - d, p, r)
        if k >= 1:
            return ("u", d, k)
    return ("e",)


def _expected_xi_class(ctx: RingCtx, X: ClassId, Y: ClassId, sizes) -> BigCount:
    p = ctx.p
    if Y == ("e",) or (Y[0] == "u" and Y[1] in (1, -1)):
        return sizes[X] * sizes[Y]
    # Y = ('u', 0, k): only reachable from the near--1 classes of depth >= k
    k = Y[2]
    if X[0] == "u" and X[1] == -1 and k <= X[2]:
        return p**k * sizes[X] * sizes[Y]
    return 0


def _expected_zeta_class(ctx: RingCtx, X: ClassId, Y: ClassId, sizes) -> BigCount:
    p, r = ctx.p, ctx.r
    if X == ("e",) and Y == ("e",):
        return p ** (2 * r - 1) * sizes[X]
    if X[0] == "u" and Y[0] == "u" and {X[1], Y[1]} == {1, -1}:
        i, j = X[2], Y[2]
        m = p**r - p ** (r - 1)
        if i == j == r:
            return r * p**r - (r - 1) * p ** (r - 1)
        if i == j:
            return (
                i * p ** (2 * r - i)
                - (2 * i - 1) * p ** (2 * r - i - 1)
                + i * p ** (2 * r - i - 2)
            ) * sizes[X]
        return min(i, j) * m * sizes[X] * sizes[Y]
    return 0


def class_aggregate_check(ctx: RingCtx) -> bool:
    """Verify the class structure of the recursion weights by direct double sums.

    Checks (i) that summing a weight over a class is independent of the
    representative of the other class, and (ii) that every aggregated
    class value matches its closed form (zero where no form is listed).
    Only supported for p >= 5: for p = 3 the generic class is empty and
    for p = 2 the partition itself breaks down.
    """
    p = ctx.p
    if p < 5:
        raise UnsupportedRingError(
            "class aggregation needs p >= 5 (the generic class is empty or the "
            "partition collapses below that)"
        )
    cls = residue_classes(ctx)
    sizes = {cid: len(members) for cid, members in cls.items()}
    for X, xs in cls.items():
        for Y, ys in cls.items():
            xi_sums = {sum(step1_weight(ctx, x, u) for u in ys) for x in xs}
            zeta_sums = {sum(step2_weight(ctx, x, u) for u in ys) for x in xs}
            if len(xi_sums) != 1 or len(zeta_sums) != 1:
                return False
            if len(xs) * xi_sums.pop() != _expected_xi_class(ctx, X, Y, sizes):
                return False
            if len(xs) * zeta_sums.pop() != _expected_zeta_class(ctx, X, Y, sizes):
                return False
    return True
