"""Arithmetic in Z/NZ: contexts, canonical residues, valuations, CRT.

Residues are always stored as their least nonnegative representative in
[0, N); in particular -1 is stored as N-1.  For a prime-power modulus
p^r the maximal ideal is pR and the p-adic valuation uses the
convention val_p(0) = r, so valuations always lie in [0, r].

All objects here are immutable after construction and all operations
are pure, so everything is safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class NonUnitError(ValueError):
    """An operation required a unit, but the element shares a factor with N."""


class UnsupportedRingError(ValueError):
    """An operation required a prime-power modulus (or another unmet ring shape)."""


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 2 as ((p, exponent), ...) with ascending p.

    Plain trial division; moduli here are desk scale.
    """
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


class RingCtx:
    """The ring Z/NZ together with the prime factorization of N.

    For a prime-power modulus, ``p`` and ``r`` are directly addressable
    and ``ideal()`` enumerates the maximal ideal pR.
    """

    __slots__ = ("modulus", "factorization")

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.factorization = factorize(modulus)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, RingCtx) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("RingCtx", self.modulus))

    def __repr__(self):
        return f"RingCtx({self.modulus})"

    # -- structure --------------------------------------------------------

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    @property
    def p(self) -> int:
        """The prime, for a prime-power modulus."""
        self._require_prime_power()
        return self.factorization[0][0]

    @property
    def r(self) -> int:
        """The exponent, for a prime-power modulus."""
        self._require_prime_power()
        return self.factorization[0][1]

    def _require_prime_power(self):
        if not self.is_prime_power:
            raise UnsupportedRingError(
                f"Z/{self.modulus} is not a prime-power ring; split with crt_split first"
            )

    # -- element helpers (canonical integer values) ------------------------

    def elements(self) -> range:
        return range(self.modulus)

    def units(self) -> tuple[int, ...]:
        N = self.modulus
        return tuple(x for x in range(N) if math.gcd(x, N) == 1)

    def ideal(self) -> tuple[int, ...]:
        """The maximal ideal pR of a prime-power ring, as canonical values."""
        self._require_prime_power()
        p = self.p
        return tuple(x for x in range(0, self.modulus, p))

    def residue(self, value: int) -> "Residue":
        return Residue(value % self.modulus, self)

    def residues(self, values: Iterable[int]) -> tuple["Residue", ...]:
        return tuple(self.residue(v) for v in values)

    def prime_power_parts(self) -> tuple["RingCtx", ...]:
        return tuple(ring(p**r) for p, r in self.factorization)


@lru_cache(maxsize=None)
def ring(modulus: int) -> RingCtx:
    """Shared RingCtx for the given modulus."""
    return RingCtx(modulus)


@dataclass(frozen=True)
class Residue:
    """A canonical representative in [0, N) with ring arithmetic.

    Mixed operands must live in the same ring; plain ints are coerced.
    Division requires the divisor to be a unit and raises NonUnitError
    otherwise.
    """

    value: int
    ctx: RingCtx

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.modulus:
            object.__setattr__(self, "value", self.value % self.ctx.modulus)

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.ctx != self.ctx:
                raise ValueError(f"mixed rings: Z/{self.ctx.modulus} and Z/{other.ctx.modulus}")
            return other
        if isinstance(other, int):
            return self.ctx.residue(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue((self.value + o.value) % self.ctx.modulus, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue((self.value - o.value) % self.ctx.modulus, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue((self.value * o.value) % self.ctx.modulus, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue((-self.value) % self.ctx.modulus, self.ctx)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.ctx.modulus), self.ctx)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.modulus})"

    @property
    def is_unit(self) -> bool:
        return math.gcd(self.value, self.ctx.modulus) == 1

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> "Residue":
        """Multiplicative inverse; NonUnitError when gcd(value, N) > 1."""
        try:
            inv = pow(self.value, -1, self.ctx.modulus)
        except ValueError:
            raise NonUnitError(
                f"{self.value} is not a unit mod {self.ctx.modulus}"
            ) from None
        return Residue(inv, self.ctx)


def val_p(a: Residue) -> int:
    """p-adic valuation in Z/p^r: largest k with p^k | a, and val_p(0) = r.

    Only defined over a prime-power ring; composite moduli must be CRT-split
    first.
    """
    ctx = a.ctx
    p, r = ctx.p, ctx.r
    return valuation_in(a.value, p, r)


def valuation_in(value: int, p: int, r: int) -> int:
    """val_p on canonical values; 0 maps to r."""
    v = value % p**r
    if v == 0:
        return r
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


def inverse(a: Residue) -> Residue:
    return a.inverse()


def crt_split(a: Residue) -> tuple[Residue, ...]:
    """Reduce a to its prime-power components, one per factor of N (ascending p)."""
    return tuple(
        ring(p**r).residue(a.value) for p, r in a.ctx.factorization
    )


def crt_combine(parts: Sequence[Residue]) -> Residue:
    """Inverse of crt_split: the unique residue mod the product of the moduli.

    The component moduli must be pairwise coprime; anything else is a
    mismatched factor list and raises ValueError.
    """
    if not parts:
        raise ValueError("crt_combine needs at least one component")
    moduli = [part.ctx.modulus for part in parts]
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise ValueError(
                    f"moduli {moduli[i]} and {moduli[j]} are not coprime"
                )
    total = math.prod(moduli)
    x = 0
    for part, m in zip(parts, moduli):
        rest = total // m
        x += part.value * rest * pow(rest, -1, m)
    return ring(total).residue(x)
