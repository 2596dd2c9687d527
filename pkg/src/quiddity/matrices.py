"""2x2 matrices over Z/N and the eta-product calculus.

eta(a) is the matrix [[a, -1], [1, 0]]; bracket(c_1, ..., c_n) is the
left-to-right product eta(c_1)...eta(c_n).  Every eta(a) has determinant 1,
so every bracket lies in SL2(Z/N).  A sequence whose bracket equals
eps*Id for eps in {1, -1} is an eps-quiddity cycle.

The reduction helpers rewrite a bracket as a shorter bracket with the
same value; each states its unit preconditions explicitly and fails
loudly (NonUnitError) when they are violated.  Passing verify=True
recomputes both sides and raises if they differ, which turns each
rewrite rule into a self-checking property.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ring import NonUnitError, Residue, RingCtx, ring


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix [[a, b], [c, d]] of residues in one ring."""

    a: Residue
    b: Residue
    c: Residue
    d: Residue

    @property
    def ctx(self) -> RingCtx:
        return self.a.ctx

    @classmethod
    def of(cls, ctx: RingCtx, a: int, b: int, c: int, d: int) -> "Mat2":
        return cls(ctx.residue(a), ctx.residue(b), ctx.residue(c), ctx.residue(d))

    @classmethod
    def identity(cls, ctx: RingCtx) -> "Mat2":
        return cls.of(ctx, 1, 0, 0, 1)

    @classmethod
    def scalar(cls, ctx: RingCtx, s: int) -> "Mat2":
        return cls.of(ctx, s, 0, 0, s)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def det(self) -> Residue:
        return self.a * self.d - self.b * self.c

    def values(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def reduce_to(self, sub: RingCtx) -> "Mat2":
        """Entrywise reduction to a ring whose modulus divides this one's."""
        if self.ctx.modulus % sub.modulus != 0:
            raise ValueError(f"{sub.modulus} does not divide {self.ctx.modulus}")
        return Mat2.of(sub, *self.values())

    def __repr__(self):
        a, b, c, d = self.values()
        return f"[[{a},{b}],[{c},{d}]] (mod {self.ctx.modulus})"


def eta(a: Residue) -> Mat2:
    """The generator [[a, -1], [1, 0]]."""
    ctx = a.ctx
    return Mat2(a, ctx.residue(-1), ctx.residue(1), ctx.residue(0))


def _as_residues(cs: Sequence, ctx: RingCtx | None) -> tuple[tuple[Residue, ...], RingCtx]:
    if ctx is None:
        for c in cs:
            if isinstance(c, Residue):
                ctx = c.ctx
                break
        else:
            raise ValueError("ctx is required when the sequence carries no Residue")
    out = tuple(c if isinstance(c, Residue) else ctx.residue(c) for c in cs)
    return out, ctx


def bracket(cs: Sequence, ctx: RingCtx | None = None) -> Mat2:
    """Left-to-right product of eta(c_i).

    Entries may be Residues or plain ints (then ctx is required).  The
    empty product is the identity matrix by convention.
    """
    rs, ctx = _as_residues(cs, ctx)
    N = ctx.modulus
    a, b, c, d = 1, 0, 0, 1
    for e in rs:
        ev = e.value
        a, b, c, d = (a * ev + b) % N, (-a) % N, (c * ev + d) % N, (-c) % N
    return Mat2.of(ctx, a, b, c, d)


def lambda_diag(a: Residue) -> Mat2:
    """diag(a, a^-1) for a unit a."""
    return Mat2(a, a.ctx.residue(0), a.ctx.residue(0), a.inverse())


def lambda_of(M: Mat2) -> Residue | None:
    """The unit a with M = diag(a, a^-1), or None if M has no such shape."""
    if not (M.b.is_zero and M.c.is_zero and M.a.is_unit):
        return None
    if M.d != M.a.inverse():
        return None
    return M.a


def _check_rewrite(old: Sequence[Residue], new: Sequence[Residue], ctx: RingCtx):
    if bracket(old, ctx) != bracket(new, ctx):
        raise AssertionError(
            f"rewrite changed the bracket: {tuple(r.value for r in old)} -> "
            f"{tuple(r.value for r in new)} in Z/{ctx.modulus}"
        )


def reduce_43(x: Residue, u: Residue, v: Residue, y: Residue, *, verify: bool = False):
    """Rewrite the bracket of (x, u, v, y) as a bracket of three entries.

    Requires uv - 1 to be a unit; returns (x + (1-v)/w, w, y + (1-u)/w)
    with w = uv - 1.
    """
    w = u * v - 1
    if not w.is_unit:
        raise NonUnitError(f"uv - 1 = {w.value} is not a unit mod {w.ctx.modulus}")
    out = (x + (1 - v) / w, w, y + (1 - u) / w)
    if verify:
        _check_rewrite((x, u, v, y), out, x.ctx)
    return out


def reduce_53(c: Residue, u: Residue, v: Residue, b: Residue, d: Residue, *, verify: bool = False):
    """Rewrite the bracket of (c, u, v, b, d) as a bracket of three entries.

    Requires v and x := ((vb-1)(uv-1) - 1)/v to be units; returns
    (c - (vb-2)/x, x, d - (uv-2)/x).
    """
    if not v.is_unit:
        raise NonUnitError(f"v = {v.value} is not a unit mod {v.ctx.modulus}")
    x = ((v * b - 1) * (u * v - 1) - 1) / v
    if not x.is_unit:
        raise NonUnitError(f"pivot x = {x.value} is not a unit mod {x.ctx.modulus}")
    out = (c - (v * b - 2) / x, x, d - (u * v - 2) / x)
    if verify:
        _check_rewrite((c, u, v, b, d), out, c.ctx)
    return out


def reduce_32(x: Residue, y: Residue, *, verify: bool = False):
    """Rewrite the bracket of (x, 1, y) as the bracket of (x-1, y-1)."""
    out = (x - 1, y - 1)
    if verify:
        one = x.ctx.residue(1)
        _check_rewrite((x, one, y), out, x.ctx)
    return out


def twist(cs: Sequence[Residue], t: Residue, *, verify: bool = False) -> tuple[Residue, ...]:
    """Alternating rescale (t*c1, t^-1*c2, t*c3, ..., t*cn) for odd n and unit t.

    If bracket(cs) = diag(a, a^-1) then bracket(twist(cs, t)) = diag(ta, (ta)^-1).
    """
    if len(cs) % 2 == 0:
        raise ValueError(f"twist needs an odd-length sequence, got {len(cs)}")
    if not t.is_unit:
        raise NonUnitError(f"t = {t.value} is not a unit mod {t.ctx.modulus}")
    tinv = t.inverse()
    out = tuple((t if i % 2 == 0 else tinv) * c for i, c in enumerate(cs))
    if verify:
        a = lambda_of(bracket(cs, t.ctx))
        if a is not None and bracket(out, t.ctx) != lambda_diag(t * a):
            raise AssertionError("twist did not conjugate the diagonal bracket")
    return out


def is_epsilon_quiddity(cs: Sequence, eps, ctx: RingCtx | None = None) -> bool:
    """True iff bracket(cs) = eps*Id, for eps in {1, -1} (as int or Residue)."""
    rs, ctx = _as_residues(cs, ctx)
    e = eps.value if isinstance(eps, Residue) else int(eps)
    if e % ctx.modulus not in (1 % ctx.modulus, (-1) % ctx.modulus):
        raise ValueError(f"eps must be +-1 mod {ctx.modulus}, got {eps}")
    return bracket(rs, ctx) == Mat2.scalar(ctx, e)
