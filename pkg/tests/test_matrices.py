import itertools

import pytest

from quiddity.matrices import (
    Mat2,
    bracket,
    eta,
    is_epsilon_quiddity,
    lambda_diag,
    lambda_of,
    reduce_32,
    reduce_43,
    reduce_53,
    twist,
)
from quiddity.ring import NonUnitError, ring


def test_eta_examples():
    ctx = ring(5)
    assert eta(ctx.residue(0)).values() == (0, 4, 1, 0)
    assert eta(ctx.residue(1)).values() == (1, 4, 1, 0)
    ctx12 = ring(12)
    for a in range(12):
        assert eta(ctx12.residue(a)).det().value == 1


def test_bracket_of_two_entries_shape():
    for N in (5, 7, 9):
        ctx = ring(N)
        for c1, c2 in itertools.product(range(N), repeat=2):
            expected = Mat2.of(ctx, c1 * c2 - 1, -c1, c2, -1)
            assert bracket((c1, c2), ctx) == expected


def test_bracket_zero_sequences():
    ctx = ring(7)
    assert bracket((0, 0, 0, 0), ctx) == Mat2.identity(ctx)
    ctx5 = ring(5)
    assert bracket((0, 0), ctx5) == Mat2.of(ctx5, 4, 0, 0, 4)
    # even length: exactly (-1)^(n/2) * Id
    for N in (4, 5, 9):
        ctx = ring(N)
        for n in range(2, 11, 2):
            sign = (-1) ** (n // 2)
            assert bracket((0,) * n, ctx) == Mat2.scalar(ctx, sign)
    # odd length: never a scalar matrix (eta(0) has order 4)
    for n in range(1, 9, 2):
        M = bracket((0,) * n, ring(5))
        assert M.b.value != 0 or M.c.value != 0


def test_empty_bracket_is_identity():
    ctx = ring(6)
    assert bracket((), ctx) == Mat2.identity(ctx)
    with pytest.raises(ValueError):
        bracket(())  # no ctx derivable


def test_bracket_accepts_residues():
    ctx = ring(5)
    assert bracket(ctx.residues((1, 2))) == bracket((1, 2), ctx)


def test_bracket_det_is_one():
    for N in (4, 6, 9):
        ctx = ring(N)
        for cs in itertools.product(range(N), repeat=3):
            assert bracket(cs, ctx).det().value == 1
    # random spot checks over larger moduli
    import random

    rng = random.Random(99)
    for N in (49, 50, 343):
        ctx = ring(N)
        for _ in range(200):
            cs = tuple(rng.randrange(N) for _ in range(rng.randint(1, 9)))
            assert bracket(cs, ctx).det().value == 1


def test_reduce_43_spot():
    ctx = ring(5)
    x, u, v, y = ctx.residues((2, 3, 4, 1))
    out = reduce_43(x, u, v, y, verify=True)
    assert tuple(r.value for r in out) == (4, 1, 4)
    assert bracket((x, u, v, y)) == bracket(out)


def test_reduce_43_unit_gate():
    ctx = ring(5)
    with pytest.raises(NonUnitError):
        reduce_43(*ctx.residues((0, 1, 1, 0)))  # uv - 1 = 0


def test_reduce_53_spot():
    ctx = ring(5)
    out = reduce_53(*ctx.residues((0, 0, 1, 1, 0)), verify=True)
    assert tuple(r.value for r in out) == (4, 4, 3)
    with pytest.raises(NonUnitError):
        reduce_53(*ctx.residues((0, 0, 1, 0, 0)))  # pivot x = 0
    with pytest.raises(NonUnitError):
        reduce_53(*ctx.residues((0, 0, 0, 1, 0)))  # v = 0


def test_reduce_32():
    ctx = ring(9)
    for x, y in itertools.product(range(9), repeat=2):
        out = reduce_32(ctx.residue(x), ctx.residue(y), verify=True)
        assert bracket((x, 1, y), ctx) == bracket(out)


def test_twist_identity_and_parity():
    ctx = ring(7)
    cs = ctx.residues((1, 2, 3))
    assert twist(cs, ctx.residue(1)) == cs
    with pytest.raises(ValueError):
        twist(ctx.residues((1, 2)), ctx.residue(1))
    with pytest.raises(NonUnitError):
        twist(ring(9).residues((1, 2, 3)), ring(9).residue(3))


def test_twist_conjugates_diagonal_brackets():
    ctx = ring(9)
    for cs in itertools.product(range(9), repeat=3):
        rs = ctx.residues(cs)
        a = lambda_of(bracket(rs))
        if a is None:
            continue
        for t in ctx.units():
            rt = ctx.residue(t)
            assert bracket(twist(rs, rt, verify=True)) == lambda_diag(rt * a)


def test_twist_flips_epsilon():
    ctx = ring(7)
    cs = ctx.residues((1, 1, 1))
    assert is_epsilon_quiddity(cs, -1)
    flipped = twist(cs, ctx.residue(-1))
    assert is_epsilon_quiddity(flipped, 1)


def test_is_epsilon_quiddity_examples():
    ctx = ring(7)
    assert is_epsilon_quiddity((0, 0), -1, ctx)
    assert is_epsilon_quiddity((1, 1, 1), -1, ctx)
    assert is_epsilon_quiddity((0, 0, 0, 0), 1, ctx)
    assert not is_epsilon_quiddity((0, 0, 0, 0), -1, ctx)
    with pytest.raises(ValueError):
        is_epsilon_quiddity((0, 0), 2, ctx)


def test_rotation_closure():
    for N, n in ((5, 3), (4, 4)):
        ctx = ring(N)
        for cs in itertools.product(range(N), repeat=n):
            for eps in (1, -1):
                if is_epsilon_quiddity(cs, eps, ctx):
                    rotated = cs[1:] + cs[:1]
                    assert is_epsilon_quiddity(rotated, eps, ctx)


def test_lambda_helpers():
    ctx = ring(9)
    lam = lambda_diag(ctx.residue(2))
    assert lam.values() == (2, 0, 0, 5)
    assert lambda_of(lam) == ctx.residue(2)
    assert lambda_of(Mat2.of(ctx, 1, 1, 0, 1)) is None


def test_matrix_reduce_to():
    A = Mat2.of(ring(12), 7, 4, 3, 1)
    assert A.reduce_to(ring(4)).values() == (3, 0, 3, 1)
    assert A.reduce_to(ring(3)).values() == (1, 1, 0, 1)
    with pytest.raises(ValueError):
        A.reduce_to(ring(5))
