import pytest

from quiddity.ring import (
    NonUnitError,
    UnsupportedRingError,
    crt_combine,
    crt_split,
    factorize,
    ring,
    val_p,
)


def test_factorize():
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(16) == ((2, 4),)
    assert factorize(97) == ((97, 1),)
    with pytest.raises(ValueError):
        factorize(1)


def test_ctx_structure():
    ctx = ring(16)
    assert ctx.is_prime_power and ctx.p == 2 and ctx.r == 4
    assert ring(12).is_prime_power is False
    with pytest.raises(UnsupportedRingError):
        ring(12).p
    assert ring(9).ideal() == (0, 3, 6)
    assert ring(8).units() == (1, 3, 5, 7)
    assert ring(12).prime_power_parts() == (ring(4), ring(3))


def test_residue_normalization_and_arithmetic():
    ctx = ring(7)
    a = ctx.residue(10)
    assert a.value == 3
    assert (a + 5).value == 1
    assert (a - 5).value == 5
    assert (a * 3).value == 2
    assert (-a).value == 4
    assert (2 - a).value == 6
    assert (a**3).value == 6
    assert int(a) == 3
    with pytest.raises(ValueError):
        a + ring(5).residue(1)


def test_inverse_examples():
    assert ring(11).residue(1).inverse().value == 1
    assert ring(8).residue(3).inverse().value == 3
    assert ring(9).residue(7).inverse().value == 4
    with pytest.raises(NonUnitError):
        ring(9).residue(3).inverse()
    # division routes through the inverse
    assert (ring(9).residue(1) / 7).value == 4
    with pytest.raises(NonUnitError):
        ring(9).residue(1) / 3


def test_double_inverse_is_identity():
    for N in (5, 8, 9, 12, 30):
        ctx = ring(N)
        for u in ctx.units():
            a = ctx.residue(u)
            assert a.inverse().inverse() == a


def test_val_p_examples():
    ctx = ring(16)
    assert val_p(ctx.residue(12)) == 2
    assert val_p(ctx.residue(0)) == 4
    assert val_p(ctx.residue(5)) == 0
    with pytest.raises(UnsupportedRingError):
        val_p(ring(12).residue(3))


def test_valuation_sum_kills_products():
    for N in (8, 9, 27, 16):
        ctx = ring(N)
        p, r = ctx.p, ctx.r
        for a in range(N):
            for b in range(N):
                ra, rb = ctx.residue(a), ctx.residue(b)
                if val_p(ra) + val_p(rb) >= r:
                    assert (ra * rb).value == 0


def test_crt_split_examples():
    ctx = ring(12)
    parts = crt_split(ctx.residue(7))
    assert [(p.value, p.ctx.modulus) for p in parts] == [(3, 4), (1, 3)]
    combined = crt_combine([ring(4).residue(1), ring(3).residue(1)])
    assert combined.value == 1 and combined.ctx.modulus == 12


def test_crt_round_trip():
    for N in (6, 12, 60, 360, 1000):
        ctx = ring(N)
        for a in range(N):
            res = ctx.residue(a)
            assert crt_combine(crt_split(res)) == res


def test_crt_combine_rejects_non_coprime():
    with pytest.raises(ValueError):
        crt_combine([ring(4).residue(1), ring(6).residue(1)])
    with pytest.raises(ValueError):
        crt_combine([])


def test_unit_or_nilpotent_in_prime_power_rings():
    # every element of Z/p^r is a unit or nilpotent
    for N in (4, 8, 9, 25, 27):
        ctx = ring(N)
        r = ctx.r
        for a in range(N):
            res = ctx.residue(a)
            assert res.is_unit or (res**r).value == 0


def test_minus_one_is_canonical():
    assert ring(9).residue(-1).value == 8
    # 1 and -1 coincide in F_2 but not in Z/2^r for r >= 2
    assert ring(2).residue(-1).value == 1
    assert ring(4).residue(-1).value == 3
