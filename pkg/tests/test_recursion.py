import pytest

from quiddity import oracle
from quiddity.formulas import sigma_closed
from quiddity.matrices import Mat2
from quiddity.recursion import (
    class_aggregate_check,
    class_of,
    pi_recursive,
    residue_classes,
    sigma_recursive,
    sigma_reduction_check,
    step1_weight,
    step2_weight,
    tau_recursive,
    valuation_class_check,
)
from quiddity.ring import UnsupportedRingError, ring


def test_sigma_table_base_rows():
    table = sigma_recursive(3, 2, 6)
    assert table.rows[2] == (0, 1)
    assert table.rows[4] == (0, 9)
    assert table.value(6, 2) == 81
    with pytest.raises(ValueError):
        table.value(6, 3)
    with pytest.raises(ValueError):
        sigma_recursive(3, 2, 5)


def test_sigma_recursion_matches_closed_form():
    for p in (2, 3, 5):
        for r in range(1, 5):
            table = sigma_recursive(p, r, 12)
            for n in range(2, 13, 2):
                for level in range(1, r + 1):
                    assert table.value(n, level) == sigma_closed(p, r, n, level)


def test_sigma_level_one_vanishes_from_length_four():
    for p, r in ((2, 3), (3, 2), (5, 4)):
        table = sigma_recursive(p, r, 10)
        for n in range(4, 11, 2):
            assert table.value(n, 1) == 0


def test_sigma_reduction_check_examples():
    assert sigma_reduction_check(ring(4), 1, 4)
    assert sigma_reduction_check(ring(9), 4, 6)  # z = 1 + 3
    assert sigma_reduction_check(ring(8), 5, 6)  # z = 1 + 4
    assert sigma_reduction_check(ring(9), 2, 4)  # z = 2 is in -1 + I
    with pytest.raises(ValueError):
        sigma_reduction_check(ring(9), 3, 4)  # z not in +-1 + I
    with pytest.raises(ValueError):
        sigma_reduction_check(ring(9), 1, 5)


def test_valuation_class_check_examples():
    assert valuation_class_check(ring(9), 4)
    assert valuation_class_check(ring(8), 4)
    assert valuation_class_check(ring(8), 6)
    with pytest.raises(ValueError):
        valuation_class_check(ring(8), 5)


def test_step1_weight_examples():
    ctx = ring(8)
    assert step1_weight(ctx, 3, 2) == 2
    assert step1_weight(ctx, 1, 4) == 0
    assert step1_weight(ctx, 2, 1) == 1  # units always contribute 1
    assert step1_weight(ctx, 7, 0) == 8  # val(0) = r and x + 1 = 0


def test_step2_weight_examples():
    ctx = ring(9)
    assert step2_weight(ctx, 1, 8) == 15  # x + u = 0
    assert step2_weight(ctx, 1, 2) == 6  # x + u = 3, valuation 1
    assert step2_weight(ctx, 1, 1) == 0  # x + u a unit
    assert step2_weight(ctx, 3, 6) == 0  # x not a unit wins first
    assert step2_weight(ctx, 3, 0) == 0


def test_pi_recursive_spot_totals():
    ctx = ring(4)
    table = pi_recursive(ctx, Mat2.scalar(ctx, -1), 5)
    assert table.row_total(5) == 20
    assert table.rows[5] == oracle.count_fixed_second(ctx, 5, Mat2.scalar(ctx, -1))
    ctx9 = ring(9)
    table9 = pi_recursive(ctx9, Mat2.scalar(ctx9, -1), 6)
    assert table9.row_total(6) == 999
    # Id is the opposite-sign target at n = 6: 26 field cycles, each lifted 27 ways
    assert pi_recursive(ctx9, Mat2.identity(ctx9), 6).row_total(6) == 702
    with pytest.raises(UnsupportedRingError):
        pi_recursive(ring(12), Mat2.identity(ring(12)), 5)
    with pytest.raises(ValueError):
        pi_recursive(ctx, Mat2.identity(ctx), 2)


def test_pi_recursive_matches_oracle_rowwise():
    ctx = ring(8)
    A = Mat2.of(ctx, 1, 1, 0, 1)
    assert A.det().value == 1
    table = pi_recursive(ctx, A, 7)
    for n in range(5, 8):
        assert table.rows[n] == oracle.count_fixed_second(ctx, n, A)


def test_pi_recursive_matches_oracle_all_targets_mod8():
    ctx = ring(8)
    space = oracle.state_space(ctx, "all")
    for i in range(len(space.states)):
        A = space.matrix_at(i)
        table = pi_recursive(ctx, A, 8)
        for n in range(5, 9):
            assert table.rows[n] == oracle.count_fixed_second(ctx, n, A), (A, n)


def test_tau_recursive_examples():
    # over Z/2 the recursion is tau_n = tau_(n-1) + 2*tau_(n-2)
    ctx = ring(2)
    A = Mat2.identity(ctx)
    tau = tau_recursive(ctx, A, 8)
    for n in range(5, 9):
        assert tau[n] == tau[n - 1] + 2 * tau[n - 2]
    units = set(ctx.units())
    for n in range(5, 9):
        direct = sum(
            v for u, v in oracle.count_fixed_second(ctx, n, A).items() if u in units
        )
        assert tau[n] == direct


def test_tau_matches_oracle_on_odd_prime_powers():
    for N, A_builder in ((9, lambda c: Mat2.scalar(c, -1)), (4, Mat2.identity)):
        ctx = ring(N)
        A = A_builder(ctx)
        tau = tau_recursive(ctx, A, 9)
        units = set(ctx.units())
        for n in range(5, 10):
            direct = sum(
                v for u, v in oracle.count_fixed_second(ctx, n, A).items() if u in units
            )
            assert tau[n] == direct


def test_residue_classes_partition():
    for N in (5, 9, 25, 27):
        ctx = ring(N)
        cls = residue_classes(ctx)
        members = sorted(m for ms in cls.values() for m in ms)
        assert members == list(range(N))
        for cid, ms in cls.items():
            for u in ms:
                assert class_of(ctx, u) == cid
    with pytest.raises(UnsupportedRingError):
        residue_classes(ring(8))


def test_residue_classes_degenerate_rank_one():
    cls = residue_classes(ring(5))
    assert cls[("u", -1, 1)] == (4,)
    assert cls[("u", 0, 1)] == (0,)
    assert cls[("u", 1, 1)] == (1,)
    assert cls[("e",)] == (2, 3)


def test_generic_class_is_empty_for_p3():
    assert residue_classes(ring(9))[("e",)] == ()


def test_class_aggregate_check():
    assert class_aggregate_check(ring(5))
    assert class_aggregate_check(ring(25))
    with pytest.raises(UnsupportedRingError):
        class_aggregate_check(ring(9))
    with pytest.raises(UnsupportedRingError):
        class_aggregate_check(ring(8))


def test_class_sums_drive_the_tau_coefficients():
    # summing step weights over all units reproduces the tau recursion weights
    for N in (9, 25):
        ctx = ring(N)
        p, r = ctx.p, ctx.r
        units = ctx.units()
        for x in units[:4]:
            assert sum(step1_weight(ctx, x, u) for u in units) == p**r - p ** (r - 1)
            assert sum(step2_weight(ctx, x, u) for u in units) == p ** (2 * r - 1)
