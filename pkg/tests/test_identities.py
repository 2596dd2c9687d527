from fractions import Fraction as F

import pytest

from quiddity import identities


def test_qint_of_fraction_form():
    assert identities.qint_of(3, F(2)) == 7
    assert identities.qint_of(0, F(5)) == 0
    assert identities.qint_of(-1, F(3)) == F(-1, 3)
    with pytest.raises(ValueError):
        identities.qint_of(2, F(1))


def test_geometric_sum_checks():
    for p in (2, 3, 5, 7):
        for m in range(1, 9):
            assert identities.check_inverse_power_sum(p, m)
            assert identities.check_weighted_inverse_power_sum(p, m)


def test_shell_pair_tail_sum_grid():
    for p in (2, 3, 5, 7):
        for r in range(2, 7):
            for level in range(1, r):
                assert identities.check_shell_pair_tail_sum(p, r, level)
    with pytest.raises(ValueError):
        identities.check_shell_pair_tail_sum(2, 1, 1)


def test_qint_weighted_tail_sum_grid():
    for p in (2, 3, 5, 7):
        for s in range(2, 7):
            for m in range(3, 9):
                assert identities.check_qint_weighted_tail_sum(p, s, m)
    with pytest.raises(ValueError):
        identities.check_qint_weighted_tail_sum(2, 1, 3)


def test_qint_long_division():
    for x in (F(2), F(3), F(7, 2), F(3, 2), F(-5, 3)):
        for r in range(1, 9):
            assert identities.check_qint_long_division(x, r)
    with pytest.raises(ValueError):
        identities.check_qint_long_division(F(1), 3)


def test_max_level_collapse():
    assert identities.check_max_level_collapse(3, F(2), 4)
    for p in (2, 3, 5):
        for x in (F(2), F(5, 2), F(7)):
            for r in (3, 5, 7):
                assert identities.check_max_level_collapse(p, x, r)
    with pytest.raises(ValueError):
        identities.check_max_level_collapse(3, F(2), 2)
    with pytest.raises(ValueError):
        identities.check_max_level_collapse(3, F(1), 4)


def test_step_collapse_spot():
    assert identities.check_step_collapse(2, 3, 1, 1, 1, 1, 2)
    assert identities.check_identity_sample(2, 3, 1, 1, 1, 1, 2)


def test_step_collapse_rejects_vanishing_denominators():
    with pytest.raises(ValueError):
        identities.check_step_collapse(2, 0, 1, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        identities.check_step_collapse(2, 2, 1, 1, 1, 1, 2)  # x = p
    with pytest.raises(ValueError):
        identities.check_step_collapse(2, 4, 1, 1, 1, 1, 2)  # x = p^2
    with pytest.raises(ValueError):
        identities.check_step_collapse(2, 3, 0, 1, 1, 1, 2)  # u = 0


def test_collapse_parts():
    samples = [
        (2, F(3), F(1), F(1), F(1), F(1)),
        (3, F(7, 2), F(3), F(4), F(2), F(5)),
        (5, F(-2), F(11), F(13), F(17), F(19)),
    ]
    for p, x, y, z, u, v in samples:
        assert identities.check_collapse_part_a(p, x, y, z, u, v)
        assert identities.check_collapse_part_c(p, x, y, z, u, v)
        for level in (1, 2, 5):
            assert identities.check_collapse_part_b(p, x, y, z, u, v, level)


def test_sample_points_are_deterministic_and_admissible():
    pts1 = list(identities.sample_points(123, 50))
    pts2 = list(identities.sample_points(123, 50))
    assert pts1 == pts2
    for p, x, u, v, y, z, level in pts1:
        assert x not in (0, 1, p, p * p)
        assert all(val != 0 for val in (u, v, y, z))
        assert level >= 1


def test_run_sampled_checks_clean():
    assert identities.run_sampled_checks(seed=20240801, count=100) == []
    assert identities.run_sampled_checks(seed=7, count=25) == []
