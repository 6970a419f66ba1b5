import random

import pytest

from tauhunt import thue as T
from tauhunt.arith import DomainError


def test_form_displays():
    assert T.build_form(1).coeffs == (1, -1)
    assert T.build_form(2).coeffs == (1, -3, 1)
    assert T.build_form(3).coeffs == (1, -5, 6, -1)
    assert T.build_form(5).coeffs == (1, -9, 28, -35, 15, -1)
    # not printed anywhere: from the generating-function recursion
    assert T.build_form(4).coeffs == (1, -7, 15, -10, 1)


def test_form_monic_in_y():
    for m in range(1, 12):
        assert T.evaluate(T.build_form(m), 0, 1) == 1


def test_evaluate_examples():
    F6 = T.build_form(3)
    assert T.evaluate(F6, 2, 1) == 7
    assert T.evaluate(F6, 1, 4) == 7
    assert T.evaluate(F6, -3, -5) == 7


def test_homogeneity():
    rng = random.Random(1)
    for m in (1, 2, 3, 5, 8):
        F = T.build_form(m)
        for _ in range(20):
            lam = rng.randint(1, 6)
            x, y = rng.randint(-9, 9), rng.randint(-9, 9)
            assert T.evaluate(F, lam * x, lam * y) == lam**m * T.evaluate(F, x, y)


def test_sign_symmetry():
    rng = random.Random(2)
    for m in (2, 3, 4, 7):
        F = T.build_form(m)
        for _ in range(20):
            x, y = rng.randint(-9, 9), rng.randint(-9, 9)
            assert T.evaluate(F, -x, -y) == (-1) ** m * T.evaluate(F, x, y)


def test_reduction_identity():
    rng = random.Random(3)
    for p in (3, 5, 7, 11, 13, 23, 29, 31, 37):
        Fh = T.build_reduced_form(p)
        F = T.build_form((p - 1) // 2)
        assert Fh.coeffs[0] == 1
        for _ in range(8):
            x, y = rng.randint(-9, 9), rng.randint(-9, 9)
            assert T.evaluate(F, x, y) == T.evaluate(Fh, x, y - 2 * x)
        assert T.evaluate(F, 1, 1) == T.evaluate(Fh, 1, -1)


def test_reduced_small_forms():
    assert T.build_reduced_form(3).coeffs == (1, 1)          # Y + X
    assert T.build_reduced_form(5).coeffs == (1, 1, -1)      # Y^2 + XY - X^2


def test_f690_values():
    F690 = T.build_form(345)
    assert T.evaluate(F690, 1, 4) == 691
    assert T.evaluate(F690, -1, -4) == -691
    Fh = T.build_reduced_form(691)
    assert T.evaluate(Fh, 1, 2) == 691


def test_solve_f6_pm7():
    F6 = T.build_form(3)
    res = T.solve_bounded(F6, 7, x_small=50, x_mid=50)
    assert res.solutions == ((-3, -5), (1, 4), (2, 1))
    res = T.solve_bounded(F6, -7, x_small=50, x_mid=50)
    assert res.solutions == ((-2, -1), (-1, -4), (3, 5))


def test_solve_linear_form():
    res = T.solve_bounded(T.build_form(1), 5, x_small=3, x_mid=3)
    assert res.solutions == tuple(sorted((x, x + 5) for x in range(-3, 4)))
    # midsize handled in closed form
    res = T.solve_bounded(T.build_form(1), 5, x_small=2, x_mid=4)
    assert res.solutions == tuple(sorted((x, x + 5) for x in range(-4, 5)))


def test_solve_empty_row():
    res = T.solve_bounded(T.build_form(6), -13, x_small=100, x_mid=100)
    assert res.solutions == ()


def test_rhs_zero_rejected():
    with pytest.raises(DomainError):
        T.solve_bounded(T.build_form(2), 0)


def test_pruning_soundness_f6():
    """Convergent-pruned midsize search equals exhaustive scan to 1000."""
    F6 = T.build_form(3)
    for rhs in (7, -7, 13, -13, 29, -29):
        full = T.solve_bounded(F6, rhs, x_small=1000, x_mid=1000)
        pruned = T.solve_bounded(F6, rhs, x_small=50, x_mid=1000)
        assert full.solutions == pruned.solutions, rhs


def test_jobs_determinism():
    F6 = T.build_form(3)
    a = T.solve_bounded(F6, 13, x_small=200, x_mid=400, jobs=1)
    b = T.solve_bounded(F6, 13, x_small=200, x_mid=400, jobs=3)
    assert a.solutions == b.solutions


def test_catalog_rows_evaluate():
    for row in T.catalog_rows():
        if row["d"] == 691:
            form = T.build_form(345)
        else:
            form = T.build_form((row["d"] - 1) // 2)
        for x, y in row["solutions"]:
            assert T.evaluate(form, x, y) == row["D"], (row["d"], row["D"], x, y)


def test_catalog_lookup():
    row = T.catalog_lookup(7, 7)
    assert row is not None and [1, 4] in row["solutions"]
    assert T.catalog_lookup(7, 11) is None


def test_certificate_shape():
    res = T.solve_bounded(T.build_form(2), 5, x_small=20, x_mid=40)
    assert res.certificate["x_small"] == 20
    assert res.certificate["x_mid"] == 40
    assert "midsize" in res.certificate
    d = res.to_dict()
    assert set(d) == {"form", "rhs", "solutions", "certificate"}
