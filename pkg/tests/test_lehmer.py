import pytest

from tauhunt import lehmer as LE
from tauhunt.arith import DomainError, primes_up_to
from tauhunt.newform import NewformSpec, coeff_prime_power, delta_newform

DELTA = delta_newform(600)
FAST = LE.SearchBounds(x_max=3000, x_small=120, x_mid=400)


def test_unit_set():
    assert LE.unit_set(DELTA) == (1,)
    w4 = NewformSpec(weight=4, level=5, ap={2: 3}, trivial_mod2=True)
    assert LE.unit_set(w4) == (1, 4)
    assert coeff_prime_power(w4, 2, 2) == 1      # a_f(4) = 9 - 8
    w4n = NewformSpec(weight=4, level=5, ap={2: -3}, trivial_mod2=True)
    assert LE.unit_set(w4n) == (1, 4)
    even_level = NewformSpec(weight=4, level=2, bad_signs={2: 1}, trivial_mod2=True)
    assert LE.unit_set(even_level) == (1,)
    w6 = NewformSpec(weight=6, level=5, ap={2: 3}, trivial_mod2=True)
    assert LE.unit_set(w6) == (1,)
    with pytest.raises(DomainError):
        LE.unit_set(NewformSpec(weight=4, level=1, ap={2: 3}))


def test_enumerate_conditions():
    conds = LE.enumerate_conditions(DELTA, 3, 1, 1)
    assert [c.d for c in conds] == [3]
    assert conds[0].describe() == "Y^2 = X^11 + (3)"
    conds = LE.enumerate_conditions(DELTA, 5, 1, 1)
    assert [c.d for c in conds] == [3, 5]
    assert conds[1].describe() == "Y^2 = 5*X^22 + (20)"
    conds = LE.enumerate_conditions(DELTA, 7, 1, -1)
    assert [c.d for c in conds] == [3, 7]
    assert conds[1].describe() == "F_6(X, Y) = -7"
    conds = LE.enumerate_conditions(DELTA, 691, 1, 1)
    assert [c.d for c in conds] == [3, 5, 23, 173, 691]
    conds = LE.enumerate_conditions(DELTA, 7, 3, 1)
    assert conds[1].alpha == 343


def test_ramanujan_filter_closed_forms():
    assert LE.ramanujan_filter(3, 7) == 2       # 7 = 1 mod 3
    assert LE.ramanujan_filter(3, 5) == 1
    assert LE.ramanujan_filter(5, 7) == 3       # 7 = 2 mod 5
    assert LE.ramanujan_filter(5, 19) == 1      # 19 = 4 mod 5
    assert LE.ramanujan_filter(5, 11) == 4
    assert LE.ramanujan_filter(7, 11) == 6      # 11 = 4 mod 7
    assert LE.ramanujan_filter(7, 3) == 1
    with pytest.raises(DomainError):
        LE.ramanujan_filter(11, 3)
    with pytest.raises(DomainError):
        LE.ramanujan_filter(3, 2)


def test_ramanujan_filter_vs_tau_scan():
    """Closed forms equal the first index n with ell | tau(p^n)."""
    for ell in (3, 5, 7, 691):
        for p in primes_up_to(80):
            if p in (2, ell):
                continue
            scan = next(
                n for n in range(1, 700) if coeff_prime_power(DELTA, p, n) % ell == 0
            )
            assert LE.ramanujan_filter(ell, p) == scan, (ell, p)


def test_ramanujan_filter_vs_modular_scan_to_1e4():
    """Same check for every odd prime p <= 10^4, with the Hecke recursion
    run modulo ell; needs tau(p) only through the stored eigenvalues."""
    big = delta_newform(10**4)
    for ell in (3, 5, 7, 691):
        for p in primes_up_to(10**4):
            if p in (2, ell):
                continue
            a = big.ap[p] % ell
            B = pow(p, 11, ell)
            prev, cur, scan = 1, a, None
            for n in range(1, 692):
                if cur == 0:
                    scan = n
                    break
                prev, cur = cur, (a * cur - B * prev) % ell
            assert LE.ramanujan_filter(ell, p) == scan, (ell, p)


def test_achievable_ranks():
    assert LE.achievable_ranks(3) == {1, 2}
    assert LE.achievable_ranks(5) == {1, 3, 4}
    assert LE.achievable_ranks(7) == {1, 6}
    r691 = LE.achievable_ranks(691)
    assert {2, 4, 22, 690} <= r691
    assert 172 not in r691
    # d - 1 achievable for odd prime d dividing 691 * 690 * 692: exactly 3, 5, 23, 691
    ok = [d for d in (3, 5, 23, 173, 691) if d - 1 in r691]
    assert ok == [3, 5, 23, 691]


def test_criterion_identity_d3():
    # a_f(p^2) = a_f(p)^2 - p^(2k-1): point on Y^2 = X^(2k-1) + a_f(p^2)
    for p in primes_up_to(50):
        a2 = coeff_prime_power(DELTA, p, 2)
        a1 = coeff_prime_power(DELTA, p, 1)
        assert a1 * a1 == p**11 + a2


def test_criterion_identity_d5():
    # 5 B^2 + 4 a_f(p^4) = (2 a_f(p)^2 - 3 B)^2 with B = p^(2k-1)
    for p in primes_up_to(50):
        B = p**11
        a1 = coeff_prime_power(DELTA, p, 1)
        a4 = coeff_prime_power(DELTA, p, 4)
        assert a4 == a1**4 - 3 * a1**2 * B + B * B
        assert 5 * B * B + 4 * a4 == (2 * a1 * a1 - 3 * B) ** 2


def test_criterion_identity_thue():
    from tauhunt.thue import build_form, evaluate

    for p in primes_up_to(20):
        B = p**11
        a1 = coeff_prime_power(DELTA, p, 1)
        for m in range(1, 7):
            F = build_form(m)
            assert evaluate(F, B, a1 * a1) == coeff_prime_power(DELTA, p, 2 * m)


def test_admissibility_delta_ell3():
    rep = LE.check_admissibility(DELTA, 3, 1, 1, FAST)
    assert rep.status == "EXCLUDED_WITHIN_BOUNDS"
    assert not rep.grh_conditional
    assert [v.condition.d for v in rep.verdicts] == [3]
    v = rep.verdicts[0]
    assert v.mode == "fixture+search"
    assert v.raw_hits == ((1, 2),)
    assert v.dispositions[0]["status"] == "filtered"
    rep = LE.check_admissibility(DELTA, 3, 1, -1, FAST)
    assert rep.status == "EXCLUDED_WITHIN_BOUNDS"


def test_admissibility_congruence_pruning():
    rep = LE.check_admissibility(DELTA, 5, 1, 1, FAST)
    modes = {v.condition.d: v.mode for v in rep.verdicts}
    assert modes[3] == "congruence-excluded"
    assert modes[5] != "congruence-excluded"
    rep = LE.check_admissibility(DELTA, 7, 1, 1, FAST)
    modes = {v.condition.d: v.mode for v in rep.verdicts}
    assert modes[3] == "congruence-excluded" and modes[7] == "fixture+search"


def test_admissibility_eigenvalue_mismatch_filter():
    # Y^2 = X^11 - 23 has the point (2, 45); tau(2) = -24 rules it out
    rep = LE.check_admissibility(DELTA, 23, 1, -1, FAST)
    assert rep.status == "EXCLUDED_WITHIN_BOUNDS"
    d3 = next(v for v in rep.verdicts if v.condition.d == 3)
    assert d3.raw_hits == ((2, 45),)
    assert "differs" in d3.dispositions[0]["reason"]


def test_admissibility_candidate_found():
    # weight 4 odd level: a_f(3^2) = 37 is a genuine candidate at (3, +-8)
    w4 = NewformSpec(weight=4, level=1, ap={2: -2}, trivial_mod2=True, name="w4")
    rep = LE.check_admissibility(w4, 37, 1, 1, FAST)
    assert rep.status == "CANDIDATES_FOUND"
    cands = [d for v in rep.verdicts for d in v.candidates]
    assert any(c["p"] == 3 and c["predicted_n"] == [9] for c in cands)


def test_admissibility_unit_m0():
    # weight-4 form with 4 in the unit set: predicted n include 4 p^(d-1)
    w4 = NewformSpec(weight=4, level=1, ap={2: 3}, trivial_mod2=True, name="w4u")
    rep = LE.check_admissibility(w4, 37, 1, 1, FAST)
    cands = [d for v in rep.verdicts for d in v.candidates]
    assert any(c["p"] == 3 and c["predicted_n"] == [9, 36] for c in cands)


def test_omega_lower_bound():
    assert LE.omega_lower_bound(DELTA, 251**2) == 1
    assert LE.omega_lower_bound(DELTA, 6) == 2
    assert LE.omega_lower_bound(DELTA, 3) == 1
    assert LE.omega_lower_bound(DELTA, 4) == 1   # sigma_0(3) - 1
    # bad prime contributes (k - 1) * ord
    lvl = NewformSpec(weight=6, level=3, ap={2: 0}, bad_signs={3: 1}, trivial_mod2=True)
    assert LE.omega_lower_bound(lvl, 9) == 4
    with pytest.raises(DomainError):
        LE.omega_lower_bound(DELTA, 1)


def test_omega_bound_is_actually_a_lower_bound():
    from tauhunt.arith import big_omega
    from tauhunt.newform import coeff

    for n in (2, 4, 6, 9, 12, 25, 36, 60, 96, 251**2):
        assert big_omega(coeff(DELTA, n)) >= LE.omega_lower_bound(DELTA, n), n


def test_decompose_examples():
    d = LE.decompose_odd_target(DELTA, -15)
    assert len(d["scenarios"]) == 2
    d = LE.decompose_odd_target(DELTA, 9)
    scs = {tuple((b["sign"], b["ell"], b["m"]) for b in sc) for sc in d["scenarios"]}
    assert scs == {((1, 3, 2),), ((1, 3, 1), (1, 3, 1)), ((-1, 3, 1), (-1, 3, 1))}
    d = LE.decompose_odd_target(DELTA, -693)
    # blocks: 3^2 as {9} or {3,3}; signs with odd minus count
    assert len(d["scenarios"]) == 10
    for sc in d["scenarios"]:
        prod = 1
        for b in sc:
            prod *= b["sign"] * b["ell"] ** b["m"]
        assert prod == -693
    with pytest.raises(DomainError):
        LE.decompose_odd_target(DELTA, 14)
    with pytest.raises(DomainError):
        LE.decompose_odd_target(DELTA, 1)


def test_report_serialization():
    rep = LE.check_admissibility(DELTA, 3, 1, 1, FAST)
    d = rep.to_dict()
    assert d["schema"] == "tauhunt-admissibility/1"
    assert d["status"] == "EXCLUDED_WITHIN_BOUNDS"
    assert d["target"] == 3
    assert d["conditions"][0]["certificate"]["x_max"] == FAST.x_max
