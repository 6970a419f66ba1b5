import json
import math
import random
from importlib import resources

import pytest

from tauhunt import lucas as L
from tauhunt.arith import DomainError, primes_up_to


def load_table():
    return json.loads(resources.files("tauhunt.data").joinpath("defect_tables.json").read_text())


def random_modularity_pair(rng):
    while True:
        p = rng.choice(primes_up_to(20))
        e = rng.choice((1, 3, 5))
        B = p**e
        amax = math.isqrt(4 * B)
        a = rng.randint(1, max(1, amax)) * rng.choice((1, -1))
        if a != 0 and math.gcd(a, B) == 1 and a * a not in (B, 2 * B, 3 * B, 4 * B):
            return L.LucasPair(a, B)


def test_terms_basic():
    pair = L.LucasPair(1, 2)
    assert L.lucas_terms(pair, 7) == [1, 1, -1, -3, -1, 5, 7]
    assert L.lucas_terms(pair, 8)[7] == -3
    assert L.lucas_terms(L.LucasPair(5, 7), 1) == [1]


def test_pair_validation():
    with pytest.raises(DomainError):
        L.LucasPair(0, 2)
    with pytest.raises(DomainError):
        L.LucasPair(2, 4)       # gcd
    with pytest.raises(DomainError):
        L.LucasPair(2, 1)       # A^2 = 4B degenerate
    with pytest.raises(DomainError):
        L.LucasPair(1, 1)       # A^2 = B degenerate
    L.LucasPair.unchecked(2, 4)  # explicitly unchecked works


def test_rank_of_apparition():
    assert L.rank_of_apparition(L.LucasPair(1, 2), 7).rank == 7
    assert L.rank_of_apparition(L.LucasPair(1, 2), 3).rank == 4
    # computed by the scan and frozen: first multiple of 5 for (2,3) is u_6 = -10
    assert L.rank_of_apparition(L.LucasPair(2, 3), 5).rank == 6
    # ell | A gives rank 2
    assert L.rank_of_apparition(L.LucasPair(5, 2), 5).rank == 2
    res = L.rank_of_apparition(L.LucasPair(2, 27), 3)
    assert res.rank is None and "never" in res.reason
    # and indeed no early term is divisible
    assert all(u % 3 for u in L.lucas_terms(L.LucasPair(2, 27), 30))


def test_prop_b_cases():
    rec = L.check_prop_b(L.LucasPair(1, 2), 3)
    assert rec.ok and rec.case == "order" and rec.rank == 4
    # discriminant case: ell | A^2 - 4B forces rank ell
    pair = L.LucasPair(1, 2)   # D = -7
    rec = L.check_prop_b(pair, 7)
    assert rec.ok and rec.case == "discriminant" and rec.rank == 7


def test_prop_b_randomized():
    rng = random.Random(41)
    checked = 0
    while checked < 300:
        pair = random_modularity_pair(rng)
        ell = rng.choice([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
        if pair.B % ell == 0:
            continue
        res = L.rank_of_apparition(pair, ell)
        if res.rank is None or res.rank <= 2:
            continue
        assert L.check_prop_b(pair, ell).ok, (pair, ell)
        checked += 1


def test_divisibility_property():
    rng = random.Random(17)
    for _ in range(60):
        pair = random_modularity_pair(rng)
        terms = L.lucas_terms(pair, 40)
        for n in range(2, 41):
            for d in range(2, n):
                if n % d == 0:
                    assert terms[n - 1] % terms[d - 1] == 0


def test_primitive_divisors_basic():
    pair = L.LucasPair(1, 2)
    assert not L.has_primitive_prime_divisor(pair, 5)   # u_5 = -1
    assert not L.has_primitive_prime_divisor(pair, 7)   # u_7 = 7 divides D = -7
    assert L.has_primitive_prime_divisor(pair, 6)       # u_6 = 5
    assert L.brute_force_defect_indices(pair) == [3, 5, 7, 8, 12, 13, 18, 30]


def test_bhv_bound_property():
    # every term with 30 < n <= 40 has a primitive prime divisor
    rng = random.Random(23)
    for _ in range(200):
        pair = random_modularity_pair(rng)
        terms = L.lucas_terms(pair, 40)
        for n in range(31, 41):
            assert L.primitive_part(pair, n, terms) > 1, (pair, n)


def test_sporadic_values_match_recomputation():
    table = load_table()
    for row in table["sporadic"]:
        pair = L.LucasPair(row["A"], row["B"])
        terms = L.lucas_terms(pair, 30)
        for n, v in row["defects"]:
            assert terms[n - 1] == v, (row["A"], row["B"], n)
        # sign flip: u_n(-A, B) = (-1)^(n-1) u_n(A, B)
        neg = L.lucas_terms(L.LucasPair(-row["A"], row["B"]), 30)
        for n, v in row["defects"]:
            assert neg[n - 1] == (-1) ** (n - 1) * v


def test_classification_examples():
    assert [(d.n, d.value) for d in L.classify_defects(L.LucasPair(3, 8))] == [(3, 1)]
    assert [(d.n, d.value) for d in L.classify_defects(L.LucasPair(-3, 8))] == [(3, 1)]
    assert [(d.n, d.source, d.value) for d in L.classify_defects(L.LucasPair(2, 5))] == [
        (3, "P1", -1)
    ]
    # (7, 27): A^2 - 3B = -32 = (-2)^5, a defective u_6 family member
    recs = L.classify_defects(L.LucasPair(7, 27))
    assert [(d.n, d.source) for d in recs] == [(6, "B4")]
    assert recs[0].value == -4928
    assert L.brute_force_defect_indices(L.LucasPair(7, 27)) == [6]
    # B1 instance: 16 = 13 + 3
    assert [(d.n, d.source) for d in L.classify_defects(L.LucasPair(4, 13))] == [(3, "B1")]


def test_no_defects_case():
    pair = L.LucasPair(2, 27)
    assert L.classify_defects(pair) == []
    assert L.brute_force_defect_indices(pair) == []


def test_weight2_exclusions_are_pinned():
    """The published family constraints (m > 1, m > 2 even, r >= 1) exclude
    a handful of exponent-1 (weight-2) pairs whose terms are genuinely
    defective.  Pin them: the discrepancy set must be exactly these, so a
    transcription slip elsewhere still fails."""
    known = {
        (1, 2): [3], (-1, 2): [3],       # p = m^2 + 1 with m = 1
        (2, 3): [4], (-2, 3): [4],       # A^2 = 2B + 2eps with m = 2
        (1, 3): [6], (-1, 3): [6],       # (r, m) = (1, 1) exclusion
        (5, 7): [6], (-5, 7): [6],       # Phi_6 = 4, below the r >= 1 range
        (7, 17): [6], (-7, 17): [6],     # Phi_6 = -2
        (11, 41): [6], (-11, 41): [6],   # Phi_6 = -2
    }
    diffs = {}
    for p in primes_up_to(50):
        amax = math.isqrt(4 * p)
        for a in range(-amax, amax + 1):
            if a == 0 or math.gcd(a, p) != 1 or a * a in (p, 2 * p, 3 * p, 4 * p):
                continue
            pair = L.LucasPair(a, p)
            brute = L.brute_force_defect_indices(pair)
            cls = sorted(d.n for d in L.classify_defects(pair))
            missing = sorted(set(brute) - set(cls))
            assert not set(cls) - set(brute), (a, p, cls, brute)
            if missing:
                diffs[(a, p)] = missing
    assert diffs == known


def test_parity_of_terms():
    # A even, B odd: u_n odd iff n odd
    for pair in (L.LucasPair(4, 5), L.LucasPair(2, 27), L.LucasPair(-6, 3125)):
        terms = L.lucas_terms(pair, 24)
        for n in range(1, 25):
            assert (terms[n - 1] % 2 == 1) == (n % 2 == 1)


def test_sigma_hat():
    assert L.sigma_hat(10, 49, 2) == 1          # generic sigma_0(3) - 1
    assert L.sigma_hat(10, 49, 1) == 1
    assert L.sigma_hat(3, 8, 2) == 0            # 3 | m + 1
    assert L.sigma_hat(-3, 8, 2) == 0
    assert L.sigma_hat(3, 8, 1) == 1
    assert L.sigma_hat(5, 8, 5) == 2            # 6 | m + 1: sigma_0(6) - 2
    assert L.sigma_hat(5, 8, 2) == 1
    assert L.sigma_hat(7, 27, 3) == -1          # family member: sigma_0(4) - 4
    with pytest.raises(DomainError):
        L.sigma_hat(3, 8, 0)


def test_data_dir_override(tmp_path, monkeypatch):
    """TAUHUNT_DATA_DIR points the loaders at alternate fixture files."""
    from importlib import resources

    src = resources.files("tauhunt.data").joinpath("defect_tables.json")
    table = json.loads(src.read_text())
    table["sporadic"] = [r for r in table["sporadic"] if (r["A"], r["B"]) != (3, 8)]
    (tmp_path / "defect_tables.json").write_text(json.dumps(table))
    monkeypatch.setenv("TAUHUNT_DATA_DIR", str(tmp_path))
    L._load_table.cache_clear()
    try:
        assert L.classify_defects(L.LucasPair(3, 8)) == []
    finally:
        monkeypatch.delenv("TAUHUNT_DATA_DIR")
        L._load_table.cache_clear()
    assert [d.n for d in L.classify_defects(L.LucasPair(3, 8))] == [3]
