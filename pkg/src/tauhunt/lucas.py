"""Lucas sequences u_n = (alpha^n - beta^n)/(alpha - beta) and their
defective terms.

A LucasPair holds the integers A = alpha + beta and B = alpha*beta.  The
pairs of interest have B = p^(2k-1) an odd prime power with A^2 <= 4B,
which is exactly the shape produced by Hecke eigenvalues.  The module
generates terms, finds ranks of apparition, detects primitive prime
divisors, and classifies defective terms (those without a primitive
prime divisor) against the Bilu-Hanrot-Voutier / Abouzaid tables, which
ship as a JSON fixture.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .arith import DomainError, factor, is_prime, sigma

__all__ = [
    "LucasPair",
    "DefectRecord",
    "lucas_terms",
    "RankResult",
    "rank_of_apparition",
    "PropBRecord",
    "check_prop_b",
    "classify_defects",
    "family_memberships",
    "has_primitive_prime_divisor",
    "primitive_part",
    "brute_force_defect_indices",
    "sigma_hat",
    "BILU_HANROT_VOUTIER_BOUND",
]

# Every Lucas term u_n with n > 30 has a primitive prime divisor
# (Bilu-Hanrot-Voutier).
BILU_HANROT_VOUTIER_BOUND = 30


def _data_dir():
    override = os.environ.get("TAUHUNT_DATA_DIR")
    if override:
        return override
    return None


@lru_cache(maxsize=None)
def _load_table(name: str) -> dict:
    override = _data_dir()
    if override:
        with open(os.path.join(override, name), "rb") as fh:
            return json.load(fh)
    return json.loads(resources.files("tauhunt.data").joinpath(name).read_text())


@dataclass(frozen=True)
class LucasPair:
    """The pair (A, B) generating u_1 = 1, u_2 = A, u_{n+1} = A u_n - B u_{n-1}."""

    A: int
    B: int
    checked: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.checked:
            return
        if self.A == 0 or self.B == 0:
            raise DomainError("A and B must be nonzero")
        if math.gcd(self.A, self.B) != 1:
            raise DomainError("A and B must be coprime")
        if self.A * self.A in (self.B, 2 * self.B, 3 * self.B, 4 * self.B):
            raise DomainError("alpha/beta is a root of unity (degenerate pair)")

    @classmethod
    def unchecked(cls, A: int, B: int) -> "LucasPair":
        return cls(A, B, checked=False)

    @property
    def discriminant(self) -> int:
        return self.A * self.A - 4 * self.B

    def prime_power_decomposition(self) -> tuple[int, int] | None:
        """(p, e) when B = p^e with e odd, else None."""
        if self.B < 2:
            return None
        f = factor(self.B)
        if f.omega == 1:
            p, e = f.pairs[0]
            if e % 2 == 1:
                return (p, e)
        return None

    @property
    def satisfies_modularity(self) -> bool:
        """B an odd power of a prime and A^2 <= 4B."""
        return (
            self.prime_power_decomposition() is not None
            and self.A * self.A <= 4 * self.B
        )


def lucas_terms(pair: LucasPair, count: int) -> list[int]:
    """[u_1, ..., u_count], exact."""
    if count < 1:
        raise DomainError("count must be >= 1")
    terms = [1]
    if count >= 2:
        terms.append(pair.A)
    for _ in range(count - 2):
        terms.append(pair.A * terms[-1] - pair.B * terms[-2])
    return terms


@dataclass(frozen=True)
class RankResult:
    rank: int | None
    reason: str


def rank_of_apparition(pair: LucasPair, ell: int) -> RankResult:
    """Smallest n >= 2 with ell | u_n, or None when ell divides B.

    For ell | B and gcd(A, B) = 1 we have u_n = A^(n-1) (mod ell), which
    is never 0, so ell divides no term at all.  For ell coprime to B the
    rank exists and is at most ell + 1; the scan is capped there.
    """
    if ell < 3 or not is_prime(ell):
        raise DomainError("ell must be an odd prime")
    if pair.B % ell == 0:
        return RankResult(None, "ell divides B: ell never divides any u_n")
    prev, cur = 1 % ell, pair.A % ell
    n = 2
    while n <= ell + 1:
        if cur == 0:
            return RankResult(n, "rank found by scan")
        prev, cur = cur, (pair.A * cur - pair.B * prev) % ell
        n += 1
    raise DomainError(f"no rank below {ell + 1}; scan cap exceeded")  # unreachable for valid pairs


@dataclass(frozen=True)
class PropBRecord:
    ell: int
    rank: int
    case: str  # "discriminant" (ell | D, rank = ell) or "order" (rank | ell -+ 1)
    ok: bool


def check_prop_b(pair: LucasPair, ell: int) -> PropBRecord:
    """Verify the rank-of-apparition constraints for ell coprime to B.

    With m = rank > 2: ell | (A^2-4B) forces m = ell, otherwise
    m | (ell-1) or m | (ell+1).
    """
    res = rank_of_apparition(pair, ell)
    if res.rank is None:
        raise DomainError("ell divides B")
    m = res.rank
    if m <= 2:
        raise DomainError("check requires rank > 2 (ell divides A otherwise)")
    if pair.discriminant % ell == 0:
        return PropBRecord(ell, m, "discriminant", m == ell)
    return PropBRecord(ell, m, "order", (ell - 1) % m == 0 or (ell + 1) % m == 0)


# ---------------------------------------------------------------------------
# Primitive prime divisors
# ---------------------------------------------------------------------------


def _strip_common(value: int, other: int) -> int:
    """Remove from |value| every prime that divides other."""
    v = abs(value)
    g = math.gcd(v, abs(other))
    while g > 1:
        while v % g == 0:
            v //= g
        g = math.gcd(v, g)
        if g == 1:
            g = math.gcd(v, abs(other))
    return v


def primitive_part(pair: LucasPair, n: int, terms: list[int] | None = None) -> int:
    """|u_n| with every prime dividing (A^2-4B) u_1 ... u_{n-1} removed."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if terms is None:
        terms = lucas_terms(pair, n)
    v = abs(terms[n - 1])
    if v == 0:
        raise DomainError("u_n = 0: degenerate pair")
    v = _strip_common(v, pair.discriminant)
    for k in range(2, n):
        if v == 1:
            break
        v = _strip_common(v, terms[k - 1])
    return v


def has_primitive_prime_divisor(pair: LucasPair, n: int) -> bool:
    """True iff some prime divides u_n but neither (A^2-4B) nor any u_k, k < n."""
    return primitive_part(pair, n) > 1


def brute_force_defect_indices(pair: LucasPair, n_max: int = BILU_HANROT_VOUTIER_BOUND) -> list[int]:
    """Defective indices 3 <= n <= n_max by direct primitive-part computation."""
    terms = lucas_terms(pair, n_max)
    return [
        n
        for n in range(3, n_max + 1)
        if primitive_part(pair, n, terms) == 1
    ]


# ---------------------------------------------------------------------------
# Classification against the defect tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefectRecord:
    n: int
    value: int
    source: str  # "sporadic" or a family tag P1/B1..B6
    params: tuple[tuple[str, int], ...] = ()


def _pow_of(base: int, v: int) -> int | None:
    """r >= 1 with base^r = v, else None."""
    if v < base:
        return None
    r = 0
    while v % base == 0:
        v //= base
        r += 1
    return r if v == 1 and r >= 1 else None


def family_memberships(pair: LucasPair) -> list[DefectRecord]:
    """All parameterized-family rows the pair belongs to."""
    A, B = pair.A, pair.B
    a = abs(A)
    dec = pair.prime_power_decomposition()
    if dec is None:
        return []
    p, exp = dec
    out = []
    terms = lucas_terms(pair, 6)

    def rec(n, tag, **params):
        out.append(DefectRecord(n, terms[n - 1], tag, tuple(sorted(params.items()))))

    # P1: B = A^2 + 1 prime, defect u_3 = -1
    if exp == 1 and a > 1 and B == a * a + 1:
        rec(3, "P1")
    # B1: A^2 - B = eps * 3^r
    t = a * a - B
    if t != 0 and a % 3 != 0:
        eps = 1 if t > 0 else -1
        r = _pow_of(3, abs(t))
        if r is not None and not (eps == 1 and r == 1 and a == 2):
            if 3 * (a * a) >= 4 * eps * (3**r):  # A^2 >= 4*eps*3^(r-1)
                rec(3, "B1", eps=eps, r=r)
    # B2: A^2 = 2B - 1
    if a > 1 and a % 2 == 1 and a * a == 2 * B - 1:
        rec(4, "B2")
    # B3: A^2 = 2B + 2 eps
    if a > 2 and a % 2 == 0:
        for eps in (1, -1):
            if a * a == 2 * B + 2 * eps and not (eps == 1 and a == 2):
                rec(4, "B3", eps=eps)
    # B4: A^2 - 3B = (-2)^(r+2)
    t = a * a - 3 * B
    if t != 0 and math.gcd(a, 6) == 1:
        r2 = _pow_of(2, abs(t))
        if r2 is not None and r2 >= 3:
            r = r2 - 2
            if ((-2) ** (r + 2) == t) and not (r == 1 and a == 1) and a * a >= t:
                rec(6, "B4", r=r)
    # B5: A^2 = 3B + 3 eps
    if a % 3 == 0 and a > 3:
        for eps in (1, -1):
            if a * a == 3 * B + 3 * eps:
                rec(6, "B5", eps=eps)
    # B6: A^2 - 3B = 3 eps 2^r
    if a % 6 == 3:
        t = a * a - 3 * B
        if t != 0 and t % 3 == 0:
            eps = 1 if t > 0 else -1
            r = _pow_of(2, abs(t) // 3)
            if r is not None and a * a >= 3 * eps * (2 ** (r + 2)):
                rec(6, "B6", eps=eps, r=r)
    return out


def classify_defects(pair: LucasPair) -> list[DefectRecord]:
    """All defective indices n >= 3 for a pair satisfying the odd-prime-power
    shape, by table lookup: sporadic rows plus family membership tests."""
    if not pair.satisfies_modularity:
        raise DomainError("pair must satisfy B = p^(2k-1), A^2 <= 4B")
    records: dict[int, DefectRecord] = {}
    table = _load_table("defect_tables.json")
    a = abs(pair.A)
    for row in table["sporadic"]:
        if row["A"] == a and row["B"] == pair.B:
            terms = lucas_terms(pair, max(n for n, _ in row["defects"]))
            for n, _val in row["defects"]:
                records[n] = DefectRecord(n, terms[n - 1], "sporadic")
    for fam in family_memberships(pair):
        records.setdefault(fam.n, fam)
    return [records[n] for n in sorted(records)]


# ---------------------------------------------------------------------------
# Omega lower bounds for defective pairs
# ---------------------------------------------------------------------------


def sigma_hat(coeff_a: int, B: int, m: int) -> int:
    """Lower bound for Omega(a_f(p^m)): sigma_0(m+1) - discount.

    Discounts come from the omega_discounts fixture rows: the two
    sporadic weight-4 pairs carry a divisibility condition on m + 1, and
    members of the parameterized families a flat discount; everything
    off the tables gets the generic discount 1.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    s0 = sigma(0, m + 1)
    a = abs(coeff_a)
    rows = _load_table("defect_tables.json")["omega_discounts"]["rows"]
    family = None
    for row in rows:
        if row.get("pair") == [a, B]:
            if (m + 1) % row["when_divides"] == 0:
                return s0 - row["discount"]
            return s0 - 1
        if row.get("family_member"):
            family = row["discount"]
    pair = LucasPair.unchecked(coeff_a, B)
    if math.gcd(coeff_a, B) == 1 and coeff_a != 0 and family_memberships(pair):
        return s0 - family
    return s0 - 1
