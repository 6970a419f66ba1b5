"""Exact newform Fourier coefficients.

The discriminant form Delta(z) = q prod (1-q^n)^24 is built in: its
coefficients tau(n) are computed exactly by cubing the Euler product via
the Jacobi triple product (a sparse series) and squaring three times
with big-integer polynomial arithmetic.  Arbitrary newforms are
described by a NewformSpec holding weight, level and Hecke eigenvalue
data a_f(p); coefficients at prime powers follow the Hecke three-term
recursion, and general indices follow multiplicativity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .arith import DomainError, factor, is_prime, primes_up_to

__all__ = [
    "InsufficientCoefficientData",
    "QSeries",
    "NewformSpec",
    "delta_expansion",
    "delta_newform",
    "coeff_prime_power",
    "coeff",
    "parity_check",
    "ParityReport",
]


class InsufficientCoefficientData(DomainError):
    """A coefficient was requested at a prime with no stored eigenvalue."""


# ---------------------------------------------------------------------------
# Dense integer series arithmetic (Kronecker substitution)
# ---------------------------------------------------------------------------


def _square_truncated(coeffs: list[int], bound: int) -> list[int]:
    """Exact coefficients of (sum c_i q^i)^2 truncated to length bound.

    The polynomial is packed into a single big integer with fixed-width
    two's-complement-style slots; one big multiplication then replaces
    the O(n^2) coefficient convolution.
    """
    n = min(len(coeffs), bound)
    c = coeffs[:n]
    maxc = max((abs(v) for v in c), default=0) or 1
    bits = 2 * maxc.bit_length() + n.bit_length() + 2
    nb = (bits + 7) // 8
    b = nb * 8
    half = 1 << (b - 1)
    pos = bytearray(n * nb)
    neg = bytearray(n * nb)
    for i, v in enumerate(c):
        if v > 0:
            pos[i * nb : i * nb + (v.bit_length() + 7) // 8] = v.to_bytes(
                (v.bit_length() + 7) // 8, "little"
            )
        elif v < 0:
            w = -v
            neg[i * nb : i * nb + (w.bit_length() + 7) // 8] = w.to_bytes(
                (w.bit_length() + 7) // 8, "little"
            )
    packed = int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")
    square = packed * packed
    m = min(2 * n - 1, bound)
    offset = ((1 << (b * m)) - 1) // ((1 << b) - 1) * half
    raw = ((square & ((1 << (b * m)) - 1)) + offset).to_bytes(m * nb + 8, "little")
    return [int.from_bytes(raw[i * nb : (i + 1) * nb], "little") - half for i in range(m)]


def _jacobi_cube(bound: int) -> list[int]:
    """prod (1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}, truncated."""
    out = [0] * bound
    k = 0
    while k * (k + 1) // 2 < bound:
        out[k * (k + 1) // 2] = (2 * k + 1) if k % 2 == 0 else -(2 * k + 1)
        k += 1
    return out


_DELTA_CACHE: list[int] = []


def _tau_list(bound: int) -> list[int]:
    """[tau(1), ..., tau(bound)] via ((prod (1-q^n)^3)^8, shifted by q."""
    global _DELTA_CACHE
    if len(_DELTA_CACHE) < bound:
        j = _jacobi_cube(bound)
        j2 = _square_truncated(j, bound)
        j4 = _square_truncated(j2, bound)
        j8 = _square_truncated(j4, bound)
        j8 += [0] * (bound - len(j8))
        _DELTA_CACHE = j8[:bound]
    return _DELTA_CACHE[:bound]


@dataclass(frozen=True)
class QSeries:
    """Integer q-expansion coefficients for indices 1..truncation_bound."""

    coefficients: tuple[int, ...]
    truncation_bound: int

    def coefficient(self, n: int) -> int:
        if not 1 <= n <= self.truncation_bound:
            raise DomainError(f"index {n} outside [1, {self.truncation_bound}]")
        return self.coefficients[n - 1]

    def items(self):
        return ((i + 1, c) for i, c in enumerate(self.coefficients))


def delta_expansion(bound: int) -> QSeries:
    """tau(n) for 1 <= n <= bound, exactly."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    return QSeries(tuple(_tau_list(bound)), bound)


# ---------------------------------------------------------------------------
# Newform data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewformSpec:
    """Weight, level and prime eigenvalue data for a newform with integer
    coefficients.

    ``ap`` maps primes p (not dividing the level) to a_f(p); ``bad_signs``
    maps primes exactly dividing the level to the U(p) eigenvalue sign.
    The Deligne bound a_f(p)^2 <= 4 p^(2k-1) is enforced exactly on
    construction.  Evenness of eigenvalues (the operational meaning of
    ``trivial_mod2``) is *reported*, not enforced; see parity_check.
    """

    weight: int
    level: int
    ap: dict[int, int] = field(default_factory=dict)
    bad_signs: dict[int, int] = field(default_factory=dict)
    trivial_mod2: bool = False
    name: str = ""

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise DomainError("weight must be an even integer >= 4")
        if self.level < 1:
            raise DomainError("level must be >= 1")
        for p, a in self.ap.items():
            if not is_prime(p):
                raise DomainError(f"ap key {p} is not prime")
            if self.level % p == 0:
                raise DomainError(f"ap key {p} divides the level; use bad_signs")
            if a * a > 4 * p ** (self.weight - 1):
                raise DomainError(f"a_f({p}) = {a} violates the Deligne bound")
        for p, s in self.bad_signs.items():
            if self.level % p or (self.level // p) % p == 0:
                raise DomainError(f"bad_signs key {p} must exactly divide the level")
            if s not in (1, -1):
                raise DomainError("bad_signs values must be +1 or -1")

    @property
    def is_delta(self) -> bool:
        return self.weight == 12 and self.level == 1 and self.name == "delta"

    @classmethod
    def from_json(cls, text: str) -> "NewformSpec":
        data = json.loads(text)
        return cls(
            weight=int(data["weight"]),
            level=int(data["level"]),
            ap={int(p): int(a) for p, a in data.get("ap", {}).items()},
            bad_signs={int(p): int(s) for p, s in data.get("bad_signs", {}).items()},
            trivial_mod2=bool(data.get("trivial_mod2", False)),
            name=str(data.get("name", "")),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "weight": self.weight,
                "level": self.level,
                "ap": {str(p): a for p, a in sorted(self.ap.items())},
                "bad_signs": {str(p): s for p, s in sorted(self.bad_signs.items())},
                "trivial_mod2": self.trivial_mod2,
                "name": self.name,
            },
            sort_keys=True,
        )


def delta_newform(prime_bound: int = 1000) -> NewformSpec:
    """The built-in Delta form with eigenvalue data for p <= prime_bound."""
    taus = _tau_list(prime_bound)
    ap = {p: taus[p - 1] for p in primes_up_to(prime_bound)}
    return NewformSpec(weight=12, level=1, ap=ap, trivial_mod2=True, name="delta")


def coeff_prime_power(spec: NewformSpec, p: int, m: int) -> int:
    """a_f(p^m) by the Hecke recursion (good p) or U(p) action (bad p)."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if m == 0:
        return 1
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if spec.level % p == 0:
        if (spec.level // p) % p == 0:
            return 0
        if p not in spec.bad_signs:
            raise InsufficientCoefficientData(f"no U({p}) sign stored")
        k = spec.weight // 2
        return spec.bad_signs[p] ** m * p ** ((k - 1) * m)
    if p not in spec.ap:
        raise InsufficientCoefficientData(f"no a_f({p}) stored")
    a = spec.ap[p]
    B = p ** (spec.weight - 1)
    prev, cur = 1, a
    for _ in range(m - 1):
        prev, cur = cur, a * cur - B * prev
    return cur


def coeff(spec: NewformSpec, n: int) -> int:
    """a_f(n) by multiplicativity over the prime powers of n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    out = 1
    for p, e in factor(n).pairs:
        out *= coeff_prime_power(spec, p, e)
    return out


@dataclass(frozen=True)
class ParityReport:
    violations: tuple[int, ...]
    checked_primes: int
    odd_square_check: bool | None  # Delta only: tau(n) odd iff n an odd square

    @property
    def ok(self) -> bool:
        return not self.violations and self.odd_square_check is not False


def parity_check(spec: NewformSpec, series_bound: int = 0) -> ParityReport:
    """Report eigenvalue parity: a_f(p) must be even for p not dividing 2N.

    For the built-in Delta and a positive series_bound, additionally
    verifies tau(n) is odd exactly when n is an odd square, using the
    exact q-expansion.
    """
    violations = []
    checked = 0
    for p, a in sorted(spec.ap.items()):
        if (2 * spec.level) % p == 0:
            continue
        checked += 1
        if a % 2:
            violations.append(p)
    square_ok = None
    if spec.is_delta and series_bound:
        series = delta_expansion(series_bound)
        square_ok = True
        for n, c in series.items():
            r = math.isqrt(n)
            expect_odd = r * r == n and n % 2 == 1
            if (c % 2 == 1) != expect_odd:
                square_ok = False
                break
    return ParityReport(tuple(violations), checked, square_ok)
