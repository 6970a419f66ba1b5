"""Exact big-integer utilities shared by every other module.

Everything here is pure integer / rational arithmetic: deterministic
primality testing, factorization (trial division + Pollard rho),
divisor power sums, perfect-power tests, integer roots of univariate
polynomials, and certified continued-fraction convergents of real
algebraic numbers.  No floating point participates in any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "DomainError",
    "RationalNumberError",
    "Factorization",
    "is_prime",
    "factor",
    "sigma",
    "omega",
    "big_omega",
    "is_perfect_square",
    "integer_nth_root",
    "perfect_power_root",
    "prime_power_root",
    "primes_up_to",
    "poly_eval",
    "poly_derivative",
    "integer_roots",
    "RealAlgebraic",
    "sqrt_algebraic",
    "continued_fraction_convergents",
]


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class RationalNumberError(DomainError):
    """A continued-fraction request was made for a rational number."""


# ---------------------------------------------------------------------------
# Primality and factorization
# ---------------------------------------------------------------------------

_TRIAL_LIMIT = 10**6

# Strong-pseudoprime bases proven sufficient for n < 3_317_044_064_679_887_385_961_981
# (Sorenson-Webster).  Above that bound the same bases are combined with a
# strong Lucas-Selfridge test (BPSW style, fixed parameters, no randomness);
# no counterexample to that combination is known.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return tuple(i for i, v in enumerate(sieve) if v)


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base % n, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_selfridge(n: int) -> bool:
    # Selfridge parameter choice: first D in 5, -7, 9, ... with (D|n) = -1.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
    p, q = 1, (1 - d) // 4
    # strong test on U_k, V_k with k = (n+1) / 2^s
    k = n + 1
    s = (k & -k).bit_length() - 1
    k >>= s
    u, v, qk = 0, 2, 1
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * ((n + 1) // 2) % n, ((d * u + p * v) * ((n + 1) // 2)) % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


def is_prime(n: int) -> bool:
    """Deterministic primality test (fixed bases, no randomness)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    if not all(_miller_rabin(n, b) for b in _MR_BASES):
        return False
    if n < _MR_PROVEN_BOUND:
        return True
    return _strong_lucas_selfridge(n)


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle detection).

    The parameter sequence is fixed, so the result is deterministic.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of |n| as ordered (prime, exponent) pairs."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def omega(self) -> int:
        return len(self.pairs)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.pairs)

    def ord_p(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def verify(self) -> bool:
        prod = 1
        for p, e in self.pairs:
            if e < 1 or not is_prime(p):
                return False
            prod *= p**e
        return prod == abs(self.n)


def factor(n: int) -> Factorization:
    """Exact factorization of ``|n|``; rejects n = 0."""
    if n == 0:
        raise DomainError("cannot factor 0")
    m = abs(n)
    found: dict[int, int] = {}
    for p in primes_up_to(min(_TRIAL_LIMIT, math.isqrt(m) + 1)):
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            found[v] = found.get(v, 0) + 1
            continue
        g = _pollard_rho(v)
        stack.append(g)
        stack.append(v // g)
    return Factorization(n, tuple(sorted(found.items())))


def sigma(nu: int, n: int) -> int:
    """Divisor power sum sigma_nu(n) = sum of d^nu over d | n."""
    if n < 1:
        raise DomainError("sigma requires n >= 1")
    if nu < 0:
        raise DomainError("sigma requires nu >= 0")
    total = 1
    for p, e in factor(n).pairs:
        if nu == 0:
            total *= e + 1
        else:
            pe = p**nu
            total *= (pe ** (e + 1) - 1) // (pe - 1)
    return total


def omega(n: int) -> int:
    return factor(n).omega


def big_omega(n: int) -> int:
    return factor(n).big_omega


# ---------------------------------------------------------------------------
# Perfect powers
# ---------------------------------------------------------------------------


def is_perfect_square(n: int) -> int | None:
    """The nonnegative square root when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def integer_nth_root(n: int, e: int) -> int:
    """floor(n ** (1/e)) for n >= 0, e >= 1, exact."""
    if n < 0 or e < 1:
        raise DomainError("integer_nth_root requires n >= 0, e >= 1")
    if n == 0 or e == 1:
        return n
    if e == 2:
        return math.isqrt(n)
    x = 1 << (n.bit_length() // e + 1)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            break
        x = y
    while x**e > n:
        x -= 1
    return x


def perfect_power_root(n: int, e: int) -> int | None:
    """The integer e-th root of n >= 1 when exact, else None."""
    if n < 1:
        return None
    r = integer_nth_root(n, e)
    return r if r**e == n else None


def prime_power_root(n: int, e: int) -> int | None:
    """p when n = p**e with p prime, else None."""
    if n < 2:
        return None
    r = perfect_power_root(n, e)
    if r is not None and is_prime(r):
        return r
    return None


# ---------------------------------------------------------------------------
# Univariate polynomials over Z (little-endian coefficient lists)
# ---------------------------------------------------------------------------


def poly_eval(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _strip(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def _floor_cover(coeffs, lo: int, hi: int) -> set[int]:
    """A superset of { floor(r) : p(r) = 0, lo <= r <= hi }.

    Recursion on the derivative: between consecutive breakpoints taken
    from the derivative's root floors, p is monotone, so a sign change
    pins each root to a unit interval by bisection.  Unit gaps that may
    hide critical points are added wholesale, which only enlarges the
    cover.
    """
    p = _strip(coeffs)
    if len(p) <= 1 or lo > hi:
        return set()
    if len(p) == 2:
        b, a = p
        f = math.floor(Fraction(-b, a))
        return {f} if lo <= f <= hi else set()
    dcover = _floor_cover(poly_derivative(p), lo, hi)
    points = {lo, hi}
    for c in dcover:
        if lo <= c <= hi:
            points.add(c)
        if lo <= c + 1 <= hi:
            points.add(c + 1)
    bps = sorted(points)
    cover: set[int] = set()
    vals = {b: poly_eval(p, b) for b in bps}
    for b in bps:
        if vals[b] == 0:
            cover.add(b)
    for a, b in zip(bps, bps[1:]):
        if b == a + 1:
            # may contain critical points; any root inside has floor a
            cover.add(a)
            continue
        fa, fb = vals[a], vals[b]
        if fa == 0 or fb == 0 or (fa > 0) == (fb > 0):
            continue
        x0, x1 = a, b
        while x1 - x0 > 1:
            mid = (x0 + x1) // 2
            fm = poly_eval(p, mid)
            if fm == 0:
                cover.add(mid)
                break
            if (fm > 0) == (fa > 0):
                x0 = mid
            else:
                x1 = mid
        else:
            cover.add(x0)
    return cover


def integer_roots(coeffs, lo: int, hi: int) -> list[int]:
    """All integer roots of the polynomial in [lo, hi], ascending."""
    p = _strip(coeffs)
    if not p:
        raise DomainError("integer_roots of the zero polynomial")
    return sorted(c for c in _floor_cover(p, lo, hi) if poly_eval(p, c) == 0)


# ---------------------------------------------------------------------------
# Real algebraic numbers and certified continued fractions
# ---------------------------------------------------------------------------


def _scaled_value(coeffs, num: int, den: int) -> int:
    """den^deg * p(num/den), exact."""
    n = len(coeffs) - 1
    acc = coeffs[n]
    if den == 1:
        for i in range(n - 1, -1, -1):
            acc = acc * num + coeffs[i]
        return acc
    if den & (den - 1) == 0:
        # dyadic denominator: powers of den are shifts
        e = den.bit_length() - 1
        shift = 0
        for i in range(n - 1, -1, -1):
            shift += e
            acc = acc * num + (coeffs[i] << shift)
        return acc
    dp = 1
    for i in range(n - 1, -1, -1):
        dp *= den
        acc = acc * num + coeffs[i] * dp
    return acc


def sign_at(coeffs, x: Fraction) -> int:
    v = _scaled_value(_strip(coeffs) or [0], x.numerator, x.denominator)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class RealAlgebraic:
    """A real algebraic number: integer polynomial + isolating interval.

    The interval must contain exactly one (simple) root and the
    polynomial must have opposite nonzero signs at the endpoints, so
    bisection with exact rational arithmetic refines it indefinitely.
    """

    coeffs: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo >= self.hi:
            raise DomainError("empty isolating interval")
        if sign_at(self.coeffs, self.lo) * sign_at(self.coeffs, self.hi) >= 0:
            raise DomainError("polynomial must change sign across the interval")

    def refined(self, max_width: Fraction) -> "RealAlgebraic":
        lo, hi = self.lo, self.hi
        slo = sign_at(self.coeffs, lo)
        while hi - lo >= max_width:
            mid = (lo + hi) / 2
            sm = sign_at(self.coeffs, mid)
            if sm == 0:
                raise RationalNumberError(f"refinement collapsed onto {mid}")
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return RealAlgebraic(self.coeffs, lo, hi)

    def float_approx(self) -> float:
        return float((self.lo + self.hi) / 2)


def sqrt_algebraic(n: int) -> RealAlgebraic:
    """sqrt(n) for a nonsquare n >= 2 as a RealAlgebraic."""
    if n < 2 or is_perfect_square(n) is not None:
        raise DomainError("sqrt_algebraic wants a nonsquare n >= 2")
    r = math.isqrt(n)
    return RealAlgebraic((-n, 0, 1), Fraction(r), Fraction(r + 1))


def _rational_cf(x: Fraction) -> list[int]:
    """Canonical continued fraction of a rational (last term != 1 unless [1])."""
    a = []
    num, den = x.numerator, x.denominator
    while den:
        q, r = divmod(num, den)
        a.append(q)
        num, den = den, r
    if len(a) > 1 and a[-1] == 1:
        a.pop()
        a[-1] += 1
    return a


def _convergents(cf: list[int]) -> list[tuple[int, int]]:
    out = []
    p0, q0, p1, q1 = 1, 0, cf[0], 1
    out.append((p1, q1))
    for a in cf[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def _simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator strictly inside (lo, hi)."""
    flo = math.floor(lo)
    if Fraction(flo + 1) < hi:
        return Fraction(flo + 1)
    a, b = lo - flo, hi - flo
    if a == 0:
        # (n, n+b) with b <= 1: n + 1/m for the first m with 1/m < b
        m = math.floor(1 / b) + 1
        return flo + Fraction(1, m)
    # invert: simplest in (1/b, 1/a), recurse
    return flo + 1 / _simplest_rational(1 / b, 1 / a)


def continued_fraction_convergents(x: RealAlgebraic, qmax: int) -> list[tuple[int, int]]:
    """All continued-fraction convergents p/q of x with q <= qmax.

    Partial quotients are certified by exact interval refinement: a
    quotient is accepted only once both interval endpoints share it.
    Rational inputs are rejected (RationalNumberError), detected either
    when bisection lands exactly on the root or when the interval keeps
    straddling the simplest rational it contains and that rational is a
    root of the defining polynomial.
    """
    if qmax < 1:
        raise DomainError("qmax must be >= 1")
    coeffs = x.coeffs
    lo, hi = x.lo, x.hi
    slo = sign_at(coeffs, lo)
    rounds = 0
    while True:
        cl = _rational_cf(lo)
        ch = _rational_cf(hi)
        k = 0
        while k < len(cl) and k < len(ch) and cl[k] == ch[k]:
            k += 1
        # drop the last shared term: endpoint expansions may disagree there
        if k >= 2:
            convs = _convergents(cl[: k - 1])
            if convs[-1][1] > qmax:
                good = [pq for pq in convs if pq[1] <= qmax]
                if all(
                    max(abs(lo - Fraction(pnum, q)), abs(hi - Fraction(pnum, q)))
                    < Fraction(1, q * q)
                    for pnum, q in good
                ):
                    return good
        mid = (lo + hi) / 2
        sm = sign_at(coeffs, mid)
        if sm == 0:
            raise RationalNumberError(f"refinement collapsed onto {mid}")
        if sm == slo:
            lo = mid
        else:
            hi = mid
        rounds += 1
        if rounds % 32 == 0:
            cand = _simplest_rational(lo, hi)
            if sign_at(coeffs, cand) == 0:
                raise RationalNumberError(f"{cand} is rational")


def _certified_quality(x: RealAlgebraic, p: int, q: int) -> bool:
    """Check |x - p/q| < 1/q^2 via the isolating interval."""
    r = Fraction(p, q)
    err = max(abs(x.lo - r), abs(x.hi - r))
    return err < Fraction(1, q * q)
