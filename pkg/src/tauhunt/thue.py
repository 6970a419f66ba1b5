"""Homogeneous forms F_{2m}(X, Y) and the bounded Thue solver.

The forms come from the generating function 1/(1 - sqrt(Y) T + X T^2):
F_2 = Y - X, and F_{2m} = (Y - 2X) F_{2m-2} - X^2 F_{2m-4}.  Their roots
in Y/X are 4 cos^2(pi k/(2m+1)).  For odd primes p the reduced form
Fhat_p(X, Y) = prod (Y - 2X cos(2 pi k/p)) satisfies
F_{p-1}(X, Y) = Fhat_p(X, Y - 2X) and has much smaller coefficients;
it is the practical route to F_690.

solve_bounded is deliberately a *bounded verifier*: an exhaustive scan
for |x| <= x_small (exact; a word-size modular filter only prunes
evaluations, every survivor is confirmed in big-integer arithmetic), and
a convergent-pruned search for x_small < |x| <= x_mid justified by the
classical gap criterion for Thue equations (Tzanakis-de Weger Lemma 1.1
/ Bilu-Hanrot): large solutions make y/x a continued-fraction convergent
of a real root of F(1, t).  Every result carries its bound certificate.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources


from .arith import (
    DomainError,
    RealAlgebraic,
    continued_fraction_convergents,
    integer_nth_root,
    is_prime,
    perfect_power_root,
    sign_at,
)

__all__ = [
    "ThueForm",
    "build_form",
    "build_reduced_form",
    "evaluate",
    "ThueSolutions",
    "solve_bounded",
    "catalog_rows",
]

_FILTER_PRIMES = (67108859, 67108837)  # < 2^26, keeps numpy Horner in int64


@dataclass(frozen=True)
class ThueForm:
    """coeffs[i] is the coefficient of X^i Y^(degree-i); monic in Y."""

    degree: int
    coeffs: tuple[int, ...]
    kind: str = "standard"  # "standard" = F_{2m}; "reduced" = Fhat_p
    p: int = 0  # defining prime for reduced forms

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1 or self.coeffs[0] != 1:
            raise DomainError("malformed form")

    @property
    def name(self) -> str:
        if self.kind == "reduced":
            return f"Fhat_{self.p}"
        return f"F_{2 * self.degree}"


@lru_cache(maxsize=None)
def build_form(m: int) -> ThueForm:
    """F_{2m}(X, Y), exact integer coefficients, total degree m."""
    if m < 1:
        raise DomainError("m must be >= 1")
    prev, cur = [1], [1, -1]
    for _ in range(m - 1):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i] += c
            nxt[i + 1] -= 2 * c
        for i, c in enumerate(prev):
            nxt[i + 2] -= c
        prev, cur = cur, nxt
    return ThueForm(m, tuple(cur))


@lru_cache(maxsize=None)
def build_reduced_form(p: int) -> ThueForm:
    """Fhat_p with F_{p-1}(X, Y) = Fhat_p(X, Y - 2X), for odd prime p."""
    if p < 3 or not is_prime(p):
        raise DomainError("p must be an odd prime")
    base = build_form((p - 1) // 2).coeffs
    m = (p - 1) // 2
    out = [0] * (m + 1)
    # substitute Y -> Y + 2X in F_{p-1}
    for i, c in enumerate(base):
        d = m - i
        for j in range(d + 1):
            out[m - j] += c * math.comb(d, j) * (1 << (d - j))
    return ThueForm(m, tuple(out), kind="reduced", p=p)


def evaluate(form: ThueForm, x: int, y: int) -> int:
    """F(x, y), exact."""
    acc = 0
    xp = 1
    # Horner in y over coefficients of y^j, j = m .. 0
    for c in form.coeffs:
        acc = acc * y + c * xp
        xp *= x
    return acc


# ---------------------------------------------------------------------------
# Real roots of F(1, t)
# ---------------------------------------------------------------------------


def _dehomogenized(form: ThueForm) -> list[int]:
    """F(1, t) as a little-endian coefficient list."""
    m = form.degree
    poly = [0] * (m + 1)
    for i, c in enumerate(form.coeffs):
        poly[m - i] = c
    return poly


def _root_estimates(form: ThueForm) -> list[float]:
    m = form.degree
    if form.kind == "reduced":
        return sorted(2 * math.cos(2 * math.pi * k / form.p) for k in range(1, m + 1))
    return sorted(4 * math.cos(math.pi * k / (2 * m + 1)) ** 2 for k in range(1, m + 1))


@lru_cache(maxsize=None)
def real_roots(form: ThueForm) -> tuple[RealAlgebraic, ...]:
    """Isolating intervals for the m real roots of F(1, t).

    Float estimates only *propose* separators; the alternating exact
    signs of the polynomial at the separators certify the isolation.
    """
    poly = tuple(_dehomogenized(form))
    est = _root_estimates(form)
    seps = [Fraction(math.floor(est[0]) - 1)]
    for a, b in zip(est, est[1:]):
        # dyadic separators keep exact sign evaluation shift-based
        seps.append(Fraction(round((a + b) / 2 * (1 << 48)), 1 << 48))
    seps.append(Fraction(math.ceil(est[-1]) + 1))
    signs = [sign_at(poly, s) for s in seps]
    if any(s == 0 for s in signs) or any(
        signs[i] * signs[i + 1] >= 0 for i in range(len(signs) - 1)
    ):
        raise ArithmeticError("root separators not certified")  # pragma: no cover
    return tuple(
        RealAlgebraic(poly, lo, hi) for lo, hi in zip(seps, seps[1:])
    )


# ---------------------------------------------------------------------------
# Bounded solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThueSolutions:
    form: str
    rhs: int
    solutions: tuple[tuple[int, int], ...]
    certificate: dict

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "rhs": self.rhs,
            "solutions": [list(s) for s in self.solutions],
            "certificate": self.certificate,
        }


def _y_window(form: ThueForm, x: int, r: int) -> tuple[int, int]:
    # all real roots of F(x, .) = rhs lie within r of the cone of F(x, .)'s
    # roots: [0, 4x] (standard) or [-2|x|, 2|x|] (reduced), x > 0
    if form.kind == "reduced":
        return (-2 * x - r, 2 * x + r)
    return (-r, 4 * x + r)


def _scan_exhaustive(form: ThueForm, rhs: int, x_lo: int, x_hi: int) -> list[tuple[int, int]]:
    """All solutions of F = rhs with x_lo <= |x| <= x_hi, by full scan.

    Scans x > 0 and uses F(-x, -y) = (-1)^deg F(x, y) for the negative
    side; x = 0 is handled when the range includes it.  The modular
    filter is exact: residues are compared against both admissible
    targets and every survivor is confirmed with big integers.
    """
    m = form.degree
    import numpy as np

    mirror = rhs if m % 2 == 0 else -rhs
    out = []
    if x_lo <= 0 <= x_hi:
        # F(0, y) = y^m
        for target, flip in ((rhs, False), (mirror, True)):
            if target == 0:
                continue
            r = integer_nth_root(abs(target), m)
            for y in {r, -r}:
                if y**m == target:
                    out.append((0, -y) if flip else (0, y))
    r = integer_nth_root(abs(rhs), m) + 2
    cmods = [np.array([c % M for c in form.coeffs], dtype=np.int64) for M in _FILTER_PRIMES]
    targets = [
        (np.int64(rhs % M), np.int64(mirror % M)) for M in _FILTER_PRIMES
    ]
    for x in range(max(1, x_lo), x_hi + 1):
        ylo, yhi = _y_window(form, x, r)
        ys = np.arange(ylo, yhi + 1, dtype=np.int64)
        mask = np.ones(len(ys), dtype=bool)
        for (M, cm, (t1, t2)) in zip(_FILTER_PRIMES, cmods, targets):
            xp = np.empty(m + 1, dtype=np.int64)
            v = 1
            for i in range(m + 1):
                xp[i] = v
                v = (v * x) % M
            cy = (cm * xp) % M  # coefficient of y^(m-i) is coeffs[i] x^i
            ysm = np.mod(ys, M)
            acc = np.zeros(mask.sum(), dtype=np.int64)
            ysel = ysm[mask]
            for i in range(m + 1):
                acc = np.mod(acc * ysel + cy[i], M)
            keep = (acc == t1) | (acc == t2)
            idx = np.flatnonzero(mask)
            mask[idx[~keep]] = False
            if not mask.any():
                break
        for y in ys[mask]:
            v = evaluate(form, x, int(y))
            if v == rhs:
                out.append((x, int(y)))
            if v == mirror and mirror != rhs:
                out.append((-x, -int(y)))
            elif v == rhs and m % 2 == 0 and mirror == rhs:
                out.append((-x, -int(y)))
    return out


def _linear_solutions(form: ThueForm, rhs: int, x_lo: int, x_hi: int) -> list[tuple[int, int]]:
    # degree 1: y + c1 x = rhs
    c1 = form.coeffs[1]
    out = []
    for x in range(-x_hi, x_hi + 1):
        if x_lo <= abs(x) <= x_hi:
            out.append((x, rhs - c1 * x))
    return out


@lru_cache(maxsize=64)
def _convergent_candidates(form: ThueForm, x_mid: int) -> tuple[tuple[tuple[int, int, int], ...], dict]:
    """(p, q, F(q, p)) for every convergent p/q, q <= x_mid, of every root."""
    cands = []
    roots = real_roots(form)
    for root in roots:
        for pnum, q in continued_fraction_convergents(root, x_mid):
            cands.append((pnum, q, evaluate(form, q, pnum)))
    info = {"roots": len(roots), "convergents": len(cands)}
    return tuple(cands), info


def solve_bounded(
    form: ThueForm,
    rhs: int,
    x_small: int = 1000,
    x_mid: int = 10000,
    jobs: int = 1,
) -> ThueSolutions:
    """All solutions with |x| <= x_small (exhaustive) plus all with
    x_small < |x| <= x_mid lying on continued-fraction convergents of the
    real roots of F(1, t).  Results are deterministic and sorted.
    """
    if rhs == 0:
        raise DomainError("rhs must be nonzero")
    if x_small > x_mid:
        raise DomainError("x_small must be <= x_mid")
    m = form.degree
    sols: set[tuple[int, int]] = set()
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    chunks = _split_range(1, x_small, jobs)
    for lo, hi in chunks:
        first = lo == chunks[0][0]
        sols.update(_scan_exhaustive(form, rhs, 0 if first else lo, hi))
    cert = {
        "x_small": x_small,
        "x_mid": x_mid,
        "method": "exhaustive scan + convergent pruning (Thue gap criterion)",
    }
    if x_mid > x_small:
        if m == 1:
            sols.update(_linear_solutions(form, rhs, x_small + 1, x_mid))
            cert["midsize"] = "linear form solved directly"
        else:
            mirror = rhs if m % 2 == 0 else -rhs
            cands, info = _convergent_candidates(form, x_mid)
            cert["midsize"] = dict(info)
            # homogeneity: F(lam q, lam p) = lam^m F(q, p), so each convergent
            # contributes at most the multipliers lam with lam^m * F(q,p) = rhs
            for pnum, q, base in cands:
                if base == 0:
                    continue
                for target in {rhs, mirror}:
                    quot, rem = divmod(target, base)
                    if rem or quot <= 0:
                        continue
                    lam = perfect_power_root(quot, m) if quot > 1 else 1
                    if lam is None or not x_small < lam * q <= x_mid:
                        continue
                    x, y = lam * q, lam * pnum
                    v = evaluate(form, x, y)
                    if v == rhs:
                        sols.add((x, y))
                    if v == mirror:
                        sols.add((-x, -y))
    return ThueSolutions(form.name, rhs, tuple(sorted(sols)), cert)


def _split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    if hi < lo:
        return [(lo, hi)]
    parts = max(1, min(parts, hi - lo + 1))
    step = (hi - lo + 1 + parts - 1) // parts
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]


# ---------------------------------------------------------------------------
# Solution catalogs (literature-backed tables for F_{d-1} = +-ell)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _catalog() -> dict:
    override = os.environ.get("TAUHUNT_DATA_DIR")
    if override:
        with open(os.path.join(override, "thue_tables.json"), "rb") as fh:
            return json.load(fh)
    return json.loads(resources.files("tauhunt.data").joinpath("thue_tables.json").read_text())


def catalog_rows() -> list[dict]:
    """All catalog rows: {d, D, solutions, grh, source}."""
    return _catalog()["rows"]


def catalog_lookup(d: int, D: int) -> dict | None:
    for row in catalog_rows():
        if row["d"] == d and row["D"] == D:
            return row
    return None
