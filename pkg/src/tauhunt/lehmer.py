"""The decision pipeline: which n could have |a_f(n)| = ell^m?

For a newform with integer coefficients, even weight 2k >= 4 and even
Hecke eigenvalues away from 2N, such a coefficient forces n = m0 p^(d-1)
with m0 in the unit set, p prime not dividing N, and d an odd prime
dividing ell(ell^2 - 1).  Each admissible d turns into one concrete
Diophantine condition:

    d = 3   (p, a_f(p))                on  Y^2 = X^(2k-1) + alpha
    d = 5   (p, 2 a_f(p)^2 - 3 p^(2k-1)) on Y^2 = 5 X^(2(2k-1)) + 4 alpha
    d >= 7  (p^(2k-1), a_f(p)^2)       solves F_{d-1}(X, Y) = alpha

with alpha = sign * ell^m.  check_admissibility searches every
condition within explicit bounds, applies the exact modularity filters
to each hit, and assembles a bound-stamped verdict.  For the built-in
discriminant form the classical congruences mod 9, 5, 7 and 691 prune
conditions whose rank of apparition is impossible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import curves, thue
from .arith import (
    DomainError,
    factor,
    is_perfect_square,
    is_prime,
    prime_power_root,
)
from .lucas import sigma_hat
from .newform import NewformSpec

__all__ = [
    "SearchBounds",
    "unit_set",
    "DiophantineCondition",
    "enumerate_conditions",
    "ramanujan_filter",
    "achievable_ranks",
    "AdmissibilityReport",
    "check_admissibility",
    "omega_lower_bound",
    "decompose_odd_target",
    "THEOREM_TARGETS",
]

# the unconditional exclusion list for the discriminant form
THEOREM_TARGETS = (
    1, -1, 3, -3, 5, -5, 7, -7, 13, -13, 17, -17, -19, 23, -23, 37, -37, 691, -691,
)

RAMANUJAN_PRIMES = (3, 5, 7, 691)


@dataclass(frozen=True)
class SearchBounds:
    x_max: int = 100000  # curve searches
    x_small: int = 1000  # exhaustive Thue range
    x_mid: int = 10000   # convergent-pruned Thue range

    def to_dict(self) -> dict:
        return {"x_max": self.x_max, "x_small": self.x_small, "x_mid": self.x_mid}


def unit_set(spec: NewformSpec) -> tuple[int, ...]:
    """All n with |a_f(n)| = 1: always 1, plus 4 for the weight-4
    odd-level forms with a_f(2) = +-3 (then a_f(4) = 1)."""
    if not spec.trivial_mod2:
        raise DomainError("unit classification needs the trivial-mod-2 flag")
    units = [1]
    if spec.weight == 4 and spec.level % 2 == 1 and spec.ap.get(2) in (3, -3):
        units.append(4)
    return tuple(units)


@dataclass(frozen=True)
class DiophantineCondition:
    d: int
    kind: str  # "curve-C" | "curve-H" | "thue"
    alpha: int
    ell: int
    m: int
    sign: int
    weight: int
    curve: curves.CurveSpec | None = None
    thue_degree: int = 0

    def describe(self) -> str:
        w = self.weight - 1
        if self.kind == "curve-C":
            return f"Y^2 = X^{w} + ({self.alpha})"
        if self.kind == "curve-H":
            return f"Y^2 = 5*X^{2 * w} + ({4 * self.alpha})"
        return f"F_{self.d - 1}(X, Y) = {self.alpha}"


def enumerate_conditions(
    spec: NewformSpec, ell: int, m: int, sign: int
) -> list[DiophantineCondition]:
    """One condition per odd prime d | ell(ell^2 - 1), sorted by d."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if m < 1:
        raise DomainError("m must be >= 1")
    if ell < 3 or not is_prime(ell):
        raise DomainError("ell must be an odd prime")
    alpha = sign * ell**m
    w = spec.weight - 1
    out = []
    divisors = sorted(p for p, _ in factor(ell * (ell * ell - 1)).pairs if p > 2)
    for d in divisors:
        if d == 3:
            out.append(
                DiophantineCondition(
                    d, "curve-C", alpha, ell, m, sign, spec.weight,
                    curve=curves.CurveSpec.c_family(w, ell, sign, m),
                )
            )
        elif d == 5:
            out.append(
                DiophantineCondition(
                    d, "curve-H", alpha, ell, m, sign, spec.weight,
                    curve=curves.CurveSpec.h_family(w, ell, sign, m),
                )
            )
        else:
            out.append(
                DiophantineCondition(
                    d, "thue", alpha, ell, m, sign, spec.weight, thue_degree=(d - 1) // 2
                )
            )
    return out


def ramanujan_filter(ell: int, p: int) -> int:
    """Rank of apparition of ell in tau(p), tau(p^2), ... from the
    classical congruences; ell must be 3, 5, 7 or 691."""
    if not is_prime(p) or p == 2:
        raise DomainError("p must be an odd prime")
    if p == ell:
        raise DomainError("p must differ from ell")
    if ell == 3:
        return 2 if p % 3 == 1 else 1
    if ell == 5:
        r = p % 5
        return 1 if r == 4 else (3 if r in (2, 3) else 4)
    if ell == 7:
        return 6 if p % 7 in (1, 2, 4) else 1
    if ell == 691:
        # smallest n with 1 + p^11 + ... + p^(11 n) = 0 mod 691
        t = pow(p, 11, 691)
        s, tp = 1, 1
        for n in range(1, 691):
            tp = tp * t % 691
            s = (s + tp) % 691
            if s == 0:
                return n
        raise ArithmeticError("no rank below 691")  # pragma: no cover
    raise DomainError("congruence filters exist only for ell in {3, 5, 7, 691}")


def achievable_ranks(ell: int) -> set[int]:
    """All values the congruence-derived rank can take over odd primes p."""
    if ell == 3:
        return {1, 2}
    if ell == 5:
        return {1, 3, 4}
    if ell == 7:
        return {1, 6}
    if ell == 691:
        out = {n for n in range(1, 690) if 690 % (n + 1) == 0}
        out.add(690)
        return out
    raise DomainError("congruence filters exist only for ell in {3, 5, 7, 691}")


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionVerdict:
    condition: DiophantineCondition
    mode: str  # "fixture+search" | "search" | "congruence-excluded"
    source: str
    grh_conditional: bool
    raw_hits: tuple
    dispositions: tuple
    certificate: dict

    @property
    def candidates(self) -> list[dict]:
        return [d for d in self.dispositions if d["status"] == "candidate"]

    def to_dict(self) -> dict:
        return {
            "d": self.condition.d,
            "kind": self.condition.kind,
            "equation": self.condition.describe(),
            "mode": self.mode,
            "source": self.source,
            "grh_conditional": self.grh_conditional,
            "raw_hits": [list(h) for h in self.raw_hits],
            "dispositions": list(self.dispositions),
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class AdmissibilityReport:
    spec_name: str
    ell: int
    m: int
    sign: int
    verdicts: tuple[ConditionVerdict, ...]
    units: tuple[int, ...]
    bounds: SearchBounds

    @property
    def target(self) -> int:
        return self.sign * self.ell**self.m

    @property
    def status(self) -> str:
        if any(v.candidates for v in self.verdicts):
            return "CANDIDATES_FOUND"
        return "EXCLUDED_WITHIN_BOUNDS"

    @property
    def grh_conditional(self) -> bool:
        return any(v.grh_conditional for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "schema": "tauhunt-admissibility/1",
            "form": self.spec_name,
            "target": self.target,
            "ell": self.ell,
            "m": self.m,
            "sign": self.sign,
            "status": self.status,
            "grh_conditional": self.grh_conditional,
            "unit_set": list(self.units),
            "bounds": self.bounds.to_dict(),
            "conditions": [v.to_dict() for v in self.verdicts],
        }


def _dispose_c_hit(spec: NewformSpec, cond, x: int, y: int) -> dict:
    w = spec.weight - 1
    base = {"point": [x, y]}
    if x < 2 or not is_prime(x):
        return base | {"status": "filtered", "reason": "X is not a positive prime"}
    if spec.level % x == 0:
        return base | {"status": "filtered", "reason": "p divides the level"}
    if y * y > 4 * x**w:
        return base | {"status": "filtered", "reason": "Deligne bound violated (non-modular point)"}
    if x in spec.ap and abs(spec.ap[x]) != y:
        return base | {
            "status": "filtered",
            "reason": f"stored a_f({x}) = {spec.ap[x]} differs from +-{y}",
        }
    if spec.trivial_mod2 and (2 * spec.level) % x != 0 and y % 2 == 1:
        return base | {"status": "filtered", "reason": "a_f(p) must be even (trivial mod 2)"}
    return base | {"status": "candidate", "p": x, "predicted_n": _predicted(spec, x, 3)}


def _dispose_h_hit(spec: NewformSpec, cond, x: int, y: int) -> dict:
    w = spec.weight - 1
    base = {"point": [x, y]}
    x = abs(x)
    if x < 2 or not is_prime(x):
        return base | {"status": "filtered", "reason": "X is not a positive prime"}
    if spec.level % x == 0:
        return base | {"status": "filtered", "reason": "p divides the level"}
    B = x**w
    # recover a_f(p) from Y = +-(2 a^2 - 3 B)
    eigsq = []
    for s in (1, -1):
        num = s * y + 3 * B
        if num >= 0 and num % 2 == 0:
            sq = is_perfect_square(num // 2)
            if sq is not None:
                eigsq.append(sq)
    if not eigsq:
        return base | {"status": "filtered", "reason": "no integer a_f(p) with 2a^2 - 3p^(2k-1) = +-Y"}
    ok = []
    for a in eigsq:
        if a * a > 4 * B:
            continue
        if x in spec.ap and abs(spec.ap[x]) != a:
            continue
        if spec.trivial_mod2 and (2 * spec.level) % x != 0 and a % 2 == 1:
            continue
        ok.append(a)
    if not ok:
        return base | {"status": "filtered", "reason": "every recovered a_f(p) fails Deligne/data/parity"}
    return base | {
        "status": "candidate",
        "p": x,
        "eigenvalue_magnitudes": sorted(ok),
        "predicted_n": _predicted(spec, x, 5),
    }


def _dispose_thue_hit(spec: NewformSpec, cond, x: int, y: int) -> dict:
    w = spec.weight - 1
    base = {"point": [x, y]}
    if x < 2:
        return base | {"status": "filtered", "reason": f"X must equal p^{w} for a prime p"}
    p = prime_power_root(x, w)
    if p is None:
        return base | {"status": "filtered", "reason": f"X is not a prime power p^{w}"}
    if spec.level % p == 0:
        return base | {"status": "filtered", "reason": "p divides the level"}
    if y < 0:
        return base | {"status": "filtered", "reason": "Y = a_f(p)^2 must be nonnegative"}
    a = is_perfect_square(y)
    if a is None:
        return base | {"status": "filtered", "reason": "Y = a_f(p)^2 must be a perfect square"}
    if y > 4 * x:
        return base | {"status": "filtered", "reason": "Deligne bound Y <= 4X violated (non-modular point)"}
    if p in spec.ap and abs(spec.ap[p]) != a:
        return base | {
            "status": "filtered",
            "reason": f"stored a_f({p}) = {spec.ap[p]} differs from +-{a}",
        }
    if spec.trivial_mod2 and (2 * spec.level) % p != 0 and a % 2 == 1:
        return base | {"status": "filtered", "reason": "a_f(p) must be even (trivial mod 2)"}
    return base | {"status": "candidate", "p": p, "predicted_n": _predicted(spec, p, cond.d)}


def _predicted(spec: NewformSpec, p: int, d: int) -> list[int]:
    return [m0 * p ** (d - 1) for m0 in unit_set(spec) if math.gcd(m0, p) == 1]


def _verdict_curve(spec, cond, bounds) -> ConditionVerdict:
    curve = cond.curve
    search = curves.search_points(curve, bounds.x_max)
    grh = False
    source = f"bounded search on {curve.label}"
    mode = "search"
    if cond.m == 1:
        if cond.kind == "curve-C":
            listed = curves.catalog_c_points(spec.weight - 1, cond.ell, cond.sign)
            entry = {"points": listed} if listed is not None else None
        else:
            entry = curves.catalog_h_entry(spec.weight - 1, cond.ell, cond.sign)
        if entry is not None and entry.get("status", "known") != "open":
            mode = "fixture+search"
            source = f"integer-point catalog for {curve.label} + bounded search"
            grh = entry.get("status") == "grh"
            unsigned = cond.kind == "curve-H"
            listed = entry["points"]
            if unsigned:
                cat = sorted({(abs(px), py) for px, py in listed})
                got = sorted({(abs(px), py) for px, py in search.points})
            else:
                cat = sorted({(px, py) for px, py in listed})
                got = sorted({(px, py) for px, py in search.points})
            if cat != got:
                raise ArithmeticError(
                    f"catalog and bounded search disagree on {curve.label}: {cat} vs {got}"
                )
    hits = search.points
    disp = tuple(
        (_dispose_c_hit if cond.kind == "curve-C" else _dispose_h_hit)(spec, cond, x, y)
        for x, y in hits
    )
    return ConditionVerdict(cond, mode, source, grh, hits, disp, search.certificate)


def _verdict_thue(spec, cond, bounds) -> ConditionVerdict:
    d = cond.d
    # reduced forms keep coefficients small for large prime degree
    use_reduced = d >= 31
    if use_reduced:
        form = thue.build_reduced_form(d)
        res = thue.solve_bounded(form, cond.alpha, bounds.x_small, bounds.x_mid)
        hits = tuple(sorted((x, z + 2 * x) for x, z in res.solutions))
        source = f"bounded search via reduced form Fhat_{d}"
    else:
        form = thue.build_form((d - 1) // 2)
        res = thue.solve_bounded(form, cond.alpha, bounds.x_small, bounds.x_mid)
        hits = res.solutions
        source = f"bounded search on F_{d - 1}"
    mode = "search"
    grh = False
    row = thue.catalog_lookup(d, cond.alpha)
    if row is not None:
        mode = "fixture+search"
        grh = row["grh"]
        source += " + solution catalog"
        cat = sorted(tuple(s) for s in row["solutions"])
        got = [h for h in hits if abs(h[0]) <= bounds.x_small]
        if sorted(got) != [h for h in cat if abs(h[0]) <= bounds.x_small]:
            raise ArithmeticError(
                f"catalog and bounded search disagree on F_{d-1} = {cond.alpha}"
            )
    disp = tuple(_dispose_thue_hit(spec, cond, x, y) for x, y in hits)
    cert = dict(res.certificate)
    if d >= 31:
        cert["note"] = "solved through the reduced form; solutions mapped back"
    return ConditionVerdict(cond, mode, source, grh, hits, disp, cert)


def check_admissibility(
    spec: NewformSpec,
    ell: int,
    m: int,
    sign: int,
    bounds: SearchBounds = SearchBounds(),
) -> AdmissibilityReport:
    """Search every Diophantine condition for target sign * ell^m.

    Congruence-impossible conditions (built-in discriminant form with
    ell in {3, 5, 7, 691}) are annotated and skipped, mirroring the
    rank-of-apparition computation; everything else is searched within
    the given bounds.  Nothing is silently truncated: every verdict
    carries its certificate.
    """
    if not spec.trivial_mod2:
        raise DomainError("admissibility requires the trivial-mod-2 flag")
    conds = enumerate_conditions(spec, ell, m, sign)
    use_congruences = spec.is_delta and ell in RAMANUJAN_PRIMES
    verdicts = []
    for cond in conds:
        if use_congruences and (cond.d - 1) not in achievable_ranks(ell):
            verdicts.append(
                ConditionVerdict(
                    cond,
                    "congruence-excluded",
                    f"rank of apparition of {ell} in the tau congruences is never {cond.d - 1}",
                    False,
                    (),
                    (),
                    {"achievable_ranks": sorted(achievable_ranks(ell))},
                )
            )
            continue
        if cond.kind in ("curve-C", "curve-H"):
            verdict = _verdict_curve(spec, cond, bounds)
        else:
            verdict = _verdict_thue(spec, cond, bounds)
        if use_congruences:
            verdict.certificate["congruence_rank_possible"] = True
        verdicts.append(verdict)
    return AdmissibilityReport(
        spec.name or f"weight-{spec.weight} level-{spec.level}",
        ell, m, sign, tuple(verdicts), unit_set(spec), bounds,
    )


# ---------------------------------------------------------------------------
# Omega lower bound and odd-target decomposition
# ---------------------------------------------------------------------------


def omega_lower_bound(spec: NewformSpec, n: int) -> int:
    """Lower bound for Omega(a_f(n)) from the Lucas structure.

    Bad primes contribute (k-1) ord_p(n); good primes with ord >= 2
    contribute sigma_hat; with the trivial-mod-2 flag, odd good primes
    exactly dividing n contribute 1 (even eigenvalue), and p = 2
    contributes 1 when the stored a_f(2) is not a unit.
    """
    if n <= 1:
        raise DomainError("n must be > 1")
    k = spec.weight // 2
    total = 0
    for p, e in factor(n).pairs:
        if spec.level % p == 0:
            total += (k - 1) * e
        elif e >= 2:
            if p not in spec.ap:
                raise DomainError(f"no a_f({p}) stored") from None
            total += max(0, sigma_hat(spec.ap[p], p ** (spec.weight - 1), e))
        else:
            if spec.trivial_mod2 and p != 2:
                total += 1
            elif p == 2 and 2 in spec.ap and abs(spec.ap[2]) != 1:
                total += 1
    return total


def decompose_odd_target(spec: NewformSpec, alpha: int) -> dict:
    """All ways to write odd alpha as a product of signed prime powers on
    pairwise distinct prime arguments (multiplicativity), units absorbed
    by the unit set."""
    if alpha % 2 == 0 or abs(alpha) <= 1:
        raise DomainError("alpha must be odd with |alpha| > 1")
    sign = 1 if alpha > 0 else -1
    blocks_per_prime = []
    for ell, e in factor(alpha).pairs:
        parts = _partitions(e)
        blocks_per_prime.append((ell, parts))
    scenarios = set()
    def expand(i, acc):
        if i == len(blocks_per_prime):
            # distribute signs over the blocks with the right product
            _sign_patterns(tuple(acc), sign, scenarios)
            return
        ell, parts = blocks_per_prime[i]
        for part in parts:
            expand(i + 1, acc + [(ell, mm) for mm in part])
    expand(0, [])
    out = sorted(
        [sorted(s) for s in scenarios],
        key=lambda sc: (len(sc), sc),
    )
    return {
        "target": alpha,
        "unit_set": list(unit_set(spec)) if spec.trivial_mod2 else [1],
        "scenarios": [
            [{"sign": s, "ell": ell, "m": mm} for (s, ell, mm) in sc] for sc in out
        ],
        "note": "each scenario needs its factors at pairwise distinct prime arguments",
    }


def _partitions(e: int) -> list[tuple[int, ...]]:
    if e == 0:
        return [()]
    out = []
    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, maxpart), 0, -1):
            rec(rest - part, part, acc + [part])
    rec(e, e, [])
    return out


def _sign_patterns(blocks, sign, scenarios):
    n = len(blocks)
    for bits in range(1 << n):
        signs = [1 if not (bits >> i) & 1 else -1 for i in range(n)]
        prod = 1
        for s in signs:
            prod *= s
        if prod != sign:
            continue
        scenarios.add(tuple(sorted((signs[i], blocks[i][0], blocks[i][1]) for i in range(n))))
