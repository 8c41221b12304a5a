"""F-thresholds, generalized test ideals and jumping numbers.

Everything here is exact: parameters are :class:`fractions.Fraction`,
containments are decided with reduced Groebner bases.

Test ideals are computed as the increasing chain
``J_e = (a^ceil(lam*q))^[1/q]`` (``q = p^e``).  Alongside it runs the
upper bound ``U_e = (a^(floor(lam*q) - l + 1))^[1/q]`` where ``l`` is the
number of generators of ``a``: for ``N >= p^k (M - 1) + l (p^k - 1) + 1``
the pigeonhole principle gives ``a^N ⊆ (a^M)^[p^k]``, hence every later
``J``, and so the test ideal itself, lies inside ``U_e``.  When
``U_e ⊆ J_e`` the value is certified.  Near jumping numbers the two may
never meet and the policy falls back to the chain heuristic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .frobenius import root_of_power
from .groebner import BudgetExceeded, get_budget
from .ideals import Ideal, bracket_power, ideal_equal, ideal_leq
from .poly import PolynomialError

log = logging.getLogger(__name__)

ExactRational = Fraction


class RadicalError(ValueError):
    """``a ⊆ rad(b)`` could not be confirmed within the search bound."""


class ChainError(RuntimeError):
    """A chain that must be monotone was not."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _generator_count(a: Ideal) -> int:
    return min(len(a.generators), len(a.groebner()))


def _small_generators(a: Ideal) -> tuple:
    gb = a.groebner()
    return tuple(gb.polys) if len(gb) < len(a.generators) else a.generators


# -- nu and F-thresholds -------------------------------------------------------


def radical_contains(a: Ideal, b: Ideal, bound: int = 32) -> bool:
    """Every generator of ``a`` has a power ``<= bound`` inside ``b``."""
    gb = b.groebner()
    for g in a.generators:
        f = gb.normal_form(g)
        k = 1
        while f:
            if k >= bound:
                return False
            f = gb.normal_form(f * g)
            k += 1
    return True


def nu(a: Ideal, b: Ideal, e: int, radical_bound: int = 32, method: str = "root",
       start: int = 0) -> int:
    """Largest ``r`` with ``a^r`` not inside ``b^[p^e]``.

    ``method="root"`` uses ``a^r ⊆ b^[q]`` iff ``(a^r)^[1/q] ⊆ b`` and
    searches ``r`` by doubling then bisection from the hint ``start``.
    ``method="direct"`` multiplies out ``a^r`` one step at a time and
    reduces modulo ``b^[q]``.
    """
    if e < 0:
        raise PolynomialError("e must be non-negative")
    if not b.is_proper():
        raise PolynomialError("b must be a proper ideal")
    if not radical_contains(a, b, radical_bound):
        raise RadicalError(
            f"could not confirm a ⊆ rad(b) with powers up to {radical_bound}")
    if method == "root":
        return _nu_by_roots(a, b, e, start)
    if method != "direct":
        raise ValueError(f"unknown nu method {method!r}")
    return _nu_direct(a, b, e)


def _nu_by_roots(a: Ideal, b: Ideal, e: int, start: int) -> int:
    def outside(r):
        return not ideal_leq(root_of_power(a, r, e), b)

    # a^0 = R is outside the proper ideal b^[q]
    lo = max(start, 0)
    if lo and not outside(lo):
        lo, hi = 0, lo
    else:
        step = 1
        hi = lo + step
        while outside(hi):
            lo, step = hi, 2 * step
            hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if outside(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _nu_direct(a: Ideal, b: Ideal, e: int) -> int:
    q = a.ring.p ** e
    gb = bracket_power(b, q).groebner()
    gens = _small_generators(a)
    limit = get_budget()
    work = 0
    # normal forms of g^alpha, alpha a non-decreasing index tuple of length r
    live = {(): a.ring.one}
    r = 0
    while True:
        nxt = {}
        for alpha, f in live.items():
            start = alpha[-1] if alpha else 0
            for i in range(start, len(gens)):
                work += 1
                if work > limit:
                    raise BudgetExceeded(f"nu search exceeded budget {limit}")
                h = gb.normal_form(f * gens[i])
                if h:
                    nxt[alpha + (i,)] = h
        if not nxt:
            return r
        r += 1
        live = nxt


@dataclass(frozen=True)
class ThresholdEstimate:
    """Exact bracket ``lower <= c^b(a) <= upper`` from ``nu`` up to level ``e``.

    ``lower`` is ``max nu(q)/q``.  ``upper`` is ``min (nu(q) + l)/q`` with
    ``l`` the number of generators used.
    """

    lower: Fraction
    upper: Fraction
    e: int
    nu_values: tuple
    generators: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ChainError(f"empty bracket [{self.lower}, {self.upper}]")

    def contains(self, x) -> bool:
        return self.lower <= Fraction(x) <= self.upper

    def as_dict(self) -> dict:
        return {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "e": self.e,
            "generators": self.generators,
            "nu": [{"q": q, "nu": v} for q, v in self.nu_values],
        }


def threshold_estimate(a: Ideal, b: Ideal, e_max: int, radical_bound: int = 32) -> ThresholdEstimate:
    if e_max < 0:
        raise PolynomialError("e_max must be non-negative")
    p = a.ring.p
    ell = _generator_count(a)
    values = []
    lower = Fraction(0)
    upper = None
    prev = None
    for e in range(e_max + 1):
        q = p ** e
        v = nu(a, b, e, radical_bound, start=0 if prev is None else p * prev)
        if prev is not None and v < p * prev:
            raise ChainError(f"nu({q}) = {v} < p * nu({q // p}) = {p * prev}")
        prev = v
        values.append((q, v))
        lower = max(lower, Fraction(v, q))
        up = Fraction(v + ell, q)
        upper = up if upper is None else min(upper, up)
    return ThresholdEstimate(lower, upper, e_max, tuple(values), ell)


def fpt_bracket(a: Ideal, e_max: int, radical_bound: int = 32) -> ThresholdEstimate:
    """Bracket on the F-pure threshold of a homogeneous ideal.

    For homogeneous ``a`` inside the ideal ``m`` of all variables the
    F-pure threshold equals the F-threshold with respect to ``m``.
    """
    if not a.is_homogeneous():
        raise PolynomialError("fpt_bracket needs homogeneous generators")
    if any(g.degree() == 0 for g in a.generators):
        raise PolynomialError("ideal is not inside the homogeneous maximal ideal")
    m = Ideal.variables(a.ring)
    return threshold_estimate(a, m, e_max, radical_bound)


# -- test ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizationPolicy:
    """When to stop climbing the chain ``J_1 ⊆ J_2 ⊆ ...``.

    ``confirm_steps`` consecutive equalities count as (heuristic)
    stabilization; with ``certify`` the sandwich certificate may stop the
    search earlier with a proof.
    """

    e_max: int = 3
    confirm_steps: int = 1
    certify: bool = True

    def __post_init__(self):
        if self.e_max < 1:
            raise ValueError("e_max must be at least 1")
        if self.confirm_steps < 1:
            raise ValueError("confirm_steps must be at least 1")


CERTIFIED = "certified"
STABILIZED = "stabilized"
UNSTABILIZED = "unstabilized"
EXACT = "exact"


@dataclass
class TestIdealResult:
    ideal: Ideal
    lam: Fraction
    status: str
    e: int
    exponents: list = field(default_factory=list)

    __test__ = False  # not a pytest class

    @property
    def stabilized(self) -> bool:
        return self.status != UNSTABILIZED


def test_ideal(a: Ideal, lam, policy: StabilizationPolicy | None = None) -> TestIdealResult:
    """Generalized test ideal ``tau(lam • a)``."""
    policy = policy or StabilizationPolicy()
    lam = parse_rational(lam)
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    ring = a.ring
    if lam == 0 or not a.generators:
        status = EXACT if lam == 0 else CERTIFIED
        out = Ideal.unit(ring) if lam == 0 else Ideal(ring, [])
        return TestIdealResult(out, lam, status, 0)
    p = ring.p
    ell = _generator_count(a)
    prev = None
    run = 0
    exps = []
    J = None
    for e in range(1, policy.e_max + 1):
        q = p ** e
        N = _ceil(lam * q)
        J = root_of_power(a, N, e)
        exps.append((q, N))
        if prev is not None:
            if not ideal_leq(prev, J):
                raise ChainError(f"J_{e - 1} ⊄ J_{e} at lambda = {lam}")
            run = run + 1 if ideal_equal(prev, J) else 0
        if policy.certify:
            M = _floor(lam * q) - ell + 1
            U = root_of_power(a, max(M, 0), e)
            if ideal_leq(U, J):
                log.debug("tau(%s) certified at e=%d", lam, e)
                return TestIdealResult(J, lam, CERTIFIED, e, exps)
        if run >= policy.confirm_steps:
            return TestIdealResult(J, lam, STABILIZED, e, exps)
        prev = J
    return TestIdealResult(J, lam, UNSTABILIZED, policy.e_max, exps)


def rational_grid(lo, hi, max_denominator: int) -> list:
    """Reduced rationals in ``[lo, hi]`` with denominator ``<= max_denominator``."""
    lo, hi = parse_rational(lo), parse_rational(hi)
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    pts = set()
    for d in range(1, max_denominator + 1):
        for n in range(_ceil(lo * d), _floor(hi * d) + 1):
            pts.add(Fraction(n, d))
    return sorted(pts)


def scan_grid(a: Ideal, points, policy: StabilizationPolicy | None = None) -> list:
    """``(lam, TestIdealResult, dropped)`` for ascending ``points``.

    ``dropped`` records a strict drop from the previous point.
    """
    out = []
    prev = None
    for lam in sorted(parse_rational(x) for x in points):
        res = test_ideal(a, lam, policy)
        dropped = False
        if prev is not None:
            if not ideal_leq(res.ideal, prev.ideal):
                raise ChainError(f"tau({lam}) ⊄ tau({prev.lam})")
            dropped = not ideal_equal(res.ideal, prev.ideal)
        out.append((lam, res, dropped))
        prev = res
    return out


def jumping_numbers_on_grid(a: Ideal, lo, hi, max_denominator: int,
                            policy: StabilizationPolicy | None = None) -> list:
    lo = parse_rational(lo)
    if lo < 0:
        raise ValueError("interval must start at a non-negative value")
    grid = rational_grid(lo, hi, max_denominator)
    return [lam for lam, _, dropped in scan_grid(a, grid, policy) if dropped]


def skoda_check(a: Ideal, lam, policy: StabilizationPolicy | None = None) -> bool:
    """``tau(lam • a) == a * tau((lam - 1) • a)`` for ``lam >= #generators``.

    At every fixed level ``J_e(lam) = a * J_e(lam - 1)`` once
    ``lam >= #generators``, so the comparison is exact whenever each side
    is either certified or carried to ``e_max``.  The default policy
    therefore disables the equal-steps heuristic.
    """
    if policy is None:
        policy = StabilizationPolicy(e_max=3, confirm_steps=3)
    lam = parse_rational(lam)
    r = len(a.generators)
    if lam < r:
        raise ValueError(f"Skoda needs lambda >= {r} generators, got {lam}")
    top = test_ideal(a, lam, policy).ideal
    below = test_ideal(a, lam - 1, policy).ideal
    return ideal_equal(top, a * below)


__all__ = [
    "ChainError", "ExactRational", "RadicalError", "StabilizationPolicy",
    "TestIdealResult", "ThresholdEstimate", "fpt_bracket", "format_rational",
    "jumping_numbers_on_grid", "nu", "parse_rational", "radical_contains",
    "rational_grid", "scan_grid", "skoda_check", "test_ideal",
    "threshold_estimate",
]
