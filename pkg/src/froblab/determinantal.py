"""Generic determinantal ideals and the checks built around them.

For the ``m x n`` generic matrix (``m <= n``) with maximal-minor ideal
``I``, the test ideals are known in closed form:
``tau(lam • I) = R`` for ``lam < n - m + 1`` and
``I^(floor(lam) - n + m)`` otherwise.  :func:`verify_main` compares that
against the Frobenius-root computation on a grid of ``lam``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .frobenius import decompose
from .groebner import BudgetExceeded
from .ideals import Ideal, ideal_equal, ideal_leq
from .poly import LEX, Monomial, Polynomial, PolynomialError, RingSpec
from .testideal import (StabilizationPolicy, format_rational,
                        fpt_bracket, parse_rational, rational_grid,
                        test_ideal)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenericMatrixSpec:
    """``m x n`` matrix of distinct variables ``x_i_j`` over ``F_p``.

    Stored with ``m <= n``; a wider-than-tall request is transposed, which
    leaves every minor ideal unchanged up to renaming.
    """

    m: int
    n: int
    p: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise PolynomialError("matrix dimensions must be positive")
        if self.m > self.n:
            m, n = self.n, self.m
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "n", n)

    @property
    def names(self) -> list:
        return [f"x_{i}_{j}" for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    @property
    def ring(self) -> RingSpec:
        return _matrix_ring(self.p, tuple(self.names))

    def entry(self, i: int, j: int) -> Polynomial:
        """Entry in row ``i``, column ``j`` (0-based)."""
        return self.ring.var(f"x_{i + 1}_{j + 1}")


_RINGS: dict = {}


def _matrix_ring(p: int, names: tuple) -> RingSpec:
    key = (p, names)
    if key not in _RINGS:
        _RINGS[key] = RingSpec.of(p, list(names))
    return _RINGS[key]


@dataclass(frozen=True)
class MinorIdealSpec:
    matrix: GenericMatrixSpec
    t: int

    def __post_init__(self):
        if not 1 <= self.t <= self.matrix.m:
            raise PolynomialError(
                f"minor size {self.t} outside 1..{self.matrix.m}")


def determinant(M: GenericMatrixSpec, rows, cols) -> Polynomial:
    """Determinant of the submatrix on ``rows`` x ``cols`` by cofactor expansion."""
    memo: dict = {}

    def det(r0: int, cs: tuple) -> Polynomial:
        if not cs:
            return M.ring.one
        hit = memo.get((r0, cs))
        if hit is not None:
            return hit
        total = M.ring.zero
        for k, c in enumerate(cs):
            term = M.entry(rows[r0], c) * det(r0 + 1, cs[:k] + cs[k + 1:])
            total = total - term if k % 2 else total + term
        memo[(r0, cs)] = total
        return total

    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise PolynomialError("submatrix must be square")
    return det(0, cols)


def minors(M: GenericMatrixSpec, t: int) -> list:
    """All ``t x t`` minors, rows then columns in lexicographic order."""
    MinorIdealSpec(M, t)
    return [determinant(M, rs, cs)
            for rs in combinations(range(M.m), t)
            for cs in combinations(range(M.n), t)]


def minors_ideal(m: int, n: int, t: int, p: int) -> Ideal:
    M = GenericMatrixSpec(m, n, p)
    return Ideal(M.ring, minors(M, t))


def msv_fpt(m: int, n: int, t: int) -> Fraction:
    """F-pure threshold of the ``t``-minors: ``min_k (n-k)(m-k)/(t-k)``."""
    if m < 1 or n < 1:
        raise PolynomialError("matrix dimensions must be positive")
    m, n = min(m, n), max(m, n)
    if not 1 <= t <= m:
        raise PolynomialError(f"minor size {t} outside 1..{m}")
    return min(Fraction((n - k) * (m - k), t - k) for k in range(t))


def closed_form_test_ideal(m: int, n: int, p: int, lam) -> Ideal:
    """The known test ideal of the maximal minors at ``lam``."""
    M = GenericMatrixSpec(m, n, p)
    lam = parse_rational(lam)
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    I = Ideal(M.ring, minors(M, M.m))
    k = lam.numerator // lam.denominator - M.n + M.m
    if k <= 0:
        return Ideal.unit(M.ring)
    return I ** k


# -- main verification ----------------------------------------------------------


@dataclass
class MainCell:
    lam: Fraction
    passed: bool | None
    status: str
    e: int
    exponents: list
    expected_power: int
    seconds: float = 0.0
    reason: str = ""

    @property
    def skipped(self) -> bool:
        return self.passed is None

    def as_dict(self, timings: bool = False) -> dict:
        d = {
            "lambda": format_rational(self.lam),
            "result": "skip" if self.skipped else ("pass" if self.passed else "fail"),
            "status": self.status,
            "e": self.e,
            "exponents": [{"q": q, "N": N} for q, N in self.exponents],
            "expected": "R" if self.expected_power <= 0 else f"I^{self.expected_power}",
        }
        if self.reason:
            d["reason"] = self.reason
        if timings:
            d["seconds"] = round(self.seconds, 4)
        return d


@dataclass
class MainReport:
    m: int
    n: int
    p: int
    fpt: Fraction
    cells: list
    jumps_found: list
    jumps_expected: list
    fpt_estimate: object = None
    notes: list = field(default_factory=list)

    @property
    def jumps_ok(self) -> bool:
        return self.jumps_found == self.jumps_expected

    @property
    def skipped(self) -> list:
        return [c for c in self.cells if c.skipped]

    @property
    def passed(self) -> bool:
        fpt_ok = self.fpt_estimate is None or self.fpt_estimate.contains(self.fpt)
        return all(c.passed for c in self.cells if not c.skipped) and self.jumps_ok and fpt_ok

    def as_dict(self, timings: bool = False) -> dict:
        d = {
            "m": self.m, "n": self.n, "p": self.p,
            "fpt": format_rational(self.fpt),
            "passed": self.passed,
            "cells": [c.as_dict(timings) for c in self.cells],
            "jumps": {
                "found": [format_rational(x) for x in self.jumps_found],
                "expected": [format_rational(x) for x in self.jumps_expected],
                "passed": self.jumps_ok,
            },
            "skipped": [format_rational(c.lam) for c in self.skipped],
        }
        if self.fpt_estimate is not None:
            d["fpt_bracket"] = self.fpt_estimate.as_dict()
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def default_grid(m: int, n: int, max_denominator: int = 4) -> list:
    """Rationals with small denominators on ``[0, fpt + 2]``."""
    return rational_grid(0, msv_fpt(m, n, min(m, n)) + 2, max_denominator)


def verify_main(m: int, n: int, p: int, lambdas=None,
                policy: StabilizationPolicy | None = None,
                nu_levels: int = 2) -> MainReport:
    """Compare computed test ideals of the maximal minors with the closed form.

    Cells whose computation exceeds the budget are kept as explicit skips.
    """
    policy = policy or StabilizationPolicy()
    M = GenericMatrixSpec(m, n, p)
    I = Ideal(M.ring, minors(M, M.m))
    fpt = msv_fpt(M.m, M.n, M.m)
    grid = sorted({parse_rational(x) for x in (lambdas or default_grid(M.m, M.n))})
    if any(x < 0 for x in grid):
        raise ValueError("lambda must be non-negative")
    cells = []
    computed = []
    for lam in grid:
        k = lam.numerator // lam.denominator - M.n + M.m
        t0 = time.perf_counter()
        try:
            res = test_ideal(I, lam, policy)
        except BudgetExceeded as exc:
            cells.append(MainCell(lam, None, "skipped", 0, [], k,
                                  time.perf_counter() - t0, str(exc)))
            continue
        expected = closed_form_test_ideal(M.m, M.n, p, lam)
        ok = ideal_equal(res.ideal, expected)
        cells.append(MainCell(lam, ok, res.status, res.e, res.exponents, k,
                              time.perf_counter() - t0))
        computed.append((lam, res.ideal))
        log.info("lambda=%s %s (%s, e=%d)", lam, "pass" if ok else "FAIL", res.status, res.e)

    found = []
    for (l0, J0), (l1, J1) in zip(computed, computed[1:]):
        if not ideal_leq(J1, J0):
            raise RuntimeError(f"test ideals not decreasing between {l0} and {l1}")
        if not ideal_equal(J0, J1):
            found.append(l1)
    expected_jumps = []
    if computed:
        lo, hi = computed[0][0], computed[-1][0]
        j = fpt
        while j <= hi:
            if j > lo:
                expected_jumps.append(j)
            j += 1

    estimate = None
    notes = []
    if nu_levels > 0:
        try:
            estimate = fpt_bracket(I, min(nu_levels, policy.e_max))
        except BudgetExceeded as exc:
            notes.append(f"fpt bracket skipped: {exc}")
    return MainReport(M.m, M.n, p, fpt, cells, found, expected_jumps, estimate, notes)


# -- initial-term witness ----------------------------------------------------------


@dataclass
class WitnessReport:
    m: int
    n: int
    p: int
    e: int
    deltas: list
    mus: list
    eta: Monomial
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "p": self.p, "e": self.e,
            "deltas": [d.render() for d in self.deltas],
            "mus": [mu.render(self.deltas[0].ring) for mu in self.mus],
            "eta": self.eta.render(self.deltas[0].ring),
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def witness_minors(M: GenericMatrixSpec) -> list:
    """The ``n - m + 1`` maximal minors on consecutive column windows."""
    return [determinant(M, range(M.m), range(i, i + M.m)) for i in range(M.n - M.m + 1)]


def witness_check(m: int, n: int, p: int, e: int = 1) -> WitnessReport:
    """Check the lex-initial-term witness for ``Delta = prod delta_i^(q-1)``.

    The lex leading terms ``mu_i`` of the window minors are products of
    pairwise disjoint variables, ``eta = prod mu_i^(q-1)`` has exponents
    ``q - 1`` and is a Frobenius basis monomial, and its component in the
    decomposition of ``Delta`` must be a nonzero constant.
    """
    if e < 1:
        raise PolynomialError("e must be positive")
    M = GenericMatrixSpec(m, n, p)
    ring = M.ring
    q = p ** e
    deltas = witness_minors(M)
    mus = [d.leading(LEX)[0] for d in deltas]
    nvars = ring.nvars

    expected_mus = []
    for i in range(len(deltas)):
        exps = [0] * nvars
        for r in range(M.m):
            exps[ring.index(f"x_{r + 1}_{i + r + 1}")] = 1
        expected_mus.append(Monomial(tuple(exps)))

    eta_exps = [0] * nvars
    for mu in mus:
        for k, u in enumerate(mu.exponents):
            eta_exps[k] += (q - 1) * u
    eta = Monomial(tuple(eta_exps))

    delta = ring.one
    for d in deltas:
        delta = delta * d ** (q - 1)
    parts = decompose(delta, e).parts
    g_eta = parts.get(eta)
    I = Ideal(ring, minors(M, M.m))
    power = (M.n - M.m + 1) * (q - 1)

    checks = {
        "mu_match_diagonals": mus == expected_mus,
        "mu_disjoint": all(
            sum(1 for mu in mus if mu.exponents[k]) <= 1 for k in range(nvars)),
        "eta_is_lead_of_delta": delta.leading(LEX)[0] == eta,
        "eta_in_basis": all(u < q for u in eta.exponents),
        "g_eta_constant": g_eta is not None and g_eta.is_constant(),
        "g_eta_nonzero": g_eta is not None and bool(g_eta),
        "deltas_in_I": all(I.contains(d) for d in deltas),
    }
    if e == 1:
        # the power grows like q; only checked where it stays desk-sized
        checks["delta_in_power"] = (I ** power).contains(delta)
    return WitnessReport(M.m, M.n, p, e, deltas, mus, eta, checks)


__all__ = [
    "GenericMatrixSpec", "MainCell", "MainReport", "MinorIdealSpec",
    "WitnessReport", "closed_form_test_ideal", "default_grid", "determinant",
    "minors", "minors_ideal", "msv_fpt", "verify_main", "witness_check",
    "witness_minors",
]
