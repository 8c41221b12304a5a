"""Reduced Groebner bases over F_p.

Buchberger's algorithm with the Gebauer--Moeller criteria and the normal
selection strategy.  Input generators sit in the same priority queue as
critical pairs (keyed by leading term), so cheap low-degree elements
enter the basis first and large redundant inputs tend to reduce to zero.

Internally a polynomial is a list of ``(K, P, c)`` triples sorted by
descending order key ``K``; ``P`` is the exponent packing.
"""

from __future__ import annotations

import contextlib
import heapq
import os
import threading
from dataclasses import dataclass, field

from . import kernels
from .poly import DEGREVLEX, MonomialOrder, Polynomial, RingMismatchError, RingSpec

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """A configured resource limit was hit; the result would be incomplete."""


_state = threading.local()


def get_budget() -> int:
    b = getattr(_state, "budget", None)
    if b is not None:
        return b
    env = os.environ.get("FROBLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def set_budget(n: int | None) -> None:
    _state.budget = n


@contextlib.contextmanager
def budget(n: int):
    old = getattr(_state, "budget", None)
    _state.budget = n
    try:
        yield
    finally:
        _state.budget = old


_RECORDERS: list = []


@contextlib.contextmanager
def record_bases():
    """Collect every basis computed inside the block as ``GroebnerBasis``."""
    sink: list = []
    _RECORDERS.append(sink)
    try:
        yield sink
    finally:
        _RECORDERS.remove(sink)


def _internal(f: Polynomial, keyf) -> list:
    return sorted(((keyf(P), P, c) for P, c in f.packed_terms.items()), reverse=True)


def _monic(terms: list, p: int) -> list:
    c0 = terms[0][2]
    if c0 == 1:
        return terms
    inv = pow(c0, -1, p)
    return [(k, P, (c * inv) % p) for k, P, c in terms]


def _reduce(terms: list, reducers: list, ring: RingSpec) -> list:
    if not terms:
        return []
    coef = {k: c for k, _, c in terms}
    pmap = {k: P for k, P, _ in terms}
    return kernels.reduce_terms(coef, pmap, reducers, ring.guard, ring.p)


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis together with its reducer table."""

    ring: RingSpec
    order: MonomialOrder
    polys: list
    _reducers: list = field(repr=False, default_factory=list)

    @classmethod
    def _from_internal(cls, ring, order, elems):
        polys = [Polynomial(ring, {P: c for _, P, c in t}) for t in elems]
        reducers = [(t[0][1], t[0][0], t[1:]) for t in elems]
        # smaller leading terms first: cheaper reducers win ties
        reducers.sort(key=lambda r: r[1])
        return cls(ring, order, polys, reducers)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant() and bool(self.polys[0])

    @property
    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring is not self.ring and f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        if not f or not self.polys:
            return f
        keyf = self.order.key_function(self.ring)
        rem = _reduce(_internal(f, keyf), self._reducers, self.ring)
        return Polynomial(self.ring, {P: c for _, P, c in rem})

    def reduces_to_zero(self, f: Polynomial) -> bool:
        if not f:
            return True
        if not self.polys:
            return False
        keyf = self.order.key_function(self.ring)
        return not _reduce(_internal(f, keyf), self._reducers, self.ring)

    def leading_packed(self) -> list:
        return [r[0] for r in self._reducers]


def _lcm_packed(a: tuple, b: tuple, ring: RingSpec) -> int:
    P = 0
    for x, y, s in zip(a, b, ring.shifts):
        P |= (x if x > y else y) << s
    return P


def groebner(gens, order: MonomialOrder = DEGREVLEX, ring: RingSpec | None = None,
             max_pairs: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring is not ring and g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
    limit = get_budget() if max_pairs is None else max_pairs
    keyf = order.key_function(ring)
    p, guard = ring.p, ring.guard
    unpack = ring.unpack

    if any(g.is_constant() for g in gens):
        gb = GroebnerBasis._from_internal(ring, order, [[(keyf(0), 0, 1)]])
        _notify(gb)
        return gb

    # basis element i: (lead_P, lead_K, lead_exps, terms)
    elems: list = []
    active: list = []          # indices of elements whose leads are minimal
    live_pairs: dict = {}      # (i, j) -> lcm packed
    queue: list = []
    seq = 0
    for g in dict.fromkeys(gens):
        t = _monic(_internal(g, keyf), p)
        heapq.heappush(queue, (t[0][0], seq, None, t))
        seq += 1

    def divides(a, b):
        return ((b | guard) - a) & guard == guard

    def reducers():
        return sorted(((elems[i][0], elems[i][1], elems[i][3][1:]) for i in active),
                      key=lambda r: r[1])

    red_cache = None
    processed = 0
    unit = False
    while queue:
        _, _, pair, data = heapq.heappop(queue)
        if pair is not None:
            if live_pairs.pop(pair, None) is None:
                continue
            processed += 1
            if processed > limit:
                raise BudgetExceeded(f"Groebner pair budget {limit} exceeded")
            i, j = pair
            Pi, Ki, _, ti = elems[i]
            Pj, Kj, _, tj = elems[j]
            L = data
            LK = keyf(L)
            coef: dict = {}
            pmap: dict = {}
            sP, sK = L - Pi, LK - Ki
            for k, P, c in ti[1:]:
                coef[k + sK] = c
                pmap[k + sK] = P + sP
            sP, sK = L - Pj, LK - Kj
            for k, P, c in tj[1:]:
                nk = k + sK
                v = (coef.get(nk, 0) - c) % p
                if v:
                    coef[nk] = v
                    pmap[nk] = P + sP
                else:
                    coef.pop(nk, None)
            if not coef:
                continue
        else:
            coef = {k: c for k, _, c in data}
            pmap = {k: P for k, P, _ in data}
        if red_cache is None:
            red_cache = reducers()
        rem = kernels.reduce_terms(coef, pmap, red_cache, guard, p)
        if not rem:
            continue
        h = _monic(rem, p)
        hP, hK = h[0][1], h[0][0]
        if hP == 0:
            unit = True
            break
        hexps = unpack(hP)
        hidx = len(elems)
        elems.append((hP, hK, hexps, h))

        # Gebauer--Moeller update
        cand = []
        for i in active:
            L = _lcm_packed(elems[i][2], hexps, ring)
            cand.append((i, L, L == elems[i][0] + hP))
        kept = []
        for idx, (i, L, coprime) in enumerate(cand):
            if coprime:
                kept.append((i, L, coprime))
                continue
            redundant = False
            for j2, L2, _ in cand[idx + 1:]:
                if divides(L2, L):
                    redundant = True
                    break
            if not redundant:
                for j2, L2, _ in kept:
                    if divides(L2, L):
                        redundant = True
                        break
            if not redundant:
                kept.append((i, L, coprime))
        for (i, j), L in list(live_pairs.items()):
            if divides(hP, L):
                Li = _lcm_packed(elems[i][2], hexps, ring)
                Lj = _lcm_packed(elems[j][2], hexps, ring)
                if Li != L and Lj != L:
                    del live_pairs[(i, j)]
        for i, L, coprime in kept:
            if coprime:
                continue
            live_pairs[(i, hidx)] = L
            heapq.heappush(queue, (keyf(L), seq, (i, hidx), L))
            seq += 1
        active = [i for i in active if not divides(hP, elems[i][0])]
        active.append(hidx)
        red_cache = None

    if unit:
        gb = GroebnerBasis._from_internal(ring, order, [[(keyf(0), 0, 1)]])
        _notify(gb)
        return gb

    # interreduce tails
    final = []
    for i in active:
        lead = elems[i][3][0]
        others = [(elems[j][0], elems[j][1], elems[j][3][1:]) for j in active if j != i]
        others.sort(key=lambda r: r[1])
        tail = _reduce(elems[i][3][1:], others, ring)
        final.append([lead] + tail)
    final.sort(key=lambda t: t[0][0], reverse=True)
    gb = GroebnerBasis._from_internal(ring, order, final)
    _notify(gb)
    return gb


def _notify(gb: GroebnerBasis) -> None:
    for sink in _RECORDERS:
        sink.append(gb)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    (mf, cf), (mg, cg) = f.leading(order), g.leading(order)
    L = mf.lcm(mg).exponents
    F = f.ring.field
    a = f.mul_monomial([x - y for x, y in zip(L, mf.exponents)], F.inv(cf))
    b = g.mul_monomial([x - y for x, y in zip(L, mg.exponents)], F.inv(cg))
    return a - b


def is_groebner_basis(polys, order: MonomialOrder = DEGREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero.

    Checks all pairs, without pair elimination, so it stays independent
    of the bookkeeping used by :func:`groebner`.
    """
    polys = [g for g in polys if g]
    if not polys:
        return True
    ring = polys[0].ring
    keyf = order.key_function(ring)
    elems = [_monic(_internal(g, keyf), ring.p) for g in polys]
    reds = [(t[0][1], t[0][0], t[1:]) for t in elems]
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            s = s_polynomial(polys[a], polys[b], order)
            if s and _reduce(_internal(s, keyf), reds, ring):
                return False
    return True


def is_reduced(polys, order: MonomialOrder = DEGREVLEX) -> bool:
    """Monic, and no term of any element is divisible by another's lead."""
    polys = list(polys)
    leads = []
    for g in polys:
        m, c = g.leading(order)
        if c != 1:
            return False
        leads.append(m)
    for i, g in enumerate(polys):
        for mono, _ in g.terms(order):
            for j, lm in enumerate(leads):
                if j != i and lm.divides(mono):
                    return False
    return True
