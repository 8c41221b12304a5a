"""Frobenius basis decompositions and e-th root ideals.

Over ``F_p`` the polynomial ring is free over its subring of ``q``-th
powers (``q = p^e``) with basis the monomials whose exponents are all
below ``q``.  Writing every generator of ``a`` as ``sum_mu g_mu^q * mu``,
the e-th root ``a^[1/q]``, the smallest ideal ``b`` with
``a ⊆ b^[q]``, is generated by all the ``g_mu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from . import kernels
from .groebner import BudgetExceeded
from .ideals import Ideal
from .poly import Monomial, Polynomial, PolynomialError

MAX_SMALL_PRODUCTS = 50_000


@dataclass(frozen=True)
class FrobeniusBasisIndex:
    p: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise PolynomialError("e must be non-negative")

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __contains__(self, mono: Monomial) -> bool:
        return all(u < self.q for u in mono.exponents)


@dataclass(frozen=True)
class RootDecomposition:
    """``f = sum(parts[mu] ** q * mu)`` over basis monomials ``mu``."""

    index: FrobeniusBasisIndex
    parts: dict

    def reassemble(self, ring) -> Polynomial:
        q = self.index.q
        total = ring.zero
        for mu, g in self.parts.items():
            total = total + g.frobenius(q) * ring.monomial(mu.exponents)
        return total


def _decompose_packed(f: Polynomial, q: int) -> dict:
    ring = f.ring
    if q == 1:
        return {0: dict(f.packed_terms)} if f else {}
    return kernels.decompose_terms(f.packed_terms, ring.shifts, ring.field_mask, q)


def decompose(f: Polynomial, e: int) -> RootDecomposition:
    idx = FrobeniusBasisIndex(f.ring.p, e)
    ring = f.ring
    parts = {Monomial(ring.unpack(r)): Polynomial(ring, terms)
             for r, terms in _decompose_packed(f, idx.q).items()}
    return RootDecomposition(idx, parts)


def root_parts(f: Polynomial, q: int) -> list:
    """The polynomials ``g_mu`` of ``f``'s decomposition at ``q``."""
    ring = f.ring
    return [Polynomial(ring, t) for t in _decompose_packed(f, q).values()]


def _roots_of(polys, q: int, ring) -> Ideal:
    gens = []
    for f in polys:
        gens.extend(root_parts(f, q))
    return Ideal(ring, gens)


def eth_root(I: Ideal, e: int) -> Ideal:
    """``I^[1/p^e]``, returned on its reduced degrevlex basis."""
    if e < 0:
        raise PolynomialError("e must be non-negative")
    q = I.ring.p ** e
    if e == 0:
        return I.reduced()
    return _roots_of(I.generators, q, I.ring).reduced()


def root_of_power(a: Ideal, N: int, e: int) -> Ideal:
    """``(a^N)^[1/p^e]`` without expanding ``a^N``.

    Roots compose, ``(b^[1/p^i])^[1/p] = b^[1/p^(i+1)]``, so the root is
    taken one ``p`` at a time.  The state after each step is a sum
    ``sum_j a^j * C_j`` of small ideals ``C_j``: a generator
    ``g^alpha * c`` of ``a^j C`` with ``alpha = p*beta + gamma``
    (``gamma < p`` componentwise) has ``p``-th root
    ``g^beta * (g^gamma c)^[1/p]``.
    """
    if N < 0 or e < 0:
        raise PolynomialError("N and e must be non-negative")
    return _root_of_power_cached(a.key, N, e)


@lru_cache(maxsize=4096)
def _root_of_power_cached(key, N, e):
    return _compute_root_of_power(Ideal(*key), N, e)


def _compute_root_of_power(a: Ideal, N: int, e: int) -> Ideal:
    ring = a.ring
    p = ring.p
    if N == 0:
        return Ideal.unit(ring)
    if e == 0:
        return (a ** N).reduced()
    gens = a.groebner().polys if len(a.groebner()) < len(a.generators) else a.generators
    if not gens:
        return Ideal(ring, [])
    ell = len(gens)
    if p ** ell > MAX_SMALL_PRODUCTS:
        raise BudgetExceeded(
            f"{p}^{ell} residue products exceed the limit {MAX_SMALL_PRODUCTS}")

    # g^gamma for every gamma in [0, p)^ell, grouped by |gamma|
    small = {}
    for gamma in cartesian(range(p), repeat=ell):
        f = ring.one
        for g, k in zip(gens, gamma):
            if k:
                f = f * g ** k
        if f:
            small.setdefault(sum(gamma), []).append(f)

    state = {N: Ideal.unit(ring)}
    for _ in range(e):
        collected: dict = {}
        for j, C in state.items():
            for s, prods in small.items():
                if s > j or (j - s) % p:
                    continue
                jn = (j - s) // p
                bucket = collected.setdefault(jn, [])
                for h in prods:
                    for c in C.generators:
                        bucket.extend(root_parts(h * c, p))
        state = {}
        for jn, polys in collected.items():
            C = Ideal(ring, polys).reduced()
            if C.generators:
                state[jn] = C
        state = _prune(state, a)

    total = []
    for j, C in sorted(state.items()):
        aj = a ** j if j else Ideal.unit(ring)
        total.extend(f * c for f in aj.generators for c in C.generators)
    return Ideal(ring, total).reduced()


def _prune(state: dict, a: Ideal) -> dict:
    """Drop ``a^j C_j`` already inside ``a^i C_i`` for some ``i <= j``."""
    keys = sorted(state)
    kept = {}
    for j in keys:
        C = state[j]
        if any(all(Ci.contains(c) for c in C.generators) for Ci in kept.values()):
            continue
        kept[j] = C
    return kept
