"""Ideals of ``F_p[x_1..x_n]`` and the lattice operations on them."""

from __future__ import annotations

import threading
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, groebner
from .poly import (DEGREVLEX, MonomialOrder, Polynomial, PolynomialError,
                   RingMismatchError, RingSpec, _is_power_of)


class Ideal:
    """An ideal given by generators, with reduced Groebner bases cached per order.

    Ideals are immutable from the outside; the cache is filled lazily and
    at most once per order.
    """

    def __init__(self, ring: RingSpec, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if g.ring is not ring and g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_strings(cls, ring: RingSpec, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def unit(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [ring.one])

    @classmethod
    def variables(cls, ring: RingSpec, names: Sequence[str] | None = None) -> "Ideal":
        """The ideal of the named variables (all of them by default)."""
        names = ring.variables if names is None else names
        return cls(ring, [ring.var(v) for v in names])

    @property
    def key(self) -> tuple:
        return (self.ring, self.generators)

    def __repr__(self):
        gens = ", ".join(g.render() for g in self.generators[:6])
        more = ", ..." if len(self.generators) > 6 else ""
        return f"Ideal({gens}{more}) in {self.ring}"

    def __len__(self):
        return len(self.generators)

    # -- Groebner data --------------------------------------------------------

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            with self._lock:
                gb = self._gb.get(order)
                if gb is None:
                    gb = groebner(self.generators, order, ring=self.ring)
                    self._gb[order] = gb
        return gb

    def _seed(self, order: MonomialOrder, gb: GroebnerBasis) -> None:
        with self._lock:
            self._gb.setdefault(order, gb)

    def groebner_basis(self, order: MonomialOrder = DEGREVLEX) -> list:
        return list(self.groebner(order).polys)

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced degrevlex basis."""
        gb = self.groebner()
        out = Ideal(self.ring, gb.polys)
        out._seed(DEGREVLEX, gb)
        return out

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        return self.groebner(order).normal_form(f)

    def contains(self, f: Polynomial) -> bool:
        if f.ring is not self.ring and f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        return self.groebner().reduces_to_zero(f)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        return self.groebner().is_unit

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.generators)

    # -- operations -----------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        return ideal_power(self, k)

    def __le__(self, other: "Ideal") -> bool:
        return ideal_leq(self, other)

    def __ge__(self, other: "Ideal") -> bool:
        return ideal_leq(other, self)

    def colon(self, f: Polynomial) -> "Ideal":
        return colon(self, f)

    def bracket_power(self, q: int) -> "Ideal":
        return bracket_power(self, q)

    def permute(self, ring: RingSpec, index_map: Sequence[int]) -> "Ideal":
        return Ideal(ring, [g.remap(ring, index_map) for g in self.generators])

    def to_ring(self, ring: RingSpec) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> list:
    return I.groebner_basis(order)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def contains(I: Ideal, f: Polynomial) -> bool:
    return I.contains(f)


def ideal_leq(I: Ideal, J: Ideal) -> bool:
    """``I`` is contained in ``J``."""
    _same_ring(I, J)
    if not I.generators:
        return True
    gb = J.groebner()
    return all(gb.reduces_to_zero(g) for g in I.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I.groebner().polys == J.groebner().polys


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def ideal_power(I: Ideal, k: int) -> Ideal:
    """``I^k`` generated by all products of ``k`` generators; ``I^0`` is the unit ideal."""
    if k < 0:
        raise PolynomialError("negative ideal power")
    if k == 0:
        return Ideal.unit(I.ring)
    if k == 1 or not I.generators:
        return I
    gens = I.generators
    n = len(gens)
    # products keyed by non-decreasing index tuples, built one factor at a time
    level = {(i,): gens[i] for i in range(n)}
    for _ in range(k - 1):
        nxt = {}
        for idx, f in level.items():
            for i in range(idx[-1], n):
                nxt[idx + (i,)] = f * gens[i]
        level = nxt
    return Ideal(I.ring, level.values())


def power_exponents(n: int, k: int):
    """Non-decreasing index tuples of length ``k`` over ``range(n)``."""
    return combinations_with_replacement(range(n), k)


def bracket_power(I: Ideal, q: int) -> Ideal:
    """Frobenius power ``I^[q]``: generated by ``q``-th powers of generators.

    The reduced degrevlex basis of ``I`` raised to the ``q``-th power is
    again a reduced basis, so it is seeded into the result's cache.
    """
    p = I.ring.p
    if not _is_power_of(q, p):
        raise PolynomialError(f"{q} is not a power of the characteristic {p}")
    if q == 1:
        return I
    gb = I.groebner()
    out = Ideal(I.ring, [g.frobenius(q) for g in gb.polys])
    out._seed(DEGREVLEX, GroebnerBasis._from_internal(
        I.ring, DEGREVLEX, _internal_all(out.generators, DEGREVLEX)))
    return out


def _internal_all(polys, order):
    from .groebner import _internal
    if not polys:
        return []
    keyf = order.key_function(polys[0].ring)
    out = [_internal(g, keyf) for g in polys]
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """``h / f`` when ``f`` divides ``h``; raises otherwise."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = h.ring
    lm, lc = f.leading()
    inv = ring.field.inv(lc)
    quot = ring.zero
    rem = h
    while rem:
        m, c = rem.leading()
        if not lm.divides(m):
            raise PolynomialError("polynomial does not divide exactly")
        shift = [a - b for a, b in zip(m.exponents, lm.exponents)]
        coeff = (c * inv) % ring.p
        quot = quot + ring.monomial(shift, coeff)
        rem = rem - f.mul_monomial(shift, coeff)
    return quot


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f) = {g : g f in I}`` via ``(I ∩ (f)) / f``.

    The intersection comes from eliminating an auxiliary variable ``t``
    out of ``t I + (1 - t)(f)``.
    """
    ring = I.ring
    if f.ring is not ring and f.ring != ring:
        raise RingMismatchError(f"{f.ring} vs {ring}")
    if not f:
        return Ideal.unit(ring)
    if not I.generators:
        return Ideal(ring, [])
    tname = "_t"
    while tname in ring.variables:
        tname += "_"
    big = ring.extend([tname], prepend=True)
    shift = list(range(1, ring.nvars + 1))
    t = big.var(tname)
    gens = [t * g.remap(big, shift) for g in I.generators]
    gens.append((big.one - t) * f.remap(big, shift))
    order = MonomialOrder("degrevlex", block=1)
    gb = groebner(gens, order, ring=big)
    back = [0] * big.nvars
    for i in range(ring.nvars):
        back[i + 1] = i
    inter = []
    for g in gb.polys:
        if all(big.unpack(P)[0] == 0 for P in g.packed_terms):
            inter.append(g.remap(ring, back))
    return Ideal(ring, [divide_exact(h, f) for h in inter])


# -- ideal files --------------------------------------------------------------
#
#   p <prime>
#   vars <name>,<name>,...
#   <polynomial>          one per nonempty line


def parse_ideal_text(text: str) -> Ideal:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise PolynomialError("ideal file needs a 'p' line and a 'vars' line")
    (n1, head), (n2, vline) = lines[0], lines[1]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "p" or not parts[1].isdigit():
        raise PolynomialError(f"line {n1}: expected 'p <prime>'")
    if not vline.startswith("vars"):
        raise PolynomialError(f"line {n2}: expected 'vars <name,...>'")
    names = [v for v in vline[4:].replace(",", " ").split() if v]
    ring = RingSpec.of(int(parts[1]), names)
    gens = []
    for n, ln in lines[2:]:
        try:
            gens.append(ring.parse(ln))
        except PolynomialError as exc:
            raise PolynomialError(f"line {n}: {exc}") from None
    return Ideal(ring, gens)


def format_ideal_text(I: Ideal) -> str:
    out = [f"p {I.ring.p}", "vars " + ",".join(I.ring.variables)]
    out.extend(g.render() for g in I.generators)
    return "\n".join(out) + "\n"


def ideal_to_json(I: Ideal, groebner: bool = True) -> dict:
    d = {
        "p": I.ring.p,
        "vars": list(I.ring.variables),
        "generators": [g.render() for g in I.generators],
    }
    if groebner:
        d["groebner"] = [g.render() for g in I.groebner().polys]
    return d
