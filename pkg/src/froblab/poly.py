"""Prime fields, sparse multivariate polynomials and monomial orders.

A :class:`Polynomial` stores its terms as ``{packed_exponents: coeff}``
with coefficients reduced to ``[0, p)`` and no zero entries, so two
polynomials are equal exactly when their term maps are.  The packing is
owned by the :class:`RingSpec`: every variable gets a fixed-width field
topped by a guard bit, the first declared variable in the most
significant field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from . import kernels

DEFAULT_MAX_EXPONENT = 2**31 - 1

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolynomialError(ValueError):
    """Base class for errors raised by this module."""


class RingMismatchError(PolynomialError):
    pass


class ExponentOverflowError(ArithmeticError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller--Rabin with the first 13 prime bases.

    Deterministic below 3.3e24; beyond that a strong probable-prime test.
    """
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise PolynomialError(f"{self.p!r} is not a prime")

    def __call__(self, n: int) -> int:
        return n % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring ``F_p[variables]``; declaration order matters."""

    field: PrimeField
    variables: tuple
    max_exponent: int = DEFAULT_MAX_EXPONENT

    def __post_init__(self):
        if isinstance(self.field, int):
            object.__setattr__(self, "field", PrimeField(self.field))
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if len(set(names)) != len(names):
            raise PolynomialError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise PolynomialError(f"invalid variable name {name!r}")
        if self.max_exponent < 1:
            raise PolynomialError("max_exponent must be positive")

    @classmethod
    def of(cls, p: int, variables: Iterable[str] | str, **kw) -> "RingSpec":
        if isinstance(variables, str):
            variables = [v for v in re.split(r"[\s,]+", variables) if v]
        return cls(PrimeField(p), tuple(variables), **kw)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    # -- packing -----------------------------------------------------------

    @cached_property
    def width(self) -> int:
        return self.max_exponent.bit_length() + 1

    @cached_property
    def shifts(self) -> tuple:
        w, n = self.width, self.nvars
        return tuple(w * (n - 1 - i) for i in range(n))

    @cached_property
    def field_mask(self) -> int:
        return (1 << self.width) - 1

    @cached_property
    def guard(self) -> int:
        g = 0
        for s in self.shifts:
            g |= 1 << (s + self.width - 1)
        return g

    @cached_property
    def _index(self) -> dict:
        return {name: i for i, name in enumerate(self.variables)}

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.nvars:
            raise PolynomialError(
                f"expected {self.nvars} exponents, got {len(exponents)}")
        P = 0
        for e, s in zip(exponents, self.shifts):
            if e < 0:
                raise PolynomialError("negative exponent")
            if e > self.max_exponent:
                raise ExponentOverflowError(
                    f"exponent {e} exceeds bound {self.max_exponent}")
            P |= e << s
        return P

    def unpack(self, P: int) -> tuple:
        m = self.field_mask
        return tuple((P >> s) & m for s in self.shifts)

    def check_exponents(self, packed: Iterable[int]) -> None:
        acc = 0
        for P in packed:
            acc |= P
        if acc & self.guard:
            raise ExponentOverflowError(
                f"exponent exceeds bound {self.max_exponent}")
        if self.max_exponent & (self.max_exponent + 1):
            # bound is not 2^k - 1: the guard bit alone is too coarse
            if max(self.unpack(acc), default=0) > self.max_exponent:
                raise ExponentOverflowError(
                    f"exponent exceeds bound {self.max_exponent}")

    # -- constructors --------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolynomialError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {self.pack(exps): 1})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.variables)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {0: c} if c else {})

    def monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        coeff %= self.p
        return Polynomial(self, {self.pack(exponents): coeff} if coeff else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, names: Sequence[str], prepend: bool = False) -> "RingSpec":
        names = tuple(names)
        new = names + self.variables if prepend else self.variables + names
        return RingSpec(self.field, new, self.max_exponent)

    def __str__(self):
        return f"F_{self.p}[{', '.join(self.variables)}]"


@dataclass(frozen=True)
class Monomial:
    exponents: tuple

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def render(self, ring: RingSpec) -> str:
        parts = []
        for name, e in zip(ring.variables, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


# -- monomial orders -----------------------------------------------------------

_KEY_CACHE: dict = {}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a ring's variables.

    ``priority`` lists variable indices from most to least significant
    (``None`` means declaration order).  ``block`` > 0 makes the first
    ``block`` variables of the priority an elimination block ranked before
    the rest, each block ordered by ``kind``.
    """

    kind: str = "degrevlex"
    priority: tuple | None = None
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise PolynomialError(f"unknown monomial order {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))

    def _perm(self, ring: RingSpec) -> tuple:
        n = ring.nvars
        if self.priority is None:
            return tuple(range(n))
        if sorted(self.priority) != list(range(n)):
            raise PolynomialError("priority must be a permutation of the variables")
        return self.priority

    def key_function(self, ring: RingSpec) -> Callable[[int], int]:
        """Map a packed exponent to an integer whose order is this order.

        The map is additive, so ``key(P1 + P2) == key(P1) + key(P2)``.
        """
        ck = (self, ring)
        fn = _KEY_CACHE.get(ck)
        if fn is None:
            fn = self._build_key(ring)
            _KEY_CACHE[ck] = fn
        return fn

    def _build_key(self, ring: RingSpec) -> Callable[[int], int]:
        perm = self._perm(ring)
        n = ring.nvars
        if self.kind == "lex" and self.block == 0 and perm == tuple(range(n)):
            return lambda P: P
        shifts = [ring.shifts[i] for i in perm]
        mask = ring.field_mask
        w2 = ring.width + n.bit_length() + 1
        blocks = [(0, self.block), (self.block, n)] if self.block else [(0, n)]
        lex = self.kind == "lex"

        def key(P, _cache={}):
            k = _cache.get(P)
            if k is not None:
                return k
            f = [(P >> s) & mask for s in shifts]
            k = 0
            for lo, hi in blocks:
                if lex:
                    for i in range(lo, hi):
                        k = (k << w2) | f[i]
                else:
                    # prefix sums, longest first: compares total degree, then
                    # prefers the smaller exponent in the last variable, ...
                    sums = []
                    s = 0
                    for i in range(lo, hi):
                        s += f[i]
                        sums.append(s)
                    for s in reversed(sums):
                        k = (k << w2) | s
            if len(_cache) > 1_000_000:
                _cache.clear()
            _cache[P] = k
            return k

        return key

    def key(self, ring: RingSpec, monomial: Monomial) -> int:
        return self.key_function(ring)(ring.pack(monomial.exponents))

    def __str__(self):
        s = self.kind
        if self.priority is not None:
            s += f"{list(self.priority)}"
        if self.block:
            s += f"/block{self.block}"
        return s


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def lex_order(ring: RingSpec, names: Sequence[str] | None = None) -> MonomialOrder:
    """Lex order with ``names`` most significant first (default: declaration order)."""
    if names is None:
        return LEX
    return MonomialOrder("lex", tuple(ring.index(n) for n in names))


# -- polynomials --------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over ``F_p``."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: dict | None = None):
        # trusts ``terms`` to be canonical; use from_terms otherwise
        self.ring = ring
        self._terms = terms if terms is not None else {}
        self._hash = None

    @classmethod
    def from_terms(cls, ring: RingSpec, terms: Mapping) -> "Polynomial":
        p = ring.p
        out: dict = {}
        for mono, c in terms.items():
            if isinstance(mono, Monomial):
                mono = mono.exponents
            P = mono if isinstance(mono, int) else ring.pack(mono)
            out[P] = out.get(P, 0) + c
        return cls(ring, {P: c % p for P, c in out.items() if c % p})

    # -- inspection ---------------------------------------------------------

    @property
    def packed_terms(self) -> dict:
        """The raw ``{packed: coeff}`` map; do not mutate."""
        return self._terms

    def terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        """``(Monomial, coeff)`` pairs, descending in ``order``."""
        key = order.key_function(self.ring)
        unpack = self.ring.unpack
        return [(Monomial(unpack(P)), c)
                for P, c in sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)]

    def coefficient(self, monomial: Monomial | Sequence[int]) -> int:
        exps = monomial.exponents if isinstance(monomial, Monomial) else tuple(monomial)
        return self._terms.get(self.ring.pack(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        unpack = self.ring.unpack
        return max((sum(unpack(P)) for P in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        unpack = self.ring.unpack
        return len({sum(unpack(P)) for P in self._terms}) <= 1

    def leading(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        if not self._terms:
            raise PolynomialError("zero polynomial has no initial form")
        key = order.key_function(self.ring)
        P = max(self._terms, key=key)
        return Monomial(self.ring.unpack(P)), self._terms[P]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        _, c = self.leading(order)
        return self.scale(self.ring.field.inv(c))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.p
        out = dict(self._terms)
        for P, c in other._terms.items():
            v = (out.get(P, 0) + c) % p
            if v:
                out[P] = v
            else:
                out.pop(P, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {P: p - c for P, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        return Polynomial(self.ring, {P: (v * c) % p for P, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return self.ring.zero
        out = kernels.mul_terms(self._terms, other._terms, self.ring.p)
        self.ring.check_exponents(out)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def mul_monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        shift = self.ring.pack(exponents)
        p = self.ring.p
        coeff %= p
        if not coeff:
            return self.ring.zero
        out = {P + shift: (c * coeff) % p for P, c in self._terms.items()}
        self.ring.check_exponents(out)
        return Polynomial(self.ring, out)

    def frobenius(self, q: int) -> "Polynomial":
        """``self ** q`` for ``q`` a power of the characteristic.

        Over ``F_p`` this just multiplies every exponent by ``q``.
        """
        if not _is_power_of(q, self.ring.p):
            raise PolynomialError(f"{q} is not a power of {self.ring.p}")
        if q == 1:
            return self
        ring = self.ring
        if self._terms:
            top = max(max(ring.unpack(P)) for P in self._terms)
            if top * q > ring.max_exponent:
                raise ExponentOverflowError(
                    f"exponent {top * q} exceeds bound {ring.max_exponent}")
        return Polynomial(ring, {P * q: c for P, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise PolynomialError("negative power")
        if k == 0:
            return self.ring.one
        p = self.ring.p
        q = 1
        while k % p == 0:
            k //= p
            q *= p
        base = self.frobenius(q)
        result = None
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    # -- ring changes -------------------------------------------------------

    def remap(self, ring: RingSpec, index_map: Sequence[int]) -> "Polynomial":
        """Send variable ``i`` of this ring to variable ``index_map[i]`` of ``ring``."""
        if ring.p != self.ring.p:
            raise RingMismatchError("characteristics differ")
        src = self.ring
        n = ring.nvars
        out: dict = {}
        for P, c in self._terms.items():
            exps = [0] * n
            for i, e in enumerate(src.unpack(P)):
                if e:
                    exps[index_map[i]] += e
            Q = ring.pack(exps)
            out[Q] = (out.get(Q, 0) + c) % ring.p
        return Polynomial(ring, {Q: c for Q, c in out.items() if c})

    def to_ring(self, ring: RingSpec) -> "Polynomial":
        """Move to a ring containing all of this ring's variable names."""
        return self.remap(ring, [ring.index(v) for v in self.ring.variables])

    # -- text ---------------------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.terms(DEGREVLEX):
            body = mono.render(self.ring)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"Polynomial({self.render()!r} over {self.ring})"


def _is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def initial_form(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> tuple:
    """Order-maximal ``(Monomial, coefficient)`` of a nonzero polynomial."""
    return f.leading(order)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_power(f: Polynomial, k: int) -> Polynomial:
    return f ** k


# -- parsing --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            out.append((ch, ch, m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``text`` (sums of ``coeff*var^exp*...`` terms) into ``ring``."""
    toks = _tokenize(text)
    i = 0
    p = ring.p
    terms: dict = {}

    def expect_factor():
        nonlocal i
        kind, val, pos = toks[i]
        if kind == "int":
            i += 1
            return val, None
        if kind == "name":
            i += 1
            if val not in ring._index:
                raise ParseError(f"unknown variable {val!r}", pos, text)
            e = 1
            if toks[i][0] == "^":
                i += 1
                k2, v2, p2 = toks[i]
                if k2 != "int" or v2 < 1:
                    raise ParseError("expected positive integer exponent", p2, text)
                e = v2
                i += 1
            return None, (ring._index[val], e)
        raise ParseError("expected coefficient or variable", pos, text)

    first = True
    while True:
        sign = 1
        kind, _, pos = toks[i]
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", pos, text)
        first = False
        coeff = sign
        exps = [0] * ring.nvars
        while True:
            c, ve = expect_factor()
            if c is not None:
                coeff *= c
            else:
                exps[ve[0]] += ve[1]
            if toks[i][0] == "*":
                i += 1
                continue
            break
        P = ring.pack(exps)
        terms[P] = (terms.get(P, 0) + coeff) % p
        if toks[i][0] == "end":
            break
    return Polynomial(ring, {P: c for P, c in terms.items() if c})
