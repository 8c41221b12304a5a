import pytest
from hypothesis import given
from hypothesis import strategies as st

from froblab.poly import (DEGREVLEX, LEX, ExponentOverflowError, Monomial, MonomialOrder,
                          ParseError, PolynomialError, PrimeField, RingMismatchError,
                          RingSpec, initial_form, is_prime, lex_order, parse_polynomial,
                          poly_power)

from conftest import polys, rings
from oracles import expand_power


def terms_of(f):
    return {f.ring.unpack(P): c for P, c in f.packed_terms.items()}


def test_prime_field_rejects_composites():
    assert is_prime(2) and is_prime(97) and not is_prime(1) and not is_prime(91)
    with pytest.raises(PolynomialError):
        PrimeField(6)
    assert PrimeField(7).inv(3) == 5


def test_ring_rejects_duplicate_and_bad_names():
    with pytest.raises(PolynomialError):
        RingSpec.of(2, "x x")
    with pytest.raises(PolynomialError):
        RingSpec.of(2, ["x", "1y"])


@pytest.mark.parametrize("text,p,expected", [
    ("x^2 + 2*x*y - y", 3, {(2, 0): 1, (1, 1): 2, (0, 1): 2}),
    ("0", 3, {}),
    ("3*x", 3, {}),
    ("-1", 5, {(0, 0): 4}),
    ("x*x*y^1 - 7", 5, {(2, 1): 1, (0, 0): 3}),
    ("  2 x ", 5, None),
])
def test_parse_examples(text, p, expected):
    R = RingSpec.of(p, "x y")
    if expected is None:
        with pytest.raises(ParseError):
            parse_polynomial(text, R)
    else:
        assert terms_of(parse_polynomial(text, R)) == expected


@pytest.mark.parametrize("text,pos", [("x + ", 4), ("x^0", 2), ("x + w", 4), ("x^", 2), ("(x)", 0)])
def test_parse_errors_report_position(text, pos):
    R = RingSpec.of(3, "x y")
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, R)
    assert info.value.position == pos


def test_freshman_dream_and_identity():
    R = RingSpec.of(2, "x y")
    x, y = R.gens()
    assert (x + y) ** 2 == x ** 2 + y ** 2
    f = R.parse("x^3 + x*y + 1")
    assert f * R.one == f


def test_binomial_cube_mod5_matches_repeated_multiplication():
    R = RingSpec.of(5, "x")
    f = R.parse("x + 1")
    assert f ** 3 == R.parse("x^3 + 3*x^2 + 3*x + 1")
    assert terms_of(f ** 3) == expand_power({(1,): 1, (0,): 1}, 3, 5)


@given(st.data())
def test_power_matches_expansion_oracle(data):
    R = data.draw(rings(max_vars=2))
    f = data.draw(polys(R, max_terms=3, max_degree=3, nonzero=True))
    k = data.draw(st.integers(0, 7))
    assert terms_of(poly_power(f, k)) == (expand_power(terms_of(f), k, R.p) if k else {(0,) * R.nvars: 1})


def test_initial_forms():
    R = RingSpec.of(3, ["x11", "x12", "x21", "x22"])
    d = R.parse("x11*x22 - x12*x21")
    mono, c = initial_form(d, LEX)
    assert mono == Monomial((1, 0, 0, 1)) and c == 1
    R2 = RingSpec.of(3, "x y")
    assert initial_form(R2.parse("x + y^2"), DEGREVLEX)[0] == Monomial((0, 2))
    assert initial_form(R2.parse("2*x*y^3"), LEX) == (Monomial((1, 3)), 2)
    with pytest.raises(PolynomialError):
        initial_form(R2.zero, LEX)


def test_degrevlex_breaks_degree_ties_from_the_last_variable():
    R = RingSpec.of(2, "x y z")
    assert R.parse("x*z + y^2").leading(DEGREVLEX)[0] == Monomial((0, 2, 0))
    assert R.parse("x*z + y^2").leading(LEX)[0] == Monomial((1, 0, 1))


def test_lex_priority_permutation():
    R = RingSpec.of(2, "x y")
    order = lex_order(R, ["y", "x"])
    assert R.parse("x^5 + y").leading(order)[0] == Monomial((0, 1))


def test_ring_mismatch():
    a = RingSpec.of(2, "x y").parse("x")
    b = RingSpec.of(3, "x y").parse("x")
    with pytest.raises(RingMismatchError):
        a + b


def test_exponent_cap():
    R = RingSpec.of(2, "x", max_exponent=10)
    x = R.var("x")
    assert (x ** 10).degree() == 10
    with pytest.raises(ExponentOverflowError):
        x ** 11
    with pytest.raises(ExponentOverflowError):
        (x ** 3).frobenius(4)


@given(st.data())
def test_canonical_form_and_roundtrip(data):
    R = data.draw(rings())
    f = data.draw(polys(R))
    assert not (f + (-f)).packed_terms
    assert R.parse(f.render()) == f


@given(st.data())
def test_frobenius_identity(data):
    R = data.draw(rings(max_vars=2))
    f, g = data.draw(polys(R)), data.draw(polys(R))
    p = R.p
    assert (f + g) ** p == f ** p + g ** p
    assert f ** p == f.frobenius(p)


@given(st.data())
def test_orders_are_multiplicative_with_one_minimal(data):
    R = data.draw(rings())
    order = data.draw(st.sampled_from([DEGREVLEX, LEX, MonomialOrder("degrevlex", block=1)]))
    vec = st.lists(st.integers(0, 6), min_size=R.nvars, max_size=R.nvars)
    a, b, c = (Monomial(tuple(data.draw(vec))) for _ in range(3))
    ka, kb = order.key(R, a), order.key(R, b)
    if ka < kb:
        assert order.key(R, a * c) < order.key(R, b * c)
    assert order.key(R, Monomial((0,) * R.nvars)) <= ka


@given(st.data())
def test_ring_arithmetic_laws(data):
    R = data.draw(rings(max_vars=2))
    f, g, h = (data.draw(polys(R, max_terms=3, max_degree=3)) for _ in range(3))
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


def test_terms_iterate_in_descending_order():
    R = RingSpec.of(5, "x y")
    f = R.parse("y + x^2 + x*y + 1")
    assert [m.exponents for m, _ in f.terms(DEGREVLEX)] == [(2, 0), (1, 1), (0, 1), (0, 0)]
    assert f.render() == "x^2 + x*y + y + 1"
