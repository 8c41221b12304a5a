import pytest
from hypothesis import given
from hypothesis import strategies as st

from froblab import Ideal, RingSpec, minors_ideal
from froblab.ideals import (bracket_power, colon, format_ideal_text, ideal_equal,
                            ideal_leq, ideal_power, ideal_to_json, normal_form,
                            parse_ideal_text)
from froblab.poly import LEX, PolynomialError, RingMismatchError

from conftest import ideals, polys, rings

GRID = ["x11", "x12", "x21", "x22"]


def test_normal_form_of_determinant_term():
    R = RingSpec.of(3, GRID)
    I = Ideal(R, [R.parse("x11*x22 - x12*x21")])
    f = R.parse("x11*x22")
    # under degrevlex the lead of the determinant is x12*x21, so x11*x22 is already reduced
    assert normal_form(f, I) == f
    assert normal_form(R.parse("x12*x21"), I) == f
    # under lex with x11 first the lead is x11*x22
    assert normal_form(f, I, LEX) == R.parse("x12*x21")


def test_trivial_normal_forms():
    R = RingSpec.of(5, "x y")
    I = Ideal.from_strings(R, ["x^2 - y", "x*y + 1"])
    for g in I.generators:
        assert normal_form(g, I).is_zero()
    J = Ideal.from_strings(R, ["x", "y^2"])
    assert normal_form(R.one, J) == R.one


def test_containment_basics():
    R = RingSpec.of(2, "x y")
    x, xy = Ideal.from_strings(R, ["x"]), Ideal.variables(R)
    assert ideal_leq(x, xy) and not ideal_leq(xy, x)
    assert ideal_equal(xy, xy)
    assert R.var("x") in xy and R.parse("x + 1") not in xy


def test_square_equals_self_product():
    I = minors_ideal(2, 3, 2, 2)
    assert ideal_equal(I ** 2, I * I)
    J = Ideal(I.ring, list(I.generators) + [I.generators[0] + I.generators[1]])
    assert ideal_equal(I ** 2, J * I)
    assert len((J * I).generators) > len((I ** 2).generators)


def test_power_edges():
    R = RingSpec.of(3, "x y")
    I = Ideal.from_strings(R, ["x", "y^2"])
    assert ideal_power(I, 1) is I
    assert ideal_power(I, 0).is_unit()
    with pytest.raises(PolynomialError):
        ideal_power(I, -1)


def test_colon_examples():
    R = RingSpec.of(2, "x y")
    I = Ideal.from_strings(R, ["x*y"])
    assert ideal_equal(colon(I, R.var("x")), Ideal.from_strings(R, ["y"]))
    assert colon(I, R.zero).is_unit()
    J = Ideal.from_strings(R, ["x^2", "x*y"])
    assert ideal_equal(colon(J, R.var("x")), Ideal.variables(R))


@pytest.mark.parametrize("ell", [1, 2])
def test_first_variable_is_nonzerodivisor_mod_minor_powers(ell):
    I = minors_ideal(2, 3, 2, 2) ** ell
    x11 = I.ring.var("x_1_1")
    assert ideal_equal(colon(I, x11), I)


def test_bracket_power_examples():
    R = RingSpec.of(2, "x y")
    m = Ideal.variables(R)
    assert ideal_equal(bracket_power(m, 2), Ideal.from_strings(R, ["x^2", "y^2"]))
    assert bracket_power(m, 1) is m
    R3 = RingSpec.of(3, "x y")
    I = Ideal.from_strings(R3, ["x + y"])
    assert ideal_equal(bracket_power(I, 3), Ideal.from_strings(R3, ["x^3 + y^3"]))
    with pytest.raises(PolynomialError):
        bracket_power(m, 3)


def test_ring_mismatch_is_rejected():
    a = Ideal.variables(RingSpec.of(2, "x y"))
    b = Ideal.variables(RingSpec.of(2, "x z"))
    with pytest.raises(RingMismatchError):
        ideal_leq(a, b)


def test_ideal_file_roundtrip():
    text = "p 3\nvars a,b\n\na^2 - b\n2*a*b\n"
    I = parse_ideal_text(text)
    assert I.ring.variables == ("a", "b") and I.ring.p == 3
    assert format_ideal_text(I) == "p 3\nvars a,b\na^2 + 2*b\n2*a*b\n"
    assert parse_ideal_text(format_ideal_text(I)).generators == I.generators
    d = ideal_to_json(I)
    assert d["vars"] == ["a", "b"] and d["groebner"]
    for bad in ("vars a\np 2\n", "p 4\nvars a\n", "p 2\nvars a\nb\n"):
        with pytest.raises(PolynomialError):
            parse_ideal_text(bad)


@given(st.data())
def test_normal_form_is_idempotent(data):
    I = data.draw(ideals())
    f = data.draw(polys(I.ring))
    h = normal_form(f, I)
    assert normal_form(h, I) == h


@given(st.data())
def test_membership_of_explicit_combinations(data):
    I = data.draw(ideals())
    f = I.ring.zero
    for g in I.generators:
        f = f + data.draw(polys(I.ring, max_terms=2, max_degree=2)) * g
    assert I.contains(f)


@given(st.data())
def test_generating_set_independence(data):
    I = data.draw(ideals(max_gens=2))
    extra = data.draw(polys(I.ring, max_terms=2, max_degree=2)) * I.generators[0]
    J = Ideal(I.ring, list(I.generators) + [extra + I.generators[-1]])
    assert ideal_equal(I, J)
    p = I.ring.p
    assert ideal_equal(bracket_power(I, p), bracket_power(J, p))


@given(st.data())
def test_bracket_power_is_multiplicative(data):
    R = data.draw(rings(primes=(2, 3), max_vars=2))
    I = data.draw(ideals(ring=R, max_gens=2, max_degree=3))
    p = R.p
    assert ideal_equal(bracket_power(bracket_power(I, p), p), bracket_power(I, p * p))
    assert ideal_equal(bracket_power(I, p * p), Ideal(R, [g.frobenius(p * p) for g in I.generators]))


@given(st.data())
def test_colon_soundness(data):
    R = data.draw(rings(max_vars=2))
    I = data.draw(ideals(ring=R, max_gens=2, max_degree=3))
    f = data.draw(polys(R, max_terms=2, max_degree=2, nonzero=True))
    C = colon(I, f)
    assert ideal_leq(Ideal(R, [f * c for c in C.generators]), I)
    assert ideal_leq(I, C)
