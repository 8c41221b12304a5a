from fractions import Fraction
from itertools import permutations

import pytest

from froblab import Ideal, StabilizationPolicy
from froblab.determinantal import (GenericMatrixSpec, closed_form_test_ideal, determinant,
                                   minors, minors_ideal, msv_fpt, verify_main, witness_check)
from froblab.ideals import ideal_equal, ideal_leq
from froblab.poly import LEX, PolynomialError
from froblab.testideal import test_ideal as tau


def leibniz_det(M, rows, cols):
    """Determinant by the permutation expansion, for cross-checking."""
    total = M.ring.zero
    for perm in permutations(range(len(cols))):
        inv = sum(1 for i in range(len(perm)) for j in range(i) if perm[j] > perm[i])
        term = M.ring.constant(-1 if inv % 2 else 1)
        for r, k in zip(rows, perm):
            term = term * M.entry(r, cols[k])
        total = total + term
    return total


def test_matrix_naming_and_transpose():
    M = GenericMatrixSpec(2, 3, 5)
    assert M.names == ["x_1_1", "x_1_2", "x_1_3", "x_2_1", "x_2_2", "x_2_3"]
    T = GenericMatrixSpec(3, 2, 5)
    assert (T.m, T.n) == (2, 3)
    with pytest.raises(PolynomialError):
        GenericMatrixSpec(0, 2, 2)


def test_minor_examples():
    I = minors_ideal(1, 1, 1, 2)
    assert [g.render() for g in I.generators] == ["x_1_1"]
    (d,) = minors_ideal(2, 2, 2, 3).generators
    assert d == d.ring.parse("x_1_1*x_2_2 - x_1_2*x_2_1")
    assert len(minors_ideal(2, 3, 2, 2).generators) == 3
    assert len(minors_ideal(3, 4, 2, 5).generators) == 18
    with pytest.raises(PolynomialError):
        minors_ideal(2, 3, 3, 2)


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (3, 4)])
def test_cofactor_matches_leibniz(m, n):
    M = GenericMatrixSpec(m, n, 7)
    rows = tuple(range(m))
    for cols in [tuple(range(m)), tuple(range(n - m, n))]:
        assert determinant(M, rows, cols) == leibniz_det(M, rows, cols)


def hand_min(m, n, t):
    best = None
    for k in range(t):
        v = Fraction((n - k) * (m - k), t - k)
        best = v if best is None or v < best else best
    return best


def test_msv_examples():
    assert msv_fpt(2, 3, 2) == 2
    assert msv_fpt(3, 3, 2) == 4
    assert msv_fpt(2, 4, 1) == 8
    assert msv_fpt(3, 2, 2) == 2
    with pytest.raises(PolynomialError):
        msv_fpt(2, 3, 3)


def test_msv_maximal_minors_and_table():
    for n in range(1, 7):
        for m in range(1, n + 1):
            assert msv_fpt(m, n, m) == n - m + 1
            for t in range(1, m + 1):
                assert msv_fpt(m, n, t) == hand_min(m, n, t)


def test_closed_forms():
    I = minors_ideal(2, 3, 2, 2)
    assert ideal_equal(closed_form_test_ideal(2, 3, 2, 2), I)
    assert ideal_equal(closed_form_test_ideal(2, 3, 2, Fraction(7, 2)), I ** 2)
    assert closed_form_test_ideal(2, 3, 2, Fraction(19, 10)).is_unit()


@pytest.mark.parametrize("lam", [2, Fraction(5, 2), 3])
def test_computed_inside_closed_form_power(lam):
    I = minors_ideal(2, 3, 2, 2)
    res = tau(I, lam, StabilizationPolicy(3, 3))
    assert ideal_leq(res.ideal, I ** (int(lam) - 1))


def test_verify_main_small_cases():
    r = verify_main(1, 2, 2, [0, Fraction(1, 2), 1, Fraction(3, 2), 2])
    assert r.passed and [c.passed for c in r.cells] == [True] * 5
    r = verify_main(2, 2, 3, [Fraction(1, 2), 1, Fraction(3, 2)])
    assert r.passed and r.jumps_found == [1]
    r = verify_main(2, 3, 2, [2])
    assert r.passed and r.cells[0].passed
    d = r.as_dict()
    assert d["cells"][0]["expected"] == "I^1" and "seconds" not in d["cells"][0]


def test_verify_main_flags_budget_skips():
    from froblab.groebner import budget
    with budget(1):
        r = verify_main(2, 3, 3, [Fraction(9, 2)], nu_levels=0)
    assert r.skipped and r.cells[0].as_dict()["result"] == "skip"


@pytest.mark.parametrize("m,n,p", [(1, 3, 2), (2, 2, 3), (2, 3, 2), (3, 3, 3)])
def test_witness(m, n, p):
    rep = witness_check(m, n, p, 1)
    assert rep.passed, rep.checks


def test_witness_details():
    rep = witness_check(2, 3, 2, 1)
    assert rep.as_dict()["eta"] == "x_1_1*x_1_2*x_2_2*x_2_3"
    rep = witness_check(2, 2, 3, 1)
    assert rep.as_dict()["eta"] == "x_1_1^2*x_2_2^2"
    # the lex-leading term of the squared determinant, expanded independently
    d = minors_ideal(2, 2, 2, 3).generators[0]
    assert (d * d).leading(LEX)[0] == rep.eta
    rep = witness_check(1, 4, 3, 1)
    delta = rep.deltas[0].ring.one
    for dl in rep.deltas:
        delta = delta * dl ** 2
    assert len(delta) == 1 and rep.passed
