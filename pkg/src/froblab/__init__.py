"""Exact computation of Frobenius roots, F-thresholds and test ideals over F_p."""

from .determinantal import (GenericMatrixSpec, MinorIdealSpec, closed_form_test_ideal,
                            minors_ideal, msv_fpt, verify_main, witness_check)
from .frobenius import FrobeniusBasisIndex, RootDecomposition, decompose, eth_root, root_of_power
from .groebner import BudgetExceeded, budget, is_groebner_basis, record_bases
from .ideals import (Ideal, bracket_power, colon, contains, groebner_basis, ideal_equal,
                     ideal_leq, ideal_power, ideal_product, ideal_sum, normal_form)
from .kernels import BACKEND
from .poly import (DEGREVLEX, LEX, Monomial, MonomialOrder, ParseError, Polynomial,
                   PolynomialError, PrimeField, RingSpec, parse_polynomial)
from .testideal import (StabilizationPolicy, ThresholdEstimate, fpt_bracket,
                        jumping_numbers_on_grid, nu, skoda_check, test_ideal,
                        threshold_estimate)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExceeded", "DEGREVLEX", "FrobeniusBasisIndex", "GenericMatrixSpec",
    "Ideal", "LEX", "MinorIdealSpec", "Monomial", "MonomialOrder", "ParseError",
    "Polynomial", "PolynomialError", "PrimeField", "RingSpec", "RootDecomposition",
    "StabilizationPolicy", "ThresholdEstimate", "bracket_power", "budget",
    "closed_form_test_ideal", "colon", "contains", "decompose", "eth_root",
    "fpt_bracket", "groebner_basis", "ideal_equal", "ideal_leq", "ideal_power",
    "ideal_product", "ideal_sum", "is_groebner_basis", "jumping_numbers_on_grid",
    "minors_ideal", "msv_fpt", "normal_form", "nu", "parse_polynomial",
    "record_bases", "root_of_power", "skoda_check", "test_ideal",
    "threshold_estimate", "verify_main", "witness_check",
]
