from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quivercoha import (ColoredPoly, DimensionMismatchError, DivisibilityError,
                        DomainError, exact_divide, parse_colored_poly)


def v(gamma, vertex, slot):
    return ColoredPoly.variable(gamma, vertex, slot)


@st.composite
def small_polys(draw, gamma=(2,)):
    nvars = sum(gamma)
    nterms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(nvars))
        coeff = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        terms[exps] = terms.get(exps, 0) + coeff
    return ColoredPoly(gamma, terms)


# -- arithmetic examples -------------------------------------------------------

def test_add_cancels():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    assert (x1 + x2) + (-x1 - x2) == ColoredPoly.zero(g)


def test_mul_difference_of_squares():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    assert (x1 - x2) * (x1 + x2) == x1 * x1 - x2 * x2


def test_substitution_swaps_variables():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    p = x1 * x1 * x2
    assert p.reindex(g, (1, 0)) == x2 * x2 * x1


def test_substitution_must_be_injective():
    g = (2,)
    with pytest.raises(DomainError):
        (v(g, 0, 1) + v(g, 0, 2)).reindex(g, (0, 0))


def test_add_rejects_mismatched_variable_sets():
    with pytest.raises(DimensionMismatchError):
        v((2,), 0, 1) + v((1, 1), 0, 1)


# -- exact division --------------------------------------------------------------

def test_exact_divide_difference_of_squares():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    q = exact_divide(x1 * x1 - x2 * x2, x1 - x2)
    assert q == x1 + x2


def test_exact_divide_reports_failure_with_remainder():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    with pytest.raises(DivisibilityError) as exc:
        exact_divide(x1 * x2, x1 - x2)
    assert exc.value.remainder is not None
    assert not exc.value.remainder.is_zero()


def test_exact_divide_zero_numerator():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    assert exact_divide(ColoredPoly.zero(g), x1 - x2) == ColoredPoly.zero(g)


def test_exact_divide_rejects_zero_divisor():
    g = (1,)
    with pytest.raises(DomainError):
        exact_divide(v(g, 0, 1), ColoredPoly.zero(g))


def test_exact_divide_rational_lead():
    g = (1,)
    x = v(g, 0, 1)
    q = exact_divide(x * x, x * Fraction(2, 3))
    assert q == x * Fraction(3, 2)


# -- ring axioms -----------------------------------------------------------------

@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(small_polys(), small_polys())
def test_divide_undoes_multiplication(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


# -- structure helpers -------------------------------------------------------------

def test_block_symmetry_detection():
    g = (2, 1)
    x1, x2, y = v(g, 0, 1), v(g, 0, 2), v(g, 1, 1)
    assert (x1 + x2).is_block_symmetric()
    assert (x1 * x2 * y).is_block_symmetric()
    assert not (x1 + y).is_block_symmetric()
    assert not (x1 * x1 * x2).is_block_symmetric()


def test_homogeneous_components():
    g = (1,)
    x = v(g, 0, 1)
    p = x * x + x + 2
    comps = p.homogeneous_components()
    assert sorted(comps) == [0, 1, 2]
    assert comps[2] == x * x
    assert sum(comps.values(), ColoredPoly.zero(g)) == p


def test_degree_and_zero_poly():
    g = (1,)
    x = v(g, 0, 1)
    assert (x * x * x).degree() == 3
    assert ColoredPoly.zero(g).degree() is None
    assert ColoredPoly.zero(g).is_homogeneous()


# -- rendering and parsing ----------------------------------------------------------

def test_canonical_str_golden():
    g = (2,)
    x1, x2 = v(g, 0, 1), v(g, 0, 2)
    p = x1 * x1 - 2 * x1 * x2 + x2 * Fraction(3, 2)
    assert p.canonical_str() == "x0_1^2 - 2*x0_1*x0_2 + 3/2*x0_2"
    assert ColoredPoly.zero(g).canonical_str() == "0"
    assert ColoredPoly.constant(g, -1).canonical_str() == "-1"


@given(small_polys())
def test_parse_roundtrip(p):
    assert parse_colored_poly(p.gamma, p.canonical_str()) == p


def test_parse_two_color_expression():
    g = (2, 1)
    p = parse_colored_poly(g, "x0_1*x1_1 - x0_2^2 + 1/3")
    assert p.coefficient((1, 0, 1)) == 1
    assert p.coefficient((0, 2, 0)) == -1
    assert p.coefficient((0, 0, 0)) == Fraction(1, 3)


def test_parse_bare_x_single_variable_only():
    assert parse_colored_poly((1,), "x") == v((1,), 0, 1)
    with pytest.raises(DomainError):
        parse_colored_poly((2,), "x")
