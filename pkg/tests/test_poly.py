from fractions import Fraction

import pytest

from leibconf.poly import (
    D,
    PARTIAL,
    Poly,
    PolyParseError,
    X1,
    X2,
    param,
    parse_poly,
    poly_to_str,
)


def test_round_trip():
    for s in ["d + 2*x", "-3/2*d^2*x + x2 - 1", "0", "(d+x)^3", "x9", "1/7"]:
        p = parse_poly(s)
        assert parse_poly(poly_to_str(p)) == p


def test_print_parse_print_fixpoint():
    for s in ["d + 2*x", "(d - x)*(d + x)", "-x2^2 + 4", "d*x*x2"]:
        out = poly_to_str(parse_poly(s))
        assert poly_to_str(parse_poly(out)) == out


def test_arithmetic():
    p = D + X1
    assert p * p == D * D + 2 * D * X1 + X1 * X1
    assert (p - p).is_zero()
    assert Poly.const(Fraction(1, 2)) * 2 == Poly.const(1)


def test_subs_composite_is_involution():
    # x1 -> -d - x1 swaps back under a second application
    p = parse_poly("d^2*x + 3*x^2 - d")
    m = {1: -D - X1}
    assert p.subs(m).subs(m) == p


def test_subs_simultaneous():
    p = D * X1
    assert p.subs({PARTIAL: X1, 1: D}) == X1 * D


def test_degree_and_params():
    p = parse_poly("d^3*x2 + x")
    assert p.degree(PARTIAL) == 3
    assert p.max_param() == 2
    assert Poly.zero().degree(PARTIAL) == -1


def test_parse_errors_carry_location():
    with pytest.raises(PolyParseError):
        parse_poly("d +")
    with pytest.raises(PolyParseError):
        parse_poly("(d")
    with pytest.raises(PolyParseError):
        parse_poly("q + 1")


def test_param_constants():
    assert param(1) == 1 and Poly.var(param(2)) == X2
