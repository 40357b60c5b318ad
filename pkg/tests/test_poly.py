from fractions import Fraction

import pytest

from equicheck.poly import (AlphabetError, DomainError, LaurentPoly, P, ParseError,
                            coefficient_vector, monomials, parse)


def test_round_trip_text():
    p = parse("-3/2*b^2*t^-1 + x*y - 7")
    assert parse(str(p)) == p
    assert p.terms[next(iter(p.terms))] in {Fraction(1), Fraction(-3, 2), Fraction(-7)}


def test_laurent_units():
    assert P("t^-2") * P("t^2") == P(1)
    assert P("3*t^5").is_unit()
    assert not P("b").is_unit()
    assert P("2*t^3").inverse() == P("1/2*t^-3")


def test_negative_exponent_only_on_torus_variables():
    with pytest.raises(DomainError):
        P("x^-1")


def test_non_unit_inverse_rejected():
    with pytest.raises(DomainError):
        P("b").inverse()
    with pytest.raises(DomainError):
        P("1 + t").inverse()


def test_parse_errors():
    for bad in ("x +", "x^", "(x", "2**x"):
        with pytest.raises(ParseError):
            parse(bad)


def test_unknown_variable():
    with pytest.raises((AlphabetError, ParseError)):
        parse("w + 1")


def test_derivative_and_substitution():
    p = P("b^2*t + x")
    assert p.diff("b") == P("2*b*t")
    assert P("t^-1").diff("t") == P("-t^-2")
    assert p.subs({"b": P("b + 1")}) == P("b^2*t + 2*b*t + t + x")
    assert p.evaluate({"b": 2, "t": 1, "x": 0}) == P(4)


def test_coefficient_in_groups_by_exponent():
    parts = P("x^2*t + 3*x*y - y^2*t^-1").coefficient_in(["x", "y"])
    assert parts == {(2, 0): P("t"), (1, 1): P(3), (0, 2): P("-t^-1")}


def test_monomial_basis_and_vectors():
    basis = monomials(["x", "y", "z"], 2)
    assert len(basis) == 6
    vec = coefficient_vector(P("x^2 + 3*y*z"), basis, ["x", "y", "z"])
    assert vec == [P(1), P(0), P(0), P(0), P(3), P(0)]


def test_total_degree_reports_all_degrees():
    assert P("x^2 + y").total_degree(["x", "y"]) == {1, 2}
    assert LaurentPoly.var("z", 3).total_degree(["x", "y", "z"]) == {3}
