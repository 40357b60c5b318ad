"""Randomised algebraic identities for the polynomial and matrix layer."""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from equicheck.matrix import PolyMatrix, rank_over_fraction_field
from equicheck.poly import LaurentPoly

EXAMPLES = 1000
SETTINGS = settings(max_examples=EXAMPLES, deadline=None, derandomize=True,
                    suppress_health_check=list(HealthCheck))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def polys(draw, max_terms=4, laurent=True):
    p = LaurentPoly.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        powers = {"b": draw(st.integers(0, 2)),
                  "t": draw(st.integers(-2 if laurent else 0, 2)),
                  "x": draw(st.integers(0, 2)),
                  "y": draw(st.integers(0, 1))}
        p = p + LaurentPoly.monomial(powers, draw(coeffs))
    return p


@st.composite
def units(draw):
    c = draw(coeffs.filter(bool))
    return LaurentPoly.monomial({"t": draw(st.integers(-2, 2))}, c)


@st.composite
def matrices(draw):
    return PolyMatrix([[draw(polys(max_terms=2)) for _ in range(3)] for _ in range(3)])


@SETTINGS
@given(polys(), polys(), polys())
def ring_axioms(p, q, r):
    zero, one = LaurentPoly.const(0), LaurentPoly.const(1)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p
    assert p - p == zero
    assert p * zero == zero


@SETTINGS
@given(polys(), polys(), polys(laurent=False), polys(laurent=False), units())
def substitution_homomorphism(p, q, bimg, ximg, timg):
    sigma = {"b": bimg, "x": ximg, "t": timg}
    assert (p * q).subs(sigma) == p.subs(sigma) * q.subs(sigma)
    assert (p + q).subs(sigma) == p.subs(sigma) + q.subs(sigma)
    assert (p - q).subs(sigma) == p.subs(sigma) - q.subs(sigma)


@SETTINGS
@given(polys(), polys(), st.sampled_from(["b", "t", "x", "y"]))
def leibniz(p, q, name):
    assert (p * q).diff(name) == p.diff(name) * q + p * q.diff(name)
    assert (p + q).diff(name) == p.diff(name) + q.diff(name)


@SETTINGS
@given(matrices(), st.permutations([0, 1, 2]), units(), polys(max_terms=2),
       st.integers(0, 2), st.integers(0, 2))
def rank_invariances(m, perm, u, f, i, j):
    r = rank_over_fraction_field(m)[0]
    rows = m.tolist()
    assert rank_over_fraction_field(m.transpose())[0] == r
    assert rank_over_fraction_field([rows[k] for k in perm])[0] == r
    scaled = [list(row) for row in rows]
    scaled[i] = [u * a for a in scaled[i]]
    assert rank_over_fraction_field(scaled)[0] == r
    if i != j:
        sheared = [list(row) for row in rows]
        sheared[j] = [a + f * c for a, c in zip(sheared[j], rows[i])]
        assert rank_over_fraction_field(sheared)[0] == r
    # specialising can only lose rank
    point = {"b": Fraction(2), "t": Fraction(3), "x": Fraction(-1), "y": Fraction(5)}
    special = [[a.evaluate(point) for a in row] for row in rows]
    assert rank_over_fraction_field(special)[0] <= r


PROPERTIES = {
    "ring axioms": ring_axioms,
    "substitution homomorphism": substitution_homomorphism,
    "Leibniz rule": leibniz,
    "rank invariances": rank_invariances,
}
