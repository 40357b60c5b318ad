"""Counting solutions (b, t) in Ga x Gm of systems of the shape b = phi(t), f(t) = 0.

Every kernel and stabilizer in this package reduces to that shape: one
condition is linear in ``b`` with a unit coefficient, and after
eliminating ``b`` the rest are Laurent polynomials in ``t``.  The number
of solutions over an algebraically closed field of characteristic zero
is then the number of distinct nonzero roots of their gcd.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .poly import INDEX, LaurentPoly

INFINITE = "infinite"
Order = Union[int, str]


class UnsupportedShape(ValueError):
    """The conditions do not reduce to {b = phi(t), f(t) = 0}."""


def _univariate(p: LaurentPoly) -> list[Fraction]:
    """Coefficients (low to high) of t^-m p, where m is the least t-exponent."""
    ti = INDEX["t"]
    low = min(exp[ti] for exp, _ in p.items())
    high = max(exp[ti] for exp, _ in p.items())
    coeffs = [Fraction(0)] * (high - low + 1)
    for exp, c in p.items():
        coeffs[exp[ti] - low] += c
    return coeffs


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p = p[:-1]
    return p


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _trim(a)
    return q, a


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def distinct_root_count(p: list[Fraction]) -> int:
    p = _trim(p)
    deriv = [i * c for i, c in enumerate(p)][1:]
    g = poly_gcd(p, deriv)
    return (len(p) - 1) - (len(g) - 1 if g else 0)


def count_torus_solutions(b_conditions: Sequence[LaurentPoly],
                          t_conditions: Sequence[LaurentPoly] = ()) -> Order:
    return solve_cyclic(list(b_conditions) + list(t_conditions))


def solve_cyclic(conditions: Sequence[LaurentPoly]) -> Order:
    """Number of (b, t) with t != 0 satisfying all conditions, or INFINITE."""
    conds = [c for c in conditions if c]
    for c in conds:
        if c.variables() - {"b", "t"}:
            raise UnsupportedShape(f"condition {c} involves {c.variables() - {'b', 't'}}")
    b_free = True
    for c in conds:
        parts = c.coefficient_in(["b"])
        if set(parts) <= {(0,), (1,)} and (1,) in parts and parts[(1,)].is_unit():
            phi = -parts.get((0,), LaurentPoly.const(0)) / parts[(1,)]
            conds = [k.subs({"b": phi}) for k in conds]
            conds = [k for k in conds if k]
            b_free = False
            break
    if any("b" in c.variables() for c in conds):
        raise UnsupportedShape("b is not forced to a function of t")
    if not conds:
        return INFINITE
    g = _univariate(conds[0])
    for c in conds[1:]:
        g = poly_gcd(g, _univariate(c))
    roots = distinct_root_count(g)
    if roots and b_free:
        return INFINITE
    return roots
