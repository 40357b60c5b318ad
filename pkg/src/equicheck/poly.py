"""Exact sparse Laurent polynomials over the rationals.

Every polynomial lives over one fixed alphabet of variables.  Only ``t``,
``t'`` and the formal root of unity ``zeta`` may carry negative exponents.
Terms are stored as a map from dense exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, which makes equality a plain
dictionary comparison.

The text syntax is the usual one::

    -3/2*b^2*t^-1 + x*y - 7
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

VARIABLES: tuple[str, ...] = (
    "b", "b'", "t", "t'", "x", "y", "z", "eps", "zeta",
    "x0", "x1", "x2", "x3", "x4", "x5",
)
LAURENT_VARIABLES = frozenset({"t", "t'", "zeta"})

INDEX = {name: i for i, name in enumerate(VARIABLES)}
NVARS = len(VARIABLES)
_LAURENT_IDX = frozenset(INDEX[v] for v in LAURENT_VARIABLES)
ZERO_EXP = (0,) * NVARS


class AlphabetError(ValueError):
    """Unknown variable, or a negative exponent on a non-Laurent variable."""


class DomainError(ValueError):
    """An operation left the ring (e.g. inverting a non-unit)."""


Coefficient = Union[int, Fraction]


def _check_exponent(exp: tuple[int, ...]) -> None:
    for i, e in enumerate(exp):
        if e < 0 and i not in _LAURENT_IDX:
            raise AlphabetError(f"negative exponent on {VARIABLES[i]}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Coefficient] | None = None,
                 _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            clean: dict[tuple[int, ...], Fraction] = {}
            for exp, c in (terms or {}).items():
                exp = tuple(exp)
                if len(exp) != NVARS:
                    raise AlphabetError(f"exponent vector of length {len(exp)}")
                _check_exponent(exp)
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
            self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: Coefficient) -> "LaurentPoly":
        c = Fraction(c)
        return cls({ZERO_EXP: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        if name not in INDEX:
            raise AlphabetError(f"unknown variable {name!r}")
        exp = [0] * NVARS
        exp[INDEX[name]] = power
        exp = tuple(exp)
        _check_exponent(exp)
        return cls({exp: Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, powers: Mapping[str, int], c: Coefficient = 1) -> "LaurentPoly":
        exp = [0] * NVARS
        for name, p in powers.items():
            if name not in INDEX:
                raise AlphabetError(f"unknown variable {name!r}")
            exp[INDEX[name]] += p
        return cls({tuple(exp): c})

    # basic accessors

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return self._terms.get(ZERO_EXP, Fraction(0))

    def is_unit(self) -> bool:
        """A nonzero rational times a monomial in the Laurent variables only."""
        if len(self._terms) != 1:
            return False
        (exp,) = self._terms
        return all(e == 0 or i in _LAURENT_IDX for i, e in enumerate(exp))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        used = set()
        for exp in self._terms:
            used.update(VARIABLES[i] for i, e in enumerate(exp) if e)
        return used

    def degree(self, name: str) -> int:
        i = INDEX[name]
        return max((exp[i] for exp in self._terms), default=0)

    def min_degree(self, name: str) -> int:
        i = INDEX[name]
        return min((exp[i] for exp in self._terms), default=0)

    def total_degree(self, names: Iterable[str]) -> set[int]:
        idx = [INDEX[n] for n in names]
        return {sum(exp[i] for i in idx) for exp in self._terms}

    # arithmetic

    @staticmethod
    def _lift(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp)
            if s is None:
                out[exp] = c
            else:
                s += c
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly({}, _trusted=True)
            return LaurentPoly({e: c * other for e, c in self._terms.items()}, _trusted=True)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return LaurentPoly({e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise DomainError(f"{self} is not a unit")
        ((exp, c),) = self._terms.items()
        return LaurentPoly({tuple(-e for e in exp): 1 / c}, _trusted=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and substitution

    def diff(self, name: str) -> "LaurentPoly":
        i = INDEX[name]
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return LaurentPoly(out, _trusted=True)

    def subs(self, assignment: Mapping[str, "LaurentPoly | Coefficient"]) -> "LaurentPoly":
        """Ring homomorphism sending each named variable to a polynomial."""
        images = {}
        for name, val in assignment.items():
            if name not in INDEX:
                raise AlphabetError(f"unknown variable {name!r}")
            images[INDEX[name]] = self._lift(val)
        if not images:
            return self
        powers: dict[tuple[int, int], LaurentPoly] = {}

        def power(i: int, e: int) -> LaurentPoly:
            key = (i, e)
            if key not in powers:
                img = images[i]
                if e < 0 and not img.is_unit():
                    raise DomainError(
                        f"{VARIABLES[i]}^{e} needs a unit image, got {img}")
                powers[key] = img ** e
            return powers[key]

        total = LaurentPoly({}, _trusted=True)
        for exp, c in self._terms.items():
            rest = list(exp)
            term = None
            for i in images:
                if exp[i]:
                    rest[i] = 0
                    p = power(i, exp[i])
                    term = p if term is None else term * p
            mono = LaurentPoly({tuple(rest): c}, _trusted=True)
            total = total + (mono if term is None else mono * term)
        return total

    def evaluate(self, values: Mapping[str, Coefficient]) -> "LaurentPoly":
        return self.subs({k: LaurentPoly.const(v) for k, v in values.items()})

    def coefficient_in(self, names: Sequence[str]) -> dict[tuple[int, ...], "LaurentPoly"]:
        """Split as a polynomial in ``names`` with coefficients in the rest."""
        idx = [INDEX[n] for n in names]
        out: dict[tuple[int, ...], dict] = {}
        for exp, c in self._terms.items():
            key = tuple(exp[i] for i in idx)
            rest = list(exp)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: LaurentPoly(v, _trusted=True) for k, v in out.items()}

    def content(self) -> tuple[Fraction, tuple[int, ...]]:
        """Positive rational content and the minimal exponent vector."""
        if not self._terms:
            return Fraction(0), ZERO_EXP
        nums = reduce(gcd, (c.numerator for c in self._terms.values()))
        dens = reduce(lambda a, b: a * b // gcd(a, b),
                      (c.denominator for c in self._terms.values()))
        low = tuple(min(col) for col in zip(*self._terms))
        return Fraction(abs(nums), dens), low

    def primitive(self) -> "LaurentPoly":
        """Divide out rational content and the largest monomial factor.

        Exponents of non-Laurent variables stay nonnegative since the
        minimum over the support is itself nonnegative.
        """
        if not self._terms:
            return self
        c, low = self.content()
        lead = self.sorted_terms()[0][1]
        if lead < 0:
            c = -c
        return LaurentPoly(
            {tuple(a - b for a, b in zip(e, low)): v / c for e, v in self._terms.items()},
            _trusted=True)

    # ordering and printing

    @staticmethod
    def _order_key(exp: tuple[int, ...]):
        return (sum(exp), exp)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: self._order_key(kv[0]),
                      reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, (exp, c) in enumerate(self.sorted_terms()):
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e:
                    factors.append(f"{VARIABLES[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def P(text: "str | int | Fraction | LaurentPoly") -> LaurentPoly:
    """Shorthand: parse text, or lift a number."""
    if isinstance(text, LaurentPoly):
        return text
    if isinstance(text, (int, Fraction)):
        return LaurentPoly.const(text)
    return parse(text)


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*'?)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        elif sym is not None and not sym.isspace():
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, sym):
        kind, val = self.take()
        if val != sym:
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def expr(self) -> LaurentPoly:
        kind, val = self.peek()
        sign = 1
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "*/":
                self.take()
                f = self.factor()
                if val == "*":
                    acc = acc * f
                else:
                    if not f.is_constant() or not f:
                        raise ParseError("division only by nonzero constants")
                    acc = acc / f.constant_value()
            else:
                return acc

    def _int(self) -> int:
        kind, val = self.take()
        sign = 1
        if kind == "sym" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val = self.take()
        if kind == "sym" and val == "(":
            v = self._int()
            self.expect(")")
            return sign * v
        if kind != "num":
            raise ParseError(f"expected integer exponent in {self.text!r}")
        return sign * int(val)

    def factor(self) -> LaurentPoly:
        kind, val = self.take()
        if kind == "num":
            base = LaurentPoly.const(int(val))
        elif kind == "var":
            if val not in INDEX:
                raise AlphabetError(f"unknown variable {val!r}")
            base = LaurentPoly.var(val)
        elif kind == "sym" and val == "(":
            base = self.expr()
            self.expect(")")
        elif kind == "sym" and val == "-":
            return -self.factor()
        else:
            raise ParseError(f"unexpected token {val!r} in {self.text!r}")
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            base = base ** self._int()
        return base


def parse(text: str) -> LaurentPoly:
    parser = _Parser(text)
    result = parser.expr()
    if parser.pos != len(parser.tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result


# ring operation front door

def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if not isinstance(p, LaurentPoly) or not isinstance(q, LaurentPoly):
        raise AlphabetError("operands must share the LaurentPoly alphabet")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def substitute(p: LaurentPoly, assignment: Mapping[str, LaurentPoly]) -> LaurentPoly:
    return p.subs(assignment)


def differentiate(p: LaurentPoly, name: str) -> LaurentPoly:
    return p.diff(name)


# monomial bases

def monomials(names: Sequence[str], degree: int) -> list[LaurentPoly]:
    """All monomials of the given degree, in descending lex order."""
    out = []

    def rec(i, left, acc):
        if i == len(names) - 1:
            out.append(acc * LaurentPoly.var(names[i], left))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc * LaurentPoly.var(names[i], e))

    rec(0, degree, LaurentPoly.const(1))
    return out


def coefficient_vector(form: LaurentPoly, basis: Sequence[LaurentPoly],
                       names: Sequence[str]) -> list[LaurentPoly]:
    """Coordinates of ``form`` against a monomial basis in ``names``.

    Coefficients may be polynomials in the remaining variables.  Raises
    if ``form`` has a monomial outside the basis.
    """
    pos = {}
    for j, m in enumerate(basis):
        ((exp, _),) = m.items()
        pos[tuple(exp[INDEX[n]] for n in names)] = j
    vec = [LaurentPoly.const(0)] * len(basis)
    for key, coeff in form.coefficient_in(names).items():
        if key not in pos:
            raise DomainError(f"monomial {key} of {form} outside the basis")
        vec[pos[key]] = coeff
    return vec
