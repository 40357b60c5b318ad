"""Matrices of Laurent polynomials and exact linear algebra.

Rank and span questions are answered over the fraction field of the
polynomial ring without ever forming fractions: elimination clears each
entry below a pivot by cross-multiplying rows, then strips the rational
content and monomial factor of every new row to keep entries small.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Sequence

from .poly import LaurentPoly, P

ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)


class ShapeError(ValueError):
    pass


class PolyMatrix:
    """Immutable rows x cols grid of :class:`LaurentPoly`."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Sequence[Sequence]):
        data = tuple(tuple(P(e) for e in row) for row in entries)
        if not data or not data[0]:
            raise ShapeError("empty matrix")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ShapeError("ragged rows")
        self._data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "PolyMatrix":
        """Matrix sending basis vector j to basis vector perm[j]."""
        n = len(perm)
        return cls([[ONE if perm[j] == i else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence) -> "PolyMatrix":
        n = len(diag)
        return cls([[P(diag[i]) if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[LaurentPoly, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return PolyMatrix([[a - b for a, b in zip(r, s)]
                           for r, s in zip(self._data, other._data)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._data:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def scale(self, c) -> "PolyMatrix":
        c = P(c)
        return PolyMatrix([[c * a for a in r] for r in self._data])

    def apply(self, vec: Sequence) -> list[LaurentPoly]:
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        vec = [P(v) for v in vec]
        return [sum((a * v for a, v in zip(r, vec) if a and v), ZERO) for r in self._data]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(self.column(j)) for j in range(self.cols)])

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "PolyMatrix":
        return PolyMatrix([[fn(a) for a in r] for r in self._data])

    def subs(self, assignment) -> "PolyMatrix":
        return self.map(lambda a: a.subs(assignment))

    def is_upper_triangular(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(min(i, self.cols)))

    def variables(self) -> set[str]:
        out = set()
        for r in self._data:
            for a in r:
                out |= a.variables()
        return out

    def det(self) -> LaurentPoly:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        return _det([list(r) for r in self._data])

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self._data) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({str(self)!r})"

    def to_text(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self._data]


def _det(m: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _normalize(row: list[LaurentPoly]) -> list[LaurentPoly]:
    """Divide a row by a common rational content and monomial factor."""
    nz = [a for a in row if a]
    if not nz:
        return row
    contents = [a.content() for a in nz]
    num = reduce(gcd, (c.numerator for c, _ in contents))
    den = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c, _ in contents))
    low = tuple(min(col) for col in zip(*(lo for _, lo in contents)))
    shift = LaurentPoly({tuple(-e for e in low): Fraction(den, num)}, _trusted=True)
    return [a * shift if a else a for a in row]


def row_echelon(rows: Iterable[Sequence]) -> tuple[int, list[list[LaurentPoly]]]:
    """Fraction-free elimination; returns (rank, echelon rows).

    A pivot is any nonzero polynomial, so the rank is the rank over the
    fraction field.  Every entry remains a (Laurent) polynomial.
    """
    work = [[P(a) for a in r] for r in rows]
    if not work:
        return 0, []
    ncols = len(work[0])
    basis: list[list[LaurentPoly]] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        p = prow[col]
        for i in range(r + 1, len(work)):
            q = work[i][col]
            if not q:
                continue
            work[i] = _normalize([p * a - q * c for a, c in zip(work[i], prow)])
        basis.append(prow)
        r += 1
        if r == len(work):
            break
    return r, basis


def rank_over_fraction_field(m: "PolyMatrix | Sequence[Sequence]") -> tuple[int, list[list[LaurentPoly]]]:
    rows = m.tolist() if isinstance(m, PolyMatrix) else m
    return row_echelon(rows)


def span_membership(v: Sequence, basis: Sequence[Sequence]) -> bool:
    """True iff ``v`` lies in the span of ``basis`` over the fraction field."""
    if not basis:
        return all(not P(a) for a in v)
    base_rank, _ = row_echelon(basis)
    full_rank, _ = row_echelon(list(basis) + [v])
    return full_rank == base_rank


# rational (constant) linear algebra

def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0} over Q, via reduced row echelon form."""
    m = [[Fraction(a) for a in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rows[0]) - len(nullspace(rows))


def normalize_vector(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale so the first nonzero entry is 1 (projective representative)."""
    first = next(a for a in v if a)
    return tuple(Fraction(a) / first for a in v)
