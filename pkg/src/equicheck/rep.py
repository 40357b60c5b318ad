"""Matrix families G_d -> GL_n and the invariants used to tell them apart.

A family is a matrix whose entries are Laurent polynomials in ``b`` and
``t``; evaluating at a group element means substituting its components.
On the plane the coordinates are ``x, y, z`` and a family acts on column
vectors.  Forms are transformed by precomposition, f -> f o M(g).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .group import GENERIC, GENERIC2, GroupAutomorphism, GroupElement, group_mul
from .matrix import ZERO, PolyMatrix, nullspace, normalize_vector, rational_rank
from .poly import DomainError, LaurentPoly, P, coefficient_vector, monomials
from .solve import INFINITE, Order, UnsupportedShape, solve_cyclic

COORDS = ("x", "y", "z")
B, T = P("b"), P("t")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    """A candidate representation (b, t) -> matrix for the group G_d."""

    d: int
    matrix: PolyMatrix
    name: str = ""

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise FamilyError("family matrix must be square")
        extra = self.matrix.variables() - {"b", "t"}
        if extra:
            raise FamilyError(f"entries use variables outside b, t: {sorted(extra)}")
        if not self.matrix.det().is_unit():
            raise FamilyError(f"determinant {self.matrix.det()} is not a unit")

    @property
    def size(self) -> int:
        return self.matrix.rows

    def at(self, g: GroupElement) -> PolyMatrix:
        return self.matrix.subs({"b": g.b, "t": g.t})

    def with_automorphism(self, aut: GroupAutomorphism) -> "Family":
        """The family g -> M(aut(g))."""
        return Family(aut.d, self.matrix.subs(aut.substitution()), self.name)

    def conjugate(self, change: PolyMatrix, inverse: PolyMatrix) -> "Family":
        return Family(self.d, change @ self.matrix @ inverse, self.name)

    def __str__(self):
        return self.name or str(self.matrix)


# normal forms and the two named families

@dataclass(frozen=True)
class NormalFormParams:
    d: int
    k1: int
    k2: int
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.a1 or self.a2 or self.a3):
            raise ValueError("alpha coefficients must not all vanish")

    @property
    def alphas(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3)

    @property
    def pattern(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, a in enumerate(self.alphas) if a)

    def as_dict(self) -> dict:
        return {"d": self.d, "k1": self.k1, "k2": self.k2,
                "alpha": [str(a) for a in self.alphas]}


def exp_nilpotent(a1, a2, a3) -> PolyMatrix:
    """exp of b times the strictly upper triangular matrix (a1, a2; a3)."""
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    if not (a1 or a2 or a3):
        raise ValueError("alpha coefficients must not all vanish")
    m = PolyMatrix([[1, B * a1, B * a2 + B * B * (a1 * a3 / 2)],
                    [0, 1, B * a3],
                    [0, 0, 1]])
    shifted = m.subs({"b": P("b + b'")})
    if m @ m.subs({"b": P("b'")}) != shifted:
        raise AssertionError("exponential fails f(b) f(b') = f(b + b')")
    return m


def make_normal_form(p: NormalFormParams) -> Family:
    a1, a2, a3 = p.alphas
    m = PolyMatrix([[T ** p.k1, B * (T ** p.k2) * a1, B * a2 + B * B * (a1 * a3 / 2)],
                    [0, T ** p.k2, B * a3],
                    [0, 0, 1]])
    return Family(p.d, m, f"N(d={p.d},k1={p.k1},k2={p.k2},a={a1},{a2},{a3})")


def make_tau(d: int, k: int) -> Family:
    if k == 0:
        raise ValueError("tau_{d,k} needs k != 0")
    m = PolyMatrix([[T ** k, 0, 0], [0, T ** d, B], [0, 0, 1]])
    return Family(d, m, f"tau({d},{k})")


def make_rho(d: int) -> Family:
    if d == 0:
        raise ValueError("rho_d needs d != 0")
    m = PolyMatrix([[T ** (2 * d), B * T ** d, B * B / 2], [0, T ** d, B], [0, 0, 1]])
    return Family(d, m, f"rho({d})")


# homomorphism checks

@dataclass
class HomCheck:
    passed: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def proportional(a: PolyMatrix, b: PolyMatrix) -> bool:
    """Whether a = lambda * b for some nonzero Laurent polynomial lambda."""
    if a.shape != b.shape:
        return False
    pos = next(((i, j) for i in range(b.rows) for j in range(b.cols) if b[i, j]), None)
    if pos is None:
        return False
    if not a[pos]:
        return False
    return a.scale(b[pos]) == b.scale(a[pos])


def check_homomorphism(fam: Family, projective: bool = False) -> HomCheck:
    """M(g) M(h) = M(g h) for generic g = (b, t), h = (b', t')."""
    lhs = fam.at(GENERIC) @ fam.at(GENERIC2)
    rhs = fam.at(group_mul(fam.d, GENERIC, GENERIC2))
    if lhs == rhs:
        return HomCheck(True)
    if projective and proportional(lhs, rhs):
        return HomCheck(True)
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            if lhs[i, j] != rhs[i, j]:
                return HomCheck(False, (i, j, str(lhs[i, j]), str(rhs[i, j])))
    return HomCheck(False)


def check_lemma32_conditions(p: NormalFormParams) -> bool:
    """The four bullet conditions on a normal form.

    When d = k1 = k2 = 0 the torus acts trivially and the matrix is
    exp(b N) for any nilpotent N, so alpha1 alpha2 alpha3 = 0 is only a
    choice of normal form there and is not imposed.
    """
    a1, a2, a3 = p.alphas
    forced_zero = p.d == p.k1 == p.k2 == 0
    return ((not a1 or p.k1 == p.k2 + p.d)
            and (not a2 or p.k1 == p.d)
            and (not a3 or p.k2 == p.d)
            and (forced_zero or not (a1 and a2 and a3)))


# kernel and stabilizers

def kernel_order(fam: Family) -> Order:
    """Order of {(b, t) : M(b, t) is scalar}."""
    m = fam.matrix
    n = fam.size
    conds = [m[i, j] for i in range(n) for j in range(n) if i != j]
    conds += [m[i, i] - m[0, 0] for i in range(1, n)]
    return solve_cyclic(conds)


def _collinearity_conditions(v: Sequence[LaurentPoly], p: Sequence) -> list[LaurentPoly]:
    p = [P(c) for c in p]
    return [v[i] * p[j] - v[j] * p[i] for i, j in combinations(range(len(p)), 2)]


def orbit_tangents(fam: Family, point: Sequence) -> tuple[list[LaurentPoly], list[LaurentPoly]]:
    """Derivatives of g -> M(g) p at the identity along b and along t."""
    point = [P(c) for c in point]
    vb = fam.matrix.subs({"t": 1}).map(lambda a: a.diff("b")).subs({"b": 0}).apply(point)
    vt = fam.matrix.subs({"b": 0}).map(lambda a: a.diff("t")).subs({"t": 1}).apply(point)
    return vb, vt


def orbit_rank_at(fam: Family, point: Sequence) -> int:
    """Rank of (p, d_b p, d_t p); 3 means the orbit through p is 2-dimensional."""
    vb, vt = orbit_tangents(fam, point)
    rows = [[P(c).constant_value() for c in row] for row in ([P(c) for c in point], vb, vt)]
    return rational_rank(rows)


def transitivity_determinant(fam: Family) -> LaurentPoly:
    if fam.size != 3:
        raise FamilyError("orbit determinant is defined on the plane only")
    p = [P(c) for c in COORDS]
    vb, vt = orbit_tangents(fam, p)
    return PolyMatrix([p, vb, vt]).det()


def is_generically_transitive(fam: Family) -> bool:
    return not transitivity_determinant(fam).is_zero()


def stabilizer_order(fam: Family, point: Sequence | None = None) -> Order:
    """Order of the stabilizer of a point of the open orbit."""
    if point is None:
        point = (1,) * fam.size
    if orbit_rank_at(fam, point) < 3:
        raise DomainError(f"point {tuple(point)} is not in the open orbit")
    v = fam.matrix.apply(point)
    return solve_cyclic(_collinearity_conditions(v, point))


# common eigenvectors, fixed loci and semi-invariants

def coefficient_matrices(m: PolyMatrix) -> dict[tuple, list[list[Fraction]]]:
    """Split M(b, t) = sum over monomials mu of mu * C_mu with C_mu rational."""
    out: dict[tuple, list[list[Fraction]]] = {}
    for i in range(m.rows):
        for j in range(m.cols):
            for key, c in m[i, j].coefficient_in(["b", "t"]).items():
                mat = out.setdefault(key, [[Fraction(0)] * m.cols for _ in range(m.rows)])
                mat[i][j] = c.constant_value()
    return out


def _rational_roots(coeffs: list[Fraction]) -> dict[Fraction, int]:
    """Rational roots with multiplicity of sum coeffs[i] eps^i."""
    from .solve import _divmod, _trim
    from math import lcm
    p = _trim(list(coeffs))
    roots: dict[Fraction, int] = {}
    while p and not p[0]:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    if len(p) <= 1:
        return roots
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]

    def divisors(n):
        n = abs(n)
        return [k for k in range(1, n + 1) if n % k == 0]

    cands = {Fraction(s * a, b) for a in divisors(ints[0]) for b in divisors(ints[-1])
             for s in (1, -1)}
    for r in sorted(cands):
        while len(p) > 1:
            val = sum(c * r ** i for i, c in enumerate(p))
            if val:
                break
            roots[r] = roots.get(r, 0) + 1
            p, _ = _divmod(p, [-r, Fraction(1)])
            p = _trim(p)
    return roots


def eigenvalues(mat: list[list[Fraction]]) -> list[Fraction]:
    n = len(mat)
    lam = P("eps")
    charm = PolyMatrix([[P(mat[i][j]) - (lam if i == j else 0) for j in range(n)]
                        for i in range(n)])
    chi = charm.det()
    coeffs = [Fraction(0)] * (n + 1)
    for key, c in chi.coefficient_in(["eps"]).items():
        coeffs[key[0]] = c.constant_value()
    roots = _rational_roots(coeffs)
    if sum(roots.values()) != n:
        raise UnsupportedShape("matrix has eigenvalues outside the rationals")
    return sorted(roots)


def _matvec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def common_eigenspaces(mats: Sequence[list[list[Fraction]]], n: int) -> list[list[list[Fraction]]]:
    """Maximal subspaces on which every matrix acts by a scalar."""
    spaces = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    for mat in mats:
        lams = eigenvalues(mat)
        refined = []
        for basis in spaces:
            # columns of basis span W; solve (mat - lam) B c = 0
            for lam in lams:
                rows = []
                images = [[a - lam * b for a, b in zip(_matvec(mat, v), v)] for v in basis]
                for i in range(n):
                    rows.append([img[i] for img in images])
                sols = nullspace(rows, len(basis))
                if sols:
                    refined.append([[sum(c * v[i] for c, v in zip(sol, basis)) for i in range(n)]
                                    for sol in sols])
        spaces = refined
    return spaces


def _coords_text(v) -> str:
    return "(" + ":".join(str(c) for c in v) + ")"


@dataclass
class FixedLocus:
    points: list[tuple[Fraction, ...]]
    lines: list[tuple[Fraction, ...]]
    subspaces: list[list[tuple[Fraction, ...]]] = field(default_factory=list)

    def profile(self) -> tuple[int, int]:
        return len(self.points), len(self.lines)

    def as_dict(self) -> dict:
        return {"points": [_coords_text(p) for p in self.points],
                "lines": [form_text(l) for l in self.lines]}


def form_text(coeffs: Sequence[Fraction], names: Sequence[str] = COORDS) -> str:
    return str(sum((P(c) * P(n) for c, n in zip(coeffs, names)), ZERO))


def is_fixed_point(fam: Family, point: Sequence) -> bool:
    v = fam.matrix.apply(point)
    return all(not c for c in _collinearity_conditions(v, point))


def fixed_locus(fam: Family) -> FixedLocus:
    """All points fixed by the whole family, plus pointwise fixed lines."""
    n = fam.size
    spaces = common_eigenspaces(list(coefficient_matrices(fam.matrix).values()), n)
    points, lines, subspaces = [], [], []
    for basis in spaces:
        basis = [normalize_vector(v) for v in basis]
        if len(basis) == 1:
            points.append(basis[0])
        else:
            subspaces.append(basis)
            if n == 3 and len(basis) == 2:
                (form,) = nullspace(basis, 3)
                lines.append(normalize_vector(form))
        # each vector of the eigenspace must be fixed, including sums
        for v in basis + ([tuple(a + b for a, b in zip(basis[0], basis[1]))] if len(basis) > 1 else []):
            if not is_fixed_point(fam, v):
                raise AssertionError(f"{_coords_text(v)} failed the fixed-point check")
    points.sort(reverse=True)
    lines.sort(reverse=True)
    return FixedLocus(points, lines, subspaces)


def act_on_form(m: PolyMatrix, form: LaurentPoly, names: Sequence[str] = COORDS) -> LaurentPoly:
    """Precompose: f(x) -> f(M x)."""
    vars_ = [P(v) for v in names]
    images = m.apply(vars_)
    return form.subs(dict(zip(names, images)))


def induced_action_on_forms(fam: Family, degree: int) -> PolyMatrix:
    """Matrix of f -> f o M on the degree-m monomial basis (columns are images)."""
    basis = monomials(COORDS, degree)
    cols = [coefficient_vector(act_on_form(fam.matrix, mono), basis, COORDS) for mono in basis]
    return PolyMatrix([[cols[j][i] for j in range(len(basis))] for i in range(len(basis))])


@dataclass(frozen=True)
class LinearSeries:
    degree: int
    forms: tuple[LaurentPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(P(f) for f in self.forms))
        for f in self.forms:
            if f.total_degree(COORDS) != {self.degree} or f.variables() - set(COORDS):
                raise ValueError(f"{f} is not a form of degree {self.degree} in x, y, z")
        from .matrix import row_echelon
        if row_echelon(self.vectors())[0] != len(self.forms):
            raise ValueError("forms of a linear series must be independent")

    def basis(self) -> list[LaurentPoly]:
        return monomials(COORDS, self.degree)

    def vectors(self) -> list[list[LaurentPoly]]:
        basis = self.basis()
        return [coefficient_vector(f, basis, COORDS) for f in self.forms]


def is_series_invariant(m: "Family | PolyMatrix", series: LinearSeries) -> bool:
    from .matrix import span_membership
    mat = m.matrix if isinstance(m, Family) else m
    basis = series.basis()
    vecs = series.vectors()
    for f in series.forms:
        image = coefficient_vector(act_on_form(mat, f), basis, COORDS)
        if not span_membership(image, vecs):
            return False
    return True


@dataclass
class BoundaryProfile:
    lines: list[tuple[Fraction, ...]]
    conics: list[tuple[Fraction, ...]]
    pencils: list[dict]

    @property
    def degrees(self) -> list[int]:
        return sorted([1] * len(self.lines) + [2] * len(self.conics))

    def forms(self) -> list[str]:
        return ([form_text(l) for l in self.lines]
                + [form_text(c, [str(m) for m in monomials(COORDS, 2)]) for c in self.conics])

    def as_dict(self) -> dict:
        return {"degrees": self.degrees, "forms": self.forms(), "pencils": self.pencils}


def semi_invariant_spaces(fam: Family, degree: int) -> list[list[tuple[Fraction, ...]]]:
    action = induced_action_on_forms(fam, degree)
    n = action.rows
    spaces = common_eigenspaces(list(coefficient_matrices(action).values()), n)
    return [[normalize_vector(v) for v in basis] for basis in spaces]


def _product_vector(l1, l2) -> tuple[Fraction, ...]:
    f = form_text  # noqa: F841 - keeps the name local for readability
    p1 = sum((P(c) * P(v) for c, v in zip(l1, COORDS)), ZERO)
    p2 = sum((P(c) * P(v) for c, v in zip(l2, COORDS)), ZERO)
    basis = monomials(COORDS, 2)
    return tuple(c.constant_value() for c in coefficient_vector(p1 * p2, basis, COORDS))


def boundary_profile(fam: Family) -> BoundaryProfile:
    """Semi-invariant lines and conics, conics that factor into lines removed."""
    lines, conics, pencils = [], [], []
    for basis in semi_invariant_spaces(fam, 1):
        if len(basis) == 1:
            lines.append(basis[0])
        else:
            pencils.append({"degree": 1, "basis": [form_text(v) for v in basis]})
    line_space = [v for basis in semi_invariant_spaces(fam, 1) for v in basis]
    products = [_product_vector(a, b) for a, b in
                combinations(line_space, 2)] + [_product_vector(a, a) for a in line_space]
    for basis in semi_invariant_spaces(fam, 2):
        if all(rational_rank(products + [v]) == rational_rank(products) for v in basis) \
                and products:
            continue
        if len(basis) == 1:
            conics.append(basis[0])
        else:
            names = [str(m) for m in monomials(COORDS, 2)]
            pencils.append({"degree": 2, "basis": [form_text(v, names) for v in basis]})
    return BoundaryProfile(sorted(lines, reverse=True), conics, pencils)


def torus_weights(fam: Family) -> list[int]:
    diag = fam.matrix.subs({"b": 0})
    weights = []
    for i in range(fam.size):
        for j in range(fam.size):
            if i != j and diag[i, j]:
                raise UnsupportedShape("torus (0, t) does not act diagonally")
        entry = diag[i, i]
        if not entry.is_unit() or entry.variables() - {"t"}:
            raise UnsupportedShape(f"diagonal entry {entry} is not a power of t")
        weights.append(entry.degree("t"))
    return weights


def line_weights(fam: Family, boundary: BoundaryProfile | None = None,
                 locus: FixedLocus | None = None) -> tuple[int, int]:
    """Torus weights on the boundary line carrying the most fixed points.

    Weights are taken relative to the weight of the line's own equation,
    which removes the scalar ambiguity of the lift to GL_3.
    """
    boundary = boundary or boundary_profile(fam)
    locus = locus or fixed_locus(fam)
    w = torus_weights(fam)
    candidates = []
    for line in boundary.lines:
        support = {w[i] for i, c in enumerate(line) if c}
        if len(support) != 1:
            raise UnsupportedShape("boundary line is not a torus eigenvector")
        (c,) = support
        rest = list(w)
        rest.remove(c)
        weights = tuple(sorted(x - c for x in rest))
        on_line = sum(1 for p in locus.points if sum(a * b for a, b in zip(line, p)) == 0)
        pointwise = 1 if any(normalize_vector(l) == line for l in locus.lines) else 0
        candidates.append(((-pointwise, -on_line, weights), weights))
    if not candidates:
        raise UnsupportedShape("no invariant boundary line")
    return min(candidates)[1]


@dataclass(frozen=True)
class ActionFingerprint:
    stabilizer_order: Order
    kernel_order: Order
    boundary_profile: tuple[int, ...]
    fixed_profile: tuple[int, int]
    line_weights: tuple[int, int]

    def as_dict(self) -> dict:
        return {"stabilizer_order": self.stabilizer_order,
                "kernel_order": self.kernel_order,
                "boundary_profile": list(self.boundary_profile),
                "fixed_profile": list(self.fixed_profile),
                "line_weights": list(self.line_weights)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def fingerprint(fam: Family) -> ActionFingerprint:
    if not check_homomorphism(fam):
        raise FamilyError(f"{fam} is not a homomorphism")
    if not is_generically_transitive(fam):
        raise FamilyError(f"{fam} is not generically transitive")
    boundary = boundary_profile(fam)
    locus = fixed_locus(fam)
    return ActionFingerprint(
        stabilizer_order(fam),
        kernel_order(fam),
        tuple(boundary.degrees),
        locus.profile(),
        line_weights(fam, boundary, locus),
    )


def family_from_text(d: int, rows: Sequence[Sequence[str]], name: str = "") -> Family:
    return Family(d, PolyMatrix([[P(e) for e in r] for r in rows]), name)


def family_to_text(fam: Family) -> dict:
    return {"d": fam.d, "rows": fam.matrix.to_text(), "name": fam.name}


def anti_homomorphism_holds(fam: Family, degree: int, g: GroupElement, h: GroupElement) -> bool:
    """T(g) T(h) = T(h g) for the induced action on forms."""
    t = induced_action_on_forms(fam, degree)

    def at(x):
        return t.subs({"b": x.b, "t": x.t})
    return at(g) @ at(h) == at(group_mul(fam.d, h, g))

