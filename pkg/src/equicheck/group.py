"""The groups G_d = Ga x| Gm with law (b, t)(b', t') = (b + t^d b', t t')."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import INDEX, DomainError, LaurentPoly, P
from .solve import count_torus_solutions

B, T = P("b"), P("t")
B2, T2 = P("b'"), P("t'")


@dataclass(frozen=True)
class GroupElement:
    b: LaurentPoly
    t: LaurentPoly

    @classmethod
    def of(cls, b, t) -> "GroupElement":
        return cls(P(b), P(t))

    def __str__(self) -> str:
        return f"({self.b}, {self.t})"


IDENTITY = GroupElement.of(0, 1)
GENERIC = GroupElement(B, T)
GENERIC2 = GroupElement(B2, T2)


def _tpow(t: LaurentPoly, d: int) -> LaurentPoly:
    if d < 0 and not t.is_unit():
        raise DomainError(f"t-component {t} is not a unit")
    return t ** d


def group_mul(d: int, g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(g.b + _tpow(g.t, d) * h.b, g.t * h.t)


def group_inv(d: int, g: GroupElement) -> GroupElement:
    if not g.t.is_unit():
        raise DomainError(f"t-component {g.t} is not a unit")
    tinv = g.t.inverse()
    return GroupElement(-(tinv ** d) * g.b, tinv)


def reduce_root_of_unity(p: LaurentPoly, n: int) -> LaurentPoly:
    """Reduce exponents of ``zeta`` modulo n (zeta^n = 1)."""
    i = INDEX["zeta"]
    out: dict = {}
    for exp, c in p.items():
        e = list(exp)
        e[i] %= n
        key = tuple(e)
        out[key] = out.get(key, Fraction(0)) + c
    return LaurentPoly(out)


def conjugate_root(d: int, n: int) -> GroupElement:
    """(b, t) (0, zeta) (b, t)^-1 with zeta a formal n-th root of unity."""
    zeta = GroupElement(P(0), P("zeta"))
    g = group_mul(d, group_mul(d, GENERIC, zeta), group_inv(d, GENERIC))
    return GroupElement(reduce_root_of_unity(g.b, n), reduce_root_of_unity(g.t, n))


def mu_n_is_normal(d: int, n: int) -> bool:
    """Whether mu_n = {(0, zeta)} is normal in G_d.

    Conjugating (0, zeta) by (b, t) gives (b (1 - zeta^d), zeta); for a
    primitive n-th root this stays in mu_n iff zeta^d reduces to 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    conj = conjugate_root(d, n)
    normal = conj.b.is_zero() and conj.t == P("zeta")
    assert normal == (d % n == 0)
    return normal


@dataclass
class QuotientReport:
    d: int
    n: int
    target_d: int
    homomorphism: bool
    kernel_order: int
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.homomorphism and self.kernel_order == self.n


def quotient_hom_check(d: int, n: int) -> QuotientReport:
    """Check (b, t) -> (b, t^n) is a homomorphism G_d -> G_{d/n} with kernel mu_n."""
    if n < 1 or d % n:
        raise ValueError(f"need n | d, got d={d}, n={n}")
    e = d // n

    def phi(g: GroupElement) -> GroupElement:
        return GroupElement(g.b, g.t ** n)

    lhs = phi(group_mul(d, GENERIC, GENERIC2))
    rhs = group_mul(e, phi(GENERIC), phi(GENERIC2))
    # kernel: b = 0 and t^n = 1, whose solutions are the n distinct roots
    order = count_torus_solutions([P("b")], [P("t") ** n - 1])
    return QuotientReport(d, n, e, lhs == rhs, order)


# automorphisms

@dataclass(frozen=True)
class GroupAutomorphism:
    """One of rescale_b(c), invert_t (only for d = 0) or inner(g)."""

    kind: str
    d: int
    scale: Fraction = Fraction(1)
    element: GroupElement | None = None

    def __post_init__(self):
        if self.kind not in ("rescale_b", "invert_t", "inner"):
            raise ValueError(f"unknown automorphism kind {self.kind!r}")
        if self.kind == "invert_t" and self.d != 0:
            raise ValueError("t -> 1/t is an automorphism of G_d only for d = 0")
        if self.kind == "rescale_b" and not self.scale:
            raise ValueError("rescaling factor must be nonzero")
        if self.kind == "inner" and self.element is None:
            raise ValueError("inner automorphism needs an element")
        if not self.is_homomorphism():
            raise AssertionError(f"{self} fails the homomorphism identity")

    @classmethod
    def rescale_b(cls, d: int, c) -> "GroupAutomorphism":
        return cls("rescale_b", d, scale=Fraction(c))

    @classmethod
    def invert_t(cls, d: int = 0) -> "GroupAutomorphism":
        return cls("invert_t", d)

    @classmethod
    def inner(cls, d: int, g: GroupElement) -> "GroupAutomorphism":
        return cls("inner", d, element=g)

    def __call__(self, g: GroupElement) -> GroupElement:
        if self.kind == "rescale_b":
            return GroupElement(g.b * self.scale, g.t)
        if self.kind == "invert_t":
            return GroupElement(g.b, g.t.inverse())
        h = self.element
        return group_mul(self.d, group_mul(self.d, h, g), group_inv(self.d, h))

    def is_homomorphism(self) -> bool:
        lhs = self(group_mul(self.d, GENERIC, GENERIC2))
        rhs = group_mul(self.d, self(GENERIC), self(GENERIC2))
        return lhs == rhs

    def substitution(self) -> dict[str, LaurentPoly]:
        """Assignment b, t -> components of the image of the generic element."""
        img = self(GENERIC)
        return {"b": img.b, "t": img.t}

    def __str__(self) -> str:
        if self.kind == "rescale_b":
            return f"rescale_b({self.scale})"
        if self.kind == "invert_t":
            return "invert_t"
        return f"inner{self.element}"


def apply_automorphism(d: int, aut: GroupAutomorphism, g: GroupElement) -> GroupElement:
    if aut.d != d:
        raise ValueError("automorphism built for a different d")
    return aut(g)


def sign_flip_is_isomorphism(d: int) -> bool:
    """(b, t) -> (b, 1/t) carries the G_d law to the G_{-d} law."""
    def phi(g):
        return GroupElement(g.b, g.t.inverse())
    return phi(group_mul(d, GENERIC, GENERIC2)) == group_mul(-d, phi(GENERIC), phi(GENERIC2))
