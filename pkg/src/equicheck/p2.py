"""Classification of faithful generically transitive G_d actions on the plane.

Every upper triangular action is conjugate to a normal form N(d, k1, k2,
alpha).  We enumerate those in a box, keep the ones that are actions at
all, and push each to tau_{d,k} or rho_d by explicit moves: permutations
and rescalings of coordinates together with an automorphism of G_d.
Each chain is checked as a matrix identity P N(g) ~ R(a(g)) P.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .group import GroupAutomorphism
from .matrix import PolyMatrix
from .rep import (Family, NormalFormParams, check_homomorphism, check_lemma32_conditions,
                  fingerprint, is_generically_transitive, kernel_order, make_normal_form,
                  make_rho, make_tau, proportional)
from .solve import INFINITE

PATTERNS = ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3))


class ConsistencyError(RuntimeError):
    """A classification step produced something the theory rules out."""


@dataclass(frozen=True, order=True)
class Representative:
    kind: str  # "tau" or "rho"
    d: int
    k: int = 0

    def family(self) -> Family:
        return make_tau(self.d, self.k) if self.kind == "tau" else make_rho(self.d)

    @property
    def name(self) -> str:
        return f"tau({self.d},{self.k})" if self.kind == "tau" else f"rho({self.d})"

    def __str__(self):
        return self.name


@dataclass
class Move:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class Reduction:
    params: NormalFormParams
    representative: Representative
    change: PolyMatrix
    automorphisms: list[GroupAutomorphism]
    moves: list[Move]
    verified: bool = False

    def as_dict(self) -> dict:
        return {"normal_form": self.params.as_dict(),
                "representative": self.representative.name,
                "moves": [str(m) for m in self.moves],
                "verified": self.verified}


def _forced_exponents(d: int, pattern: tuple[int, ...]) -> list[tuple[int, int]]:
    if pattern == (1, 3):
        return [(2 * d, d)]
    if pattern == (2, 3):
        return [(d, d)]
    if pattern == (1, 2):
        return [(d, 0)]
    return []


def _params(d, k1, k2, pattern, values) -> NormalFormParams:
    alpha = [Fraction(0)] * 3
    for i, v in zip(pattern, values):
        alpha[i - 1] = Fraction(v)
    return NormalFormParams(d, k1, k2, *alpha)


def candidate_normal_forms(d: int, k_bound: int, alpha_values=(1,)):
    """Every tuple in the box, plus the two-alpha shapes whose exponents are forced."""
    box = range(-k_bound, k_bound + 1)
    for pattern in PATTERNS:
        pairs = list(product(box, box))
        pairs += [e for e in _forced_exponents(d, pattern) if e not in pairs]
        for k1, k2 in pairs:
            for values in product(alpha_values, repeat=len(pattern)):
                yield _params(d, k1, k2, pattern, values)


def passes_filters(p: NormalFormParams) -> bool:
    if not check_lemma32_conditions(p):
        return False
    fam = make_normal_form(p)
    if not check_homomorphism(fam):
        return False
    if not is_generically_transitive(fam):
        return False
    return kernel_order(fam) != INFINITE


def enumerate_normal_forms(d: int, k_bound: int, alpha_values=(1,)) -> list[NormalFormParams]:
    if k_bound < 1:
        raise ValueError("k_bound must be at least 1")
    out = [p for p in candidate_normal_forms(d, k_bound, alpha_values) if passes_filters(p)]
    out.sort(key=lambda p: (p.k1, p.k2, p.pattern, p.alphas))
    return out


def _with_automorphisms(matrix: PolyMatrix, auts: list[GroupAutomorphism]) -> PolyMatrix:
    """g -> M(a_n(...a_1(g))) for auts listed in the order applied."""
    for aut in reversed(auts):
        matrix = matrix.subs(aut.substitution())
    return matrix


def verify_reduction(red: Reduction) -> bool:
    n = make_normal_form(red.params).matrix
    r = _with_automorphisms(red.representative.family().matrix, red.automorphisms)
    return proportional(red.change @ n, r @ red.change)


def reduce_to_representative(p: NormalFormParams) -> Reduction:
    d, k1, k2 = p.d, p.k1, p.k2
    a1, a2, a3 = p.alphas
    pattern = p.pattern
    ident = PolyMatrix.identity(3)
    moves: list[Move] = []
    if pattern == (1, 3):
        rep = Representative("rho", d)
        change = PolyMatrix.diagonal([a3 / a1, 1, 1])
        auts = [GroupAutomorphism.rescale_b(d, a3)]
        moves += [Move("conic rescaling", f"x -> {a3 / a1} x"),
                  Move("b-rescaling", f"b -> {a3} b")]
        k = None
    elif pattern == (2, 3):
        change = PolyMatrix([[a3, -a2, 0], [0, 1, 0], [0, 0, 1]])
        auts = [GroupAutomorphism.rescale_b(d, a3)]
        moves += [Move("line move", f"x -> {a3} x - {a2} y"),
                  Move("b-rescaling", f"b -> {a3} b")]
        k = d
    elif pattern == (3,):
        change, k = ident, k1
        auts = [GroupAutomorphism.rescale_b(d, a3)]
        moves.append(Move("b-rescaling", f"b -> {a3} b"))
    elif pattern == (2,):
        change, k = PolyMatrix.permutation([1, 0, 2]), k2
        auts = [GroupAutomorphism.rescale_b(d, a2)]
        moves += [Move("coordinate permutation", "x <-> y"),
                  Move("b-rescaling", f"b -> {a2} b")]
    elif pattern == (1,):
        change, k = PolyMatrix.permutation([1, 2, 0]), -k2
        auts = [GroupAutomorphism.rescale_b(d, a1)]
        moves += [Move("coordinate permutation", "y <-> z, then x <-> y"),
                  Move("b-rescaling", f"b -> {a1} b")]
    else:
        raise ConsistencyError(f"pattern {pattern} should have been filtered out")
    if k is not None:
        if k == 0:
            raise ConsistencyError(f"{p} reduces to a non-transitive tau")
        if d == 0 and k < 0:
            auts.append(GroupAutomorphism.invert_t(0))
            moves.append(Move("t-inversion", "t -> 1/t"))
            k = -k
        rep = Representative("tau", d, k)
    red = Reduction(p, rep, change, auts, moves)
    red.verified = verify_reduction(red)
    if not red.verified:
        raise ConsistencyError(f"move chain for {p.as_dict()} does not verify")
    return red


@dataclass
class ClassificationResult:
    d: int
    bound: int
    representatives: list[Representative]
    witnesses: list[Reduction]
    excluded: dict[str, str] = field(default_factory=dict)
    kernels: dict[str, object] = field(default_factory=dict)
    fingerprints: dict[str, dict] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def names(self) -> set[str]:
        return {r.name for r in self.representatives}

    def as_dict(self, witnesses: bool = False) -> dict:
        out = {"d": self.d, "box": self.bound,
               "representatives": [r.name for r in self.representatives],
               "kernel_orders": self.kernels,
               "fingerprints": self.fingerprints,
               "excluded": self.excluded,
               "witness_count": len(self.witnesses),
               "elapsed": round(self.elapsed_ms, 3)}
        if witnesses:
            out["witnesses"] = [w.as_dict() for w in self.witnesses]
        return out

    def to_json(self, witnesses: bool = False) -> str:
        return json.dumps(self.as_dict(witnesses), sort_keys=True, indent=2)


def _reduce_all(forms, jobs: int) -> list[Reduction]:
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(reduce_to_representative, forms))
    return [reduce_to_representative(p) for p in forms]


def classify(d: int, k_bound: int, alpha_values=(1,), jobs: int = 1) -> ClassificationResult:
    """Representatives of faithful generically transitive actions in the box.

    rho_d is always reported for d != 0; when |d| > 1 it has kernel mu_|d|
    and the kernel order is recorded next to it.
    """
    start = time.perf_counter()
    forms = enumerate_normal_forms(d, k_bound, alpha_values)
    witnesses = _reduce_all(forms, jobs)
    reps, excluded, kernels = set(), {}, {}
    candidates = {w.representative for w in witnesses}
    if d != 0:
        candidates.add(Representative("rho", d))
    for rep in sorted(candidates):
        if rep.kind == "tau" and abs(rep.k) > k_bound:
            excluded[rep.name] = "outside box"
            continue
        order = kernel_order(rep.family())
        if rep.kind == "tau" and order != 1:
            excluded[rep.name] = f"kernel of order {order}"
            continue
        reps.add(rep)
        kernels[rep.name] = order
    ordered = sorted(reps, key=lambda r: (r.kind != "tau", abs(r.k), r.k))
    prints = {r.name: fingerprint(r.family()) for r in ordered}
    seen: dict[str, str] = {}
    for name, fp in prints.items():
        key = fp.to_json()
        if key in seen:
            raise ConsistencyError(f"{name} and {seen[key]} share a fingerprint")
        seen[key] = name
    return ClassificationResult(d, k_bound, ordered, witnesses, excluded, kernels,
                                {n: fp.as_dict() for n, fp in prints.items()},
                                (time.perf_counter() - start) * 1000)
