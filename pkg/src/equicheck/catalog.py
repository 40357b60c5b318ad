"""Curated surfaces and the per-surface checks.

The data file lists the degeneration diagram nodes (type, line count, a realising set
of (-2)-classes, arrows) and the surfaces treated explicitly: defining
equations, the cubic map from the plane, the fixed data an action must
respect, the expected invariance conditions and any displayed matrices.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

from .lattice import CurveGraph, PicClass, parse_type
from .matrix import ZERO, PolyMatrix, nullspace, normalize_vector, rational_rank, span_membership
from .poly import LaurentPoly, P, coefficient_vector, monomials
from .rep import (COORDS, Family, LinearSeries, NormalFormParams, act_on_form,
                  check_homomorphism, check_lemma32_conditions, common_eigenspaces,
                  coefficient_matrices, is_fixed_point, is_generically_transitive,
                  is_series_invariant, kernel_order, make_normal_form, orbit_rank_at,
                  proportional, stabilizer_order)
from .p2 import PATTERNS, reduce_to_representative

DEFAULT_PATH = Path(__file__).parent / "data" / "catalog.json"
D_BOX = 4
K_BOX = 6
# normal forms proper have alpha1 alpha2 alpha3 = 0
SURFACE_PATTERNS = tuple(p for p in PATTERNS if len(p) < 3)


class CatalogError(ValueError):
    pass


def catalog_path() -> Path:
    env = os.environ.get("EQUICHECK_CATALOG")
    return Path(env) if env else DEFAULT_PATH


def catalog_checksum(path: Path | None = None) -> str:
    return hashlib.sha256((path or catalog_path()).read_bytes()).hexdigest()


def ambient_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1))


_EXPONENT = re.compile(r"\{(-?\d*)\*?d\}")


def instantiate(rows, d: int) -> list[list[str]]:
    """Fill ``{d}``, ``{2*d}``, ``{-d}`` exponent templates."""
    def fill(m):
        c = m.group(1)
        mult = 1 if c in ("", None) else (-1 if c == "-" else int(c))
        return f"({mult * d})"
    return [[_EXPONENT.sub(fill, e) for e in row] for row in rows]


# degeneration diagram

@dataclass
class FigureNode:
    id: str
    name: str
    degree: int
    type: str
    line_count: int
    flag: str
    source: str
    arrows_to: list[str]
    classes: list[PicClass] | None = None
    line_classes: list[PicClass] | None = None
    raw_graph: dict | None = None

    @property
    def ade_label(self) -> str:
        return self.type

    def minus2_classes(self) -> list[PicClass]:
        return list(self.classes or [])

    def curve_graph(self) -> CurveGraph:
        if self.raw_graph is not None:
            return CurveGraph(list(self.raw_graph["nodes"]),
                              [list(r) for r in self.raw_graph["matrix"]])
        return CurveGraph.from_classes(self.minus2_classes() + list(self.line_classes or []))

    @property
    def negative_curve_count(self) -> int:
        return len(self.curve_graph().nodes)

    @property
    def milnor(self) -> int:
        return sum(int(x[1:]) for x in parse_type(self.type))

    @property
    def components(self) -> int:
        return len(parse_type(self.type))


# surfaces

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(d|k1|k2)")


def parse_relation(text: str) -> dict[str, int]:
    """'2*k1 - 3*k2' -> {'k1': 2, 'k2': -3}, read as the relation = 0."""
    out: dict[str, int] = {}
    pos = 0
    text = text.strip()
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise CatalogError(f"cannot parse relation {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        out[m.group(3)] = out.get(m.group(3), 0) + sign * int(m.group(2) or 1)
        pos = m.end()
    if text[pos:].strip() or not out:
        raise CatalogError(f"cannot parse relation {text!r}")
    return out


@dataclass
class ConditionBranch:
    pattern: tuple[int, ...]
    relations: list[dict[str, int]]
    label: str

    def holds(self, d: int, k1: int, k2: int) -> bool:
        vals = {"d": d, "k1": k1, "k2": k2}
        return all(sum(c * vals[v] for v, c in r.items()) == 0 for r in self.relations)


@dataclass
class SurfaceEntry:
    id: str
    node: str
    degree: int
    ade_type: str
    ambient_dim: int
    equations: list[LaurentPoly]
    rational_map: LinearSeries | None
    map_forms: list[LaurentPoly] | None
    required_fixed: dict | None
    expected_conditions: list[ConditionBranch] | None
    rep: dict | None
    rep_as_printed: list | None
    lines: list[list[LaurentPoly]]
    singular_points: list[tuple[Fraction, ...]]
    test_point: list[int] | None
    claims: dict
    rep_note: str = ""

    @property
    def names(self) -> tuple[str, ...]:
        return ambient_names(self.ambient_dim)

    def explicit_family(self, d: int | None = None) -> Family:
        if self.rep is None:
            raise CatalogError(f"{self.id} has no explicit representation")
        rep_d = self.rep["d"]
        if rep_d == "any":
            if d is None:
                raise CatalogError(f"{self.id} needs a value of d")
        else:
            if d is not None and d != rep_d:
                raise CatalogError(f"{self.id} is displayed only for d = {rep_d}")
            d = rep_d
        rows = instantiate(self.rep["rows"], d)
        return Family(d, PolyMatrix([[P(e) for e in r] for r in rows]), self.id)


def _surface(rec: dict) -> SurfaceEntry:
    eqs = [P(e) for e in rec["equations"]]
    forms = [P(f) for f in rec["map"]] if rec.get("map") else None
    series = LinearSeries(3, tuple(forms)) if forms else None
    branches = None
    if rec.get("expected_conditions") is not None:
        branches = [ConditionBranch(tuple(b["pattern"]), [parse_relation(r) for r in b["relations"]], b["label"])
                    for b in rec["expected_conditions"]]
    return SurfaceEntry(
        id=rec["id"], node=rec["node"], degree=rec["degree"], ade_type=rec["type"],
        ambient_dim=rec["ambient_dim"], equations=eqs, rational_map=series, map_forms=forms,
        required_fixed=rec.get("required_fixed"), expected_conditions=branches,
        rep=rec.get("rep"), rep_as_printed=rec.get("rep_as_printed"),
        lines=[[P(f) for f in line] for line in rec.get("lines", [])],
        singular_points=[tuple(Fraction(c) for c in p) for p in rec.get("singular_points", [])],
        test_point=rec.get("test_point"), claims=rec.get("claims", {}),
        rep_note=rec.get("rep_note", ""),
    )


def _node(rec: dict) -> FigureNode:
    return FigureNode(
        id=rec["id"], name=rec["name"], degree=rec["degree"], type=rec["type"],
        line_count=rec["lines"], flag=rec["flag"], source=rec["source"],
        arrows_to=list(rec["arrows_to"]),
        classes=[PicClass.parse(c) for c in rec["minus2"]] if "minus2" in rec else None,
        line_classes=[PicClass.parse(c) for c in rec["line_classes"]] if "line_classes" in rec else None,
        raw_graph=rec.get("graph"),
    )


# verifications

@dataclass
class Check:
    name: str
    passed: bool | None  # None means not applicable
    detail: str = ""

    def as_dict(self) -> dict:
        status = "n/a" if self.passed is None else ("pass" if self.passed else "fail")
        return {"check": self.name, "status": status, "detail": self.detail}


def verify_map_on_surface(e: SurfaceEntry) -> Check:
    if e.map_forms is None:
        return Check("map_on_surface", None, "no map displayed")
    if len(e.map_forms) != e.ambient_dim + 1:
        return Check("map_on_surface", False, "map has the wrong number of components")
    assign = dict(zip(e.names, e.map_forms))
    for eq in e.equations:
        rest = eq.subs(assign)
        if rest:
            return Check("map_on_surface", False, f"{eq} pulls back to {rest}")
    return Check("map_on_surface", True, f"{len(e.equations)} equations vanish")


def _respects_fixed_data(fam: Family, fixed: dict | None) -> bool:
    if not fixed:
        return True
    for p in fixed.get("points", []):
        if not is_fixed_point(fam, p):
            return False
    for line in fixed.get("lines", []):
        form = P(line)
        image = act_on_form(fam.matrix, form)
        if not proportional(PolyMatrix([[image]]), PolyMatrix([[form]])):
            return False
    return True


@dataclass
class Survivor:
    d: int
    k1: int
    k2: int
    pattern: tuple[int, ...]

    def key(self):
        return (self.d, self.k1, self.k2, self.pattern)


@dataclass
class SurfaceVerdict:
    id: str
    condition_set: list[Survivor]
    expected_set: list[Survivor]
    matches_paper: bool
    transitive: list[dict] = field(default_factory=list)
    flag: str = "neither"
    stabilizer_report: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"id": self.id, "matches_paper": self.matches_paper, "flag": self.flag,
                "survivors": len(self.condition_set),
                "transitive_faithful": self.transitive,
                "stabilizers": self.stabilizer_report}


def _pattern_params(d, k1, k2, pattern) -> NormalFormParams:
    alpha = [0, 0, 0]
    for i in pattern:
        alpha[i - 1] = 1
    return NormalFormParams(d, k1, k2, *alpha)


def derive_equivariance_conditions(e: SurfaceEntry, d_box: int = D_BOX, k_box: int = K_BOX) -> SurfaceVerdict:
    """All normal forms in the box under which the map's series is invariant."""
    if e.rational_map is None or e.expected_conditions is None:
        raise CatalogError(f"{e.id} has no map or no expected conditions")
    survivors, expected = [], []
    ks = range(-k_box, k_box + 1)
    for d, k1, k2 in product(range(-d_box, d_box + 1), ks, ks):
        for pattern in SURFACE_PATTERNS:
            p = _pattern_params(d, k1, k2, pattern)
            if not check_lemma32_conditions(p):
                continue
            s = Survivor(d, k1, k2, pattern)
            if any(b.pattern == pattern and b.holds(d, k1, k2) for b in e.expected_conditions):
                expected.append(s)
            fam = make_normal_form(p)
            if not _respects_fixed_data(fam, e.required_fixed):
                continue
            if is_series_invariant(fam, e.rational_map):
                survivors.append(s)
    matches = [s.key() for s in survivors] == [s.key() for s in expected]
    verdict = SurfaceVerdict(e.id, survivors, expected, matches)
    _classify_survivors(verdict)
    return verdict


def _classify_survivors(v: SurfaceVerdict) -> None:
    free = False
    for s in v.condition_set:
        p = _pattern_params(s.d, s.k1, s.k2, s.pattern)
        fam = make_normal_form(p)
        if not is_generically_transitive(fam) or kernel_order(fam) != 1:
            continue
        order = stabilizer_order(fam)
        rep = reduce_to_representative(p).representative.name
        v.transitive.append({"d": s.d, "k1": s.k1, "k2": s.k2, "pattern": list(s.pattern),
                             "equivalent_to": rep, "stabilizer": order})
        v.stabilizer_report[rep] = order
        free = free or order == 1
    v.flag = "boxed" if free else ("dashed" if v.transitive else "neither")


def _graded_span(equations, degree, names):
    basis = monomials(names, degree)
    return basis, [coefficient_vector(q, basis, names) for q in equations
                   if q.total_degree(names) == {degree}]


def check_ideal_preserved(fam: Family, e: SurfaceEntry) -> Check:
    names = e.names
    for q in e.equations:
        (deg,) = q.total_degree(names)
        image = act_on_form(fam.matrix, q, names)
        basis, span = _graded_span(e.equations, deg, names)
        if not span_membership(coefficient_vector(image, basis, names), span):
            return Check("ideal_preserved", False, f"{q} is not preserved")
        if len(e.equations) == 1:
            if not proportional(PolyMatrix([[image]]), PolyMatrix([[q]])):
                return Check("ideal_preserved", False, f"{q} maps to a non-multiple")
            ratio = _ratio(image, q)
            if ratio is None or not ratio.is_unit():
                return Check("ideal_preserved", False, f"{q} is scaled by a non-unit")
    return Check("ideal_preserved", True, f"{len(e.equations)} equations preserved")


def _ratio(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    # a = u * b with u a monomial unit: compare leading terms
    (ea, ca), (eb, cb) = a.sorted_terms()[0], b.sorted_terms()[0]
    u = LaurentPoly({tuple(x - y for x, y in zip(ea, eb)): ca / cb})
    return u if u * b == a else None


def fixed_points_on_line(fam: Family, line: list[LaurentPoly], names) -> list[tuple]:
    """Fixed points of the family on the linear subspace cut out by ``line``."""
    n = fam.size
    rows = [[f.coefficient_in([v]).get((1,), ZERO).constant_value() for v in names]
            for f in line]
    spaces = common_eigenspaces(list(coefficient_matrices(fam.matrix).values()), n)
    out = []
    for basis in spaces:
        conds = [[sum(r[i] * v[i] for i in range(n)) for v in basis] for r in rows]
        sols = nullspace(conds, len(basis))
        if len(sols) > 1:
            out.append(("positive-dimensional", len(sols)))
        for sol in sols[:1] if len(sols) == 1 else []:
            out.append(normalize_vector([sum(c * v[i] for c, v in zip(sol, basis)) for i in range(n)]))
    return out


def is_singular_point(e: SurfaceEntry, p) -> bool:
    names = e.names
    values = {v: Fraction(c) for v, c in zip(names, p)}
    if any(q.evaluate(values).constant_value() for q in e.equations):
        return False
    jac = [[q.diff(v).evaluate(values).constant_value() for v in names] for q in e.equations]
    return rational_rank(jac) < e.ambient_dim - 2


def check_fixed_points_on_lines(e: SurfaceEntry, fam: Family | None = None) -> Check:
    if not e.lines:
        return Check("fixed_points_on_lines", None, "no claim about lines")
    fam = fam or e.explicit_family()
    found = []
    for line in e.lines:
        for pt in fixed_points_on_line(fam, line, e.names):
            if isinstance(pt[0], str):
                return Check("fixed_points_on_lines", False, f"a whole line of fixed points on {line}")
            if pt not in e.singular_points or not is_singular_point(e, pt):
                return Check("fixed_points_on_lines", False, f"fixed point {pt} is not singular")
            found.append("(" + ":".join(str(c) for c in pt) + ")")
    return Check("fixed_points_on_lines", True, "fixed points " + ", ".join(sorted(set(found))))


def verify_explicit_rep(e: SurfaceEntry, d: int | None = None) -> list[Check]:
    if e.rep is None:
        return [Check("explicit_rep", None, e.rep_note or "no explicit representation")]
    if e.rep["d"] == "any" and d is None:
        out = []
        for dd in range(-D_BOX, D_BOX + 1):
            out += [Check(f"{c.name}[d={dd}]", c.passed, c.detail) for c in verify_explicit_rep(e, dd)]
        return out
    fam = e.explicit_family(d)
    hom = check_homomorphism(fam, projective=e.rep.get("projective", False))
    checks = [Check("homomorphism", hom.passed, "" if hom else f"differs at {hom.witness}"),
              check_ideal_preserved(fam, e),
              check_fixed_points_on_lines(e, fam)]
    if e.test_point is not None:
        rank = orbit_rank_at(fam, e.test_point)
        checks.append(Check("open_orbit", rank == 3, f"orbit rank {rank} at {e.test_point}"))
        if rank == 3:
            order = stabilizer_order(fam, e.test_point)
            checks.append(Check("generically_free", order == 1, f"stabilizer order {order}"))
    return checks


def printed_rep_family(e: SurfaceEntry) -> Family:
    if not e.rep_as_printed:
        raise CatalogError(f"{e.id} has no separate printed matrix")
    return Family(e.rep["d"], PolyMatrix([[P(x) for x in r] for r in e.rep_as_printed]), e.id)


def intertwines(e: SurfaceEntry, fam: Family, plane: Family) -> bool:
    """M(g) phi(p) ~ phi(N(g) p) with symbolic p and g."""
    image = plane.matrix.apply([P(c) for c in COORDS])
    lhs = [f.subs(dict(zip(COORDS, image))) for f in e.map_forms]
    rhs = fam.matrix.apply(e.map_forms)
    return proportional(PolyMatrix([lhs]), PolyMatrix([rhs]))


# the catalog

class Catalog:
    def __init__(self, data: dict, path: Path | None = None):
        self.path = path
        self.version = data["version"]
        self.type_counts = {int(k): v for k, v in data["type_counts"].items()}
        self.nodes = [_node(r) for r in data["figure1"]]
        self.surfaces = [_surface(r) for r in data["surfaces"]]
        self._by_id = {n.id: n for n in self.nodes}
        self._verdicts: dict[str, str] | None = None
        for s in self.surfaces:
            check = verify_map_on_surface(s)
            if check.passed is False:
                raise CatalogError(f"{s.id}: {check.detail}")
            if s.node not in self._by_id:
                raise CatalogError(f"{s.id} points to unknown node {s.node}")
        for n in self.nodes:
            for target in n.arrows_to:
                if target not in self._by_id:
                    raise CatalogError(f"arrow {n.id} -> {target} has no target")

    @classmethod
    def load(cls, path: Path | None = None) -> "Catalog":
        path = path or catalog_path()
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
        return cls(data, Path(path))

    @property
    def checksum(self) -> str:
        return catalog_checksum(self.path) if self.path else ""

    def figure_nodes(self) -> list[FigureNode]:
        return list(self.nodes)

    def node(self, node_id: str) -> FigureNode:
        return self._by_id[node_id]

    def surface(self, sid: str) -> SurfaceEntry:
        for s in self.surfaces:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def descendants(self, node_id: str) -> set[str]:
        seen, stack = set(), [node_id]
        while stack:
            n = stack.pop()
            if n not in seen:
                seen.add(n)
                stack.extend(self._by_id[n].arrows_to)
        return seen

    def surface_flags(self) -> dict[str, str]:
        """Verdict per treated surface, computed from the checks."""
        if self._verdicts is None:
            out = {}
            for s in self.surfaces:
                if s.expected_conditions is not None:
                    out[s.node] = derive_equivariance_conditions(s).flag
                else:
                    checks = verify_explicit_rep(s)
                    out[s.node] = "boxed" if all(c.passed is not False for c in checks) else "neither"
            self._verdicts = out
        return self._verdicts

    def derived_flag(self, node_id: str) -> str:
        """Boxed/dashed through the downward closure along the arrows."""
        flags = self.surface_flags()
        reached = {f for src, f in flags.items() if node_id in self.descendants(src)}
        if "boxed" in reached:
            return "boxed"
        if "dashed" in reached:
            return "dashed"
        return "neither"


def load_catalog(path: Path | None = None) -> Catalog:
    return Catalog.load(path)


def _type_text(n: FigureNode) -> str:
    return n.type


def theorem11_summary(catalog: Catalog) -> str:
    by_degree: dict[int, list[FigureNode]] = {}
    for n in catalog.nodes:
        by_degree.setdefault(n.degree, []).append(n)
    flags = {n.id: catalog.derived_flag(n.id) for n in catalog.nodes}

    def listing(nodes):
        nodes = sorted(nodes, key=lambda n: (-n.milnor, n.components, n.line_count))
        out, seen = [], {}
        for n in nodes:
            seen.setdefault(n.type, []).append(n)
        for label, group in seen.items():
            if len(group) == 1:
                out.append(label)
            else:
                counts = sorted(g.line_count for g in group)
                words = {3: "three", 4: "four"}
                text = " or ".join(words.get(c, str(c)) for c in counts)
                out.append(f"{label} (with {text} lines)")
        return ", ".join(out)

    lines = ["Equivariant compactifications of some G_d:"]
    full = [deg for deg in sorted(by_degree, reverse=True)
            if all(flags[n.id] == "boxed" for n in by_degree[deg])
            and len(by_degree[deg]) == catalog.type_counts.get(deg, -1)]
    low = 10
    for deg in sorted(by_degree, reverse=True):
        if deg in full and deg == low - 1:
            low = deg
    if low < 10:
        lines.append(f"degree >= {low}: all types")
    for deg in sorted(by_degree, reverse=True):
        if deg >= low:
            continue
        boxed = [n for n in by_degree[deg] if flags[n.id] == "boxed"]
        if boxed:
            lines.append(f"degree {deg}: {listing(boxed)}")
    lines.append("Equivariant compactifications of a homogeneous space for some G_d (and not of G_d):")
    for deg in sorted(by_degree, reverse=True):
        dashed = [n for n in by_degree[deg] if flags[n.id] == "dashed"]
        if dashed:
            lines.append(f"degree {deg}: {listing(dashed)}")
    return "\n".join(lines) + "\n"
