"""Picard lattices of blow-ups of the plane in r <= 8 points.

A class D = a h + sum b_i e_i is stored as (a; b_1, ..., b_r).  The form
is diag(1, -1, ..., -1) and the canonical class is K = (-3; 1, ..., 1),
so D.K = -3a - sum b_i and D.D = a^2 - sum b_i^2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

KINDS = {"minus1": (-1, -1), "minus2": (-2, 0)}


class LatticeError(ValueError):
    pass


class NotDynkin(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PicClass:
    a: int
    b: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "PicClass":
        text = text.strip().strip("()")
        head, _, tail = text.partition(";")
        b = tuple(int(x) for x in tail.split(",") if x.strip())
        return cls(int(head), b)

    @property
    def r(self) -> int:
        return len(self.b)

    def dot(self, other: "PicClass") -> int:
        if self.r != other.r:
            raise LatticeError("classes live on different blow-ups")
        return self.a * other.a - sum(x * y for x, y in zip(self.b, other.b))

    @property
    def self_intersection(self) -> int:
        return self.dot(self)

    @property
    def k_pairing(self) -> int:
        return self.dot(PicLattice(self.r).canonical)

    def __str__(self):
        return f"({self.a}; {','.join(str(x) for x in self.b)})"


@dataclass(frozen=True)
class PicLattice:
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= 8:
            raise LatticeError(f"r must lie in [0, 8], got {self.r}")

    @property
    def rank(self) -> int:
        return self.r + 1

    @property
    def degree(self) -> int:
        return 9 - self.r

    @property
    def canonical(self) -> PicClass:
        return PicClass(-3, (1,) * self.r)

    @property
    def h(self) -> PicClass:
        return PicClass(1, (0,) * self.r)

    def e(self, i: int) -> PicClass:
        return PicClass(0, tuple(int(j == i) for j in range(self.r)))


def a_range(r: int, square: int, kpair: int) -> range:
    """Values of a allowed by Cauchy-Schwarz.

    sum b = -3a - c and sum b^2 = a^2 - D^2, so (3a + c)^2 <= r (a^2 - D^2),
    that is (9 - r) a^2 + 6ac + c^2 + r D^2 <= 0.
    """
    c, n = kpair, square
    qa, qb, qc = 9 - r, 6 * c, c * c + r * n
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return range(0)
    root = isqrt(disc) + 1
    lo = (-qb - root) // (2 * qa) - 1
    hi = (-qb + root) // (2 * qa) + 1
    return range(lo, hi + 1)


def _fill(k: int, total: int, squares: int) -> Iterable[tuple[int, ...]]:
    """All integer k-tuples with the given sum and sum of squares."""
    if k == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or total * total > k * squares:
        return
    bound = isqrt(squares)
    for x in range(-bound, bound + 1):
        for rest in _fill(k - 1, total - x, squares - x * x):
            yield (x,) + rest


def enumerate_classes(r: int, kind: str) -> list[PicClass]:
    """All classes with (D.D, D.K) = (-1, -1) or (-2, 0)."""
    PicLattice(r)
    if kind not in KINDS:
        raise LatticeError(f"kind must be one of {sorted(KINDS)}")
    square, kpair = KINDS[kind]
    out = []
    for a in a_range(r, square, kpair):
        total = -3 * a - kpair
        squares = a * a - square
        for b in _fill(r, total, squares):
            out.append(PicClass(a, b))
    for c in out:
        assert c.self_intersection == square and c.k_pairing == kpair
    return sorted(out)


def brute_force_classes(r: int, kind: str, bound: int = 10) -> list[PicClass]:
    """Oracle: scan the whole box |a|, |b_i| <= bound (only usable for small r)."""
    from itertools import product
    square, kpair = KINDS[kind]
    lat = PicLattice(r)
    out = []
    for a in range(-bound, bound + 1):
        for b in product(range(-bound, bound + 1), repeat=r):
            c = PicClass(a, b)
            if c.self_intersection == square and c.dot(lat.canonical) == kpair:
                out.append(c)
    return sorted(out)


# Dynkin diagrams

@dataclass
class CurveGraph:
    """Negative curves and their intersection matrix."""

    nodes: list[str]
    matrix: list[list[int]]

    def __post_init__(self):
        n = len(self.nodes)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise LatticeError("intersection matrix has the wrong shape")
        for i in range(n):
            if self.matrix[i][i] not in (-1, -2):
                raise LatticeError(f"node {self.nodes[i]} has self-intersection {self.matrix[i][i]}")
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise LatticeError("intersection matrix is not symmetric")

    @classmethod
    def from_classes(cls, classes: Sequence[PicClass]) -> "CurveGraph":
        return cls([str(c) for c in classes], [[x.dot(y) for y in classes] for x in classes])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], squares=None) -> "CurveGraph":
        squares = squares or [-2] * n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = squares[i]
        for i, j in edges:
            m[i][j] = m[j][i] = 1
        return cls([str(i) for i in range(n)], m)

    def minus2_part(self) -> "CurveGraph":
        keep = [i for i in range(len(self.nodes)) if self.matrix[i][i] == -2]
        return CurveGraph([self.nodes[i] for i in keep],
                          [[self.matrix[i][j] for j in keep] for i in keep])

    def adjacency(self) -> dict[int, set[int]]:
        n = len(self.nodes)
        return {i: {j for j in range(n) if j != i and self.matrix[i][j]} for i in range(n)}


def _components(adj: dict[int, set[int]]) -> list[set[int]]:
    seen, comps = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            v = stack.pop()
            if v not in comp:
                comp.add(v)
                stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def _branch_length(adj, center, first) -> int:
    length, prev, cur = 1, center, first
    while True:
        nxt = adj[cur] - {prev}
        if not nxt:
            return length
        if len(nxt) > 1:
            raise NotDynkin("second branch point")
        prev, cur = cur, next(iter(nxt))
        length += 1


def _component_type(adj: dict[int, set[int]], comp: set[int]) -> tuple[str, int]:
    n = len(comp)
    edges = sum(len(adj[v]) for v in comp) // 2
    if edges != n - 1:
        raise NotDynkin("graph contains a cycle")
    degrees = [len(adj[v]) for v in comp]
    if max(degrees, default=0) >= 4:
        raise NotDynkin("vertex of degree 4 or more")
    branch = [v for v in comp if len(adj[v]) == 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1:
        raise NotDynkin("more than one branch point")
    c = branch[0]
    arms = sorted(_branch_length(adj, c, v) for v in adj[c])
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", n)
    raise NotDynkin(f"branch profile {tuple(arms)} is not ADE")


def dynkin_type(g: CurveGraph) -> list[str]:
    """ADE labels of the components, largest first."""
    n = len(g.nodes)
    for i in range(n):
        if g.matrix[i][i] != -2:
            raise NotDynkin("dynkin_type expects (-2)-curves only")
        for j in range(n):
            if i != j and g.matrix[i][j] not in (0, 1):
                raise NotDynkin(f"intersection number {g.matrix[i][j]} between curves")
    adj = g.adjacency()
    parts = [_component_type(adj, comp) for comp in _components(adj)]
    order = {"E": 0, "D": 1, "A": 2}
    parts.sort(key=lambda p: (-p[1], order[p[0]]))
    return [f"{k}{n}" for k, n in parts]


def format_type(labels: Sequence[str]) -> str:
    """['A3', 'A1', 'A1'] -> 'A3+2A1'; the empty list is the smooth type."""
    if not labels:
        return "smooth"
    counts = Counter(labels)
    seen, out = set(), []
    for lab in labels:
        if lab in seen:
            continue
        seen.add(lab)
        out.append(lab if counts[lab] == 1 else f"{counts[lab]}{lab}")
    return "+".join(out)


def lines_for(r: int, roots: Sequence[PicClass]) -> list[PicClass]:
    """(-1)-classes meeting every given (-2)-curve non-negatively."""
    return [e for e in enumerate_classes(r, "minus1") if all(e.dot(x) >= 0 for x in roots)]


def check_curve_bound(entry, nodes: int | None = None) -> bool:
    """#negative curves <= rank Pic + 1 = (10 - degree) + 1.

    Accepts a catalog entry (with ``degree`` and ``negative_curve_count``)
    or a degree together with a node count.
    """
    if nodes is None:
        degree, nodes = entry.degree, entry.negative_curve_count
    else:
        degree = entry
    return nodes <= (10 - degree) + 1


@dataclass
class AuditReport:
    checked: int
    discrepancies: list[str]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def as_dict(self) -> dict:
        return {"checked": self.checked, "ok": self.ok, "discrepancies": self.discrepancies}


def figure1_audit(catalog) -> AuditReport:
    """Re-check each node of the degeneration diagram: curve bound, ADE label, line count, flags."""
    problems = []
    nodes = catalog.figure_nodes()
    for node in nodes:
        if not check_curve_bound(node):
            problems.append(f"{node.id}: {node.negative_curve_count} negative curves exceed the bound")
        graph = node.curve_graph()
        try:
            label = format_type(dynkin_type(graph.minus2_part()))
        except NotDynkin as exc:
            problems.append(f"{node.id}: {exc}")
            continue
        if label != node.ade_label:
            problems.append(f"{node.id}: graph has type {label}, entry says {node.ade_label}")
        lines = sum(1 for row_i, row in enumerate(graph.matrix) if row[row_i] == -1)
        if lines != node.line_count:
            problems.append(f"{node.id}: graph has {lines} lines, entry says {node.line_count}")
        if node.classes is not None:
            computed = lines_for(9 - node.degree, node.minus2_classes())
            if len(computed) != node.line_count:
                problems.append(f"{node.id}: lattice gives {len(computed)} lines")
        flag = catalog.derived_flag(node.id)
        if flag != node.flag:
            problems.append(f"{node.id}: flag {node.flag} but verdicts give {flag}")
    return AuditReport(len(nodes), problems)


def dynkin_graph(labels: Sequence[str]) -> list[set[int]]:
    """Adjacency lists for a sum of ADE diagrams, nodes numbered in BFS order."""
    adj: list[set[int]] = []
    for lab in labels:
        kind, n = lab[0], int(lab[1:])
        base = len(adj)
        adj.extend(set() for _ in range(n))

        def link(i, j):
            adj[base + i].add(base + j)
            adj[base + j].add(base + i)
        if kind == "A":
            for i in range(n - 1):
                link(i, i + 1)
        elif kind == "D":
            # 0 and 1 are the short arms, 2 the branch point
            link(0, 2)
            link(1, 2)
            for i in range(2, n - 1):
                link(i, i + 1)
        elif kind == "E":
            # branch point 0, arm of length 1 is node 1, then arms 2-3.. and 4..
            link(0, 1)
            link(0, 2)
            link(2, 3)
            link(0, 4)
            for i in range(4, n - 1):
                link(i, i + 1)
        else:
            raise LatticeError(f"unknown ADE label {lab}")
    return adj


def parse_type(label: str) -> list[str]:
    if label == "smooth":
        return []
    out = []
    for part in label.split("+"):
        mult = 1
        if part[0].isdigit() and part[1].isalpha():
            mult, part = int(part[0]), part[1:]
        out += [part] * mult
    return out


def find_configuration(r: int, label: str, line_count: int) -> list[PicClass] | None:
    """(-2)-classes with the given Dynkin type cutting out exactly ``line_count`` lines.

    Backtracking over the roots; used to produce catalog data, which is
    then re-audited independently of this search.
    """
    labels = parse_type(label)
    adj = dynkin_graph(labels)
    roots = enumerate_classes(r, "minus2")
    n = len(adj)
    chosen: list[PicClass] = []

    def extend(i):
        if i == n:
            return len(lines_for(r, chosen)) == line_count
        for c in roots:
            if c in chosen:
                continue
            if all(c.dot(chosen[j]) == (1 if j in adj[i] else 0) for j in range(i)):
                chosen.append(c)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if extend(0) else None
