import random

import pytest

from equicheck.lattice import (CurveGraph, LatticeError, NotDynkin, PicClass, PicLattice,
                               brute_force_classes, check_curve_bound, dynkin_graph, dynkin_type,
                               enumerate_classes, find_configuration, format_type, lines_for,
                               parse_type)

MINUS1 = [0, 1, 3, 6, 10, 16, 27, 56, 240]
MINUS2 = [0, 0, 2, 8, 20, 40, 72, 126, 240]


def test_pairings():
    lat = PicLattice(3)
    assert lat.degree == 6
    assert lat.canonical.self_intersection == 6
    assert lat.e(1).k_pairing == -1
    assert lat.h.dot(lat.h) == 1
    assert PicClass.parse("(1; 1,1,0)").self_intersection == -1


@pytest.mark.parametrize("r", range(9))
def test_counts(r):
    assert len(enumerate_classes(r, "minus1")) == MINUS1[r]
    assert len(enumerate_classes(r, "minus2")) == MINUS2[r]


def test_two_roots_in_rank_two():
    roots = {str(c) for c in enumerate_classes(2, "minus2")}
    assert roots == {"(0; 1,-1)", "(0; -1,1)"}


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("kind", ["minus1", "minus2"])
def test_brute_force_oracle_agrees(r, kind):
    fast = sorted(str(c) for c in enumerate_classes(r, kind))
    slow = sorted(str(c) for c in brute_force_classes(r, kind, bound=6))
    assert fast == slow


def test_rank_out_of_range():
    with pytest.raises(LatticeError):
        enumerate_classes(9, "minus1")


def _graph(adj):
    edges = [(i, j) for i, nbrs in enumerate(adj) for j in nbrs if i < j]
    return CurveGraph.from_edges(len(adj), edges)


@pytest.mark.parametrize("label", ["A1", "A4", "D4", "D5", "E6", "E7", "E8", "A3+2A1", "A5+A1", "A2+A1"])
def test_dynkin_round_trip(label):
    assert format_type(dynkin_type(_graph(dynkin_graph(parse_type(label))))) == label


@pytest.mark.parametrize("label", ["D5", "E6", "A3+2A1"])
def test_dynkin_type_ignores_relabelling(label):
    adj = dynkin_graph(parse_type(label))
    perm = list(range(len(adj)))
    random.Random(7).shuffle(perm)
    moved = [set() for _ in adj]
    for i, nbrs in enumerate(adj):
        moved[perm[i]] = {perm[j] for j in nbrs}
    assert format_type(dynkin_type(_graph(moved))) == label


def test_non_ade_graphs():
    cycle = CurveGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotDynkin):
        dynkin_type(cycle)
    affine_d4 = CurveGraph.from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
    with pytest.raises(NotDynkin):
        dynkin_type(affine_d4)


def test_bad_intersection_matrix():
    with pytest.raises(LatticeError):
        CurveGraph(["a"], [[-3]])
    with pytest.raises(LatticeError):
        CurveGraph(["a", "b"], [[-2, 1], [0, -2]])


def test_smooth_label():
    assert format_type([]) == "smooth"
    assert parse_type("smooth") == []


def test_curve_bound():
    assert check_curve_bound(5, 6)
    assert not check_curve_bound(3, 27)


def test_lines_on_smooth_cubic():
    assert len(lines_for(6, [])) == 27


def test_configuration_search():
    roots = find_configuration(4, "A2", 4)
    assert roots is not None
    assert format_type(dynkin_type(CurveGraph.from_classes(roots))) == "A2"
    assert len(lines_for(4, roots)) == 4
