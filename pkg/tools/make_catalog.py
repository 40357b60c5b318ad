"""Regenerate src/equicheck/data/catalog.json.

Surface equations, maps and matrices are transcribed by hand below; the
(-2)-curve configurations of the degeneration diagram nodes come from a search over
roots and are re-audited by the test suite.
"""

import json
from pathlib import Path

from equicheck.lattice import find_configuration, lines_for

OUT = Path(__file__).resolve().parents[1] / "src" / "equicheck" / "data" / "catalog.json"

# id, degree, type, lines, flag as drawn, source
NODES = [
    ("e8-1", 1, "E8", 1, "neither", "figure"),
    ("d8-1", 1, "D8", 2, "neither", "figure"),
    ("e7-2", 2, "E7", 1, "neither", "figure"),
    ("a7-2", 2, "A7", 2, "neither", "figure"),
    ("d6a1-2", 2, "D6+A1", 2, "neither", "figure"),
    ("d6-2", 2, "D6", 3, "neither", "figure"),
    ("e6-3", 3, "E6", 1, "dashed", "figure"),
    ("a5a1-3", 3, "A5+A1", 2, "dashed", "figure"),
    ("d5-3", 3, "D5", 3, "neither", "external-citation"),
    ("a5-3", 3, "A5", 3, "neither", "external-citation"),
    ("d5-4", 4, "D5", 1, "dashed", "figure"),
    ("a3-2a1-4", 4, "A3+2A1", 2, "boxed", "figure"),
    ("d4-4", 4, "D4", 2, "boxed", "figure"),
    ("a4-4", 4, "A4", 3, "dashed", "figure"),
    ("a3a1-4", 4, "A3+A1", 3, "boxed", "figure"),
    ("a3-4lines-4", 4, "A3", 4, "neither", "figure"),
    ("a4-5", 5, "A4", 1, "dashed", "figure"),
    ("a2a1-5", 5, "A2+A1", 3, "boxed", "figure"),
    ("a3-5", 5, "A3", 2, "boxed", "figure"),
    ("a2-5", 5, "A2", 4, "boxed", "figure"),
    ("a2a1-6", 6, "A2+A1", 1, "boxed", "figure"),
    ("a2-6", 6, "A2", 2, "boxed", "figure"),
    ("2a1-6", 6, "2A1", 2, "boxed", "figure"),
    ("a1-3lines-6", 6, "A1", 3, "boxed", "figure"),
    ("a1-4lines-6", 6, "A1", 4, "boxed", "figure"),
    ("a1-7", 7, "A1", 2, "boxed", "figure"),
    ("bl2-7", 7, "smooth", 3, "boxed", "figure"),
    ("f2-8", 8, "A1", 0, "boxed", "figure"),
    ("bl1-8", 8, "smooth", 1, "boxed", "figure"),
    ("p1xp1-8", 8, "smooth", 0, "boxed", "figure"),
    ("p2-9", 9, "smooth", 0, "boxed", "figure"),
]

NAMES = {"f2-8": "F2", "bl1-8": "Bl1", "bl2-7": "Bl2", "p1xp1-8": "P1xP1", "p2-9": "P2",
         "a1-3lines-6": "A1 (3 lines)", "a1-4lines-6": "A1 (4 lines)",
         "a3-4lines-4": "A3 (4 lines)"}

ARROWS = [
    ("e8-1", "e7-2"), ("d8-1", "d6a1-2"), ("d8-1", "a7-2"),
    ("e7-2", "e6-3"), ("a7-2", "a5a1-3"), ("d6a1-2", "d5-3"), ("d6a1-2", "a5a1-3"),
    ("d6-2", "a5-3"), ("d6-2", "d5-3"),
    ("e6-3", "d5-4"), ("a5a1-3", "a3-2a1-4"), ("a5a1-3", "a4-4"),
    ("d5-3", "a4-4"), ("d5-3", "d4-4"), ("a5-3", "a3a1-4"), ("a5-3", "a4-4"),
    ("d5-4", "a4-5"), ("a3-2a1-4", "a2a1-5"), ("d4-4", "a3-5"), ("a4-4", "a3-5"),
    ("a3a1-4", "a2-5"), ("a3-4lines-4", "a2-5"),
    ("a4-5", "a2a1-6"), ("a2a1-5", "a2a1-6"), ("a3-5", "2a1-6"), ("a3-5", "a2-6"),
    ("a2-5", "a1-4lines-6"), ("a2-5", "a1-3lines-6"),
    ("a2a1-6", "a1-7"), ("a2-6", "a1-7"), ("2a1-6", "a1-7"), ("2a1-6", "bl2-7"),
    ("a1-3lines-6", "bl2-7"),
    ("a1-7", "bl1-8"), ("a1-7", "f2-8"), ("bl2-7", "bl1-8"), ("bl2-7", "p1xp1-8"),
    ("bl1-8", "p2-9"),
]

RAW_GRAPHS = {
    "f2-8": {"nodes": ["C"], "matrix": [[-2]]},
    "p1xp1-8": {"nodes": [], "matrix": []},
}

# number of types of generalised del Pezzo surfaces per degree (smooth included)
TYPE_COUNTS = {"9": 1, "8": 3, "7": 2, "6": 6, "5": 7, "4": 16, "3": 21}

SURFACES = [
    {
        "id": "a4-quintic", "node": "a4-5", "degree": 5, "type": "A4", "ambient_dim": 5,
        "equations": ["x2*x4 - x1^2", "x3*x4 - x0*x1", "x0*x2 - x1*x3",
                      "x1*x2 + x0^2 + x4*x5", "x2^2 + x0*x3 + x1*x5"],
        "map": ["x*z^2", "y*z^2", "y^2*z", "x*y*z", "z^3", "-(y^3 + x^2*z)"],
        "required_fixed": {"points": [[1, 0, 0]], "lines": ["z"]},
        "expected_conditions": [
            {"pattern": [1], "relations": ["k1 - 3*d", "k2 - 2*d"], "label": "tau(d,-2d)"},
            {"pattern": [2], "relations": ["k1 - d", "2*k1 - 3*k2"], "label": "tau(3k,2k)"},
            {"pattern": [3], "relations": ["k2 - d", "2*k1 - 3*k2"], "label": "tau(2k,3k)"},
            {"pattern": [1, 2], "relations": ["d", "k1", "k2"], "label": "not transitive"},
            {"pattern": [1, 3], "relations": ["d", "k1", "k2"], "label": "not transitive"},
            {"pattern": [2, 3], "relations": ["d", "k1", "k2"], "label": "not transitive"},
        ],
        "rep": None, "lines": [], "singular_points": [],
        "claims": {"flag": "dashed", "stabilizer_min": 2},
    },
    {
        "id": "a3-2a1-quartic", "node": "a3-2a1-4", "degree": 4, "type": "A3+2A1", "ambient_dim": 4,
        "equations": ["x0*x1 - x2^2", "x0^2 - x3*x4"],
        "map": None, "required_fixed": None, "expected_conditions": None,
        "rep": {"d": "any", "projective": False, "rows": [
            ["1", "0", "0", "0", "0"],
            ["b^2", "t^{2*d}", "2*t^{d}*b", "0", "0"],
            ["b", "0", "t^{d}", "0", "0"],
            ["0", "0", "0", "t", "0"],
            ["0", "0", "0", "0", "t^-1"]]},
        "test_point": [1, 1, 1, 1, 1],
        "lines": [], "singular_points": [],
        "claims": {"flag": "boxed"},
    },
    {
        "id": "d4-quartic", "node": "d4-4", "degree": 4, "type": "D4", "ambient_dim": 4,
        "equations": ["x0*x3 - x1*x4", "x0*x1 + x1*x3 + x2^2"],
        "map": ["x*z^2", "z^3", "y*z^2", "-z*(x*z + y^2)", "-x*(x*z + y^2)"],
        "required_fixed": {"points": [[1, 0, 0]], "lines": ["z"]},
        "expected_conditions": [
            {"pattern": [2], "relations": ["k1 - 2*k2", "k1 - d"], "label": "tau(d,d/2)"},
        ],
        "rep": {"d": 2, "projective": False, "rows": [
            ["t^2", "b", "0", "0", "0"],
            ["0", "1", "0", "0", "0"],
            ["0", "0", "t", "0", "0"],
            ["0", "-b", "0", "t^2", "0"],
            ["-b*t^2", "-b^2", "0", "b*t^2", "t^4"]]},
        "lines": [], "singular_points": [],
        "claims": {"flag": "boxed", "faithful_d": [-2, 2], "stabilizer": 1},
    },
    {
        "id": "a4-quartic", "node": "a4-4", "degree": 4, "type": "A4", "ambient_dim": 4,
        "equations": ["x0*x1 - x2*x3", "x0*x4 + x1*x2 + x3^2"],
        "map": ["z^3", "x*y*z", "x*z^2", "y*z^2", "-y*(x^2 + y*z)"],
        "required_fixed": {"points": [[1, 0, 0], [0, 1, 0]], "lines": ["z"]},
        "expected_conditions": [
            {"pattern": [2], "relations": ["k2 - 2*k1", "k1 - d"], "label": "tau(d,2d)"},
        ],
        "rep": {"d": 1, "projective": False, "rows": [
            ["1", "0", "0", "0", "0"],
            ["0", "t^3", "0", "b*t^2", "0"],
            ["b", "0", "t", "0", "0"],
            ["0", "0", "0", "t^2", "0"],
            ["0", "-2*b*t^3", "0", "-b^2*t^2", "t^4"]]},
        "lines": [], "singular_points": [],
        "claims": {"flag": "dashed", "faithful_d": [-1, 1], "stabilizer": 2},
    },
    {
        "id": "a3-a1-quartic", "node": "a3a1-4", "degree": 4, "type": "A3+A1", "ambient_dim": 4,
        "equations": ["x1*x3 - x2^2", "x0*x3 + x2*x4 + x0^2"],
        "map": ["x*y*z", "y^3", "y^2*z", "y*z^2", "-x*z*(x + z)"],
        "required_fixed": {"points": [[0, 0, 1]], "lines": ["y", "z"]},
        "expected_conditions": [
            {"pattern": [1], "relations": ["k1", "k2 + d"], "label": "tau(d,d)"},
        ],
        "rep": None, "rep_note": "unavailable-from-paper (given by reference to earlier work)",
        "lines": [], "singular_points": [],
        "claims": {"flag": "boxed", "faithful_d": [-1, 1], "stabilizer": 1},
    },
    {
        "id": "a3-four-lines", "node": "a3-4lines-4", "degree": 4, "type": "A3", "ambient_dim": 4,
        "equations": ["x0*x1 - x2^2", "(x0 + x1 + x3)*x3 - x2*x4"],
        "map": ["z^3", "x^2*z", "x*z^2", "x*y*z - z^3", "(x + y)*(x*y - z^2)"],
        "required_fixed": {"points": [[1, 0, 0], [0, 1, 0], [1, -1, 0]], "lines": ["x", "z"]},
        "expected_conditions": [
            {"pattern": [3], "relations": ["d", "k1", "k2"], "label": "not transitive"},
        ],
        "rep": None, "lines": [], "singular_points": [],
        "claims": {"flag": "neither"},
    },
    {
        "id": "e6-cubic", "node": "e6-3", "degree": 3, "type": "E6", "ambient_dim": 3,
        "equations": ["x3*x0^2 - x0*x2^2 + x1^3"],
        "map": ["z^3", "y*z^2", "x*z^2", "x^2*z - y^3"],
        "required_fixed": {"points": [[1, 0, 0]], "lines": ["z"]},
        "expected_conditions": [
            {"pattern": [2], "relations": ["2*k1 - 3*k2", "k1 - d"], "label": "tau(3k,2k)"},
        ],
        "rep": {"d": 3, "projective": False, "rows": [
            ["1", "0", "0", "0"],
            ["0", "t^2", "0", "0"],
            ["b", "0", "t^3", "0"],
            ["b^2", "0", "2*b*t^3", "t^6"]]},
        "rep_as_printed": [
            ["1", "0", "0", "0"],
            ["0", "t^2", "0", "0"],
            ["b", "0", "t^3", "0"],
            ["b^2", "2*b*t^3", "0", "t^6"]],
        "lines": [["x0", "x1"]], "singular_points": [[0, 0, 0, 1]],
        "claims": {"flag": "dashed", "faithful_d": [-3, 3], "stabilizer": 2},
    },
    {
        "id": "a5-a1-cubic", "node": "a5a1-3", "degree": 3, "type": "A5+A1", "ambient_dim": 3,
        "equations": ["x1^3 + x2*x3^2 + x0*x1*x2"],
        "map": ["-z^3 - x^2*y", "y*z^2", "y^2*z", "x*y*z"],
        "required_fixed": {"points": [[1, 0, 0], [0, 1, 0]], "lines": ["y", "z"]},
        "expected_conditions": [
            {"pattern": [2], "relations": ["k1 - d", "k2 + 2*d"], "label": "tau(d,-2d)"},
        ],
        "rep": {"d": 1, "projective": True, "rows": [
            ["t^4", "-b^2*t^2", "0", "-2*b*t^3"],
            ["0", "t^2", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "b*t^2", "0", "t^3"]]},
        "lines": [["x1", "x2"], ["x1", "x3"]], "singular_points": [[0, 0, 1, 0], [1, 0, 0, 0]],
        "claims": {"flag": "dashed", "faithful_d": [-1, 1], "stabilizer": 2},
    },
]


def node_record(node_id, degree, label, lines, flag, source):
    rec = {"id": node_id, "name": NAMES.get(node_id, label), "degree": degree, "type": label,
           "lines": lines, "flag": flag, "source": source,
           "arrows_to": [b for a, b in ARROWS if a == node_id]}
    if node_id in RAW_GRAPHS:
        rec["graph"] = RAW_GRAPHS[node_id]
        return rec
    r = 9 - degree
    roots = find_configuration(r, label, lines)
    if roots is None:
        raise SystemExit(f"no configuration for {node_id}")
    rec["minus2"] = [str(c) for c in roots]
    rec["line_classes"] = [str(c) for c in lines_for(r, roots)]
    return rec


def main():
    data = {
        "version": "1",
        "type_counts": TYPE_COUNTS,
        "figure1": [node_record(*n) for n in NODES],
        "surfaces": SURFACES,
    }
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
