import json
import shutil

import pytest

from equicheck.catalog import (CatalogError, Catalog, catalog_path, check_fixed_points_on_lines,
                               check_ideal_preserved, derive_equivariance_conditions, intertwines,
                               parse_relation, printed_rep_family, verify_map_on_surface)
from equicheck.lattice import check_curve_bound
from equicheck.rep import NormalFormParams, check_homomorphism, make_normal_form

CATALOG_SHA256 = "77bca59c65b1cd8511b52f0f5cd2bf88d6e9a7a25537220db7eded2047dc6d81"


@pytest.fixture(scope="module")
def verdicts(catalog):
    return {e.id: derive_equivariance_conditions(e)
            for e in catalog.surfaces if e.expected_conditions is not None}


def test_checksum_is_pinned(catalog):
    assert catalog.checksum == CATALOG_SHA256


def test_catalog_override(tmp_path, monkeypatch):
    copy = tmp_path / "catalog.json"
    shutil.copy(catalog_path(), copy)
    monkeypatch.setenv("EQUICHECK_CATALOG", str(copy))
    assert catalog_path() == copy
    assert Catalog.load().checksum == CATALOG_SHA256
    copy.write_text("{")
    with pytest.raises(CatalogError):
        Catalog.load()


def test_broken_arrow_is_rejected(tmp_path):
    data = json.loads(catalog_path().read_text())
    data["figure1"][0]["arrows_to"] = ["nowhere"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(CatalogError):
        Catalog.load(path)


def test_parse_relation():
    assert parse_relation("2*k1 - 3*k2") == {"k1": 2, "k2": -3}
    assert parse_relation("k1 - d") == {"k1": 1, "d": -1}


def test_maps_land_on_surfaces(catalog):
    for e in catalog.surfaces:
        assert verify_map_on_surface(e).passed is not False, e.id


def test_condition_sets_match(verdicts):
    assert all(v.matches_paper for v in verdicts.values())


def test_flags_and_stabilizers(catalog, verdicts):
    for sid, v in verdicts.items():
        claims = catalog.surface(sid).claims
        assert v.flag == claims["flag"], sid
        if "faithful_d" in claims:
            assert sorted({t["d"] for t in v.transitive}) == claims["faithful_d"], sid
        if "stabilizer" in claims:
            assert {t["stabilizer"] for t in v.transitive} == {claims["stabilizer"]}, sid
        if "stabilizer_min" in claims:
            assert min(t["stabilizer"] for t in v.transitive) == claims["stabilizer_min"], sid


def test_e6_action_lives_on_g3(verdicts):
    v = verdicts["e6-cubic"]
    assert {t["equivalent_to"] for t in v.transitive} == {"tau(3,2)", "tau(-3,-2)"}


def test_four_line_quartic_has_no_transitive_action(verdicts):
    assert verdicts["a3-four-lines"].transitive == []


def test_printed_e6_matrix_fails(catalog):
    e = catalog.surface("e6-cubic")
    fam = printed_rep_family(e)
    assert not check_homomorphism(fam)
    assert check_ideal_preserved(fam, e).passed is False
    assert check_ideal_preserved(e.explicit_family(), e).passed


@pytest.mark.parametrize("sid,params", [
    ("e6-cubic", (3, 3, 2)), ("a5-a1-cubic", (1, 1, -2)),
    ("d4-quartic", (2, 2, 1)), ("a4-quartic", (1, 1, 2)),
])
def test_ambient_matrix_intertwines(catalog, sid, params):
    e = catalog.surface(sid)
    plane = make_normal_form(NormalFormParams(*params, 0, 1, 0))
    assert intertwines(e, e.explicit_family(), plane)


def test_fixed_points_on_lines_are_singular(catalog):
    check = check_fixed_points_on_lines(catalog.surface("e6-cubic"))
    assert check.passed and "(0:0:0:1)" in check.detail


def test_curve_bound_on_nodes(catalog):
    node = catalog.node("a4-5")
    assert node.negative_curve_count == 5
    assert check_curve_bound(node)


def test_derived_flags_follow_arrows(catalog):
    assert catalog.derived_flag("e6-3") == "dashed"
    assert {"d5-4", "a4-5", "p2-9"} <= catalog.descendants("e6-3")
    assert catalog.derived_flag("a2a1-6") == "boxed"
    assert catalog.derived_flag("e8-1") == "neither"
