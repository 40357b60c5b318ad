import pytest

from equicheck.group import GENERIC, GENERIC2, group_mul
from equicheck.poly import DomainError, P
from equicheck.rep import (FamilyError, LinearSeries, NormalFormParams, anti_homomorphism_holds,
                           boundary_profile, check_homomorphism, check_lemma32_conditions,
                           family_from_text, fingerprint, fixed_locus, induced_action_on_forms,
                           is_generically_transitive, is_series_invariant, kernel_order,
                           make_normal_form, make_rho, make_tau, stabilizer_order,
                           transitivity_determinant)
from equicheck.solve import INFINITE

E6_SERIES = ("z^3", "y*z^2", "x*z^2", "x^2*z - y^3")


def test_tau_and_rho_are_actions():
    assert check_homomorphism(make_tau(2, 3))
    assert check_homomorphism(make_rho(-2))


def test_non_action_has_witness():
    fam = family_from_text(1, [["t", "b", "0"], ["0", "t", "0"], ["0", "0", "1"]])
    res = check_homomorphism(fam)
    assert not res.passed and res.witness is not None


def test_family_rejects_non_unit_determinant():
    with pytest.raises(FamilyError):
        family_from_text(0, [["b", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])


def test_constructors_reject_degenerate_input():
    with pytest.raises(ValueError):
        make_tau(1, 0)
    with pytest.raises(ValueError):
        make_rho(0)
    with pytest.raises(ValueError):
        NormalFormParams(1, 1, 1, 0, 0, 0)


def test_transitivity_determinant():
    assert transitivity_determinant(make_tau(2, 3)) == P("-3*x*z^2")
    assert is_generically_transitive(make_rho(1))
    assert not is_generically_transitive(make_normal_form(NormalFormParams(0, 0, 0, 1, 1, 1)))


@pytest.mark.parametrize("fam,order", [
    (make_tau(3, 2), 2), (make_tau(1, -3), 3), (make_rho(2), 4), (make_rho(1), 2),
])
def test_stabilizer(fam, order):
    assert stabilizer_order(fam) == order


def test_stabilizer_needs_open_orbit_point():
    with pytest.raises(DomainError):
        stabilizer_order(make_tau(1, 1), point=(1, 0, 0))


@pytest.mark.parametrize("fam,order", [
    (make_tau(2, 4), 2), (make_tau(0, 3), 3), (make_rho(1), 1), (make_rho(2), 2),
])
def test_kernel(fam, order):
    assert kernel_order(fam) == order


def test_kernel_infinite_for_non_faithful_shape():
    fam = make_normal_form(NormalFormParams(0, 0, 0, 1, 0, 0))
    assert kernel_order(fam) == INFINITE


def test_lemma_conditions_examples():
    assert check_lemma32_conditions(NormalFormParams(2, 4, 2, 1, 0, 1))
    assert not check_lemma32_conditions(NormalFormParams(2, 3, 2, 1, 0, 1))
    assert check_lemma32_conditions(NormalFormParams(0, 0, 0, 1, 1, 1))
    assert not check_lemma32_conditions(NormalFormParams(1, 1, 1, 1, 1, 1))


def test_fixed_locus():
    assert fixed_locus(make_tau(2, 1)).as_dict() == {"points": ["(1:0:0)", "(0:1:0)"], "lines": []}
    assert fixed_locus(make_tau(2, 2)).as_dict() == {"points": [], "lines": ["z"]}


def test_boundary_profile():
    assert boundary_profile(make_rho(1)).as_dict()["forms"] == ["z", "x*z - 1/2*y^2"]
    assert boundary_profile(make_tau(1, 2)).as_dict()["forms"] == ["x", "z"]


def test_fingerprints_separate_signs_of_k():
    assert fingerprint(make_tau(1, 3)) != fingerprint(make_tau(1, -3))
    assert fingerprint(make_tau(2, 1)) != fingerprint(make_rho(2))


def test_fingerprint_is_json_stable():
    fp = fingerprint(make_rho(1))
    assert fp.to_json() == fingerprint(make_rho(1)).to_json()
    assert fp.as_dict()["boundary_profile"] == [1, 2]


def test_cubic_series_invariance():
    series = LinearSeries(3, E6_SERIES)
    assert is_series_invariant(make_normal_form(NormalFormParams(3, 3, 2, 0, 1, 0)), series)
    assert not is_series_invariant(make_normal_form(NormalFormParams(2, 2, 3, 0, 1, 0)), series)
    assert not is_series_invariant(make_normal_form(NormalFormParams(3, 3, -2, 0, 1, 0)), series)


def test_series_validation():
    with pytest.raises(ValueError):
        LinearSeries(2, ("x^2", "y"))
    with pytest.raises(ValueError):
        LinearSeries(2, ("x^2", "2*x^2"))


@pytest.mark.parametrize("fam", [make_tau(2, 3), make_rho(1)])
def test_forms_carry_an_anti_homomorphism(fam):
    assert anti_homomorphism_holds(fam, 2, GENERIC, GENERIC2)
    # the naive order is wrong for a non-commutative image
    t = induced_action_on_forms(fam, 2)

    def at(g):
        return t.subs({"b": g.b, "t": g.t})
    assert at(GENERIC) @ at(GENERIC2) != at(group_mul(fam.d, GENERIC, GENERIC2))
