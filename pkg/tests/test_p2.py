import pytest

from equicheck.p2 import (ConsistencyError, classify, enumerate_normal_forms,
                          reduce_to_representative)
from equicheck.rep import NormalFormParams


@pytest.mark.parametrize("d,bound,expected", [
    (1, 3, {"tau(1,1)", "tau(1,-1)", "tau(1,2)", "tau(1,-2)", "tau(1,3)", "tau(1,-3)", "rho(1)"}),
    (2, 3, {"tau(2,1)", "tau(2,-1)", "tau(2,3)", "tau(2,-3)", "rho(2)"}),
    (0, 5, {"tau(0,1)"}),
    (-2, 4, {"tau(-2,1)", "tau(-2,-1)", "tau(-2,3)", "tau(-2,-3)", "rho(-2)"}),
])
def test_classify(d, bound, expected):
    assert classify(d, bound).names() == expected


def test_alpha_values_do_not_change_the_answer():
    assert classify(2, 3, alpha_values=(1, 2, 3)).names() == classify(2, 3).names()


def test_excluded_reasons_are_recorded():
    res = classify(2, 4)
    assert res.excluded["tau(2,2)"].startswith("kernel")
    assert res.kernels["rho(2)"] == 2


@pytest.mark.parametrize("params,name", [
    ((3, 3, -2, 0, 1, 0), "tau(3,-2)"),
    ((0, 1, 0, 0, 0, 5), "tau(0,1)"),
    ((2, 4, 2, 3, 0, 7), "rho(2)"),
    ((1, 1, 1, 0, 2, 3), "tau(1,1)"),
    ((1, 2, 1, 4, 0, 0), "tau(1,-1)"),
])
def test_reductions_verify(params, name):
    red = reduce_to_representative(NormalFormParams(*params))
    assert red.verified and red.representative.name == name


def test_negative_k_at_d_zero_uses_t_inversion():
    red = reduce_to_representative(NormalFormParams(0, -2, 0, 0, 0, 1))
    assert red.representative.name == "tau(0,2)"
    assert any(m.kind == "t-inversion" for m in red.moves)


def test_untransitive_form_is_refused():
    with pytest.raises(ConsistencyError):
        reduce_to_representative(NormalFormParams(1, 1, 1, 1, 1, 1))


def test_enumeration_filters():
    forms = enumerate_normal_forms(1, 2)
    assert forms and all(p.pattern != (1, 2, 3) for p in forms)
    with pytest.raises(ValueError):
        enumerate_normal_forms(1, 0)


def test_report_is_deterministic():
    first, second = classify(1, 2).as_dict(True), classify(1, 2).as_dict(True)
    first.pop("elapsed"), second.pop("elapsed")
    assert first == second
