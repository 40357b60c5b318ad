import pytest

from equicheck.group import (GENERIC, GENERIC2, GroupAutomorphism, GroupElement, group_inv,
                             group_mul, mu_n_is_normal, quotient_hom_check)
from equicheck.poly import P


@pytest.mark.parametrize("d", [-3, 0, 1, 2])
def test_group_law(d):
    g = group_mul(d, GENERIC, GENERIC2)
    assert g.b == P("b") + P("t") ** d * P("b'")
    assert g.t == P("t*t'")
    e = group_mul(d, GENERIC, group_inv(d, GENERIC))
    assert e == GroupElement.of(0, 1)


def test_associativity():
    d = 2
    h = GroupElement.of("3", "2")
    lhs = group_mul(d, group_mul(d, GENERIC, GENERIC2), h)
    rhs = group_mul(d, GENERIC, group_mul(d, GENERIC2, h))
    assert lhs == rhs


@pytest.mark.parametrize("d,n", [(4, 2), (6, 3), (3, 3), (0, 5)])
def test_mu_n_normal_when_n_divides_d(d, n):
    assert mu_n_is_normal(d, n)


@pytest.mark.parametrize("d,n", [(3, 2), (1, 2), (5, 3)])
def test_mu_n_not_normal(d, n):
    assert not mu_n_is_normal(d, n)


@pytest.mark.parametrize("d,n", [(2, 2), (4, 2), (6, 3), (0, 4)])
def test_quotient_map(d, n):
    rep = quotient_hom_check(d, n)
    assert rep.passed and rep.kernel_order == n and rep.target_d == d // n


def test_automorphisms():
    assert GroupAutomorphism.rescale_b(3, 5).is_homomorphism()
    assert GroupAutomorphism.invert_t(0).is_homomorphism()
    assert GroupAutomorphism.inner(2, GroupElement.of(1, 2)).is_homomorphism()
    with pytest.raises(ValueError):
        GroupAutomorphism.invert_t(1)
    with pytest.raises(ValueError):
        GroupAutomorphism.rescale_b(1, 0)
