import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import as_dict, leibniz_jacobian
from weyljacobi.blocks import a1_generators, b_tower, phi_R
from weyljacobi.errors import DimensionMismatch, LatticeMismatch
from weyljacobi.jacobian import cofactor_jacobians, is_algebraically_independent, jacobian, syzygy
from weyljacobi.rootsystems import catalog
from weyljacobi.series import DETERMINANT, check_elliptic, check_group_invariance, exact_divide


@pytest.fixture(scope="module")
def b2():
    return b_tower(2, 72)


def test_a1_matches_leibniz(a1_gens):
    assert as_dict(jacobian(a1_gens).series) == leibniz_jacobian(a1_gens)


def test_b2_matches_leibniz(b2):
    assert as_dict(jacobian(b2).series) == leibniz_jacobian(b2)


def test_bookkeeping(b2):
    J = jacobian(b2)
    assert (J.weight, J.index, J.character) == (2 + 0 - 2 - 4, 3, DETERMINANT)


@given(st.permutations(range(3)))
def test_alternating(perm):
    forms = b_tower(2, 48)
    sign = 1
    p = list(perm)
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] > p[j]:
                sign = -sign
    assert jacobian([forms[i] for i in perm]).series == jacobian(forms).series.scale(sign)


@given(st.integers(-5, 5).filter(bool))
def test_multilinear(c):
    p0, p2 = a1_generators(48)
    assert jacobian([p0 * c, p2]).series == jacobian([p0, p2]).series.scale(c)


def test_anti_invariance(b2):
    J = jacobian(b2)
    rep = check_group_invariance(J, catalog("B2").weyl_generators)
    assert rep.passed and rep.checked > 0
    assert check_elliptic(J).passed


@pytest.mark.parametrize("l", [2, 3])
def test_divisible_by_theta_block(l):
    R = catalog(f"B{l}")
    forms = b_tower(l, 48)
    J = jacobian(forms)
    q = exact_divide(J.series, phi_R(R, 48).series)
    assert set(q.levels) == {0} and set(q.levels[0]) == {0}


def test_syzygy_a1(a1_gens):
    p0, p2 = a1_gens
    fam = [p0, p2, p0 * p2 - p2 * p0 * 3]
    assert syzygy(fam).is_zero()


def test_syzygy_b2(b2):
    fam = list(b2) + [b2[1] * b2[2]]
    cof = cofactor_jacobians(fam)
    assert len(cof) == 4
    assert syzygy(fam, cof).is_zero()
    assert cof[-1].series == jacobian(b2).series


def test_dependent_triple_has_zero_jacobian(b2):
    dep = [b2[0], b2[1], b2[0] * 3]
    rep = is_algebraically_independent(dep)
    assert not rep and rep.status == "dependent or truncation-inconclusive"
    assert is_algebraically_independent(b2).status == "independent (certified)"


def test_input_checks(a1_gens, b2):
    with pytest.raises(DimensionMismatch):
        jacobian(list(a1_gens) + [a1_gens[0]])
    with pytest.raises(LatticeMismatch):
        jacobian([b2[0], b2[1], a1_gens[0]])
    with pytest.raises(DimensionMismatch):
        jacobian([])


def test_jacobian_of_a1_is_multiple_of_phi(a1_gens):
    J = jacobian(a1_gens)
    P = phi_R(catalog("A1"), J.trunc24)
    assert J.series == P.series.scale(12)


@pytest.mark.slow
def test_b4_tower_divisible_by_theta_block():
    R = catalog("B4")
    J = jacobian(b_tower(4, 48))
    assert (J.weight, J.index) == (-16, 5)
    q = exact_divide(J.series, phi_R(R, 48).series)
    assert q.levels == {0: {0: 644972544}}
