from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weyljacobi.blocks import a1_generators, eta_power
from weyljacobi.errors import DimensionMismatch, IntegralityError, LatticeMismatch, NotDivisible, ResourceCapExceeded
from weyljacobi.rootsystems import catalog
from weyljacobi.series import (
    POINT,
    DETERMINANT,
    JacobiForm,
    QZSeries,
    check_elliptic,
    check_group_invariance,
    divide_by_factors,
    dz,
    exact_divide,
    mul,
    pack,
    unpack,
)

A1 = catalog("A1").lattice
A2 = catalog("A2").lattice
T = 72


def series_on(L, trunc=T, max_terms=6):
    term = st.tuples(
        st.integers(0, trunc // 24 - 1).map(lambda n: 24 * n),
        st.tuples(*[st.integers(-3, 3)] * L.rank),
        st.integers(-5, 5),
    )
    return st.lists(term, max_size=max_terms).map(
        lambda ts: QZSeries.from_terms(L, {(n, d): c for n, d, c in ts if c}, trunc)
    )


def unit_on(L, trunc=T):
    """Series with q^0 term a monomial, so exact division by it always succeeds."""
    return st.tuples(series_on(L, trunc), st.tuples(*[st.integers(-2, 2)] * L.rank), st.sampled_from([1, -1, 2])).map(
        lambda t: QZSeries(L, {n: p for n, p in t[0].levels.items() if n > 0}, trunc)
        + QZSeries.from_terms(L, {(0, t[1]): t[2]}, trunc)
    )


@given(series_on(A2), series_on(A2))
def test_commutative(f, g):
    assert mul(f, g) == mul(g, f)


@given(series_on(A1), series_on(A1), series_on(A1))
def test_associative_and_distributive(f, g, h):
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, g + h) == mul(f, g) + mul(f, h)


@given(series_on(A2), unit_on(A2))
def test_exact_divide_inverts_mul(f, g):
    assert exact_divide(mul(f, g), g) == f


@given(series_on(A2), series_on(A2))
def test_dz_leibniz(f, g):
    for i in range(2):
        assert dz(mul(f, g), i) == mul(dz(f, i), g) + mul(f, dz(g, i))


@given(st.lists(st.integers(-(1 << 22), 1 << 22), min_size=0, max_size=8))
def test_pack_round_trip(v):
    assert unpack(pack(v), len(v)) == tuple(v)


@given(series_on(A2))
def test_terms_round_trip(f):
    assert QZSeries.from_terms(A2, f.terms, f.trunc24) == f


def test_half_integral_d_and_dz():
    f = QZSeries.from_terms(A1, {(0, (Fraction(1, 2),)): 1, (0, (Fraction(-1, 2),)): -1}, 24)
    assert dz(f, 0).terms == {(0, (Fraction(1, 2),)): Fraction(1, 2), (0, (Fraction(-1, 2),)): Fraction(1, 2)}


def test_not_divisible():
    one = QZSeries.constant(A1, 1, 48)
    g = QZSeries.from_terms(A1, {(0, (1,)): 1, (0, (0,)): -1}, 48)
    with pytest.raises(NotDivisible):
        exact_divide(one, g)
    with pytest.raises(NotDivisible):
        exact_divide(one, QZSeries.zero(A1, 48))


def test_division_by_factors_matches_product():
    a = QZSeries.from_terms(A1, {(0, (1,)): 1, (0, (-1,)): -1, (24, (0,)): 3}, 72)
    b = QZSeries.from_terms(A1, {(0, (2,)): 1, (24, (1,)): -2}, 72)
    c = QZSeries.from_terms(A1, {(0, (0,)): 5, (48, (3,)): 1}, 72)
    assert divide_by_factors(mul(mul(a, b), c), [a, b]) == c


def test_eta_inverse_times_eta_is_one():
    # negative valuation: truncation rule keeps the product exact
    prod = mul(eta_power(-1, 96), eta_power(1, 96))
    assert prod == QZSeries.constant(POINT, 1, prod.trunc24)
    assert prod.trunc24 == 95


def test_resource_cap():
    f = QZSeries.from_terms(A2, {(0, (i, j)): 1 for i in range(-3, 4) for j in range(-3, 4)}, 24)
    with pytest.raises(ResourceCapExceeded):
        mul(f, f, max_terms=10)


def test_lattice_and_dimension_mismatch():
    with pytest.raises(LatticeMismatch):
        QZSeries.constant(A1, 1, 24) + QZSeries.constant(A2, 1, 24)
    with pytest.raises(DimensionMismatch):
        QZSeries.from_terms(A1, {(0, (1, 1)): 1}, 24)
    with pytest.raises(DimensionMismatch):
        dz(QZSeries.constant(A1, 1, 24), 1)


def test_jacobi_form_integrality():
    with pytest.raises(IntegralityError):
        JacobiForm(QZSeries.from_terms(A1, {(-24, (0,)): 1}, 48), 0, 1)
    with pytest.raises(IntegralityError):
        JacobiForm(QZSeries.from_terms(A1, {(0, (Fraction(1, 2),)): 1}, 48), 0, 1)
    with pytest.raises(IntegralityError):
        JacobiForm(QZSeries.from_terms(A1, {(3, (0,)): 1}, 48), 0, 1)


def test_product_bookkeeping():
    p0, p2 = a1_generators(48)
    prod = p0 * p2
    assert (prod.weight, prod.index) == (-2, 2)
    assert prod.character == "trivial"
    assert check_elliptic(prod).passed


def test_elliptic_law_detects_corruption():
    p0, _ = a1_generators(96)
    assert check_elliptic(p0).passed
    levels = {n: dict(p) for n, p in p0.series.levels.items()}
    levels[24][pack((2,))] += 1  # f(1, zeta^1)
    bad = p0.with_series(QZSeries(A1, levels, 96))
    rep = check_elliptic(bad)
    assert not rep.passed and rep.violations


def test_elliptic_law_forbids_low_q_terms():
    # zeta^2 at q^0 is forbidden for index 1 (partner at negative q-power)
    f = JacobiForm(QZSeries.from_terms(A1, {(0, (2,)): 1, (0, (-2,)): 1}, 48), 0, 1)
    assert not check_elliptic(f).passed


def test_index_zero_must_be_z_independent():
    f = JacobiForm(QZSeries.from_terms(A1, {(0, (1,)): 1}, 48), 0, 0)
    assert not check_elliptic(f).passed


def test_invariance_with_character():
    R = catalog("A1")
    s = QZSeries.from_terms(A1, {(0, (1,)): 1, (0, (-1,)): -1}, 24)
    odd = JacobiForm(s, -1, 1, DETERMINANT, R.weyl_generators)
    assert check_group_invariance(odd).passed
    even = JacobiForm(s, -1, 1, "trivial", R.weyl_generators)
    assert not check_group_invariance(even).passed


def test_jacobi_form_zeroth_power_is_one(a1_gens):
    one = a1_gens[0] ** 0
    assert (one.weight, one.index, one.character) == (0, 0, "trivial")
    assert (one * a1_gens[1]).series == a1_gens[1].series
