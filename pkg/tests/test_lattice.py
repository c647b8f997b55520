import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattice_slopes import exact_linalg as xl
from lattice_slopes.lattice import (
    Lattice,
    PowerRoot,
    SlopeValue,
    Sublattice,
    Subspace,
    compare,
    direct_sum,
    dual,
    index,
    intersect,
    orthogonal_complement,
    project,
    quotient,
    quotient_with_basis,
    scale_gram,
    sharp,
    sublattice_intersection,
    sublattice_sum,
    tensor,
)
from conftest import lattice_and_rows, lattices


def lat(rows):
    return Lattice(xl.rat_matrix(rows))


Z2 = lat([[1, 0], [0, 1]])
A2 = lat([[2, 1], [1, 2]])
D14 = lat([[1, 0], [0, 4]])
GLUED = lat([["1", "1/2"], ["1/2", "1/2"]])


# --- slope values -----------------------------------------------------------


@pytest.mark.parametrize(
    "L, expected",
    [(Z2, SlopeValue(1, 2)), (A2, SlopeValue(3, 2)), (D14, SlopeValue(4, 2))],
)
def test_slope_examples(L, expected):
    assert L.slope == expected
    assert (L.slope.vol_sq, L.slope.rank) == (expected.vol_sq, expected.rank)


def test_compare_cross_powers():
    assert compare(SlopeValue(3, 2), SlopeValue(2, 1)) == -1
    assert SlopeValue(1, 3) == SlopeValue(1, 7)
    assert SlopeValue(3, 2) * SlopeValue(4, 3) == SlopeValue(432, 6)
    m = SlopeValue(3, 2) * SlopeValue(4, 3)
    assert (m.vol_sq, m.rank) == (432, 6)


def test_slope_value_str():
    assert str(SlopeValue(3, 2)) == "(3, 2) ≈ 1.31607"


pos_rat = st.fractions(min_value=F(1, 20), max_value=50, max_denominator=20)
slope_values = st.builds(SlopeValue, pos_rat, st.integers(1, 6))


@given(slope_values, slope_values)
def test_compare_matches_logs(s1, s2):
    c = compare(s1, s2)
    d = math.log(s1.vol_sq) / (2 * s1.rank) - math.log(s2.vol_sq) / (2 * s2.rank)
    if abs(d) > 1e-9:
        assert c == (1 if d > 0 else -1)
    assert compare(s2, s1) == -c


@given(slope_values, slope_values, slope_values)
def test_mul_is_exact_and_monotone(a, b, c):
    assert math.isclose((a * b).approx, a.approx * b.approx, rel_tol=1e-9)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    if a <= b:
        assert a * c <= b * c
    assert (a * a.inverse()) == SlopeValue(1, 1)


def test_power_root_exact():
    r = PowerRoot(F(1, 2), 4)
    assert r * PowerRoot(2, 4) == 1
    assert (PowerRoot(2, 2) * PowerRoot(2, 2)).as_fraction() == 2
    assert not PowerRoot(2, 2).is_rational
    assert PowerRoot(F(9, 4), 2) == F(3, 2)
    assert PowerRoot(2, 2) < PowerRoot(3, 2)


# --- lattices ---------------------------------------------------------------


def test_rejects_non_positive_definite_and_asymmetric():
    with pytest.raises(ValueError):
        lat([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        lat([[1, 0], [1, 1]])


def test_sublattice_slopes():
    assert Sublattice(D14, ((1, 0),)).slope == SlopeValue(1, 1)
    assert Sublattice(A2, ((1, -1),)).slope == SlopeValue(2, 1)
    assert A2.full().slope == A2.slope


def test_sublattice_rejects_unsaturated():
    with pytest.raises(ValueError):
        Sublattice(Z2, ((2, 0),))
    S = Sublattice.from_rows(Z2, [[2, 0]], saturate=False)
    assert not S.saturated and S.det == 4


def test_dual_examples():
    D = dual(A2)
    assert D.gram == xl.rat_matrix([["2/3", "-1/3"], ["-1/3", "2/3"]])
    assert D.slope == SlopeValue(F(1, 3), 2)
    assert dual(Z2).gram == Z2.gram


@given(lattices())
def test_dual_involution_and_slope(L):
    assert dual(dual(L)).gram == L.gram
    assert dual(L).slope == L.slope.inverse()


def test_tensor_examples():
    T = tensor(Z2, A2)
    assert T.gram == xl.block_diag(A2.gram, A2.gram)
    assert T.slope == SlopeValue(9, 4)
    AA = tensor(A2, A2)
    assert AA.det == 81 and AA.slope == A2.slope * A2.slope
    Z1 = lat([[1]])
    assert tensor(Z1, A2).gram == A2.gram


@given(lattices(max_rank=3), lattices(max_rank=3))
def test_tensor_determinant_and_slope(L, M):
    T = tensor(L, M)
    assert T.det == L.det ** M.rank * M.det ** L.rank
    assert T.slope == L.slope * M.slope


def test_direct_sum_examples():
    assert direct_sum(lat([[1]]), lat([[1]])).gram == Z2.gram
    X = direct_sum(A2, scale_gram(A2, 4))
    assert X.det == 144


@given(lattices(max_rank=3), lattices(max_rank=3))
def test_direct_sum_slope_identity(L, M):
    S = direct_sum(L, M)
    # mu(L ⊥ M)^(l+m) = mu(L)^l mu(M)^m, in squared-volume form
    assert S.det == L.det * M.det


def test_intersect_examples():
    assert intersect(Z2, Subspace.from_rows([[1, 1]], 2)).coeffs == ((1, 1),)
    S = intersect(GLUED, Subspace.from_rows([[-1, 2]], 2))
    assert S.coeffs == ((1, -2),)  # HNF form of the line through (-1, 2)
    assert S.gram == ((1,),)
    assert intersect(A2, Subspace.full(2)) == A2.full()


def test_quotient_examples():
    Q = quotient(D14, Sublattice(D14, ((1, 0),)))
    assert Q.gram == ((4,),) and Q.slope == SlopeValue(4, 1)
    assert quotient(Z2, Sublattice(Z2, ((1, 1),))).gram == ((F(1, 2),),)
    assert quotient(A2, Sublattice(A2, ((1, 0),))).gram == ((F(3, 2),),)


@given(lattice_and_rows())
def test_quotient_determinant_identity(data):
    L, rows = data
    S = Sublattice.from_rows(L, rows)
    Q, R = quotient_with_basis(L, S)
    assert L.det == S.det * Q.det
    # [S; R] is a basis of L
    assert abs(xl.det(S.coeffs + R)) == 1


def test_project_examples():
    e1 = Subspace.from_rows([[1, 0]], 2)
    assert project(Z2, e1).gram == ((1,),)
    P = project(GLUED, orthogonal_complement(GLUED, Subspace.from_rows([[-1, 2]], 2)))
    assert P.det == F(1, 4)


@given(lattice_and_rows())
def test_project_determinant_identity(data):
    L, rows = data
    F_ = Subspace.from_rows(rows, L.rank)
    perp = orthogonal_complement(L, F_)
    assert L.det == intersect(L, perp).det * project(L, F_).det


def test_index_examples():
    assert index(Z2, [[2, 0], [0, 2]]) == 4
    assert index(GLUED, [[1, 0], [-1, 2]]) == 2
    assert index(A2, xl.identity(2)) == 1
    N = Sublattice.from_rows(GLUED, [[1, 0], [-1, 2]], saturate=False)
    assert PowerRoot(N.det / GLUED.det, 2) == 2


@given(lattices(max_rank=3), st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_index_squared_is_determinant_ratio(L, N):
    N = [row[: L.rank] for row in N[: L.rank]]
    if xl.det(N) == 0:
        return
    assert index(L, N) ** 2 == xl.det(L.gram_of(N)) / L.det


def test_sharp_examples():
    S = Sublattice(Z2, ((1, 0),))
    assert sharp(Z2, S).coeffs == ((0, 1),)
    S = Sublattice(D14, ((1, 0),))
    Ss = sharp(D14, S)
    assert quotient(dual(D14), Ss).slope == SlopeValue(1, 1) == S.slope.inverse()


@given(lattice_and_rows(k_min=0, proper=False))
def test_sharp_is_involution_and_determinant_bijection(data):
    L, rows = data
    S = Sublattice.from_rows(L, rows) if rows else L.zero()
    D = dual(L)
    Ss = sharp(L, S)
    assert Ss.rank == L.rank - S.rank
    back = sharp(D, Ss)
    assert back.coeffs == S.coeffs
    if 0 < S.rank < L.rank:
        assert S.det == L.det * Ss.det


@given(lattice_and_rows(), st.data())
def test_sum_and_intersection_dimensions(data, draw):
    L, rows = data
    n = L.rank
    k2 = draw.draw(st.integers(1, n))
    rows2 = draw.draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k2, max_size=k2))
    if xl.rank(rows2, n) < k2:
        return
    S1, S2 = Sublattice.from_rows(L, rows), Sublattice.from_rows(L, rows2)
    inter, total = sublattice_intersection(S1, S2), sublattice_sum(S1, S2)
    assert inter.rank + total.rank == S1.rank + S2.rank
    assert S1.contains(inter) and S2.contains(inter)
    assert total.span() == S1.span() + S2.span()
