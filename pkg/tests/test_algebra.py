"""Basis arithmetic, structure constants, and the quadratic forms."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sublorentz import (
    AlgCoords,
    Mat2C,
    basis_matrix,
    clifford_check,
    commutator,
    from_coords,
    herm_form,
    lorentz_form,
    riem_product,
    structure_constants,
    to_coords,
    vector_class,
)
from sublorentz.validation import BRACKET_TABLE

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def coords(*vals):
    u = np.zeros(8)
    u[: len(vals)] = vals
    return AlgCoords(u)


class TestBasis:
    def test_e0(self):
        assert np.array_equal(basis_matrix(0).m, np.array([[0.5, 0], [0, 0.5]]))

    def test_e2(self):
        assert np.array_equal(basis_matrix(2).m, np.array([[0, 0.5j], [-0.5j, 0]]))

    def test_e5_is_i_e2(self):
        assert np.array_equal(basis_matrix(5).m, 1j * basis_matrix(2).m)

    def test_index_range(self):
        with pytest.raises(IndexError):
            basis_matrix(8)
        with pytest.raises(IndexError):
            basis_matrix(-1)

    def test_hermitian_split(self):
        for i in range(4):
            assert basis_matrix(i).is_hermitian(0.0)
        for i in range(4, 7):
            assert basis_matrix(i).is_skew_hermitian(0.0)


class TestCommutators:
    def test_e4_e5(self):
        got = commutator(basis_matrix(4), basis_matrix(5))
        assert np.array_equal(got.m, basis_matrix(6).m)

    def test_e2_e6(self):
        got = commutator(basis_matrix(2), basis_matrix(6))
        assert np.array_equal(got.m, basis_matrix(1).m)

    def test_center(self):
        for j in range(8):
            got = commutator(basis_matrix(0), basis_matrix(j))
            assert np.array_equal(got.m, np.zeros((2, 2)))

    @pytest.mark.parametrize("i,j,k,sign", BRACKET_TABLE)
    def test_bracket_table_exact(self, i, j, k, sign):
        got = commutator(basis_matrix(i), basis_matrix(j))
        assert np.array_equal(got.m, sign * basis_matrix(k).m)

    def test_subspace_closure(self):
        # Hermitian x Hermitian lands in su(2); su(2) acts on Hermitians; su(2) closes.
        h_idx, k_idx = (0, 1, 2, 3), (4, 5, 6)
        for i in h_idx:
            for j in h_idx:
                assert to_coords(commutator(basis_matrix(i), basis_matrix(j))).in_su2(0.0)
        for i in k_idx:
            for j in h_idx:
                assert to_coords(commutator(basis_matrix(i), basis_matrix(j))).in_H(0.0)
        for i in k_idx:
            for j in k_idx:
                assert to_coords(commutator(basis_matrix(i), basis_matrix(j))).in_su2(0.0)


class TestStructureConstants:
    def test_values(self):
        table = structure_constants()
        assert table[4, 5, 6] == 1.0
        assert table[1, 2, 6] == -1.0
        assert np.array_equal(table.C[0], np.zeros((7, 7)))
        assert np.array_equal(table.C[:, 0], np.zeros((7, 7)))
        assert np.array_equal(table.C[:, :, 0], np.zeros((7, 7)))

    def test_antisymmetry_exact(self):
        assert structure_constants().max_antisymmetry_residual() == 0.0

    def test_jacobi(self):
        assert structure_constants().max_jacobi_residual() < 1e-14

    def test_reconstructs_commutators(self):
        table = structure_constants()
        for i in range(7):
            for j in range(7):
                rebuilt = from_coords(np.concatenate([table.bracket_coords(i, j), [0.0]]))
                direct = commutator(basis_matrix(i), basis_matrix(j))
                assert rebuilt.distance(direct) < 1e-14

    def test_sectional_curvature_is_minus_one(self):
        inner = commutator(basis_matrix(1), basis_matrix(2))
        outer = commutator(inner, basis_matrix(1))
        k = riem_product(to_coords(outer), to_coords(basis_matrix(2)))
        assert k == -1.0


class TestForms:
    def test_lorentz_examples(self):
        e0, e1 = AlgCoords.basis(0), AlgCoords.basis(1)
        assert lorentz_form(e0, e0) == 1.0
        assert lorentz_form(e1, e1) == -1.0
        assert lorentz_form(e0 + e1, e0 - e1) == 2.0

    def test_lorentz_rejects_full_complex(self):
        with pytest.raises(ValueError):
            lorentz_form(AlgCoords.basis(7), AlgCoords.basis(0))

    def test_herm_examples(self):
        assert herm_form(AlgCoords.basis(0)) == 1.0
        assert herm_form(coords(1, 1)) == 0.0
        assert herm_form(coords(2, 0, 0, 1)) == 3.0

    def test_herm_rejects_skew(self):
        with pytest.raises(ValueError):
            herm_form(AlgCoords.basis(4))

    def test_riem_examples(self):
        e1, e2, e4 = AlgCoords.basis(1), AlgCoords.basis(2), AlgCoords.basis(4)
        assert riem_product(e1, e1) == 1.0
        assert riem_product(e1, e4) == 0.0
        assert riem_product(3.0 * e2, 2.0 * e2) == 6.0

    def test_riem_rejects_trace_part(self):
        with pytest.raises(ValueError):
            riem_product(AlgCoords.basis(0), AlgCoords.basis(1))

    def test_herm_form_is_four_det(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            h = coords(*rng.uniform(-5, 5, size=4))
            m = from_coords(h)
            assert abs(herm_form(h) - 4.0 * m.det().real) < 1e-13


class TestVectorClass:
    def test_examples(self):
        assert vector_class(AlgCoords.basis(0)).kind == "timelike"
        assert vector_class(AlgCoords.basis(0)).orientation == "future"
        iso = vector_class(coords(1, 1))
        assert (iso.kind, iso.orientation) == ("isotropic", "future")
        assert vector_class(AlgCoords.basis(2)).kind == "spacelike"
        past = vector_class(coords(-2, 1))
        assert (past.kind, past.orientation) == ("timelike", "past")

    def test_zero_is_spacelike(self):
        assert vector_class(AlgCoords.zero()).kind == "spacelike"


def test_clifford_anticommutation_exact():
    report = clifford_check()
    assert report.max_residual == 0.0
    assert report.checks == 9


class TestCoordinates:
    @given(st.lists(finite, min_size=8, max_size=8))
    @settings(max_examples=200, derandomize=True)
    def test_roundtrip_from_coords(self, vals):
        u = AlgCoords(np.array(vals))
        back = to_coords(from_coords(u))
        assert np.max(np.abs(back.u - u.u)) < 1e-14

    @given(st.lists(finite, min_size=8, max_size=8))
    @settings(max_examples=200, derandomize=True)
    def test_roundtrip_to_coords(self, vals):
        m = Mat2C(np.array(vals[:4]).reshape(2, 2) + 1j * np.array(vals[4:]).reshape(2, 2))
        back = from_coords(to_coords(m))
        assert back.distance(m) < 1e-14

    def test_membership_predicates(self):
        assert AlgCoords.basis(0).in_H()
        assert not AlgCoords.basis(0).in_H0()
        assert AlgCoords.basis(2).in_H0()
        assert AlgCoords.basis(5).in_su2()
        assert not AlgCoords.basis(7).in_gl_plus()
        assert AlgCoords.basis(3).in_gl_plus()


class TestMat2C:
    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            Mat2C(np.array([[np.nan, 0], [0, 1]]))
        with pytest.raises(ValueError):
            Mat2C(np.array([[np.inf, 0], [0, 1]], dtype=complex))

    def test_predicates(self):
        assert Mat2C.identity().is_hermitian()
        assert Mat2C.identity().is_unitary()
        assert Mat2C.identity().is_special()
        assert Mat2C.identity().is_positive_definite_hermitian()
        assert basis_matrix(4).is_skew_hermitian()
        assert not Mat2C(np.diag([1.0, -2.0])).is_positive_definite_hermitian()

    def test_inverse(self):
        m = Mat2C(np.array([[2.0, 1.0], [0.5, 1.0]], dtype=complex))
        assert (m @ m.inverse()).distance(Mat2C.identity()) < 1e-15

    def test_json_roundtrip(self):
        m = Mat2C(np.array([[1 + 2j, -0.5], [3j, 4.0]]))
        assert Mat2C.from_json(m.to_json()).distance(m) == 0.0
        u = AlgCoords(np.arange(8.0))
        assert np.array_equal(AlgCoords.from_json(u.to_json()).u, u.u)
