"""
GF(2) linear algebra

Products, echelon form, rank and null space on uint8 bit matrices.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import array_shapes, arrays

from mpgrand.core.gf2 import (
    as_bit_matrix,
    as_bit_vector,
    from_hex,
    identity,
    mat_mul,
    mat_vec,
    null_space,
    rank,
    rref,
    to_hex,
)

bit_matrices = arrays(
    np.uint8,
    array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=10),
    elements=st.integers(0, 1),
)


class TestValidation:
    """Constructors reject malformed input."""

    def test_rejects_non_binary_entries(self):
        """Entries other than 0/1 are refused."""
        with pytest.raises(ValueError, match="0 or 1"):
            as_bit_matrix([[0, 2]])

    def test_rejects_zero_columns(self):
        """A matrix needs at least one column."""
        with pytest.raises(ValueError, match="column"):
            as_bit_matrix(np.zeros((2, 0)))

    def test_rejects_zero_rows_unless_allowed(self):
        """Empty row sets are only legal when asked for."""
        with pytest.raises(ValueError, match="row"):
            as_bit_matrix(np.zeros((0, 3)))
        assert as_bit_matrix(np.zeros((0, 3)), allow_empty_rows=True).shape == (0, 3)

    def test_rejects_empty_vector(self):
        with pytest.raises(ValueError):
            as_bit_vector([])

    def test_results_are_read_only(self):
        """Built matrices can be shared without defensive copies."""
        m = as_bit_matrix([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            m[0, 0] = 0


class TestProducts:
    """Matrix and matrix-vector products reduce mod 2."""

    def test_identity_is_neutral(self):
        a = as_bit_matrix([[1, 1, 0], [0, 1, 1]])
        assert np.array_equal(mat_mul(a, identity(3)), a)

    def test_mod_two_reduction(self):
        """[1 1] [1 1]^T = 2 = 0 over GF(2)."""
        a = as_bit_matrix([[1, 1]])
        assert mat_mul(a, a.T).tolist() == [[0]]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            mat_mul(identity(2), identity(3))
        with pytest.raises(ValueError, match="dimension mismatch"):
            mat_vec(identity(2), as_bit_vector([1, 0, 1]))

    @given(bit_matrices, st.data())
    @settings(max_examples=50, deadline=None)
    def test_mat_vec_matches_mat_mul(self, a, data):
        """mat_vec is the single-column case of mat_mul."""
        v = data.draw(arrays(np.uint8, a.shape[1], elements=st.integers(0, 1)))
        assert np.array_equal(mat_vec(a, v), mat_mul(a, v.reshape(-1, 1)).ravel())


class TestEchelon:
    """Reduced row echelon form, rank and null space."""

    def test_rref_small(self):
        r, pivots, rk = rref(as_bit_matrix([[1, 1, 0], [1, 1, 0], [0, 1, 1]]))
        assert rk == 2
        assert pivots == (0, 1)
        assert r.tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]

    def test_rref_dependent_columns(self):
        """Columns 0 and 1 coincide, so the pivots skip column 1."""
        r, pivots, rk = rref(as_bit_matrix([[1, 1, 0], [1, 1, 1]]))
        assert (pivots, rk) == ((0, 2), 2)
        assert r.tolist() == [[1, 1, 0], [0, 0, 1]]

    @given(bit_matrices)
    @settings(max_examples=100, deadline=None)
    def test_rref_is_idempotent(self, a):
        r, pivots, rk = rref(a)
        again, again_pivots, again_rk = rref(r)
        assert np.array_equal(again, r)
        assert (again_pivots, again_rk) == (pivots, rk)

    def test_null_space_of_identity_is_empty(self):
        assert null_space(identity(4)).shape == (0, 4)

    def test_null_space_of_zero_matrix_is_everything(self):
        ns = null_space(as_bit_matrix(np.zeros((2, 3))))
        assert np.array_equal(ns, np.eye(3, dtype=np.uint8))

    @given(bit_matrices)
    @settings(max_examples=100, deadline=None)
    def test_null_space_is_orthogonal_complement(self, a):
        """A N^T = 0 and rank(A) + rank(N) = columns."""
        ns = null_space(a)
        assert ns.shape[1] == a.shape[1]
        if ns.shape[0]:
            assert not mat_mul(a, ns.T).any()
            assert rank(ns) == ns.shape[0]
        assert rank(a) + ns.shape[0] == a.shape[1]

    def test_null_space_basis_is_pinned(self):
        """One row per free column, in free-column order, pivots filled from R."""
        a = as_bit_matrix([[1, 1, 0, 1, 0], [0, 0, 1, 1, 1]])
        assert null_space(a).tolist() == [
            [1, 1, 0, 0, 0],
            [1, 0, 1, 1, 0],
            [0, 0, 1, 0, 1],
        ]


class TestHex:
    """Bit vectors to and from hex strings, MSB first."""

    def test_parse(self):
        assert from_hex("a", 4).tolist() == [1, 0, 1, 0]
        assert from_hex("0x0F", 8).tolist() == [0, 0, 0, 0, 1, 1, 1, 1]

    def test_format(self):
        assert to_hex(from_hex("deadbeef", 32)) == "deadbeef"

    @pytest.mark.parametrize("text", ["zz", "+f", "f_f", "", "0x"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            from_hex(text, 8)

    def test_wrong_length(self):
        with pytest.raises(ValueError, match="hex digits"):
            from_hex("fff", 8)
