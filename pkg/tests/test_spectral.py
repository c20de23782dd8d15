import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitflip import constructions as cons
from bitflip.errors import BudgetExceededError, DegenerateSpectrumError
from bitflip.geometry import min_union_size
from bitflip.gf2 import BinaryMatrix, column_blocks, min_distance
from bitflip.spectral import (
    check_biregular_connected,
    gram_matrix,
    jacobi_eigenvalues,
    report_bound,
    spectral_summary,
    tanner_distance_bound,
    tanner_expansion_bound,
    top_two_eigenvalues,
)

TOL = 1e-6


def _block_diag(A: BinaryMatrix, B: BinaryMatrix) -> BinaryMatrix:
    a, b = A.to_array(), B.to_array()
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.uint8)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return BinaryMatrix.from_array(out)


class TestEigenvalues:
    def test_identity(self):
        l1, l2 = top_two_eigenvalues(BinaryMatrix.from_array(np.eye(5, dtype=int)))
        assert (l1, l2) == pytest.approx((1, 1), abs=TOL)

    @pytest.mark.parametrize("q, expected", [(2, (9, 2)), (3, (16, 3)), (4, (25, 4))])
    def test_projective_planes(self, q, expected):
        assert top_two_eigenvalues(cons.projective_plane(q)) == pytest.approx(expected, abs=TOL)

    @pytest.mark.parametrize(
        "H",
        [cons.projective_plane(q) for q in (2, 3, 4, 5)] + [cons.euclidean_punctured(q) for q in (3, 4, 5)],
    )
    def test_lambda1_is_degree_product(self, H):
        s = spectral_summary(H)
        assert s.biregular and s.connected
        assert s.lambda1 == pytest.approx(s.c * s.d_right, abs=TOL)

    def test_row_permutation_invariance(self):
        H = cons.euclidean_punctured(4)
        perm = np.random.default_rng(2).permutation(H.nrows)
        P = BinaryMatrix.from_array(H.to_array()[perm])
        assert top_two_eigenvalues(P) == pytest.approx(top_two_eigenvalues(H), abs=TOL)

    def test_disconnected_uses_multiplicity(self):
        fano = cons.projective_plane(2)
        s = spectral_summary(_block_diag(fano, fano))
        assert not s.connected
        assert s.lambda2_definition == "second_with_multiplicity"
        assert (s.lambda1, s.lambda2) == pytest.approx((9, 9), abs=TOL)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            spectral_summary(cons.projective_plane(4), budget=10)


class TestJacobi:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 24), st.integers(0, 10**6))
    def test_matches_lapack(self, n, seed):
        rng = np.random.default_rng(seed)
        M = rng.integers(-5, 6, size=(n, n)).astype(float)
        A = M + M.T
        ours = jacobi_eigenvalues(A)
        ref = np.sort(np.linalg.eigvalsh(A))[::-1]
        assert np.allclose(ours, ref, atol=1e-8 * max(1.0, np.abs(ref).max()))

    def test_gram_of_pg5(self):
        G = gram_matrix(cons.projective_plane(5))
        assert np.allclose(jacobi_eigenvalues(G), np.sort(np.linalg.eigvalsh(G))[::-1], atol=TOL)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestStructure:
    def test_unequal_row_weights(self):
        biregular, d_right, connected = check_biregular_connected(BinaryMatrix.from_array([[1, 1, 1], [1, 1, 0]]))
        assert not biregular and d_right is None and connected

    def test_block_diagonal_disconnected(self):
        fano = cons.projective_plane(2)
        assert check_biregular_connected(_block_diag(fano, fano)) == (True, 3, False)


class TestBounds:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_distance_bound_below_distance(self, q):
        H = cons.projective_plane(q)
        s = spectral_summary(H)
        bound = tanner_distance_bound(s.n, s.c, s.lambda1, s.lambda2)
        assert bound == pytest.approx(q + 2, abs=TOL)
        assert math.ceil(bound - TOL) <= min_distance(H)

    def test_eg4_distance_bound(self):
        H = cons.euclidean_punctured(4)
        s = spectral_summary(H)
        assert tanner_distance_bound(s.n, s.c, s.lambda1, s.lambda2) <= min_distance(H) + TOL

    @pytest.mark.parametrize("H", [cons.projective_plane(4), cons.euclidean_punctured(4)], ids=["pg4", "eg4"])
    def test_expansion_bound_below_min_union(self, H):
        s = spectral_summary(H)
        blocks = column_blocks(H)
        for t in range(1, 5):
            assert tanner_expansion_bound(s.n, s.c, s.lambda1, s.lambda2, t) <= min_union_size(blocks, t) + TOL

    def test_degenerate(self):
        with pytest.raises(DegenerateSpectrumError):
            tanner_distance_bound(5, 1, 1.0, 1.0)

    def test_expansion_t_positive(self):
        with pytest.raises(ValueError):
            tanner_expansion_bound(7, 3, 9.0, 2.0, 0)

    def test_report_bound(self):
        assert report_bound(6.000000000000001) == {"value": 6.0, "ceiling": 6}
        assert report_bound(5.25) == {"value": 5.25, "ceiling": 6}
