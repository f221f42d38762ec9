from __future__ import annotations

import numpy as np
import pytest

from lorentzsvd._linalg import complete_g_frame, gram_eigenbasis, null_space_basis
from lorentzsvd.minkowski import G_METRIC

from conftest import rng


def test_null_space_known_rank():
    # rank-2 matrix with null space span{e2 - e1, e3}
    M = np.array(
        [
            [1.0, 1.0, 1.0, 0.0],
            [0.0, 2.0, 2.0, 0.0],
            [1.0, 3.0, 3.0, 0.0],
            [2.0, 0.0, 0.0, 0.0],
        ]
    )
    B = null_space_basis(M, rtol=1e-12)
    assert B.shape == (4, 2)
    np.testing.assert_allclose(M @ B, 0.0, atol=1e-13)
    np.testing.assert_allclose(B.T @ B, np.eye(2), atol=1e-13)


def test_null_space_full_rank_is_empty():
    assert null_space_basis(np.eye(4), rtol=1e-12).shape == (4, 0)


def test_null_space_threshold_is_relative():
    # a uniformly tiny matrix is still full rank at a relative threshold
    M = 1e-14 * np.array([[2.0, 1.0], [1.0, 2.0]])
    assert null_space_basis(M, rtol=1e-8).shape == (2, 0)
    # but rank collapses once rtol passes the conditioning
    assert null_space_basis(M, rtol=10.0).shape[1] == 2


def test_gram_eigenbasis_diagonalizes():
    gen = rng(7)
    for _ in range(20):
        V = gen.normal(size=(4, 3))
        gram, W = gram_eigenbasis(V)
        assert np.all(np.diff(gram) <= 1e-12)
        np.testing.assert_allclose(
            W.T @ G_METRIC @ W, np.diag(gram), atol=1e-12
        )


def test_complete_g_frame_builds_tetrad():
    e0 = np.array([1.0, 0.0, 0.0, 0.0])
    legs = complete_g_frame([e0], count=3, sign=-1.0)
    Y = np.vstack([e0] + legs)
    np.testing.assert_allclose(Y @ G_METRIC @ Y.T, G_METRIC, atol=1e-12)


def test_complete_g_frame_from_boosted_leg():
    t = np.array([np.cosh(0.8), 0.0, np.sinh(0.8), 0.0])
    legs = complete_g_frame([t], count=3, sign=-1.0)
    Y = np.vstack([t] + legs)
    np.testing.assert_allclose(Y @ G_METRIC @ Y.T, G_METRIC, atol=1e-12)


def test_complete_g_frame_exhausted():
    frame = [np.eye(4)[k] for k in range(4)]
    with pytest.raises(np.linalg.LinAlgError):
        complete_g_frame(frame, count=1, sign=-1.0)
