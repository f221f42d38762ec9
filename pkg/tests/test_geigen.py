"""Eigenanalysis of the correlation quadratic forms.

The production route (characteristic quartic + null spaces) and the
secular-function oracle are exercised against each other here, along
with frozen reference spectra for the states whose answers are known in
closed form.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorentzsvd.errors import NumericalFailure, PoleEvaluation
from lorentzsvd.geigen import (
    CanonicalFamily,
    classify_canonical_type,
    g_eigensystem,
    h_derivative,
    h_derivative_norm_check,
    h_function,
    lorentz_invariants,
    omega_matrices,
    oracle_eigenvalues,
    spectral_oracle,
)
from lorentzsvd.minkowski import G_METRIC, VectorClass
from lorentzsvd.qstate import (
    apply_slocc,
    lambda_from_rho,
    random_state,
    sl2c_to_lorentz,
)

from conftest import random_sl2c, rng

WERNER_HALF = np.diag([1.0, -0.5, -0.5, -0.5])

# correlation matrix of the pure product state |00><00|
PURE_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 1.0],
    ]
)


def type2_lambda(r0: float, r1: float) -> np.ndarray:
    """Non-diagonalizable canonical correlation matrix (A-side pattern)."""
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, r1, 0.0, 0.0],
            [0.0, 0.0, -r1, 0.0],
            [1.0 - r0, 0.0, 0.0, r0],
        ]
    )


def sigma_matrix(b, c, d):
    return np.array(
        [
            [1.0, 0.0, 0.0, b],
            [0.0, d, 0.0, 0.0],
            [0.0, 0.0, -d, 0.0],
            [c, 0.0, 0.0, 1.0 + c - b],
        ]
    )


# ---------------------------------------------------------------------------
# the quadratic forms and their power traces


def test_omega_pair_reference_values():
    pair = omega_matrices(np.diag([1.0, 0.0, 0.0, 0.0]))
    np.testing.assert_allclose(pair.omega_a, np.diag([1.0, 0, 0, 0]), atol=1e-15)
    np.testing.assert_allclose(pair.omega_b, np.diag([1.0, 0, 0, 0]), atol=1e-15)
    assert pair.symmetry_defect < 1e-15

    pair = omega_matrices(WERNER_HALF)
    np.testing.assert_allclose(pair.omega_a, np.diag([1.0, -0.25, -0.25, -0.25]), atol=1e-15)

    # (b, c, d) = (0.5, 0.1, 0.3): entries follow from the row products
    ob = omega_matrices(sigma_matrix(0.5, 0.1, 0.3)).omega_b
    assert ob[0, 0] == pytest.approx(0.99, abs=1e-15)
    assert ob[0, 3] == pytest.approx(0.44, abs=1e-15)
    assert ob[3, 3] == pytest.approx(-0.11, abs=1e-15)
    assert ob[1, 1] == pytest.approx(-0.09, abs=1e-15)
    assert ob[2, 2] == pytest.approx(-0.09, abs=1e-15)
    np.testing.assert_allclose(ob, ob.T, atol=1e-15)


def test_omega_rejects_wrong_shape():
    with pytest.raises(ValueError):
        omega_matrices(np.eye(3))


def test_invariants_frozen_values():
    np.testing.assert_allclose(
        lorentz_invariants(WERNER_HALF),
        [1.75, 1.1875, 1.046875, 1.01171875],
        atol=1e-15,
    )
    np.testing.assert_allclose(
        lorentz_invariants(np.diag([1.0, 0.0, 0.0, 0.0])), [1.0, 1.0, 1.0, 1.0], atol=1e-15
    )
    # defective spectrum (0.64, 0.64, 0.36, 0.36): power sums count algebraic
    # multiplicity even though only one eigenvector exists at the top
    np.testing.assert_allclose(
        lorentz_invariants(type2_lambda(0.64, 0.6)),
        [2.0, 1.0784, 0.6176, 0.36913664],
        atol=1e-14,
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_invariants_same_from_either_side(seed):
    lam = lambda_from_rho(random_state(4, seed=seed))
    pair = omega_matrices(lam)
    inv_a = lorentz_invariants(lam)
    k = G_METRIC @ pair.omega_b
    p = np.eye(4)
    inv_b = []
    for _ in range(4):
        p = p @ k
        inv_b.append(np.trace(p))
    np.testing.assert_allclose(inv_a, inv_b, rtol=1e-10, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_invariants_scale_adjusted_under_filtering(seed):
    gen = rng(seed)
    rho = random_state(4, seed=seed)
    A, B = random_sl2c(gen), random_sl2c(gen)
    lam = lambda_from_rho(rho)
    lam2 = lambda_from_rho(apply_slocc(rho, A, B))
    # the filter rescales the correlation matrix by 1/N, N = (L_A Lam L_B^T)_00,
    # so the n-th power trace picks up N^(-2n)
    N = (sl2c_to_lorentz(A) @ lam @ sl2c_to_lorentz(B).T)[0, 0]
    adjusted = lorentz_invariants(lam2) * N ** (2.0 * np.arange(1, 5))
    np.testing.assert_allclose(adjusted, lorentz_invariants(lam), rtol=1e-8, atol=1e-10)


# ---------------------------------------------------------------------------
# production eigensystems on reference states


def test_eigensystem_werner():
    sys = g_eigensystem(omega_matrices(WERNER_HALF).omega_a)
    np.testing.assert_allclose(sys.eigenvalues, [1.0, 0.25, 0.25, 0.25], atol=1e-12)
    assert sys.top_class is VectorClass.POSITIVE
    assert sys.degeneracy == 1
    assert list(sys.norms) == [1, -1, -1, -1]
    np.testing.assert_allclose(np.abs(sys.eigenvectors[0]), [1, 0, 0, 0], atol=1e-12)
    assert sys.clusters[0] == pytest.approx((1.0, 1, 1))
    center, mult, dim = sys.clusters[1]
    assert center == pytest.approx(0.25, abs=1e-12) and (mult, dim) == (3, 3)
    assert sys.condition_report.defect == 0
    assert sys.condition_report.residuals.max() < 1e-12


def test_eigensystem_defective_top():
    sys = g_eigensystem(omega_matrices(type2_lambda(0.64, 0.6)).omega_a)
    np.testing.assert_allclose(sys.eigenvalues, [0.64, 0.64, 0.36, 0.36], atol=1e-10)
    assert sys.top_class is VectorClass.NEUTRAL
    assert sys.degeneracy == 2
    assert list(sys.norms) == [0, 0, -1, -1]
    # the only top eigenvector is the lightlike direction (1,0,0,-1)/sqrt(2),
    # repeated in both algebraic slots
    np.testing.assert_allclose(
        sys.eigenvectors[0], np.array([1.0, 0, 0, -1.0]) / np.sqrt(2), atol=1e-9
    )
    np.testing.assert_allclose(sys.eigenvectors[1], sys.eigenvectors[0], atol=0)
    assert sys.condition_report.defect == 1
    (c0, m0, d0), (c1, m1, d1) = sys.clusters
    assert (m0, d0) == (2, 1) and (m1, d1) == (2, 2)
    assert c0 == pytest.approx(0.64, abs=1e-10) and c1 == pytest.approx(0.36, abs=1e-10)


def test_eigensystem_degenerate_diagonal():
    # Lambda = diag(1,0,0,1): eigenvalues (1,1,0,0), the top pair holding one
    # timelike and one spacelike direction, so the state is diagonalizable
    sys = g_eigensystem(omega_matrices(np.diag([1.0, 0.0, 0.0, 1.0])).omega_a)
    np.testing.assert_allclose(sys.eigenvalues, [1.0, 1.0, 0.0, 0.0], atol=1e-12)
    assert sys.top_class is VectorClass.POSITIVE
    assert sys.degeneracy == 2
    assert list(sys.norms) == [1, -1, -1, -1]
    assert classify_canonical_type(sys) is CanonicalFamily.TYPE_I


def test_eigensystem_zero_form():
    pair = omega_matrices(PURE_PRODUCT)
    np.testing.assert_allclose(pair.omega_a, 0.0, atol=1e-15)
    sys = g_eigensystem(pair.omega_a)
    np.testing.assert_allclose(sys.eigenvalues, 0.0, atol=0)
    assert sys.degeneracy == 4
    assert classify_canonical_type(sys) is CanonicalFamily.DEGENERATE_PRODUCT


def test_pure_product_comes_from_an_actual_state():
    rho = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    np.testing.assert_allclose(lambda_from_rho(rho), PURE_PRODUCT, atol=1e-15)


def test_classification_reference_families():
    cases = [
        (WERNER_HALF, CanonicalFamily.TYPE_I),
        (np.diag([1.0, 0.0, 0.0, 0.0]), CanonicalFamily.TYPE_I),
        (type2_lambda(0.64, 0.6), CanonicalFamily.TYPE_II),
        (sigma_matrix(0.5, 0.1, 0.3), CanonicalFamily.TYPE_II),
        (PURE_PRODUCT, CanonicalFamily.DEGENERATE_PRODUCT),
    ]
    for lam, family in cases:
        sys = g_eigensystem(omega_matrices(lam).omega_a)
        assert classify_canonical_type(sys) is family, family


def test_complex_pair_is_rejected():
    # G @ Omega has eigenvalues (1, 1, +i, -i): no correlation matrix of a
    # state produces this, and the solver must refuse rather than invent
    omega = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]
    )
    with pytest.raises(NumericalFailure):
        g_eigensystem(omega)


# ---------------------------------------------------------------------------
# hypothesis invariants of the production route


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([1, 2, 3, 4]))
def test_spectrum_invariants(seed, rank):
    lam = lambda_from_rho(random_state(rank, seed=seed))
    sys = g_eigensystem(omega_matrices(lam).omega_a)
    ev = sys.eigenvalues
    scale = max(1.0, ev[0])
    assert np.all(ev >= -1e-9 * scale)
    assert np.all(np.diff(ev) <= 1e-12 * scale)
    if sys.top_class is VectorClass.NEUTRAL:
        assert sys.degeneracy >= 2
    assert sys.condition_report.residuals.max() <= 1e-8 * scale
    # eigenvectors of distinct eigenvalues are G-orthogonal
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(ev[i] - ev[j]) > 1e-6 * scale:
                assert abs(sys.eigenvectors[i] @ G_METRIC @ sys.eigenvectors[j]) < 1e-7


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3, 4]))
def test_both_sides_share_the_spectrum(seed, rank):
    pair = omega_matrices(lambda_from_rho(random_state(rank, seed=seed)))
    ev_a = g_eigensystem(pair.omega_a).eigenvalues
    ev_b = g_eigensystem(pair.omega_b).eigenvalues
    np.testing.assert_allclose(ev_a, ev_b, atol=1e-9 * max(1.0, ev_a[0]))


# ---------------------------------------------------------------------------
# the secular-function oracle


def test_oracle_reduction_shape():
    gen = rng(31)
    for _ in range(25):
        lam = lambda_from_rho(random_state(4, seed=int(gen.integers(10**9))))
        omega = omega_matrices(lam).omega_a
        orc = spectral_oracle(omega)
        assert orc.arrow_defect < 1e-12
        np.testing.assert_allclose(orc.rotation.T @ orc.rotation, np.eye(3), atol=1e-13)
        assert np.linalg.det(orc.rotation) == pytest.approx(1.0, abs=1e-12)
        # conjugating back recovers the form
        embed = np.eye(4)
        embed[1:, 1:] = orc.rotation
        arrow = np.zeros((4, 4))
        arrow[0, 0] = orc.n0
        arrow[0, 1:] = arrow[1:, 0] = orc.n
        arrow[1:, 1:] = np.diag(orc.alpha)
        np.testing.assert_allclose(embed @ arrow @ embed.T, omega, atol=1e-12)


def test_oracle_werner_spectrum():
    orc = spectral_oracle(np.diag([1.0, -0.25, -0.25, -0.25]))
    np.testing.assert_allclose(orc.alpha, -0.25, atol=1e-15)
    np.testing.assert_allclose(orc.n, 0.0, atol=1e-15)
    # no coupled poles: h is the line n0 - lambda, vanishing at the top
    assert h_function(orc, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert h_function(orc, 0.5) == pytest.approx(0.5, abs=1e-15)
    np.testing.assert_allclose(oracle_eigenvalues(orc), [1.0, 0.25, 0.25, 0.25], atol=1e-12)


def test_oracle_defective_critical_point():
    omega = omega_matrices(type2_lambda(0.64, 0.6)).omega_a
    orc = spectral_oracle(omega)
    # the doubly degenerate top eigenvalue is a zero of h AND of h'
    assert h_function(orc, 0.64) == pytest.approx(0.0, abs=1e-12)
    assert h_derivative(orc, 0.64) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(
        oracle_eigenvalues(orc), [0.64, 0.64, 0.36, 0.36], atol=1e-9
    )


def test_h_refuses_its_poles():
    orc = spectral_oracle(omega_matrices(type2_lambda(0.64, 0.6)).omega_a)
    with pytest.raises(PoleEvaluation):
        h_function(orc, 0.28)
    with pytest.raises(PoleEvaluation):
        h_derivative(orc, 0.28)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_h_is_the_characteristic_ratio(seed):
    """psi(x) * h(x) equals det(Omega - x*G) at any non-pole point."""
    gen = rng(seed)
    omega = omega_matrices(lambda_from_rho(random_state(4, seed=seed))).omega_a
    orc = spectral_oracle(omega)
    scale = max(1.0, float(np.abs(omega).max()))
    if np.abs(orc.n).min() < 1e-6 * scale:
        return  # an uncoupled pole drops out of h; the identity needs all terms
    poles = -orc.alpha
    for _ in range(10):
        x = float(gen.uniform(-3.0, 3.0) * scale)
        if np.abs(x - poles).min() < 0.05 * scale:
            continue
        phi = float(np.linalg.det(omega - x * G_METRIC))
        psi = float(np.prod(x - poles))
        lhs = psi * h_function(orc, x)
        assert lhs == pytest.approx(phi, abs=1e-9 * max(1.0, abs(phi)))


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_oracle_agrees_with_production(rank):
    for seed in range(12):
        lam = lambda_from_rho(random_state(rank, seed=7000 * rank + seed))
        pair = omega_matrices(lam)
        for omega in (pair.omega_a, pair.omega_b):
            sys = g_eigensystem(omega)
            orc = spectral_oracle(omega)
            scale = max(1.0, sys.eigenvalues[0])
            np.testing.assert_allclose(
                oracle_eigenvalues(orc), sys.eigenvalues, atol=1e-8 * scale
            )
            # third opinion: a general-purpose dense eigensolver
            raw = np.linalg.eigvals(G_METRIC @ omega)
            assert np.abs(raw.imag).max() < 1e-7 * scale
            np.testing.assert_allclose(
                np.sort(raw.real)[::-1], sys.eigenvalues, atol=1e-7 * scale
            )
            check = h_derivative_norm_check(orc, sys)
            assert check, check.checks


def test_slope_signs_on_reference_states():
    for lam in (WERNER_HALF, type2_lambda(0.64, 0.6), sigma_matrix(0.5, 0.1, 0.3)):
        omega = omega_matrices(lam).omega_a
        check = h_derivative_norm_check(spectral_oracle(omega), g_eigensystem(omega))
        assert check, check.checks
