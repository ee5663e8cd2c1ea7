"""Shared test fixtures and an eigensolver-independent oracle.

The oracle never calls an eigenvalue routine: characteristic polynomial
by the Leverrier-Faddeev trace recurrence, roots by a Durand-Kerner
simultaneous iteration.  Multiset comparison goes through optimal
assignment so nearly-degenerate values cannot scramble the pairing.
"""
from __future__ import annotations

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

import zs_spectrum as zs


def char_poly(mat) -> np.ndarray:
    """Monic characteristic polynomial coefficients, highest degree
    first, via the Leverrier-Faddeev recurrence."""
    mat = np.asarray(mat, dtype=complex)
    m = mat.shape[0]
    coeffs = np.empty(m + 1, dtype=complex)
    coeffs[0] = 1.0
    acc = mat.copy()
    for k in range(1, m + 1):
        c = -np.trace(acc) / k
        coeffs[k] = c
        if k < m:
            acc = mat @ (acc + c * np.eye(m))
    return coeffs


def poly_roots(coeffs, tol=1e-13, max_iter=2000) -> np.ndarray:
    """All roots by Durand-Kerner iteration (no companion matrix)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    deg = coeffs.size - 1
    if deg == 1:
        return np.array([-coeffs[1] / coeffs[0]])
    z = np.array([(0.4 + 0.9j) ** k for k in range(deg)])
    for _ in range(max_iter):
        moved = 0.0
        for i in range(deg):
            val = coeffs[0]
            for c in coeffs[1:]:
                val = val * z[i] + c
            denom = 1.0 + 0.0j
            for j in range(deg):
                if j != i:
                    denom *= z[i] - z[j]
            step = val / denom
            z[i] -= step
            moved = max(moved, abs(step))
        if moved < tol * max(1.0, float(np.max(np.abs(z)))):
            return z
    raise RuntimeError("root finder stalled; oracle unusable")


def oracle_eigs(mat) -> np.ndarray:
    return poly_roots(char_poly(mat))


def match_multisets(got, want) -> float:
    """Largest pairwise distance under an optimal one-to-one matching.

    Never sort complex values to compare spectra: tiny real parts
    scramble a lexicographic order near the imaginary axis.
    """
    got = np.asarray(got, dtype=complex).ravel()
    want = np.asarray(want, dtype=complex).ravel()
    assert got.size == want.size, f"sizes differ: {got.size} vs {want.size}"
    if got.size == 0:
        return 0.0
    cost = np.abs(got[:, None] - want[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture(scope="session", autouse=True)
def _warm_solver():
    """Absorb one-time kernel compilation before anything is timed."""
    rng = np.random.default_rng(0)
    mat = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    zs.eigenvalues(mat, want_vectors=True)
