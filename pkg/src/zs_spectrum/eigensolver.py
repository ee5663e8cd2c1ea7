"""Dense complex eigensolver.

The pipeline is balancing, Householder reduction to Hessenberg form,
then shifted QR iteration with deflation; eigenvectors, when wanted,
come from inverse iteration on the original matrix.  All stages are
deterministic: identical input bits give identical output bits.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import _qr_kernels as _k
from .errors import ConvergenceError, NumericError

__all__ = [
    "EigenDecomposition",
    "eigenvalues",
    "qr_step",
    "eigenvector_for",
    "ITERATION_CAP_FACTOR",
    "RESIDUAL_TOL",
]

ITERATION_CAP_FACTOR = 30
RESIDUAL_TOL = 1e-8


@dataclass
class EigenDecomposition:
    """Solver output.

    ``eigenvalues`` is sorted by descending imaginary part with ties
    broken by ascending real part.  ``eigenvectors`` (when requested)
    pairs column j with eigenvalue j.  ``converged`` is False only on
    the partial result attached to a ConvergenceError.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    iterations_used: int
    converged: bool


def _sort(vals: np.ndarray) -> np.ndarray:
    order = np.lexsort((vals.real, -vals.imag))
    return vals[order]


def _as_square_complex(mat, name="matrix"):
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{name} must be square, got shape {mat.shape}")
    if mat.shape[0] < 1:
        raise ValueError(f"{name} must be at least 1x1")
    if not np.all(np.isfinite(mat)):
        raise ValueError(f"{name} contains non-finite entries")
    return np.array(mat, dtype=np.complex128, order="C")


def eigenvalues(mat, want_vectors: bool = False) -> EigenDecomposition:
    """All eigenvalues of a square complex matrix, with multiplicity.

    Raises ConvergenceError (carrying the partial decomposition) if the
    QR iteration exceeds its step cap of 30 per dimension.
    """
    original = _as_square_complex(mat)
    m = original.shape[0]
    work = original.copy()
    _k.balance(work)
    _k.hessenberg(work)
    cs = np.empty(m, dtype=np.float64)
    sn = np.empty(m, dtype=np.complex128)
    vals, steps, unresolved = _k.qr_eigvals(
        work, ITERATION_CAP_FACTOR * m, cs, sn
    )
    vals = _sort(vals)
    if unresolved:
        partial = EigenDecomposition(vals, None, steps, False)
        raise ConvergenceError(
            f"QR iteration cap ({ITERATION_CAP_FACTOR * m} steps) reached "
            f"with {unresolved} eigenvalues unresolved",
            partial,
        )
    vectors = None
    if want_vectors:
        vectors = np.empty((m, m), dtype=complex)
        for j in range(m):
            vectors[:, j] = eigenvector_for(original, vals[j])
    return EigenDecomposition(vals, vectors, steps, True)


def qr_step(mat, shift: complex) -> np.ndarray:
    """One explicit shifted QR step on an upper Hessenberg matrix.

    Returns the similarity-equivalent Hessenberg iterate; the input is
    not modified.
    """
    hess = _as_square_complex(mat)
    m = hess.shape[0]
    scale = np.max(np.abs(hess)) if m else 0.0
    tol = 1e-13 * (1.0 + scale)
    for i in range(2, m):
        if np.any(np.abs(hess[i, : i - 1]) > tol):
            raise ValueError("matrix is not upper Hessenberg")
    if m > 1:
        cs = np.empty(m, dtype=np.float64)
        sn = np.empty(m, dtype=np.complex128)
        _k.shifted_qr_sweep(hess, np.complex128(shift), 0, m - 1, cs, sn)
    return hess


def eigenvector_for(mat, mu: complex) -> np.ndarray:
    """Unit right eigenvector for an eigenvalue estimate mu.

    Inverse iteration on the original matrix with a deterministic start
    vector; the shift is perturbed in a fixed schedule if the shifted
    system is numerically singular.  The returned vector has its
    largest component rotated to the positive real axis, so repeated
    calls give identical bits.
    """
    matc = _as_square_complex(mat)
    m = matc.shape[0]
    scale = float(np.linalg.norm(matc)) or 1.0
    target = RESIDUAL_TOL * scale
    start = np.full(m, 1.0 / np.sqrt(m), dtype=complex)
    best_vec = None
    best_res = np.inf
    perturbation = 0.0
    budget = 1e-6 * scale
    while True:
        shifted = matc - (mu + perturbation) * np.eye(m)
        try:
            with warnings.catch_warnings():
                # an exact shift makes the system singular on purpose;
                # the perturbation schedule below handles it
                warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
                factor = scipy.linalg.lu_factor(shifted)
            vec = start
            for _ in range(3):
                nxt = scipy.linalg.lu_solve(factor, vec)
                norm = np.linalg.norm(nxt)
                if not np.isfinite(norm) or norm == 0.0:
                    break
                nxt = nxt / norm
                res = np.linalg.norm(matc @ nxt - mu * nxt)
                if res < best_res:
                    best_res = res
                    best_vec = nxt
                vec = nxt
                if best_res <= target:
                    break
        except scipy.linalg.LinAlgError:
            pass
        if best_res <= target:
            break
        perturbation = (
            np.finfo(float).eps * scale
            if perturbation == 0.0
            else perturbation * 100.0
        )
        if perturbation > budget:
            break
    if best_vec is None or best_res > target:
        raise NumericError(
            f"inverse iteration failed for shift {mu}: residual "
            f"{best_res:.3e} above {target:.3e} within the perturbation "
            f"budget"
        )
    pivot = int(np.argmax(np.abs(best_vec)))
    phase = best_vec[pivot]
    best_vec = best_vec * (np.conj(phase) / abs(phase))
    return best_vec / np.linalg.norm(best_vec)
