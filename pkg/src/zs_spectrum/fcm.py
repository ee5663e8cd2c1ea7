"""Fourier collocation baseline on a truncated periodic interval.

Same block operator, same eigensolver, but the derivative comes from
the dense trigonometric differentiation matrix on an equispaced grid.
Exists for accuracy comparisons against the mapped Chebyshev method.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import eigensolver
from .errors import NumericError
from .potentials import PotentialSpec, evaluate
from .spectrum import (
    MERGE_RADIUS,
    RESIDUAL_TOL,
    TAU_IM,
    SpectrumResult,
    _merge_close,
)

__all__ = ["FourierGrid", "make_grid", "diff_matrix", "fcm_spectrum"]


@dataclass(frozen=True)
class FourierGrid:
    """m equispaced nodes on [-L, L), periodic."""

    half_width: float
    m: int
    nodes: np.ndarray


def make_grid(half_width: float, m: int) -> FourierGrid:
    if half_width <= 0:
        raise ValueError(f"half width must be positive, got {half_width}")
    if m < 8 or m % 2:
        raise ValueError(f"node count must be even and >= 8, got {m}")
    nodes = -half_width + 2.0 * half_width * np.arange(m) / m
    return FourierGrid(half_width, m, nodes)


def diff_matrix(grid: FourierGrid) -> np.ndarray:
    """Dense periodic spectral differentiation matrix (even node count,
    cotangent form), scaled from the standard 2*pi period to 2L."""
    m = grid.m
    offsets = np.arange(m)[:, None] - np.arange(m)[None, :]
    with np.errstate(divide="ignore"):
        entries = 0.5 * (-1.0) ** offsets / np.tan(np.pi * offsets / m)
    entries = np.where(offsets == 0, 0.0, entries)
    return (np.pi / grid.half_width) * entries


def fcm_spectrum(
    spec: PotentialSpec,
    half_width: float = 25.0,
    m: int = 256,
    lambda_sign: int = 1,
    *,
    tau_im: float = TAU_IM,
    merge_radius: float = MERGE_RADIUS,
    residual_tol: float = RESIDUAL_TOL,
) -> SpectrumResult:
    """Spectrum by Fourier collocation on [-L, L).

    Classification keeps eigenvalues off the real band (|Im k| above
    tau_im) that pass the residual screen; there is no two-resolution
    confirmation here.
    """
    if lambda_sign not in (1, -1):
        raise ValueError(f"lambda_sign must be +1 or -1, got {lambda_sign}")
    grid = make_grid(half_width, m)
    deriv = diff_matrix(grid)
    q = evaluate(spec, grid.nodes)
    if not np.all(np.isfinite(q)):
        raise NumericError("potential not finite on the truncated grid")
    mat = np.zeros((2 * m, 2 * m), dtype=complex)
    mat[:m, :m] = -deriv
    mat[m:, m:] = deriv
    mat[:m, m:] = np.diag(q)
    mat[m:, :m] = lambda_sign * np.diag(np.conj(q))
    decomp = eigensolver.eigenvalues(mat)
    all_k = -1j * decomp.eigenvalues
    candidates = _merge_close(all_k[np.abs(all_k.imag) > tau_im], merge_radius)
    kept = []
    residuals = []
    for k in candidates:
        try:
            vec = eigensolver.eigenvector_for(mat, 1j * k)
        except NumericError:
            continue
        res = float(
            np.linalg.norm(mat @ vec - 1j * k * vec) / np.linalg.norm(vec)
        )
        if res <= residual_tol:
            kept.append(k)
            residuals.append(res)
    params = {
        "method": "fcm",
        "potential": spec.descriptor,
        "half_width": half_width,
        "m": m,
        "lambda_sign": lambda_sign,
        "tau_im": tau_im,
        "merge_radius": merge_radius,
        "residual_tol": residual_tol,
    }
    return SpectrumResult(
        all_k,
        np.array(kept, dtype=complex),
        np.array(residuals, dtype=float),
        params,
    )
