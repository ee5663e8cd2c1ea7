"""Assembly of the collocated spectral operator.

The first-order system on the line becomes a dense 2n x 2n matrix A
acting on stacked component values, with A psi = i k psi.  The
derivative enters through value -> coefficient -> differentiate ->
value, scaled by the map slope; the potential enters through diagonal
coupling blocks.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebyshevBasis
from .mapping import DomainMap, derivative_at_image, inverse
from .potentials import SampledPotential

__all__ = ["ZSOperator", "assemble", "residual", "dump_csv"]


@dataclass(frozen=True)
class ZSOperator:
    """The assembled eigenproblem matrix plus its provenance.

    ``node_coords`` holds the physical positions of the collocation
    nodes; the first and last are the signed infinities.  If mu is an
    eigenvalue of ``matrix``, the reported spectral parameter is
    k = -i*mu.
    """

    matrix: np.ndarray
    n: int
    lambda_sign: int
    dmap: DomainMap
    basis: ChebyshevBasis
    node_coords: np.ndarray


def assemble(
    basis: ChebyshevBasis,
    dmap: DomainMap,
    pot: SampledPotential,
    lambda_sign: int = 1,
) -> ZSOperator:
    """Build the block matrix [[-A1, diag q], [s*diag conj(q), A1]].

    A1 applies the mapped derivative in value space: transform to
    coefficients, differentiate there, return to values, then scale by
    the map slope.  The slope vanishes at the endpoint nodes, so rows 0
    and n-1 of A1 are identically zero; those structural modes are left
    in place for the classifier to reject.
    """
    if lambda_sign not in (1, -1):
        raise ValueError(f"lambda_sign must be +1 or -1, got {lambda_sign}")
    if pot.n != basis.n or pot.a != dmap.a:
        raise ValueError(
            f"potential sampled on (n={pot.n}, a={pot.a}) but operator "
            f"requested on (n={basis.n}, a={dmap.a})"
        )
    n = basis.n
    slope = derivative_at_image(dmap, basis.nodes)
    a1 = slope[:, None] * ((basis.vandermonde @ basis.deriv) @ basis.transform)
    mat = np.zeros((2 * n, 2 * n), dtype=complex)
    mat[:n, :n] = -a1
    mat[n:, n:] = a1
    mat[:n, n:] = np.diag(pot.values)
    mat[n:, :n] = lambda_sign * np.diag(pot.conjugate_values)
    return ZSOperator(
        matrix=mat,
        n=n,
        lambda_sign=lambda_sign,
        dmap=dmap,
        basis=basis,
        node_coords=inverse(dmap, basis.nodes),
    )


def residual(op: ZSOperator, k: complex, psi: np.ndarray) -> float:
    """Relative defect of a claimed eigenpair: |A psi - i k psi| / |psi|."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2 * op.n,):
        raise ValueError(
            f"eigenvector must have length {2 * op.n}, got shape {psi.shape}"
        )
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("eigenvector must be nonzero")
    return float(np.linalg.norm(op.matrix @ psi - 1j * k * psi) / norm)


def dump_csv(op: ZSOperator, path) -> None:
    """Write the matrix as rows of "row, col, re, im" (debug aid)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "col", "re", "im"])
        for i in range(2 * op.n):
            for j in range(2 * op.n):
                z = complex(op.matrix[i, j])
                writer.writerow([i, j, repr(z.real), repr(z.imag)])
