"""Chebyshev-Gauss-Lobatto collocation primitives.

The basis works in two spaces: node values and first-kind series
coefficients.  ``transform`` moves values to coefficients, ``deriv``
differentiates a coefficient vector, and ``vandermonde`` brings the
result back to node values.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChebyshevBasis",
    "make_basis",
    "eval_poly",
    "derivative_matrix",
    "to_coefficients",
]

# beyond this the value<->coefficient transform loses enough digits to
# matter; warn but keep going
_CONDITIONING_LIMIT = 600


@dataclass(frozen=True)
class ChebyshevBasis:
    """Collocation data for a fixed node count.

    Attributes
    ----------
    n : int
        Node count.
    nodes : ndarray
        The n collocation points, ascending from -1 to +1.
    vandermonde : ndarray
        Entry (j, k) holds T_k evaluated at ``nodes[j]``.
    transform : ndarray
        Inverse of ``vandermonde``; maps node values to series
        coefficients.
    deriv : ndarray
        Strictly upper triangular; maps series coefficients to the
        coefficients of the derivative series.
    """

    n: int
    nodes: np.ndarray
    vandermonde: np.ndarray
    transform: np.ndarray
    deriv: np.ndarray


def make_basis(n: int) -> ChebyshevBasis:
    """Build the collocation basis on ``n`` Gauss-Lobatto nodes."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    if n > _CONDITIONING_LIMIT:
        warnings.warn(
            f"n={n}: the value-to-coefficient transform degrades beyond "
            f"n={_CONDITIONING_LIMIT}; expect reduced accuracy",
            RuntimeWarning,
            stacklevel=2,
        )
    j = np.arange(n)
    # sine form of cos((n-1-j)*pi/(n-1)): antisymmetric about the
    # midpoint, so the node set is exactly symmetric and the middle
    # node of an odd count is exactly zero
    nodes = np.sin(np.pi * (2 * j - (n - 1)) / (2 * (n - 1)))
    # T_k(cos t) = cos(k t) gives every Vandermonde entry in closed form
    theta = (n - 1 - j) * np.pi / (n - 1)
    vandermonde = np.cos(np.outer(theta, j))
    # dense LU with partial pivoting
    transform = np.linalg.solve(vandermonde, np.eye(n))
    return ChebyshevBasis(n, nodes, vandermonde, transform, derivative_matrix(n))


def eval_poly(k: int, x: float) -> float:
    """Evaluate the degree-k first-kind polynomial at x by the
    three-term recurrence."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    if k == 0:
        return 1.0 if np.isscalar(x) else np.ones_like(np.asarray(x, dtype=float))
    prev, cur = 1.0, x
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def derivative_matrix(n: int) -> np.ndarray:
    """Differentiation acting on first-kind series coefficients.

    Column k holds the series coefficients of the derivative of T_k,
    generated by the descending recurrence: the entry at degree k-1 is
    2k, each entry two degrees lower repeats the one above it, and the
    degree-0 entry is halved.  The result is strictly upper triangular.
    """
    if n < 2:
        raise ValueError(f"need at least 2 columns, got {n}")
    deriv = np.zeros((n, n))
    for k in range(1, n):
        deriv[k - 1, k] = 2.0 * k
        for j in range(k - 1, 0, -1):
            deriv[j - 1, k] = deriv[j + 1, k]
        deriv[0, k] *= 0.5
    return deriv


def to_coefficients(basis: ChebyshevBasis, values: np.ndarray) -> np.ndarray:
    """Series coefficients of the function with the given node values."""
    values = np.asarray(values)
    if values.shape != (basis.n,):
        raise ValueError(
            f"expected {basis.n} node values, got shape {values.shape}"
        )
    return basis.transform @ values
