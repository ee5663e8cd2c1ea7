"""Complex potentials q(x): built-in families, custom callables, and
tabulated data, plus sampling onto a mapped collocation grid."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .chebyshev import ChebyshevBasis
from .errors import NumericError
from .mapping import DomainMap, inverse

__all__ = [
    "PotentialSpec",
    "SampledPotential",
    "sech",
    "satsuma_yajima",
    "semiclassical",
    "solitonic",
    "modulated_sech",
    "custom",
    "tabulated",
    "load_table",
    "evaluate",
    "sample",
]


def sech(x):
    """Overflow-safe sech: 2 e^{-|x|} / (1 + e^{-2|x|})."""
    e = np.exp(-np.abs(x))
    return 2.0 * e / (1.0 + e * e)


@dataclass(frozen=True)
class PotentialSpec:
    """A potential declared by kind, parameters, and asymptotic limits.

    ``func`` evaluates q at finite positions; the limits say what q
    tends to at the two infinities, which sampling uses for the mapped
    endpoint nodes.  ``default_a`` is the map steepness used when a
    caller gives none.
    """

    kind: str
    func: Callable[[np.ndarray], np.ndarray]
    limit_neg: complex = 0j
    limit_pos: complex = 0j
    amplitude: float = 0.0
    epsilon: float = 0.0
    default_a: float = 0.15
    descriptor: str = ""


@dataclass(frozen=True)
class SampledPotential:
    """q and its conjugate on a specific (n, a) collocation grid."""

    values: np.ndarray
    conjugate_values: np.ndarray
    n: int
    a: float


def satsuma_yajima(amplitude: float = 1.8) -> PotentialSpec:
    """A*sech(x).  Its isolated eigenvalues are known in closed form,
    which makes it the standard accuracy yardstick."""
    if amplitude <= 0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")

    def _f(x):
        return amplitude * sech(x) + 0j

    return PotentialSpec(
        kind="satsuma_yajima",
        func=_f,
        amplitude=amplitude,
        default_a=0.15,
        descriptor=f"satsuma-yajima A={amplitude:g}",
    )


def semiclassical(epsilon: float = 0.1) -> PotentialSpec:
    """sech(2*eps*x) * exp(i*sech(2*eps*x)/eps); the eigenvalue count
    grows as eps shrinks."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    def _f(x):
        s = sech(2.0 * epsilon * x)
        return s * np.exp(1j * s / epsilon)

    return PotentialSpec(
        kind="semiclassical",
        func=_f,
        epsilon=epsilon,
        default_a=0.01,
        descriptor=f"semiclassical eps={epsilon:g}",
    )


def solitonic() -> PotentialSpec:
    """exp(-i*x)*sech(x): a chirped one-soliton profile with a single
    eigenvalue off the imaginary axis."""

    def _f(x):
        return np.exp(-1j * x) * sech(x)

    return PotentialSpec(
        kind="solitonic",
        func=_f,
        default_a=0.1,
        descriptor="solitonic",
    )


def modulated_sech(
    width: float = 0.2,
    phase_amplitude: float = 10.0,
    phase_width: float = 0.4,
) -> PotentialSpec:
    """sech(width*x) * exp(i*phase_amplitude*sech(phase_width*x)).

    A broad pulse with a localized phase bump; it carries several
    eigenvalues and is the stock multi-soliton initial profile for the
    evolver.
    """
    if width <= 0 or phase_width <= 0:
        raise ValueError("width parameters must be positive")

    def _f(x):
        return sech(width * x) * np.exp(
            1j * phase_amplitude * sech(phase_width * x)
        )

    return PotentialSpec(
        kind="custom",
        func=_f,
        default_a=0.02,
        descriptor=(
            f"modulated-sech width={width:g} "
            f"phase={phase_amplitude:g}x sech({phase_width:g}x)"
        ),
    )


def custom(
    func: Callable[[np.ndarray], np.ndarray],
    limit_neg: complex | None = None,
    limit_pos: complex | None = None,
    default_a: float = 0.15,
    descriptor: str = "custom",
) -> PotentialSpec:
    """Wrap a callable q(x).

    Both asymptotic limits must be declared; the mapped grid contains
    the two infinities and there is nothing to evaluate there.
    """
    if limit_neg is None or limit_pos is None:
        raise ValueError(
            "custom potentials must declare both asymptotic limits"
        )
    return PotentialSpec(
        kind="custom",
        func=func,
        limit_neg=complex(limit_neg),
        limit_pos=complex(limit_pos),
        default_a=default_a,
        descriptor=descriptor,
    )


def tabulated(
    x: np.ndarray,
    values: np.ndarray,
    limit_neg: complex = 0j,
    limit_pos: complex = 0j,
    default_a: float = 0.15,
    descriptor: str = "tabulated",
) -> PotentialSpec:
    """Monotone cubic interpolation of sampled q data.

    Outside the tabulated range the declared limits are used (a table
    carries no asymptotic information; decay to zero is assumed unless
    limits are given).
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=complex)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need at least two tabulated points")
    if x.shape != values.shape:
        raise ValueError("x and q columns differ in length")
    order = np.argsort(x)
    x, values = x[order], values[order]
    if np.any(np.diff(x) <= 0):
        raise ValueError("tabulated x values must be distinct")
    re = PchipInterpolator(x, values.real, extrapolate=False)
    im = PchipInterpolator(x, values.imag, extrapolate=False)
    lo, hi = x[0], x[-1]
    limit_neg = complex(limit_neg)
    limit_pos = complex(limit_pos)

    def _f(pts):
        pts = np.asarray(pts, dtype=float)
        out = re(pts) + 1j * im(pts)
        out = np.where(pts < lo, limit_neg, out)
        out = np.where(pts > hi, limit_pos, out)
        return out

    return PotentialSpec(
        kind="custom",
        func=_f,
        limit_neg=limit_neg,
        limit_pos=limit_pos,
        default_a=default_a,
        descriptor=descriptor,
    )


def load_table(path) -> PotentialSpec:
    """Read a whitespace-separated table: x, Re q[, Im q].

    Lines starting with '#' are comments.  A missing third column means
    a real potential.
    """
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.size == 0 or data.shape[0] < 2:
        raise ValueError(f"potential table {path!s} has fewer than 2 rows")
    if data.shape[1] == 2:
        vals = data[:, 1].astype(complex)
    elif data.shape[1] == 3:
        vals = data[:, 1] + 1j * data[:, 2]
    else:
        raise ValueError(
            f"potential table {path!s} must have 2 or 3 columns, "
            f"got {data.shape[1]}"
        )
    return tabulated(data[:, 0], vals, descriptor=f"file:{path!s}")


def evaluate(spec: PotentialSpec, x) -> np.ndarray:
    """q at finite positions x (scalars or arrays)."""
    return np.asarray(spec.func(np.asarray(x, dtype=float)), dtype=complex)


def sample(
    spec: PotentialSpec, basis: ChebyshevBasis, dmap: DomainMap
) -> SampledPotential:
    """Evaluate q on the mapped grid.

    Interior nodes go through the potential itself; the two endpoint
    nodes are the images of the infinities and take the declared
    limits.
    """
    x = inverse(dmap, basis.nodes)
    vals = np.empty(basis.n, dtype=complex)
    vals[0] = spec.limit_neg
    vals[-1] = spec.limit_pos
    vals[1:-1] = evaluate(spec, x[1:-1])
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        raise NumericError(
            f"potential sample not finite at node {bad[0]} (x={x[bad[0]]:g})"
        )
    return SampledPotential(vals, np.conj(vals), basis.n, dmap.a)
