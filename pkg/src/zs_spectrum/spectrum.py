"""End-to-end spectrum computation and classification.

compute_spectrum runs the whole pipeline: sample the potential on the
mapped grid, assemble, solve, convert mu -> k = -i*mu, then separate
genuine isolated eigenvalues from continuous-band leakage and the two
structural endpoint modes.  Classification is by two-resolution
confirmation: a real eigenvalue sits still when the node count grows,
an artifact does not.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import eigensolver
from .chebyshev import make_basis
from .discretize import assemble, residual
from .errors import NumericError
from .mapping import DomainMap
from .potentials import PotentialSpec, sample

__all__ = [
    "SpectrumResult",
    "ConvergenceRecord",
    "Eigenfunction",
    "compute_spectrum",
    "classify_discrete",
    "eigenfunction",
    "convergence_study",
    "default_routes",
    "result_to_json",
    "result_to_csv",
    "eigenfunction_to_csv",
    "TAU_IM",
    "DELTA_MATCH",
    "MERGE_RADIUS",
    "RESIDUAL_TOL",
]

# classification defaults, all CLI-overridable
TAU_IM = 1e-2
DELTA_MATCH = 1e-5
MERGE_RADIUS = 1e-8
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class SpectrumResult:
    """Full and classified spectra for one (potential, n, a) run.

    ``all_k`` has length 2n and inherits the solver ordering;
    ``discrete_k`` is the classified subset with ``residuals`` aligned
    entry by entry.
    """

    all_k: np.ndarray
    discrete_k: np.ndarray
    residuals: np.ndarray
    params: dict


@dataclass(frozen=True)
class ConvergenceRecord:
    """Error along a sweep path through the (a, n) plane.

    ``found[i]`` is False where no discrete eigenvalue was classified
    (the error then measures the gap to the nearest raw eigenvalue);
    ``failed[i]`` marks solver failures (error is NaN there).
    """

    path: tuple
    errors: np.ndarray
    reference_k: complex
    found: np.ndarray
    failed: np.ndarray


@dataclass(frozen=True)
class Eigenfunction:
    """Both components sampled on the mapped grid, unit total norm."""

    x: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray
    k: complex
    residual: float


def _solve_k(op) -> np.ndarray:
    decomp = eigensolver.eigenvalues(op.matrix)
    return -1j * decomp.eigenvalues


def _confirm_count(n: int) -> int:
    return n + math.ceil(n / 4)


def _merge_close(values: np.ndarray, radius: float) -> np.ndarray:
    """Average groups of entries closer than radius (rarely triggered)."""
    if values.size < 2:
        return values
    out = []
    used = np.zeros(values.size, dtype=bool)
    for i in range(values.size):
        if used[i]:
            continue
        close = np.flatnonzero(np.abs(values - values[i]) <= radius)
        close = close[~used[close]]
        used[close] = True
        out.append(values[close].mean() if close.size > 1 else values[i])
    return np.array(out, dtype=complex)


def _classify(
    all_k: np.ndarray,
    op,
    spec: PotentialSpec,
    n: int,
    a: float,
    lambda_sign: int,
    tau_im: float,
    delta_match: float,
    merge_radius: float,
    residual_tol: float,
):
    """Two-resolution confirmation plus residual screening.

    Returns (discrete_k, residuals) with residuals measured on the
    original operator; candidates must also pass the residual check on
    the confirmation operator.
    """
    candidates = all_k[np.abs(all_k.imag) > tau_im]
    if candidates.size == 0:
        return np.array([], dtype=complex), np.array([], dtype=float)
    n_confirm = _confirm_count(n)
    basis_c = make_basis(n_confirm)
    dmap = DomainMap(a)
    pot_c = sample(spec, basis_c, dmap)
    op_c = assemble(basis_c, dmap, pot_c, lambda_sign)
    confirm_k = _solve_k(op_c)
    confirm_band = confirm_k[np.abs(confirm_k.imag) > tau_im]
    kept = []
    partners = []
    for k in candidates:
        if confirm_band.size == 0:
            break
        dist = np.abs(confirm_band - k)
        j = int(np.argmin(dist))
        if dist[j] <= delta_match:
            kept.append(k)
            partners.append(confirm_band[j])
    if not kept:
        return np.array([], dtype=complex), np.array([], dtype=float)
    kept = np.array(kept, dtype=complex)
    partners = np.array(partners, dtype=complex)
    merged = _merge_close(kept, merge_radius)
    if merged.size != kept.size:
        # realign partners after a merge
        partners = np.array(
            [partners[int(np.argmin(np.abs(kept - z)))] for z in merged]
        )
        kept = merged
    final_k = []
    final_res = []
    for k, kc in zip(kept, partners):
        try:
            vec = eigensolver.eigenvector_for(op.matrix, 1j * k)
            res = residual(op, k, vec)
            vec_c = eigensolver.eigenvector_for(op_c.matrix, 1j * kc)
            res_c = residual(op_c, kc, vec_c)
        except NumericError:
            continue
        if res <= residual_tol and res_c <= residual_tol:
            final_k.append(k)
            final_res.append(res)
    return np.array(final_k, dtype=complex), np.array(final_res, dtype=float)


def compute_spectrum(
    spec: PotentialSpec,
    n: int,
    a: float | None = None,
    lambda_sign: int = 1,
    *,
    tau_im: float = TAU_IM,
    delta_match: float = DELTA_MATCH,
    merge_radius: float = MERGE_RADIUS,
    residual_tol: float = RESIDUAL_TOL,
) -> SpectrumResult:
    """Spectrum of the operator for a potential on an (n, a) grid.

    ``a`` defaults to the potential's preferred map steepness.
    """
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    if a is None:
        a = spec.default_a
    basis = make_basis(n)
    dmap = DomainMap(a)
    pot = sample(spec, basis, dmap)
    op = assemble(basis, dmap, pot, lambda_sign)
    all_k = _solve_k(op)
    discrete_k, residuals = _classify(
        all_k, op, spec, n, a, lambda_sign,
        tau_im, delta_match, merge_radius, residual_tol,
    )
    params = {
        "method": "chebyshev",
        "potential": spec.descriptor,
        "n": n,
        "a": a,
        "lambda_sign": lambda_sign,
        "tau_im": tau_im,
        "delta_match": delta_match,
        "merge_radius": merge_radius,
        "residual_tol": residual_tol,
    }
    return SpectrumResult(all_k, discrete_k, residuals, params)


def classify_discrete(
    all_k: np.ndarray,
    n: int,
    spec: PotentialSpec,
    a: float,
    lambda_sign: int = 1,
    *,
    tau_im: float = TAU_IM,
    delta_match: float = DELTA_MATCH,
    merge_radius: float = MERGE_RADIUS,
    residual_tol: float = RESIDUAL_TOL,
) -> np.ndarray:
    """Classify a raw spectrum computed at (n, a).

    Rebuilds the operator for the residual screen, runs the
    confirmation solve at the next grid size up, and returns the
    surviving eigenvalues.
    """
    basis = make_basis(n)
    dmap = DomainMap(a)
    pot = sample(spec, basis, dmap)
    op = assemble(basis, dmap, pot, lambda_sign)
    discrete_k, _ = _classify(
        np.asarray(all_k, dtype=complex), op, spec, n, a, lambda_sign,
        tau_im, delta_match, merge_radius, residual_tol,
    )
    return discrete_k


def eigenfunction(
    spec: PotentialSpec,
    n: int,
    a: float | None = None,
    lambda_sign: int = 1,
    k: complex = 0j,
) -> Eigenfunction:
    """Eigenfunction components at the eigenvalue nearest k.

    Raises ValueError when k is not close to any computed eigenvalue.
    """
    if a is None:
        a = spec.default_a
    basis = make_basis(n)
    dmap = DomainMap(a)
    pot = sample(spec, basis, dmap)
    op = assemble(basis, dmap, pot, lambda_sign)
    all_k = _solve_k(op)
    dist = np.abs(all_k - k)
    j = int(np.argmin(dist))
    scale = max(1.0, float(np.linalg.norm(op.matrix)))
    if dist[j] > 1e-6 * scale:
        raise ValueError(
            f"k={k} is not near the computed spectrum "
            f"(closest eigenvalue {all_k[j]}, distance {dist[j]:.3e})"
        )
    k_hit = complex(all_k[j])
    vec = eigensolver.eigenvector_for(op.matrix, 1j * k_hit)
    res = residual(op, k_hit, vec)
    if res > RESIDUAL_TOL:
        raise NumericError(
            f"eigenfunction residual {res:.3e} exceeds {RESIDUAL_TOL:g}"
        )
    return Eigenfunction(
        x=op.node_coords,
        psi1=vec[:n],
        psi2=vec[n:],
        k=k_hit,
        residual=res,
    )


def _sweep_point(spec, a, n, reference_k, lambda_sign, thresholds):
    try:
        result = compute_spectrum(
            spec, n, a, lambda_sign, **thresholds
        )
    except (NumericError, ValueError):
        return np.nan, False, True
    if result.discrete_k.size:
        err = float(np.min(np.abs(result.discrete_k - reference_k)))
        return err, True, False
    err = float(np.min(np.abs(result.all_k - reference_k)))
    return err, False, False


def convergence_study(
    spec: PotentialSpec,
    path,
    reference_k: complex,
    lambda_sign: int = 1,
    threads: int = 1,
    *,
    tau_im: float = TAU_IM,
    delta_match: float = DELTA_MATCH,
    merge_radius: float = MERGE_RADIUS,
    residual_tol: float = RESIDUAL_TOL,
) -> ConvergenceRecord:
    """Track the error at a reference eigenvalue along a list of (a, n)
    pairs.

    Points run independently (optionally on a thread pool); results
    keep path order regardless of completion order, and a failing point
    is recorded rather than aborting the sweep.
    """
    path = tuple((float(a), int(n)) for a, n in path)
    if not path:
        raise ValueError("sweep path must be nonempty")
    thresholds = {
        "tau_im": tau_im,
        "delta_match": delta_match,
        "merge_radius": merge_radius,
        "residual_tol": residual_tol,
    }
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(
                    lambda an: _sweep_point(
                        spec, an[0], an[1], reference_k, lambda_sign,
                        thresholds,
                    ),
                    path,
                )
            )
    else:
        rows = [
            _sweep_point(spec, a, n, reference_k, lambda_sign, thresholds)
            for a, n in path
        ]
    errors = np.array([r[0] for r in rows], dtype=float)
    found = np.array([r[1] for r in rows], dtype=bool)
    failed = np.array([r[2] for r in rows], dtype=bool)
    return ConvergenceRecord(path, errors, complex(reference_k), found, failed)


def default_routes() -> dict:
    """Three stock sweep paths through the (a, n) plane."""
    counts = list(range(21, 252, 10))
    steepness = [round(x, 6) for x in np.linspace(0.1, 0.33, len(counts))]
    return {
        "fixed-a": [(0.15, n) for n in counts],
        "diagonal": list(zip(steepness, counts)),
        "fixed-n": [(a, 251) for a in steepness],
    }


def _pairs(values: np.ndarray):
    return [[float(z.real), float(z.imag)] for z in values]


def result_to_json(result: SpectrumResult, *, meta: bool = True) -> str:
    """Serialize a SpectrumResult; set meta=False for byte-stable
    output across runs."""
    doc = {
        "schema": 1,
        "params": result.params,
        "all_k": _pairs(result.all_k),
        "discrete_k": _pairs(result.discrete_k),
        "residuals": [float(r) for r in result.residuals],
    }
    if meta:
        doc["meta"] = {"created": time.strftime("%Y-%m-%dT%H:%M:%S%z")}
    return json.dumps(doc, indent=2) + "\n"


def result_to_csv(result: SpectrumResult) -> str:
    """One eigenvalue per row: re, im, residual, discrete flag."""
    res_map = {}
    for k, r in zip(result.discrete_k, result.residuals):
        res_map[complex(k)] = float(r)
    lines = ["re,im,residual,discrete"]
    for k in result.all_k:
        z = complex(k)
        if z in res_map:
            lines.append(f"{z.real!r},{z.imag!r},{res_map[z]!r},1")
        else:
            lines.append(f"{z.real!r},{z.imag!r},,0")
    return "\n".join(lines) + "\n"


def eigenfunction_to_csv(ef: Eigenfunction) -> str:
    lines = ["x,re_psi1,im_psi1,re_psi2,im_psi2"]
    for x, p1, p2 in zip(ef.x, ef.psi1, ef.psi2):
        x, p1, p2 = float(x), complex(p1), complex(p2)
        lines.append(
            f"{x!r},{p1.real!r},{p1.imag!r},{p2.real!r},{p2.imag!r}"
        )
    return "\n".join(lines) + "\n"
