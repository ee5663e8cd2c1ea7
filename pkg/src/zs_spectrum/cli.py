"""Command-line front end.

Five subcommands: spectrum, eigenfunction, convergence, compare-fcm,
evolve.  Output files are written atomically (temp file in the target
directory, then rename), and identical flags give byte-identical files
when --no-meta drops the timestamp.

Exit codes: 0 success, 2 usage or validation error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import fcm, nls, potentials, spectrum
from .errors import NumericError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_BUILTINS = ("satsuma-yajima", "semiclassical", "solitonic", "modulated-sech")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a complex number (try 1.3j or 0.5+0.5j)"
        )


def _parse_sizes(text: str) -> list:
    try:
        sizes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("size list is empty")
    return sizes


def _parse_path(text: str) -> list:
    """Sweep path syntax: "a:n,a:n,..." (e.g. 0.15:21,0.15:51)."""
    points = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            a_part, n_part = tok.split(":")
            points.append((float(a_part), int(n_part)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad path element {tok!r}, expected a:n"
            )
    if not points:
        raise argparse.ArgumentTypeError("sweep path is empty")
    return points


def _add_potential_args(parser):
    parser.add_argument(
        "--potential",
        required=True,
        help=(
            "one of %s, or file:PATH for a tabulated potential "
            "(columns x, Re q[, Im q])" % ", ".join(_BUILTINS)
        ),
    )
    parser.add_argument("--amplitude", type=float, default=1.8,
                        help="satsuma-yajima amplitude (default 1.8)")
    parser.add_argument("--epsilon", type=float, default=0.1,
                        help="semiclassical parameter (default 0.1)")
    parser.add_argument("--width", type=float, default=0.2,
                        help="modulated-sech envelope width (default 0.2)")
    parser.add_argument("--phase-amplitude", type=float, default=10.0,
                        help="modulated-sech phase height (default 10)")
    parser.add_argument("--phase-width", type=float, default=0.4,
                        help="modulated-sech phase width (default 0.4)")


def _add_classifier_args(parser):
    parser.add_argument("--tau-im", type=float, default=spectrum.TAU_IM,
                        help="imaginary-part band threshold")
    parser.add_argument("--delta-match", type=float,
                        default=spectrum.DELTA_MATCH,
                        help="two-resolution confirmation distance")
    parser.add_argument("--merge-radius", type=float,
                        default=spectrum.MERGE_RADIUS,
                        help="duplicate merge radius")
    parser.add_argument("--residual-tol", type=float,
                        default=spectrum.RESIDUAL_TOL,
                        help="eigenpair residual ceiling")


def _add_output_args(parser, formats=("json", "csv"), default="json"):
    parser.add_argument("--output", required=True, help="output file path")
    parser.add_argument("--format", choices=formats, default=default)
    parser.add_argument(
        "--no-meta",
        action="store_true",
        help="omit the timestamp so identical runs give identical bytes",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zs-spectrum",
        description=(
            "Eigenvalue spectra of the Zakharov-Shabat system by mapped "
            "Chebyshev collocation, with a Fourier-collocation baseline "
            "and a split-step evolver for soliton-content checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="compute and classify a spectrum")
    _add_potential_args(sp)
    sp.add_argument("--n", type=int, required=True, help="node count")
    sp.add_argument("--a", type=float, default=None,
                    help="map steepness (default: per-potential)")
    sp.add_argument("--lambda-sign", type=int, choices=(1, -1), default=1)
    _add_classifier_args(sp)
    _add_output_args(sp)

    ef = sub.add_parser("eigenfunction", help="export one eigenfunction")
    _add_potential_args(ef)
    ef.add_argument("--n", type=int, required=True)
    ef.add_argument("--a", type=float, default=None)
    ef.add_argument("--lambda-sign", type=int, choices=(1, -1), default=1)
    ef.add_argument("--k", type=_parse_complex, required=True,
                    help="eigenvalue to extract, e.g. 1.3j or 0.5+0.5j")
    _add_output_args(ef, formats=("csv",), default="csv")

    cv = sub.add_parser("convergence", help="error sweep over (a, n)")
    _add_potential_args(cv)
    group = cv.add_mutually_exclusive_group(required=True)
    group.add_argument("--route", choices=("fixed-a", "diagonal", "fixed-n"),
                       help="stock sweep path")
    group.add_argument("--path", type=_parse_path,
                       help="explicit path a:n,a:n,...")
    cv.add_argument("--reference-k", type=_parse_complex, required=True)
    cv.add_argument("--lambda-sign", type=int, choices=(1, -1), default=1)
    cv.add_argument("--threads", type=int, default=None,
                    help="sweep workers (capped by ZS_NUM_THREADS)")
    _add_classifier_args(cv)
    _add_output_args(cv, default="csv", formats=("csv", "json"))

    cf = sub.add_parser("compare-fcm",
                        help="matched-size Chebyshev vs Fourier errors")
    _add_potential_args(cf)
    cf.add_argument("--sizes", type=_parse_sizes, default=[64, 128, 256],
                    help="comma list of matched sizes (default 64,128,256)")
    cf.add_argument("--half-width", type=float, default=25.0,
                    help="Fourier truncation half width (default 25)")
    cf.add_argument("--a", type=float, default=None)
    cf.add_argument("--reference-k", type=_parse_complex, required=True)
    cf.add_argument("--lambda-sign", type=int, choices=(1, -1), default=1)
    _add_classifier_args(cf)
    _add_output_args(cf, default="csv", formats=("csv", "json"))

    ev = sub.add_parser("evolve", help="split-step evolution of a profile")
    _add_potential_args(ev)
    ev.add_argument("--half-width", type=float, default=20.0)
    ev.add_argument("--m", type=int, default=512)
    ev.add_argument("--t-end", type=float, default=6.0)
    ev.add_argument("--dt", type=float, default=1e-3)
    ev.add_argument("--stride", type=int, default=50)
    _add_output_args(ev, formats=("csv", "binary"), default="csv")

    return parser


def _resolve_potential(args) -> potentials.PotentialSpec:
    sel = args.potential
    if sel.startswith("file:"):
        return potentials.load_table(sel[5:])
    if sel == "satsuma-yajima":
        return potentials.satsuma_yajima(args.amplitude)
    if sel == "semiclassical":
        return potentials.semiclassical(args.epsilon)
    if sel == "solitonic":
        return potentials.solitonic()
    if sel == "modulated-sech":
        return potentials.modulated_sech(
            args.width, args.phase_amplitude, args.phase_width
        )
    raise ValueError(
        f"unknown potential {sel!r}; choose from "
        f"{', '.join(_BUILTINS)} or file:PATH"
    )


def _atomic_write(path: str, data) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".zs-tmp-")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _thresholds(args) -> dict:
    return {
        "tau_im": args.tau_im,
        "delta_match": args.delta_match,
        "merge_radius": args.merge_radius,
        "residual_tol": args.residual_tol,
    }


def _maybe_meta(doc: dict, args) -> dict:
    if not args.no_meta:
        doc["meta"] = {"created": time.strftime("%Y-%m-%dT%H:%M:%S%z")}
    return doc


def _finish(args, data, summary: str) -> int:
    _atomic_write(args.output, data)
    print(summary + f" -> {args.output}")
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    spec = _resolve_potential(args)
    t0 = time.perf_counter()
    result = spectrum.compute_spectrum(
        spec, args.n, args.a, args.lambda_sign, **_thresholds(args)
    )
    elapsed = time.perf_counter() - t0
    if args.format == "json":
        data = spectrum.result_to_json(result, meta=not args.no_meta)
    else:
        data = spectrum.result_to_csv(result)
    max_res = float(result.residuals.max()) if result.residuals.size else 0.0
    return _finish(
        args,
        data,
        f"discrete={result.discrete_k.size} max_residual={max_res:.3e} "
        f"elapsed={elapsed:.2f}s",
    )


def _cmd_eigenfunction(args) -> int:
    spec = _resolve_potential(args)
    t0 = time.perf_counter()
    ef = spectrum.eigenfunction(
        spec, args.n, args.a, args.lambda_sign, k=args.k
    )
    elapsed = time.perf_counter() - t0
    return _finish(
        args,
        spectrum.eigenfunction_to_csv(ef),
        f"k={ef.k:.10g} residual={ef.residual:.3e} elapsed={elapsed:.2f}s",
    )


def _sweep_threads(args) -> int:
    env = os.environ.get("ZS_NUM_THREADS")
    cap = None
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise ValueError(f"ZS_NUM_THREADS={env!r} is not an integer")
    threads = args.threads if args.threads else (cap or 1)
    if cap is not None:
        threads = min(threads, cap)
    return max(1, threads)


def _cmd_convergence(args) -> int:
    spec = _resolve_potential(args)
    path = args.path if args.path else spectrum.default_routes()[args.route]
    t0 = time.perf_counter()
    record = spectrum.convergence_study(
        spec,
        path,
        args.reference_k,
        args.lambda_sign,
        threads=_sweep_threads(args),
        **_thresholds(args),
    )
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        lines = ["a,n,error,found,failed"]
        for (a, n), err, found, failed in zip(
            record.path, record.errors, record.found, record.failed
        ):
            lines.append(
                f"{float(a)!r},{int(n)},{float(err)!r},"
                f"{int(found)},{int(failed)}"
            )
        data = "\n".join(lines) + "\n"
    else:
        doc = {
            "schema": 1,
            "reference_k": [record.reference_k.real, record.reference_k.imag],
            "path": [[a, n] for a, n in record.path],
            "errors": [None if np.isnan(e) else float(e)
                       for e in record.errors],
            "found": [bool(b) for b in record.found],
            "failed": [bool(b) for b in record.failed],
        }
        data = json.dumps(_maybe_meta(doc, args), indent=2) + "\n"
    ok = int(np.sum(record.found))
    return _finish(
        args,
        data,
        f"points={len(record.path)} found={ok} elapsed={elapsed:.2f}s",
    )


def _cmd_compare_fcm(args) -> int:
    spec = _resolve_potential(args)
    ref = args.reference_k
    t0 = time.perf_counter()
    rows = []
    for size in args.sizes:
        cheb = spectrum.compute_spectrum(
            spec, size, args.a, args.lambda_sign, **_thresholds(args)
        )
        four = fcm.fcm_spectrum(
            spec,
            args.half_width,
            size,
            args.lambda_sign,
            tau_im=args.tau_im,
            merge_radius=args.merge_radius,
            residual_tol=args.residual_tol,
        )
        cheb_err = (
            float(np.min(np.abs(cheb.discrete_k - ref)))
            if cheb.discrete_k.size
            else float("inf")
        )
        fcm_err = (
            float(np.min(np.abs(four.discrete_k - ref)))
            if four.discrete_k.size
            else float("inf")
        )
        rows.append((size, cheb_err, fcm_err))
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        lines = ["size,chebyshev_error,fcm_error"]
        for size, ce, fe in rows:
            lines.append(f"{size},{ce!r},{fe!r}")
        data = "\n".join(lines) + "\n"
    else:
        doc = {
            "schema": 1,
            "reference_k": [ref.real, ref.imag],
            "rows": [
                {"size": s, "chebyshev_error": ce, "fcm_error": fe}
                for s, ce, fe in rows
            ],
        }
        data = json.dumps(_maybe_meta(doc, args), indent=2) + "\n"
    wins = sum(1 for _, ce, fe in rows if ce <= fe)
    return _finish(
        args,
        data,
        f"sizes={len(rows)} chebyshev_wins={wins} elapsed={elapsed:.2f}s",
    )


def _cmd_evolve(args) -> int:
    spec = _resolve_potential(args)
    setup = nls.EvolutionSetup(
        initial=spec,
        half_width=args.half_width,
        m=args.m,
        t_end=args.t_end,
        dt=args.dt,
        frame_stride=args.stride,
    )
    t0 = time.perf_counter()
    result = nls.evolve(setup)
    elapsed = time.perf_counter() - t0
    drift = abs(result.mass_series[-1] - result.mass_series[0])
    rel_drift = drift / result.mass_series[0] if result.mass_series[0] else 0.0
    structures = len(nls.count_structures(result.field[-1]))
    if args.format == "binary":
        buf = io.BytesIO()
        nls.write_frames_binary(result, buf)
        data = buf.getvalue()
    else:
        buf = io.StringIO()
        nls.write_frames_csv(result, buf)
        data = buf.getvalue()
    return _finish(
        args,
        data,
        f"frames={len(result.times)} mass_drift={rel_drift:.3e} "
        f"structures={structures} elapsed={elapsed:.2f}s",
    )


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "eigenfunction": _cmd_eigenfunction,
    "convergence": _cmd_convergence,
    "compare-fcm": _cmd_compare_fcm,
    "evolve": _cmd_evolve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
