"""Eigenvalue spectra of the Zakharov-Shabat system.

The main pipeline maps the real line onto (-1, 1) with a tanh change
of variables, collocates on Chebyshev-Gauss-Lobatto nodes, and solves
the resulting dense eigenproblem with an in-package shifted-QR solver.
A Fourier-collocation baseline and a split-step evolver round out the
toolbox for accuracy comparisons and soliton-content checks.
"""

from .chebyshev import (
    ChebyshevBasis,
    derivative_matrix,
    eval_poly,
    make_basis,
    to_coefficients,
)
from .discretize import ZSOperator, assemble, dump_csv, residual
from .eigensolver import (
    EigenDecomposition,
    eigenvalues,
    eigenvector_for,
    qr_step,
)
from .errors import ConvergenceError, NumericError
from .fcm import FourierGrid, diff_matrix, fcm_spectrum, make_grid
from .mapping import DomainMap, derivative_at_image, forward, inverse
from .nls import (
    EvolutionResult,
    EvolutionSetup,
    count_structures,
    evolve,
    mass,
    read_frames_binary,
    write_frames_binary,
    write_frames_csv,
)
from .potentials import (
    PotentialSpec,
    SampledPotential,
    custom,
    evaluate,
    load_table,
    modulated_sech,
    sample,
    satsuma_yajima,
    sech,
    semiclassical,
    solitonic,
    tabulated,
)
from .spectrum import (
    ConvergenceRecord,
    Eigenfunction,
    SpectrumResult,
    classify_discrete,
    compute_spectrum,
    convergence_study,
    default_routes,
    eigenfunction,
    eigenfunction_to_csv,
    result_to_csv,
    result_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ChebyshevBasis",
    "ConvergenceError",
    "ConvergenceRecord",
    "DomainMap",
    "EigenDecomposition",
    "Eigenfunction",
    "EvolutionResult",
    "EvolutionSetup",
    "FourierGrid",
    "NumericError",
    "PotentialSpec",
    "SampledPotential",
    "SpectrumResult",
    "ZSOperator",
    "assemble",
    "classify_discrete",
    "compute_spectrum",
    "convergence_study",
    "count_structures",
    "custom",
    "default_routes",
    "derivative_at_image",
    "derivative_matrix",
    "diff_matrix",
    "dump_csv",
    "eigenfunction",
    "eigenfunction_to_csv",
    "eigenvalues",
    "eigenvector_for",
    "eval_poly",
    "evaluate",
    "evolve",
    "fcm_spectrum",
    "forward",
    "inverse",
    "load_table",
    "make_basis",
    "make_grid",
    "mass",
    "modulated_sech",
    "qr_step",
    "read_frames_binary",
    "residual",
    "result_to_csv",
    "result_to_json",
    "sample",
    "satsuma_yajima",
    "sech",
    "semiclassical",
    "solitonic",
    "tabulated",
    "to_coefficients",
    "write_frames_binary",
    "write_frames_csv",
]
