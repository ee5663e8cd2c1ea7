"""Shared exception types.

Argument validation raises plain ValueError throughout the package;
the classes here cover failures of the numerics themselves.
"""


class NumericError(Exception):
    """A computation produced values outside its numeric contract."""


class ConvergenceError(NumericError):
    """The eigenvalue iteration hit its step cap before resolving the
    full spectrum.

    The partial decomposition (converged flag False, unresolved entries
    taken from the current iterate) is attached as ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
