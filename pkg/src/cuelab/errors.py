"""Exception taxonomy shared across modules (CLI maps these to exit codes)."""


class NumericalError(RuntimeError):
    """Internal numerical failure: eigensolver non-convergence, degenerate
    residuals, spectra outside tolerance.  CLI exit code 3."""
