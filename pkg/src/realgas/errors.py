"""Typed exceptions shared across the solver stack.

Validity violations raise rather than clamp: a state outside the convex
region of its EOS would silently corrupt wave speeds and fluxes downstream,
so every layer surfaces the first bad state it sees.
"""


class RealGasError(Exception):
    """Base class for all package errors."""


class EosDomainError(RealGasError, ValueError):
    """Thermodynamic input outside the EOS domain (e.g. non-positive density)."""


class DegenerateEosError(RealGasError):
    """EOS degenerate at the requested state: kappa <= 0 or fitted gamma <= 1."""


class ConvexityError(RealGasError):
    """Squared sound speed non-positive; state lies outside the convex region."""


class VacuumError(RealGasError):
    """Wave curves reach (or the data would generate) a vacuum state."""


class IterationError(RealGasError):
    """A nonlinear iteration failed to converge; message carries the residual."""


class StepFailureError(RealGasError):
    """A finite-volume update produced an inadmissible cell state."""

    def __init__(self, message: str, cell_index=None, time=None):
        super().__init__(message)
        self.cell_index = cell_index
        self.time = time


class ConfigError(RealGasError, ValueError):
    """Run-configuration file failed to parse or validate."""


class RegistryError(RealGasError, KeyError):
    """Unknown benchmark-problem name."""
