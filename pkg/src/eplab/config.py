"""Tolerance configuration threaded through every numerical decision."""

from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds used by rank decisions, subspace tests, and PSD checks.

    rank_multiplier scales the singular-value cutoff
    ``rank_multiplier * eps * max(rows, cols) * sigma_max``; subspace_tol
    bounds inclusion/equality residuals (sines of principal angles);
    psd_tol bounds how negative an eigenvalue may be before a Hermitian
    matrix is declared indefinite.
    """

    rank_multiplier: float = 50.0
    subspace_tol: float = 1e-8
    psd_tol: float = 1e-10

    def __post_init__(self):
        for name in ("rank_multiplier", "subspace_tol", "psd_tol"):
            value = getattr(self, name)
            if not (value > 0.0):
                raise InputError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


def resolve(cfg):
    """Return ``cfg`` or the default configuration when ``cfg`` is None."""
    return DEFAULT_TOLERANCES if cfg is None else cfg
