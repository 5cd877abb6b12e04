"""Field equations on periodic grids: residuals, reference solutions, time stepping."""

from .evolve import DiracRHS, check_cfl, evolve, fit_frequency, kg_residual, with_time_derivatives
from .operators import d1, d2, time_derivative
from .residuals import (
    LABELS,
    PRIMED_LABELS,
    ResidualReport,
    dirac_derivative,
    dirac_derivative_array,
    residual_charged,
    residual_massive,
    residual_massless,
    residual_operator_form,
)
from .solutions import charged_rest, em_plane_wave, gauge_transformed, plane_wave, rest_oscillator, sample
from .state import FieldState, Potential, read_snapshot, write_snapshot

__all__ = [
    "DiracRHS",
    "FieldState",
    "LABELS",
    "PRIMED_LABELS",
    "Potential",
    "ResidualReport",
    "charged_rest",
    "check_cfl",
    "d1",
    "d2",
    "dirac_derivative",
    "dirac_derivative_array",
    "em_plane_wave",
    "evolve",
    "fit_frequency",
    "gauge_transformed",
    "kg_residual",
    "plane_wave",
    "read_snapshot",
    "residual_charged",
    "residual_massive",
    "residual_massless",
    "residual_operator_form",
    "rest_oscillator",
    "sample",
    "time_derivative",
    "with_time_derivatives",
    "write_snapshot",
]
