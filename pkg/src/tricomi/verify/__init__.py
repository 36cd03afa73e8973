"""Independent oracles, geometric predicates and check suites."""

from .appendix import SCALING_LAWS, ScalingLawReport, lemma52_identity, scaling_law_check
from .domains import (TimeSlabDomain, characteristic_domain, fit_power_law, intersection,
                      is_backward_time_connected, phi_image, phi_pullback, rectangle, union)
from .fd import (Grid1D, GridFunction, cfl_number, fd_tricomi, grid_csv, observed_order,
                 residual_field, residual_on_grid, sample_on_grid)

__all__ = [
    "SCALING_LAWS", "ScalingLawReport", "lemma52_identity", "scaling_law_check",
    "TimeSlabDomain", "characteristic_domain", "fit_power_law", "intersection",
    "is_backward_time_connected", "phi_image", "phi_pullback", "rectangle", "union",
    "Grid1D", "GridFunction", "cfl_number", "fd_tricomi", "grid_csv", "observed_order",
    "residual_field", "residual_on_grid", "sample_on_grid",
]
