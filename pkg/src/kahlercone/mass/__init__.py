"""Grid realisation of log-pole potentials, Monge-Ampere solves and tube masses."""

from .concentration import (
    CSV_COLUMNS,
    ConcentrationReport,
    ConcentrationRow,
    InconsistentRunsError,
    concentration_report,
    mixed_mass_bound,
    run_ladder,
)
from .grid import GridChart, GridError, GridField, complex_hessian, constant_form_field
from .monge_ampere import MASolution, MASolverError, class_ratio, relative_spectrum, solve_ma
from .potentials import (
    EmptyRegionError,
    GeneratorSystem,
    HessianFloorError,
    build_potentials,
    density,
    disk,
    expected_zero_set,
    fubini_study,
    measure_hessian_floor,
    min_relative_eigenvalue,
    omega_eps,
    periodic_ball,
    single_chart,
    total_mass,
    tube_mass,
    tube_region,
    two_chart,
)

__all__ = [
    "CSV_COLUMNS",
    "ConcentrationReport",
    "ConcentrationRow",
    "EmptyRegionError",
    "GeneratorSystem",
    "GridChart",
    "GridError",
    "GridField",
    "HessianFloorError",
    "InconsistentRunsError",
    "MASolution",
    "MASolverError",
    "build_potentials",
    "class_ratio",
    "complex_hessian",
    "concentration_report",
    "constant_form_field",
    "density",
    "disk",
    "expected_zero_set",
    "fubini_study",
    "measure_hessian_floor",
    "min_relative_eigenvalue",
    "mixed_mass_bound",
    "omega_eps",
    "periodic_ball",
    "relative_spectrum",
    "run_ladder",
    "single_chart",
    "solve_ma",
    "total_mass",
    "tube_mass",
    "tube_region",
    "two_chart",
]
