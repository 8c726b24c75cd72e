"""Mass concentration near Y along a decreasing eps ladder.

For each run the report records the tube mass of ``alpha_eps^p ^ omega^(n-p)``
over ``U cap {psi < log eps}``, the mixed-mass bound ``M``, the threshold
``delta = 2^-(n-p+1) delta_p(U)`` and the ``omega_eps^n``-measure of the
exceptional set ``E_delta = {lambda_{p+1} ... lambda_n > M / delta}``, where
``lambda`` are the eigenvalues of ``alpha_eps`` relative to ``omega_eps``.

``delta_p(U)`` is existential; its proxy here is the smallest tube mass of
``omega_eps^p ^ omega^(n-p)`` over the ladder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from ..linalg import HermitianForm
from ..models import FUNDAMENTAL, ManifoldModel
from .grid import GridChart
from .monge_ampere import MASolution, relative_spectrum, solve_ma
from .potentials import GeneratorSystem, density, measure_hessian_floor, periodic_ball, tube_mass, tube_region

CSV_COLUMNS = ("eps", "C_eps", "residual", "tube_mass", "E_delta_measure", "M", "delta", "min_eig_alpha_eps")
FLOOR_FRACTION = 0.5
E_SLACK = 10.0  # E_delta measure may exceed delta by a factor 1 + E_SLACK * h


class InconsistentRunsError(ValueError):
    pass


@dataclass
class ConcentrationRow:
    eps: float
    C_eps: float
    residual: float
    tube_mass: float
    omega_tube_mass: float
    E_delta_measure: float
    M: float
    delta: float
    min_eig_alpha_eps: float
    tube_radius: float

    def csv_values(self):
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


@dataclass
class ConcentrationReport:
    n: int
    p: int
    layout: str
    resolution: int
    system: str
    A: float
    U_radius: float
    delta_p: float
    rows: list = field(default_factory=list)

    @property
    def h(self):
        return 1.0 / self.resolution

    @property
    def floor_ok(self) -> bool:
        first = self.rows[0].tube_mass
        return all(r.tube_mass >= FLOOR_FRACTION * first for r in self.rows)

    @property
    def exceptional_ok(self) -> bool:
        return all(r.E_delta_measure <= r.delta * (1 + E_SLACK * self.h) for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.floor_ok and self.exceptional_ok


def run_ladder(alpha, ladder, system: GeneratorSystem, chart: GridChart, omega=None, A=None):
    """Monge-Ampere runs over ``ladder`` with a common Hessian floor ``A``."""
    n = chart.n
    omega = np.eye(n) if omega is None else np.asarray(omega, dtype=complex)
    ladder = sorted((float(e) for e in ladder), reverse=True)
    if A is None:
        A, _ = measure_hessian_floor(system, chart, ladder, omega)
    return [solve_ma(alpha, eps, system, chart, omega=omega, A=A) for eps in ladder]


def mixed_mass_bound(alpha, omega, eps, p):
    """``M = n! int_X (alpha + eps omega)^(n-p) ^ omega^p``."""
    n = alpha.shape[0]
    model = ManifoldModel.torus(n)
    a = HermitianForm(np.asarray(alpha, dtype=complex), check=False)
    w = HermitianForm(np.asarray(omega, dtype=complex), check=False)
    return factorial(n) * float(model.intersect(FUNDAMENTAL, [a + w * eps] * (n - p) + [w] * p))


def _check_family(runs):
    if not runs:
        raise InconsistentRunsError("empty run family")
    r0 = runs[0]
    for r in runs[1:]:
        if r.chart != r0.chart:
            raise InconsistentRunsError("runs use different charts")
        if not np.array_equal(r.alpha, r0.alpha) or not np.array_equal(r.omega, r0.omega):
            raise InconsistentRunsError("runs use different classes")
        if r.A != r0.A:
            raise InconsistentRunsError("runs use different Hessian floors A")
    eps = [r.eps for r in runs]
    if len(set(eps)) != len(eps):
        raise InconsistentRunsError("duplicate eps in the ladder")


def concentration_report(runs, p=None, U_radius=0.25, system_name="") -> ConcentrationReport:
    _check_family(runs)
    runs = sorted(runs, key=lambda r: -r.eps)
    chart = runs[0].chart
    n = chart.n
    if chart.layout == "tube":
        raise InconsistentRunsError("tube charts carry no analytic subset; use the plane or slice layout")
    p = 1 if p is None else p  # Y = {z1 = 0} has codimension 1
    if not 1 <= p <= n:
        raise ValueError(f"codimension p must lie in [1, {n}]")
    U = periodic_ball(chart, U_radius)
    masses = []
    for r in runs:
        region = tube_region(r.psi, r.eps, U)
        masses.append(
            (
                region,
                tube_mass(r.alpha_eps, p, r.omega, region),
                tube_mass(r.omega_eps, p, r.omega, region),
            )
        )
    delta_p = min(m[2] for m in masses)
    delta = 2.0 ** (-(n - p + 1)) * delta_p
    report = ConcentrationReport(n, p, chart.layout, chart.resolution, system_name, runs[0].A, U_radius, delta_p)
    for r, (region, am, om) in zip(runs, masses):
        M = mixed_mass_bound(r.alpha, r.omega, r.eps, p)
        lam = relative_spectrum(r)
        prod = np.prod(lam[..., p:], axis=-1) if p < n else np.ones(lam.shape[:-1])
        E = prod > M / delta
        vol = density(r.omega_eps, n)
        e_measure = float(np.sum(vol[E]) * chart.cell_area)
        radius = float(np.sqrt(np.count_nonzero(region) * chart.cell_area / np.pi))
        report.rows.append(
            ConcentrationRow(r.eps, r.C, r.residual, am, om, e_measure, M, delta, r.min_eigenvalue, radius)
        )
    return report


__all__ = [
    "CSV_COLUMNS",
    "ConcentrationReport",
    "ConcentrationRow",
    "InconsistentRunsError",
    "concentration_report",
    "mixed_mass_bound",
    "run_ladder",
]
