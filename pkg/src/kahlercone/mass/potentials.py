"""Quasi-psh potentials with logarithmic poles along Y, and the metrics they bend.

A generator system is a list of charts ``(theta_j, [g_jk])`` with
``sum theta_j^2 = 1`` and

    psi     = 1/2 log sum_j theta_j^2 sum_k |g_jk|^2,
    psi_eps = 1/2 log(exp(2 psi) + eps^2).

On the torus the generator ``sin(pi x) + i sin(pi y)`` is a periodic
stand-in for ``sin(pi z1)``: it vanishes on the grid plane exactly at the
origin, i.e. on Y = {z1 = 0}.  The two-chart system multiplies the second
chart's generator by the unit ``2 + cos(2 pi x)``, so the zero set is the
same while the cross terms of the cutoffs are exercised.

Matrix convention: the form ``i ddbar f`` has matrix ``2 * hess(f)``, so the
modified metric ``omega + (1/2A) i ddbar psi_eps`` is ``omega + hess(psi_eps)/A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from ..linalg import generalized_eigvalsh, top_density
from .grid import GridChart, GridError, GridField, complex_hessian, constant_form_field


class HessianFloorError(ArithmeticError):
    def __init__(self, infimum, where, bound):
        self.infimum = infimum
        self.where = where
        super().__init__(f"Hessian floor violated: min relative eigenvalue {infimum:.6g} < {bound:.6g} at grid index {where}; raise A")


class EmptyRegionError(GridError):
    pass


def _transition(a, b):
    return 0.5 * (1.0 + np.sin(2 * np.pi * a) * np.cos(2 * np.pi * b))


def _plane_generator(a, b):
    return np.sin(np.pi * a) + 1j * np.sin(np.pi * b)


def _tube_generator(a, b):
    return np.sin(np.pi * a) + 0j * b


@dataclass(frozen=True)
class GeneratorSystem:
    name: str
    charts: tuple  # ((theta, (g, ...)), ...), callables of the grid-plane coordinates

    def thetas(self, chart: GridChart):
        a, b = chart.mesh()
        return [np.asarray(theta(a, b), dtype=float) for theta, _ in self.charts]

    def partition_defect(self, chart) -> float:
        return float(np.max(np.abs(sum(t**2 for t in self.thetas(chart)) - 1.0)))

    def e2psi(self, chart):
        a, b = chart.mesh()
        total = np.zeros(a.shape)
        for theta, gens in self.charts:
            th = np.asarray(theta(a, b), dtype=float)
            total += th**2 * sum(np.abs(g(a, b)) ** 2 for g in gens)
        return total

    def zero_set(self, chart):
        return self.e2psi(chart) == 0.0


def single_chart(layout="plane") -> GeneratorSystem:
    g = _tube_generator if layout == "tube" else _plane_generator
    return GeneratorSystem("single-chart", ((lambda a, b: np.ones_like(a), (g,)),))


def two_chart(layout="plane") -> GeneratorSystem:
    g = _tube_generator if layout == "tube" else _plane_generator

    def g2(a, b):
        return g(a, b) * (2.0 + np.cos(2 * np.pi * a))

    return GeneratorSystem(
        "two-chart",
        (
            (lambda a, b: np.cos(0.5 * np.pi * _transition(a, b)), (g,)),
            (lambda a, b: np.sin(0.5 * np.pi * _transition(a, b)), (g2,)),
        ),
    )


def expected_zero_set(chart: GridChart):
    """Grid points of Y = {z1 = 0} (tube charts: {x1 = 0})."""
    a, b = chart.mesh()
    if chart.layout == "tube":
        return a == 0.0
    return (a == 0.0) & (b == 0.0)


def build_potentials(system: GeneratorSystem, eps: float, chart: GridChart):
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    e2 = system.e2psi(chart)
    with np.errstate(divide="ignore"):
        psi = 0.5 * np.log(e2)
    psi_eps = 0.5 * np.log(e2 + eps**2)
    return (
        GridField(chart, psi, eps=eps, name="psi"),
        GridField(chart, psi_eps, eps=eps, name="psi_eps"),
    )


def min_relative_eigenvalue(field: GridField, omega):
    """Pointwise smallest eigenvalue of ``field`` relative to constant ``omega``;
    returns ``(min over grid, argmin index)``."""
    w = np.asarray(omega, dtype=complex)
    vals = generalized_eigvalsh(field.values, np.broadcast_to(w, field.values.shape))
    lo = vals[..., 0]
    idx = np.unravel_index(int(np.argmin(lo)), lo.shape)
    return float(lo[idx]), tuple(int(i) for i in idx)


def measure_hessian_floor(system, chart, ladder, omega, mode="spectral"):
    """Smallest power of two ``A`` with ``i ddbar psi_eps >= -A omega`` on the grid
    for every eps in the ladder.  Returns ``(A, infimum of hess eigenvalues)``."""
    inf = np.inf
    for eps in ladder:
        _, pe = build_potentials(system, eps, chart)
        m, _ = min_relative_eigenvalue(complex_hessian(pe, mode), omega)
        inf = min(inf, m)
    need = max(-2.0 * inf, 0.0)  # i ddbar = 2 hess
    A = 1.0
    while A < need:
        A *= 2.0
    return A, inf


def omega_eps(omega, psi_eps: GridField, A: float, c: float = 10.0, mode="spectral", validate=True) -> GridField:
    """``omega + (1/2A) i ddbar psi_eps``; checks ``omega_eps >= omega/2 - c h^2``."""
    chart = psi_eps.chart
    if A <= 0:
        raise ValueError("A must be positive")
    w = np.asarray(omega, dtype=complex)
    hess = complex_hessian(psi_eps, mode)
    vals = np.broadcast_to(w, hess.values.shape) + hess.values / A
    out = GridField(chart, vals, "hermitian", eps=psi_eps.eps, name="omega_eps", meta={"A": A, "mode": mode})
    if validate:
        bound = 0.5 - c * chart.h**2
        m, where = min_relative_eigenvalue(out, w)
        out.meta["min_rel_eig"] = m
        if m < bound:
            raise HessianFloorError(m, where, bound)
    return out


def periodic_ball(chart: GridChart, radius: float, center=(0.0, 0.0)):
    a, b = chart.mesh()
    da = a - center[0]
    db = b - center[1]
    if chart.periodic:
        da = (da + 0.5) % 1.0 - 0.5
        db = (db + 0.5) % 1.0 - 0.5
    return da**2 + db**2 <= radius**2


def tube_region(psi: GridField, eps: float, within=None):
    """``{psi < log eps}`` (strict), optionally intersected with a mask."""
    mask = psi.values < np.log(eps)
    if within is not None:
        mask &= within
    return mask


def density(field: GridField, p: int, omega=None):
    """Pointwise density of ``field^p ^ omega^(n-p)`` (Lebesgue)."""
    n = field.chart.n
    if not 0 <= p <= n:
        raise ValueError(f"power p must lie in [0, {n}]")
    parts = [(field.values, p)] if p else []
    if p < n:
        if omega is None:
            raise ValueError("omega needed for a mixed density")
        w = np.broadcast_to(np.asarray(omega, dtype=complex), field.values.shape)
        parts.append((w, n - p))
    return top_density(parts)


def tube_mass(field: GridField, p: int, omega, region) -> float:
    """Midpoint sum of ``field^p ^ omega^(n-p)`` over a boolean region."""
    if not np.any(region):
        raise EmptyRegionError("tube region has no grid points; eps is below the grid resolution")
    dens = density(field, p, omega)
    return float(np.sum(dens[region]) * field.chart.cell_area)


def total_mass(field: GridField, p: int, omega) -> float:
    return field.chart.integrate(density(field, p, omega))


def fubini_study(chart: GridChart, eps: float, mode="fd") -> GridField:
    """``(i / 2 pi) ddbar log(|z|^2 + eps^2)``: a unit-mass bump of width eps."""
    a, b = chart.mesh()
    f = GridField(chart, np.log(a**2 + b**2 + eps**2), eps=eps, name="log(|z|^2+eps^2)")
    hess = complex_hessian(f, mode)
    return GridField(chart, hess.values / np.pi, "hermitian", eps=eps, name="fubini-study")


def disk(chart, radius):
    a, b = chart.mesh()
    return a**2 + b**2 <= radius**2


def unit_volume(n: int) -> int:
    """``int_X omega^n`` for omega = identity on the unit torus."""
    return factorial(n)


__all__ = [
    "EmptyRegionError",
    "GeneratorSystem",
    "HessianFloorError",
    "build_potentials",
    "constant_form_field",
    "density",
    "disk",
    "expected_zero_set",
    "fubini_study",
    "measure_hessian_floor",
    "min_relative_eigenvalue",
    "omega_eps",
    "periodic_ball",
    "single_chart",
    "total_mass",
    "tube_mass",
    "tube_region",
    "two_chart",
    "unit_volume",
]
