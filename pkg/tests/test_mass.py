from math import factorial

import numpy as np
import pytest

from kahlercone.linalg import generalized_eigvalsh
from kahlercone.mass.concentration import (
    CSV_COLUMNS,
    InconsistentRunsError,
    concentration_report,
    mixed_mass_bound,
    run_ladder,
)
from kahlercone.mass.grid import GridChart, GridError, GridField, complex_hessian, constant_form_field
from kahlercone.mass.monge_ampere import MASolverError, class_ratio, solve_ma
from kahlercone.mass.potentials import (
    EmptyRegionError,
    HessianFloorError,
    build_potentials,
    density,
    disk,
    expected_zero_set,
    fubini_study,
    measure_hessian_floor,
    omega_eps,
    single_chart,
    total_mass,
    tube_mass,
    two_chart,
)

LADDER = (0.2, 0.1, 0.05)


def test_chart_validation():
    with pytest.raises(GridError):
        GridChart(1, 100)
    with pytest.raises(GridError):
        GridChart(2, 64, "plane")
    with pytest.raises(GridError):
        GridChart(1, 64, "ring")
    c = GridChart(2, 64)
    assert c.layout == "slice" and c.h == 1 / 64
    assert GridChart(1, 64, "box", 2.0).h == 4 / 64
    a, _ = c.axes
    assert 0.0 in a
    with pytest.raises(GridError):
        GridField(c, np.zeros((8, 8)))


@pytest.mark.parametrize("layout, n", [("plane", 1), ("slice", 2), ("tube", 2)])
@pytest.mark.parametrize("factory", [single_chart, two_chart])
def test_generator_systems(layout, n, factory):
    c = GridChart(n, 64, layout)
    s = factory(layout)
    assert s.partition_defect(c) <= 1e-12
    assert np.array_equal(s.zero_set(c), expected_zero_set(c))


def test_potentials_closed_forms():
    c = GridChart(1, 64)
    s = single_chart()
    a, b = c.mesh()
    origin = (a == 0) & (b == 0)
    unit = (a == -0.5) & (b == 0)
    prev = None
    for eps in sorted(LADDER):
        psi, pe = build_potentials(s, eps, c)
        assert np.all(pe.values >= np.log(eps) - 1e-15)
        off = ~origin
        assert np.all(pe.values[off] >= psi.values[off])
        assert pe.values[origin][0] == pytest.approx(np.log(eps), abs=1e-15)
        assert psi.values[unit][0] == pytest.approx(0.0, abs=1e-15)
        if prev is not None:
            assert np.all(prev <= pe.values)
        prev = pe.values
    with pytest.raises(ValueError):
        build_potentials(s, 0.0, c)
    with pytest.raises(ValueError):
        build_potentials(s, 1.5, c)


def test_spectral_hessian_is_exact_on_trig_polynomials():
    c = GridChart(2, 32, "tube")
    a, b = c.mesh()
    f = GridField(c, np.cos(2 * np.pi * a) * np.cos(2 * np.pi * b))
    hess = complex_hessian(f).values.real
    pi2 = np.pi**2
    assert np.allclose(hess[..., 0, 0], -pi2 * np.cos(2 * np.pi * a) * np.cos(2 * np.pi * b), atol=1e-11)
    assert np.allclose(hess[..., 0, 1], pi2 * np.sin(2 * np.pi * a) * np.sin(2 * np.pi * b), atol=1e-11)
    const = complex_hessian(GridField(c, np.full((32, 32), 3.0))).values
    assert np.max(np.abs(const)) < 1e-12


def test_fd_hessian_is_second_order():
    errs = []
    for N in (32, 64, 128):
        c = GridChart(1, N)
        a, b = c.mesh()
        f = GridField(c, np.sin(2 * np.pi * a) + np.cos(4 * np.pi * b))
        exact = -(np.pi**2) * np.sin(2 * np.pi * a) - 4 * np.pi**2 * np.cos(4 * np.pi * b)
        errs.append(np.max(np.abs(complex_hessian(f, "fd").values[..., 0, 0].real - exact)))
    ratios = [errs[i] / errs[i + 1] for i in range(2)]
    assert all(3.8 < r < 4.2 for r in ratios)


def test_omega_eps_contract():
    c = GridChart(1, 64)
    w = np.eye(1)
    flat = GridField(c, np.full((64, 64), -1.0))
    assert np.array_equal(omega_eps(w, flat, 1.0).values, constant_form_field(c, w).values)
    _, pe = build_potentials(single_chart(), 0.1, c)
    A, _ = measure_hessian_floor(single_chart(), c, [0.1], w)
    o1 = omega_eps(w, pe, A).values - 1
    o2 = omega_eps(w, pe, 2 * A).values - 1
    assert np.allclose(o2, o1 / 2, atol=1e-15)
    with pytest.raises(HessianFloorError) as exc:
        omega_eps(w, pe, A / 8)
    assert exc.value.infimum < 0.5
    with pytest.raises(ValueError):
        omega_eps(w, pe, 0.0)


def test_hessian_floor_measurement():
    c = GridChart(1, 128)
    A, inf = measure_hessian_floor(single_chart(), c, LADDER, np.eye(1))
    assert A >= -2 * inf and A / 2 < max(-2 * inf, 1.0)
    for eps in LADDER:
        _, pe = build_potentials(single_chart(), eps, c)
        m = omega_eps(np.eye(1), pe, A).meta["min_rel_eig"]
        assert m >= 0.5 - 10 * c.h**2


@pytest.mark.parametrize("n, layout", [(1, "plane"), (2, "slice"), (2, "tube")])
def test_mass_budget(n, layout):
    c = GridChart(n, 64, layout)
    w = np.eye(n)
    assert total_mass(constant_form_field(c, w), n, w) == pytest.approx(float(factorial(n)), rel=1e-12)
    s = two_chart(layout)
    A, _ = measure_hessian_floor(s, c, [0.1], w)
    _, pe = build_potentials(s, 0.1, c)
    oe = omega_eps(w, pe, A)
    assert total_mass(oe, n, w) == pytest.approx(float(factorial(n)), rel=1e-10)


def test_eigenvalue_identity_pointwise():
    c = GridChart(2, 32)
    sol = solve_ma(np.array([[2, 0.5], [0.5, 1]]), 0.1, single_chart(), c)
    lam = generalized_eigvalsh(sol.alpha_eps.values, sol.omega_eps.values)
    lhs = density(sol.alpha_eps, 2)
    rhs = np.prod(lam, axis=-1) * density(sol.omega_eps, 2)
    assert np.allclose(lhs, rhs, rtol=1e-8)


def test_fubini_study_and_cylinders():
    c = GridChart(1, 256, "box", 2.0)
    masses = []
    for eps in LADDER:
        fs = fubini_study(c, eps)
        assert total_mass(fs, 1, None) == pytest.approx(1.0, rel=0.02)
        masses.append(tube_mass(fs, 1, None, disk(c, 2 * eps)))
    assert max(masses) / min(masses) - 1 <= 0.05
    assert np.mean(masses) == pytest.approx(0.8, rel=0.02)  # C^2 / (C^2 + 1), C = 2
    with pytest.raises(EmptyRegionError):
        tube_mass(fs, 1, None, disk(c, 1e-4))


def test_ma_trivial_and_class_ratio():
    c = GridChart(1, 64)
    flat = GridField(c, np.zeros((64, 64)))
    sol = solve_ma(np.zeros((1, 1)), 1.0, single_chart(), c, psi_eps=flat, A=1.0)
    assert sol.C == 1.0
    assert np.max(np.abs(sol.phi.values)) < 1e-14
    sol = solve_ma(np.array([[1.0]]), 0.1, single_chart(), GridChart(1, 128))
    assert sol.C == pytest.approx(1.1, abs=1e-12)
    assert sol.residual <= 1e-10
    assert class_ratio(np.eye(2), np.eye(2), 0.5) == pytest.approx(2.25)
    with pytest.raises(ValueError, match="not positive"):
        solve_ma(np.diag([1.0, -1.0]), 0.1, single_chart(), GridChart(2, 16))


def test_ma_newton_n2():
    c = GridChart(2, 32)
    sol = solve_ma(np.eye(2), 0.5, single_chart(), c)
    assert sol.residual <= 1e-6
    assert sol.min_eigenvalue > 0
    assert sol.C == pytest.approx(sol.class_ratio, rel=1e-8)
    assert abs(sol.phi.values.mean()) < 1e-14
    # re-evaluate the equation pointwise from the returned fields
    lhs = np.linalg.det(sol.alpha_eps.values).real
    rhs = sol.C * np.linalg.det(sol.omega_eps.values).real
    assert 2 * np.max(np.abs(lhs - rhs)) <= 1e-6


def test_ma_stagnation_is_reported():
    with pytest.raises(MASolverError) as exc:
        solve_ma(np.eye(2), 0.5, single_chart(), GridChart(2, 16), tol=1e-30, max_iter=2)
    assert "residual history" in str(exc.value)


def test_concentration_report_small():
    c = GridChart(1, 128)
    runs = run_ladder(np.array([[1.0]]), LADDER, single_chart(), c)
    rep = concentration_report(runs)
    assert [r.eps for r in rep.rows] == list(LADDER)
    assert rep.floor_ok and rep.exceptional_ok
    assert len(rep.rows[0].csv_values()) == len(CSV_COLUMNS)
    assert rep.rows[0].delta == pytest.approx(0.5 * rep.delta_p)
    assert rep.rows[0].M == pytest.approx(mixed_mass_bound(np.eye(1), np.eye(1), 0.2, 1))


def test_concentration_alpha_equals_omega_has_empty_exceptional_set():
    c = GridChart(2, 32)
    runs = run_ladder(np.eye(2), LADDER, single_chart(), c)
    rep = concentration_report(runs, p=1)
    assert all(r.E_delta_measure == 0.0 for r in rep.rows)


def test_inconsistent_runs():
    c = GridChart(1, 64)
    a = solve_ma(np.eye(1), 0.2, single_chart(), c, A=8.0)
    b = solve_ma(np.eye(1), 0.1, single_chart(), c, A=16.0)
    with pytest.raises(InconsistentRunsError):
        concentration_report([a, b])
    with pytest.raises(InconsistentRunsError):
        concentration_report([a, a])
    with pytest.raises(InconsistentRunsError):
        concentration_report([])
