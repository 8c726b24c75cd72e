"""Exit criteria, one test per criterion (PASS/FAIL lines come from conftest)."""

import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from kahlercone._exact import rational
from kahlercone.cone import classify_component, dual_cone_generators, in_dual_cone, in_P, is_kahler, is_nef
from kahlercone.linalg import HermitianForm
from kahlercone.mass import GridChart, run_ladder, single_chart, two_chart
from kahlercone.mass.concentration import concentration_report
from kahlercone.mass.monge_ampere import solve_ma
from kahlercone.mass.potentials import (
    build_potentials,
    disk,
    fubini_study,
    measure_hessian_floor,
    omega_eps,
    total_mass,
    tube_mass,
)
from kahlercone.models import ManifoldModel, dump_model, load_model, model_to_dict, product_intersection_check
from kahlercone.polyid import certify_delta0, find_delta0, identity, solve_A, verify_identity
from kahlercone.transport import (
    ComplexStructurePath,
    all_pairings,
    convergence_table,
    dump_family,
    family_to_dict,
    load_family,
    naive_transport,
    transport,
    verdict_invariance,
)
from oracles import (
    cone_member_bruteforce,
    gauss_det,
    identity_holds_sympy,
    positive_definite_sylvester,
    random_gauss_hermitian,
    surface_nef_slsqp,
    to_package_rows,
)

pytestmark = pytest.mark.acceptance

SUITE_START = time.perf_counter()
LADDER = (0.2, 0.1, 0.05)


# 1 ---------------------------------------------------------------------------


def test_criterion_01_polynomial_identity():
    t0 = time.perf_counter()
    idents = [solve_A(p) for p in range(1, 9)]
    assert all(verify_identity(a) for a in idents)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"identity p = 1..8 took {elapsed:.2f} s"
    # independent symbolic check of the same coefficients
    for a in idents[:6]:
        assert identity_holds_sympy(a.a, a.p)
    assert identity(2).to_string() == "2 + (12*t - 8)*delta"
    for p in range(1, 9):
        # constant in t, and the constant is p
        assert identity(p).at_delta(0) == [p]


# 2 ---------------------------------------------------------------------------


def test_criterion_02_delta0_certification():
    t0 = time.perf_counter()
    d, _ = find_delta0(2)
    assert 0 < d < Fraction(1, 4)
    assert certify_delta0(2, "1/8")[0]
    assert not certify_delta0(2, "1/3")[0]
    found = {n: find_delta0(n)[0] for n in range(1, 7)}
    elapsed = time.perf_counter() - t0
    assert all(0 < v < 1 for v in found.values())
    assert elapsed < 30.0, f"find_delta0 for n <= 6 took {elapsed:.2f} s"


# 3 ---------------------------------------------------------------------------


def test_criterion_03_generic_torus_laws():
    rng = np.random.default_rng(2024)
    spent = 0.0  # library time only; the oracles are not timed
    for n in (2, 3):
        model = ManifoldModel.torus(n)
        for _ in range(10_000):
            rows = random_gauss_hermitian(rng, n)
            t0 = time.perf_counter()
            alpha = HermitianForm(to_package_rows(rows))
            p = in_P(model, alpha).answer
            k = is_kahler(model, alpha).answer
            label = classify_component(model, alpha)
            spent += time.perf_counter() - t0
            det, _ = gauss_det(rows)
            assert (p == "yes") == (det > 0)
            assert (k == "yes") == positive_definite_sylvester(rows)
            assert label.in_P == (p == "yes")
            if label.in_P:
                assert label.signature[1] % 2 == 0
    assert spent < 30.0, f"10^4 forms per n took {spent:.2f} s"


# 4 ---------------------------------------------------------------------------


def test_criterion_04_product_identity():
    rng = np.random.default_rng(4)
    for trial in range(100):
        n = 1 + trial % 3
        alpha = HermitianForm(to_package_rows(random_gauss_hermitian(rng, n)))
        lhs, rhs = product_intersection_check(ManifoldModel.torus(n), alpha)
        assert lhs == rhs


# 5 ---------------------------------------------------------------------------


def _random_surface(rng):
    """Lorentzian lattice, a reference class in the chamber and up to 6 curves."""
    while True:
        h = int(rng.integers(2, 5))
        P = rng.integers(-2, 3, (h, h))
        if abs(round(np.linalg.det(P))) != 1:
            continue
        Q = P @ np.diag([1] + [-1] * (h - 1)) @ P.T
        for _ in range(200):
            w = rng.integers(-4, 5, h)
            if w @ Q @ w > 0:
                break
        else:
            continue
        want = int(rng.integers(1, 7))
        curves = []
        for _ in range(200):
            if len(curves) >= want:
                break
            c = rng.integers(-3, 4, h)
            if c.any() and w @ Q @ c > 0:
                curves.append(c)
        return Q, curves, w


def test_criterion_05_dual_cone_consistency():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        Q, curves, w = _random_surface(rng)
        model = ManifoldModel.surface(Q.tolist(), [(f"C{i}", c.tolist()) for i, c in enumerate(curves)], w.tolist())
        alpha = [rational(int(x)) for x in rng.integers(-4, 5, len(w))]
        got = is_nef(model, alpha).answer == "yes"
        assert got == surface_nef_slsqp(Q, curves, w, [float(x) for x in alpha]), (Q.tolist(), curves, w, alpha)
        if got:
            gens = dual_cone_generators(model, [model.default_reference()])
            assert all(g(alpha) >= 0 for g in gens)
    # LP membership against the brute-force search, 2D and 3D, <= 4 generators
    for trial in range(400):
        dim = 2 + trial % 2
        m = int(rng.integers(1, 5))
        gens = [tuple(int(x) for x in rng.integers(-3, 4, dim)) for _ in range(m)]
        if trial % 3 == 0:
            b = tuple(int(x) for x in np.array(gens).T @ rng.integers(0, 3, m))
        else:
            b = tuple(int(x) for x in rng.integers(-3, 4, dim))
        assert (in_dual_cone(gens, b).answer == "yes") == cone_member_bruteforce(gens, b, tol=1e-6), (gens, b)


# 6 ---------------------------------------------------------------------------


def test_criterion_06_potential_numerics():
    for n, N, layout in ((1, 512, "plane"), (2, 128, "slice"), (2, 128, "tube")):
        chart = GridChart(n, N, layout)
        w = np.eye(n)
        for factory in (single_chart, two_chart):
            system = factory(layout)
            assert system.partition_defect(chart) <= 1e-12
            A, _ = measure_hessian_floor(system, chart, LADDER, w)
            for eps in LADDER:
                _, pe = build_potentials(system, eps, chart)
                m = omega_eps(w, pe, A).meta["min_rel_eig"]
                assert m >= 0.5 - 10 * chart.h**2, (n, layout, system.name, eps, m)
    box = GridChart(1, 512, "box", 2.0)
    cyl = []
    for eps in LADDER:
        fs = fubini_study(box, eps)
        assert abs(total_mass(fs, 1, None) - 1.0) <= 0.02
        cyl.append(tube_mass(fs, 1, None, disk(box, 2 * eps)))
    assert (max(cyl) - min(cyl)) / min(cyl) <= 0.05


# 7 ---------------------------------------------------------------------------


def test_criterion_07_monge_ampere():
    t0 = time.perf_counter()
    c1 = GridChart(1, 256)
    for eps in LADDER:
        sol = solve_ma(np.array([[1.0]]), eps, single_chart(), c1)
        assert sol.residual <= 1e-10
        assert abs(sol.C - sol.class_ratio) <= 1e-12
        assert sol.min_eigenvalue > 0
    for layout, system in (("slice", single_chart("slice")), ("tube", two_chart("tube"))):
        c2 = GridChart(2, 64, layout)
        for alpha in (np.eye(2), np.array([[2, 0.5], [0.5, 1]])):
            sol = solve_ma(alpha, 0.5, system, c2)
            assert sol.residual <= 1e-6
            assert np.all(np.linalg.eigvalsh(sol.alpha_eps.values) > 0)
            assert abs(sol.C - sol.class_ratio) <= 1e-8 * sol.class_ratio
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0


# 8 ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "n, N, layout, alpha, ps",
    [
        (1, 512, "plane", [[1.0]], (1,)),
        (2, 128, "slice", [[2, 0.5], [0.5, 1]], (1, 2)),
    ],
)
def test_criterion_08_concentration(n, N, layout, alpha, ps):
    chart = GridChart(n, N, layout)
    runs = run_ladder(np.array(alpha, dtype=complex), LADDER, single_chart(layout), chart)
    for p in ps:
        rep = concentration_report(runs, p=p)
        h = chart.h
        for row in rep.rows:
            assert row.delta == pytest.approx(2.0 ** (-(n - p + 1)) * rep.delta_p)
            assert row.E_delta_measure <= row.delta * (1 + 10 * h)
        first = rep.rows[0].tube_mass
        assert all(r.tube_mass >= 0.5 * first for r in rep.rows)
        assert rep.ok


# 9 ---------------------------------------------------------------------------


STRONG_X = np.outer([1, 2, 0, 1], [2, -1, 1, 0]).tolist()


def _families(fixtures):
    return [
        ComplexStructurePath.constant(2),
        ComplexStructurePath.conjugation(1, [[0, 1], [0, 0]], [0, 1], name="n1"),
        load_family((fixtures / "loop.fam").read_text()),
        ComplexStructurePath.conjugation(2, STRONG_X, [0, 1], name="strong").validate(),
    ]


def test_criterion_09_transport(fixtures):
    for path in _families(fixtures):
        n = path.n
        for u in np.linspace(0, 1, 11):
            frame = path.frame(u)
            assert max(frame.axiom_defects().values()) <= 1e-12 * max(1.0, np.max(np.abs(frame.D)) ** 2)
        classes = (
            [HermitianForm.identity(1), HermitianForm.diag([-1])]
            if n == 1
            else [HermitianForm([[2, [0, 1]], [[0, -1], 1]]), HermitianForm.diag([-1, -1]), HermitianForm.diag([1, -1])]
        )
        for alpha in classes:
            res = transport(path, alpha, steps=1000)
            assert res.max_subbundle_defect <= 1e-8
            assert res.max_reality_defect <= 1e-8
            for series in all_pairings(res):
                assert series.drift <= 1e-8, (path.name, series.cycle, series.drift)
            assert verdict_invariance(res).constant
    strong = _families(fixtures)[-1]
    alpha0 = HermitianForm([[2, [0, 1]], [[0, -1], 1]])
    ratios = [r for _, _, r in convergence_table(strong, alpha0, (250, 500, 1000)) if r is not None]
    assert all(14 <= r <= 18 for r in ratios), ratios
    naive = naive_transport(strong, alpha0)
    assert max(s.drift for s in all_pairings(naive)) > 1e-4


# 10 --------------------------------------------------------------------------


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "kahlercone", *map(str, argv)], capture_output=True)


def test_criterion_10_determinism_and_round_trips(fixtures, tmp_path):
    for name in ("torus2.km", "surface.km"):
        m = load_model((fixtures / name).read_text())
        text = dump_model(m)
        assert load_model(text) == m and dump_model(load_model(text)) == text
        assert model_to_dict(load_model(text)) == model_to_dict(m)
    prod = ManifoldModel.product(ManifoldModel.torus(2))
    assert load_model(dump_model(prod)) == prod
    for path in _families(fixtures):
        text = dump_family(path)
        again = load_family(text)
        assert family_to_dict(again) == family_to_dict(path)
        assert dump_family(again) == text

    runs = [
        ("check", "--model", fixtures / "torus2.km", "--class", fixtures / "neg2.vec", "--mode", "kahler"),
        ("poly", "--p", "2", "--n", "2", "--find-delta0"),
        ("mass", "--n", "1", "--resolution", "128", "--format", "csv"),
        ("transport", "--family", fixtures / "loop.fam", "--class", fixtures / "alpha0.vec", "--format", "csv"),
    ]
    for argv in runs:
        a, b = _cli(*argv), _cli(*argv)
        assert a.returncode == b.returncode and a.returncode in (0, 1), a.stderr
        assert a.stdout == b.stdout and a.stdout
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}" / "mass.csv"
        out.parent.mkdir()
        _cli("mass", "--n", "1", "--resolution", "128", "--format", "csv", "--out", out, "--figures")
        outs.append([out.read_bytes()] + [p.read_bytes() for p in sorted(out.parent.glob("*.png"))])
    assert outs[0] == outs[1] and len(outs[0]) == 3

    elapsed = time.perf_counter() - SUITE_START
    assert elapsed < 600.0, f"acceptance module took {elapsed:.1f} s"
