"""Cone verdicts on a finite model: P, Kahler, nef, components, dual cone.

All verdicts are relative to the declared cycle table of the model.  Exact
inputs give exact verdicts; float inputs are compared against a relative
tolerance and say so in ``Verdict.exact``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np
from scipy.optimize import linprog

from . import univariate as up
from ._exact import ONE, ZERO, rational
from .linalg import HermitianForm, complex_columns, signature, solve_exact
from .models import ManifoldModel, ModelError

BANNER = "verdicts are relative to the declared cycle table"
FLOAT_RTOL = 1e-12
LP_TOL = 1e-9


class ReferenceClassError(ModelError):
    """The reference class fails the model's Kahler contract."""


class HypothesisError(ValueError):
    """Weak positivity hypothesis of the nef iteration fails."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class LPSolverError(RuntimeError):
    """The LP backend failed for numerical reasons (not infeasibility)."""


@dataclass(frozen=True)
class Witness:
    cycle: str
    exponents: tuple  # (k, p - k): powers of alpha and omega
    value: object
    note: str = ""


@dataclass
class Verdict:
    answer: str  # "yes" | "no" | "boundary"
    test: str
    witnesses: list = field(default_factory=list)
    margin: object = None
    constraints: list = field(default_factory=list)
    exact: bool = True
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.answer not in ("yes", "no", "boundary"):
            raise ValueError(f"bad verdict answer {self.answer!r}")
        if self.answer == "no" and not self.witnesses:
            raise ValueError("negative verdict without witness")

    def __bool__(self):
        return self.answer == "yes"


def _is_exact(model, *classes):
    for c in classes:
        if isinstance(c, HermitianForm):
            if not c.exact:
                return False
        elif any(isinstance(x, float) for x in c):
            return False
    return True


def _tol(values):
    scale = max([1.0] + [abs(float(v)) for v in values])
    return FLOAT_RTOL * scale


def _sign(v, tol):
    if tol == 0:
        return (v > 0) - (v < 0)
    return 0 if abs(v) <= tol else (1 if v > 0 else -1)


# ----------------------------------------------------------------------------
# P and components


def in_P(model: ManifoldModel, alpha) -> Verdict:
    """``int_Y alpha^p > 0`` for every declared cycle of dimension p >= 1."""
    alpha = model.coerce_class(alpha)
    exact = _is_exact(model, alpha)
    rows = []
    for y in model.positive_dimensional_cycles:
        v = model.self_intersection(y, alpha)
        rows.append(Witness(y.name, (y.dim, 0), v))
    tol = 0 if exact else _tol([w.value for w in rows])
    signs = [_sign(w.value, tol) for w in rows]
    bad = [w for w, s in zip(rows, signs) if s <= 0]
    if any(s < 0 for s in signs):
        answer = "no"
    elif bad:
        answer = "boundary"
    else:
        answer = "yes"
    margin = min((w.value for w in rows), default=None)
    return Verdict(answer, "P", bad, margin, rows, exact)


@dataclass(frozen=True)
class ComponentLabel:
    in_P: bool
    signature: tuple | None = None

    @property
    def kahler(self):
        return self.in_P and self.signature is not None and self.signature[1] == 0

    def __str__(self):
        if not self.in_P:
            return "not in P"
        p, q = self.signature
        return f"({p},{q}) " + ("Kahler component" if self.kahler else "non-Kahler component of P")


def classify_component(model: ManifoldModel, alpha) -> ComponentLabel:
    if model.kind != "torus" or not model.generic:
        raise ModelError("component classification is only available on generic tori")
    alpha = model.coerce_class(alpha)
    if in_P(model, alpha).answer != "yes":
        return ComponentLabel(False)
    pos, neg, zero = signature(alpha)
    if zero:
        raise ArithmeticError("P-member with a degenerate form")  # det > 0 rules this out
    return ComponentLabel(True, (pos, neg))


# ----------------------------------------------------------------------------
# Kahler test


def _check_reference(model, omega):
    omega = model.coerce_class(omega if omega is not None else model.default_reference())
    if not model.is_kahler_reference(omega):
        raise ReferenceClassError("reference class fails the Kahler contract of the model")
    return omega


def q_polynomial(model, cycle, alpha, omega):
    """Exact coefficients of ``q_Y(t) = int_Y (alpha + t omega)^p``."""
    y = model.cycle(cycle)
    p = y.dim
    if model.kind == "torus" and y.basis is None:
        ar, wr = alpha, omega
    elif model.kind == "torus":
        b = complex_columns(y.basis)
        ar, wr = alpha.restrict(b), omega.restrict(b)
    else:
        ar, wr = alpha, omega
    xs = list(range(p + 1))
    if model.kind == "torus":
        scale = factorial(p) * y.weight
        ys = [scale * (ar + wr * t).det() for t in xs]
    else:
        ys = [model.self_intersection(y, model.combine([(1, alpha), (t, omega)])) for t in xs]
    return up.interpolate(xs, ys)


def _exact_roots(poly, intervals):
    """Rational roots in the isolating intervals (small denominators only).

    Float roots are snapped to nearby rationals and confirmed exactly.
    """
    found = []
    approx = np.roots([float(c) for c in reversed(up.trim(poly))])
    for lo, hi in intervals:
        if up.evaluate(poly, hi) == 0:
            found.append(hi)
            continue
        for r in approx:
            if abs(r.imag) > 1e-6 or not float(lo) - 1e-9 <= r.real <= float(hi) + 1e-9:
                continue
            guess = rational(Fraction(float(r.real)).limit_denominator(10**6))
            if lo < guess <= hi and up.evaluate(poly, guess) == 0:
                found.append(guess)
                break
    return found


def _factored(poly, roots):
    """``poly`` rendered with the given exact roots pulled out."""
    rest = up.trim(poly)
    factors = []
    for r in sorted(set(roots)):
        k, rest = up.factor_out_root_power(rest, r)
        if k:
            factors.append((r, k))
    if not factors:
        return up.to_string(poly)
    body = []
    for r, k in factors:
        f = "t" if r == 0 else (f"(t - {r})" if r > 0 else f"(t + {-r})")
        body.append(f if k == 1 else f"{f}^{k}")
    lead = up.to_string(rest)
    if lead == "1":
        return "*".join(body)
    if lead == "-1":
        return "-" + "*".join(body)
    if len(rest) > 1:
        lead = f"({lead})"
    return lead + "*" + "*".join(body)


def is_kahler(model: ManifoldModel, alpha, omega=None) -> Verdict:
    """``q_Y(t) = int_Y (alpha + t omega)^p > 0`` for all t >= 0 and every Y.

    Exact classes: ``q_Y`` is interpolated exactly and certified with a Sturm
    count on ``(0, T]`` (T the Cauchy root bound) plus the signs at 0 and at
    infinity.
    """
    alpha = model.coerce_class(alpha)
    omega = _check_reference(model, omega)
    exact = _is_exact(model, alpha, omega)
    if not exact:
        return _is_kahler_float(model, alpha, omega)
    rows, bad = [], []
    answer = "yes"
    polys = {}
    for y in model.positive_dimensional_cycles:
        q = q_polynomial(model, y, alpha, omega)
        polys[y.name] = q
        ok, info = up.positive_on_ray(q)
        q0 = up.evaluate(q, ZERO)
        if ok:
            rows.append(Witness(y.name, (y.dim, 0), q0, "q_Y > 0 on [0, inf)"))
            continue
        roots = info.get("roots", [])
        if q0 == 0 and up.count_roots(q, ZERO) == 0 and up.trim(q)[-1] > 0 and _positive_after_zero(q):
            w = Witness(y.name, (y.dim, 0), ZERO, f"q_Y(t) = {_factored(q, [ZERO])}; zero only at t = 0")
            if answer == "yes":
                answer = "boundary"
        else:
            exact_roots = _exact_roots(q, roots) if roots else []
            if q0 <= 0:
                value = q0
                where = "value at t = 0"
            elif exact_roots:
                value = ZERO
                where = f"zero at t = {exact_roots[0]}"
            elif roots:
                lo, hi = roots[0]
                value = min(ZERO, up.evaluate(q, lo), up.evaluate(q, hi))
                where = f"root in ({lo}, {hi}]"
            else:
                value = up.trim(q)[-1]
                where = "negative as t -> inf"
            w = Witness(y.name, (y.dim, 0), value, f"q_Y(t) = {_factored(q, exact_roots)}; {where}")
            answer = "no"
        rows.append(w)
        bad.append(w)
    margin = min((w.value for w in rows), default=None)
    return Verdict(answer, "kahler", bad, margin, rows, True, {"q": polys})


def _positive_after_zero(q):
    k, rest = up.factor_out_root_power(q, ZERO)
    return up.positive_on_ray(rest)[0]


def _is_kahler_float(model, alpha, omega):
    rows, bad = [], []
    answer = "yes"
    for y in model.positive_dimensional_cycles:
        p = y.dim
        xs = np.arange(p + 1, dtype=float)
        ys = [float(model.self_intersection(y, model.combine([(1.0, alpha), (float(t), omega)]))) for t in xs]
        coeffs = np.polynomial.polynomial.polyfit(xs, ys, p)
        tol = _tol(coeffs)
        roots = np.polynomial.polynomial.polyroots(coeffs) if p else np.array([])
        real = [r.real for r in np.atleast_1d(roots) if abs(r.imag) <= 1e-9 * max(1, abs(r)) and r.real >= -1e-12]
        q0 = coeffs[0]
        if q0 > tol and coeffs[-1] > 0 and not real:
            rows.append(Witness(y.name, (p, 0), q0, "q_Y > 0 on [0, inf)"))
            continue
        value = min([q0] + [float(np.polynomial.polynomial.polyval(r, coeffs)) for r in real] + [0.0])
        w = Witness(y.name, (p, 0), value, "nonpositive on [0, inf)")
        rows.append(w)
        bad.append(w)
        if abs(q0) <= tol and len(real) == 1 and answer == "yes":
            answer = "boundary"
        else:
            answer = "no"
    margin = min((w.value for w in rows), default=None)
    return Verdict(answer, "kahler", bad, margin, rows, False)


# ----------------------------------------------------------------------------
# Nef test


def is_nef(model: ManifoldModel, alpha, omega=None) -> Verdict:
    """``int_Y alpha^k ^ omega^(p-k) >= 0`` for every Y and k = 1..p."""
    alpha = model.coerce_class(alpha)
    omega = _check_reference(model, omega)
    exact = _is_exact(model, alpha, omega)
    rows = []
    for y in model.positive_dimensional_cycles:
        for k in range(1, y.dim + 1):
            v = model.intersect(y, [alpha] * k + [omega] * (y.dim - k))
            rows.append(Witness(y.name, (k, y.dim - k), v))
    tol = 0 if exact else _tol([w.value for w in rows])
    bad = [w for w in rows if _sign(w.value, tol) < 0]
    margin = min((w.value for w in rows), default=None)
    return Verdict("no" if bad else "yes", "nef", bad, margin, rows, exact)


def kahler_along_ladder(model, alpha, omega=None, ladder=None):
    """``is_kahler(alpha + eps omega)`` over a decreasing ladder of eps.

    This is the closure description of nefness tested on finitely many eps;
    it also serves as the weak numerical test on surfaces.
    """
    omega = _check_reference(model, omega)
    alpha = model.coerce_class(alpha)
    if ladder is None:
        ladder = [rational(1) / 2**k for k in range(11)]
    return [(eps, is_kahler(model, model.combine([(1, alpha), (eps, omega)]), omega)) for eps in ladder]


# ----------------------------------------------------------------------------
# Dual cone


@dataclass(frozen=True)
class DualVector:
    label: str
    coords: tuple

    def __call__(self, beta_coords):
        return sum((a * b for a, b in zip(self.coords, beta_coords)), ZERO)


def dual_cone_generators(model: ManifoldModel, omegas) -> list:
    """Functionals ``beta -> int_Y beta ^ omega^(p-1)`` as coordinate vectors.

    Curves (p = 1) give one generator independent of omega.
    """
    omegas = [model.coerce_class(w) for w in omegas]
    if not omegas:
        raise ValueError("need at least one reference class")
    basis = model.coordinate_basis()
    gens = []
    for y in model.positive_dimensional_cycles:
        for i, w in enumerate(omegas):
            if y.dim == 1 and i > 0:
                break
            coords = tuple(model.intersect(y, [b] + [w] * (y.dim - 1)) for b in basis)
            label = y.name if y.dim == 1 else f"{y.name}/omega{i}"
            gens.append(DualVector(label, coords))
    return gens


def _as_coords(v):
    return tuple(v.coords) if isinstance(v, DualVector) else tuple(v)


def _exact_vec(v):
    if any(isinstance(x, (float, np.floating)) for x in v):
        return None
    return [rational(x) for x in v]


def in_dual_cone(generators, beta) -> Verdict:
    """Is ``beta`` a nonnegative combination of the generators?

    Solved as an LP (HiGHS) on unit-normalised generators.  With rational
    data the LP answer is confirmed exactly: the combination is re-solved
    on its support, or the separating functional is rationalised and
    checked.  ``details`` carries ``lambda`` or ``separator``.
    """
    gens = [_as_coords(g) for g in generators]
    b = _as_coords(beta)
    dim = len(b)
    if any(len(g) != dim for g in gens):
        raise ValueError("generator and target dimensions differ")
    bf = np.array([float(x) for x in b])
    if not gens:
        if np.all(bf == 0):
            return Verdict("yes", "dual", [], 0.0, details={"lambda": []})
        gf = np.zeros((dim, 0))
    else:
        gf = np.array([[float(x) for x in g] for g in gens]).T
    norms = np.linalg.norm(gf, axis=0) if gens else np.zeros(0)
    keep = norms > 0
    gn = np.where(keep, gf / np.where(keep, norms, 1.0), 0.0)
    exact_b = _exact_vec(b)
    exact_g = [_exact_vec(g) for g in gens]
    exact = exact_b is not None and all(g is not None for g in exact_g)

    feasible, lam = _lp_feasible(gn, bf)
    if feasible:
        lam = np.where(keep, lam / np.where(keep, norms, 1.0), 0.0)
        det = {"lambda": [float(x) for x in lam], "certificate_exact": False}
        if exact:
            confirmed = _confirm_combination(exact_g, exact_b, lam)
            if confirmed is not None:
                det["lambda"] = confirmed
                det["certificate_exact"] = True
        return Verdict("yes", "dual", [], 0.0, exact=exact, details=det)
    y = _separator(gn, bf)
    det = {"separator": [float(x) for x in y], "certificate_exact": False}
    value = float(y @ bf)
    if exact:
        yq = _confirm_separator(exact_g, exact_b, y)
        if yq is not None:
            det["separator"] = yq
            det["certificate_exact"] = True
            value = sum((a * c for a, c in zip(yq, exact_b)), ZERO)
    return Verdict("no", "dual", [Witness("separator", (), value, "y.g >= 0 for all generators, y.beta < 0")], value, exact=exact, details=det)


def _lp_feasible(g, b):
    m = g.shape[1]
    if m == 0:
        return bool(np.allclose(b, 0, atol=LP_TOL)), np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(b))))
    res = linprog(
        np.zeros(m),
        A_eq=g,
        b_eq=b / scale,
        bounds=[(0, None)] * m,
        method="highs",
        options={"primal_feasibility_tolerance": LP_TOL, "dual_feasibility_tolerance": LP_TOL},
    )
    if res.status == 0:
        return True, res.x * scale
    if res.status == 2:
        return False, None
    raise LPSolverError(f"LP backend failed: {res.message}")


def _separator(g, b):
    dim = len(b)
    res = linprog(
        b,
        A_ub=-g.T if g.shape[1] else None,
        b_ub=np.zeros(g.shape[1]) if g.shape[1] else None,
        bounds=[(-1, 1)] * dim,
        method="highs",
    )
    if res.status != 0 or res.fun >= -LP_TOL * max(1.0, np.linalg.norm(b)):
        raise LPSolverError(f"infeasible LP without a separating functional: {res.message}")
    return res.x


def _confirm_combination(gens, b, lam):
    support = [i for i, x in enumerate(lam) if x > 1e-12]
    if not support:
        return [ZERO] * len(gens) if all(x == 0 for x in b) else None
    cols = [gens[i] for i in support]
    rows = [[c[r] for c in cols] for r in range(len(b))]
    try:
        sol = solve_exact(rows, b)
    except ValueError:
        return None
    if sol is None or any(x < 0 for x in sol):
        return None
    out = [ZERO] * len(gens)
    for i, x in zip(support, sol):
        out[i] = x
    return out


def _confirm_separator(gens, b, y):
    ymax = float(np.max(np.abs(y))) or 1.0
    for den in (10**3, 10**6, 10**9):
        yq = [rational(Fraction(float(v) / ymax).limit_denominator(den)) for v in y]
        if all(sum((a * c for a, c in zip(yq, g)), ZERO) >= 0 for g in gens) and sum((a * c for a, c in zip(yq, b)), ZERO) < 0:
            return yq
    return None


# ----------------------------------------------------------------------------
# Nef certification by iteration


@dataclass
class StepRecord:
    nu: int
    scale: object  # c_nu: coefficient of omega after this step
    values: dict  # cycle -> int_Y (alpha + c_nu omega)^p
    kahler: bool


@dataclass
class CertificationTrace:
    delta0: object
    base_scale: object
    steps: list = field(default_factory=list)
    complete: bool = False
    failure: Witness | None = None
    certificates: dict = field(default_factory=dict)


def nef_by_iteration(model: ManifoldModel, alpha, omega=None, delta0="1/8", nu_max=10, max_base_doublings=40):
    """Certify ``alpha + c (1 - delta0)^nu omega`` Kahler for nu = 0..nu_max.

    The base scale ``s`` is the smallest power of two (>= 1) making
    ``alpha + s omega`` Kahler.  Step nu passes from ``c`` to ``(1-delta0) c``
    using the divided-difference identity with ``x = c omega``,
    ``y = alpha + c omega``:

        int_Y (alpha + (1-d) c omega)^p = (1-d)^p c^p int_Y omega^p
                                         + int_0^1 A_p(t, d) h_Y(t) dt,
        h_Y(t) = int_Y alpha ^ (t alpha + c omega)^(p-1),

    where ``h_Y >= 0`` on [0, 1] is checked exactly.  The decomposition is
    compared against the direct intersection number and against
    :func:`is_kahler`.  Stops at the first violated constraint.
    """
    from .polyid import certify_delta0, identity

    alpha = model.coerce_class(alpha)
    omega = _check_reference(model, omega)
    if not _is_exact(model, alpha, omega):
        raise ValueError("nef_by_iteration needs exact classes")
    d = rational(delta0)
    if not 0 < d < 1:
        raise ValueError("delta0 must lie in (0, 1)")
    top = max((y.dim for y in model.positive_dimensional_cycles), default=1)
    ok, certs = certify_delta0(top, d)
    if not ok:
        raise ValueError(f"delta0 = {d} is not certified for p <= {top}")
    for y in model.positive_dimensional_cycles:
        v = model.intersect(y, [alpha] + [omega] * (y.dim - 1))
        if v < 0:
            w = Witness(y.name, (1, y.dim - 1), v, "int_Y alpha ^ omega^(p-1) < 0")
            raise HypothesisError(f"hypothesis fails on {y.name}: {v}", w)

    s = ONE
    for _ in range(max_base_doublings):
        if is_kahler(model, model.combine([(1, alpha), (s, omega)]), omega).answer == "yes":
            break
        s *= 2
    else:
        raise ValueError("no base scale makes alpha + s omega Kahler")
    trace = CertificationTrace(d, s, certificates=certs)
    base_vals = {y.name: model.self_intersection(y, model.combine([(1, alpha), (s, omega)])) for y in model.positive_dimensional_cycles}
    trace.steps.append(StepRecord(0, s, base_vals, True))

    c = s
    for nu in range(1, nu_max + 1):
        c_next = (1 - d) * c
        values = {}
        for y in model.positive_dimensional_cycles:
            p = y.dim
            h = _h_polynomial(model, y, alpha, omega, c)
            if up.trim(h):
                if not _nonneg_on_unit(h):
                    trace.failure = Witness(y.name, (1, p - 1), min(_unit_min_candidates(h)), f"h_Y(t) = {up.to_string(h)} < 0 on [0, 1] at step {nu}")
                    return trace
            a_poly = identity(p).at_delta(d)
            rhs = up.integrate01(up.mul(a_poly, h))
            total = (1 - d) ** p * c**p * model.self_intersection(y, omega) + rhs
            direct = model.self_intersection(y, model.combine([(1, alpha), (c_next, omega)]))
            if total != direct:
                raise ArithmeticError(f"identity decomposition mismatch on {y.name} at step {nu}")
            if total <= 0:
                trace.failure = Witness(y.name, (p, 0), total, f"int_Y (alpha + {c_next} omega)^p <= 0 at step {nu}")
                return trace
            values[y.name] = total
        kahler = is_kahler(model, model.combine([(1, alpha), (c_next, omega)]), omega).answer == "yes"
        trace.steps.append(StepRecord(nu, c_next, values, kahler))
        if not kahler:
            trace.failure = Witness("-", (), c_next, f"alpha + {c_next} omega fails the Kahler test at step {nu}")
            return trace
        c = c_next
    trace.complete = True
    return trace


def _h_polynomial(model, y, alpha, omega, c):
    p = y.dim
    xs = list(range(p))
    ys = []
    for t in xs:
        mid = model.combine([(t, alpha), (c, omega)])
        ys.append(model.intersect(y, [alpha] + [mid] * (p - 1)))
    return up.interpolate(xs, ys) if p > 1 else [ys[0]] if ys[0] != 0 else []


def _unit_min_candidates(h):
    vals = [up.evaluate(h, ZERO), up.evaluate(h, ONE)]
    for lo, hi in up.isolate_roots(up.derivative(h), ZERO, ONE) if len(h) > 2 else []:
        vals.append(up.evaluate(h, hi))
    return vals


def _nonneg_on_unit(h):
    """``h >= 0`` on [0, 1], exactly: sample one point in every gap between
    consecutive distinct roots, plus the endpoints."""
    samples = [ZERO, ONE]
    sf = up.squarefree(h)
    if len(sf) > 1:
        seq = up.sturm_sequence(sf)
        for lo, hi in up.isolate_roots(sf, ZERO, ONE, seq):
            samples.append(_left_of_root(sf, seq, lo, hi))
    return all(up.evaluate(h, x) >= 0 for x in samples)


def _left_of_root(sf, seq, lo, hi):
    """A point strictly between ``lo`` and the single root of ``sf`` in (lo, hi]."""
    while True:
        m = (lo + hi) / 2
        if up.evaluate(sf, m) == 0:
            return (lo + m) / 2
        if up.count_roots(sf, lo, m, seq) == 0:
            return m
        hi = m


__all__ = [
    "BANNER",
    "CertificationTrace",
    "ComponentLabel",
    "DualVector",
    "HypothesisError",
    "LPSolverError",
    "ReferenceClassError",
    "StepRecord",
    "Verdict",
    "Witness",
    "classify_component",
    "dual_cone_generators",
    "in_P",
    "in_dual_cone",
    "is_kahler",
    "is_nef",
    "kahler_along_ladder",
    "nef_by_iteration",
    "q_polynomial",
]
