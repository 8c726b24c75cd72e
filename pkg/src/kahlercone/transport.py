"""Hodge frames along a path of linear complex structures and (1,1)-transport.

Degree-2 forms on R^{2n} are stored as coordinate vectors over the basis
``e_ij`` (i < j, 0-based), the same order as :class:`AlternatingForm`.
A complex structure ``J`` acts on them by the derivation

    D(B) = J^T B + B J        (B the antisymmetric matrix of the form),

whose eigenvalues are ``2i`` on (2,0), ``0`` on (1,1) and ``-2i`` on (0,2).
The projectors are polynomials in ``D``::

    P11 = (D^2 + 4) / 4,    P20 = -D (D + 2i) / 8,    P02 = -D (D - 2i) / 8.

Transport along the (1,1) subbundle of the flat bundle of constant forms
solves ``s' = P11' s``.  Differentiating ``s = P s`` gives
``s' = P' s + P s'``; the induced connection asks ``P s' = 0``, so
``s' = P' s`` (using ``P P' P = 0``).  Paths are polynomial in ``u``, hence
``P'`` is evaluated in closed form.

Every fiber shares the declared cycle table: the cycles are assumed to stay
analytic along the whole path, and this is checked on the type of their
Poincare-dual forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np
import yaml

from . import univariate as up
from ._exact import ONE, ZERO, rational
from .cone import in_P
from .linalg import AlternatingForm, DimensionError, HermitianForm, realize, wedge_top
from .models import ModelError, ModelParseError, _Doc, _lit, _num

BANNER = "families keep every declared cycle analytic in every fiber; verdicts are relative to that cycle table"
J_TOL = 1e-12
FRAME_TOL = 1e-12
DEFECT_TOL = 1e-8
START_TOL = 1e-10
MIN_STEPS = 100


class FamilyError(ModelError):
    """A path or its cycle table violates the family contract."""


class TransportDefectError(ArithmeticError):
    def __init__(self, kind, u, value, tol):
        self.kind, self.u, self.value = kind, u, value
        super().__init__(f"{kind} defect {value:.3e} exceeds {tol:.1e} first at u = {u:.6g}; increase the step count")


def standard_j(n):
    """``J e_{2j} = e_{2j+1}``, i.e. ``J d/dx_j = d/dy_j``."""
    J = np.zeros((2 * n, 2 * n))
    for j in range(n):
        J[2 * j + 1, 2 * j] = 1.0
        J[2 * j, 2 * j + 1] = -1.0
    return J


def _standard_j_exact(n):
    J = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        J[2 * j + 1][2 * j] = ONE
        J[2 * j][2 * j + 1] = -ONE
    return J


# ----------------------------------------------------------------------------
# Frames


def two_form_basis(n):
    return list(combinations(range(2 * n), 2))


def derivation_matrix(J):
    """Matrix of ``B -> J^T B + B J`` on degree-2 coordinates."""
    J = np.asarray(J, dtype=float)
    dim = J.shape[0]
    basis = list(combinations(range(dim), 2))
    rows = np.array([i for i, _ in basis])
    cols = np.array([j for _, j in basis])
    D = np.empty((len(basis), len(basis)))
    for c, (a, b) in enumerate(basis):
        B = np.zeros((dim, dim))
        B[a, b], B[b, a] = 1.0, -1.0
        D[:, c] = (J.T @ B + B @ J)[rows, cols]
    return D


def check_complex_structure(J, tol=J_TOL):
    J = np.asarray(J, dtype=float)
    if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] % 2:
        raise FamilyError(f"complex structure must be a square matrix of even size, got shape {J.shape}")
    err = float(np.max(np.abs(J @ J + np.eye(J.shape[0]))))
    scale = max(1.0, float(np.max(np.abs(J))) ** 2)
    if err > tol * scale:
        raise FamilyError(f"J^2 + I has entries up to {err:.3e}: not a complex structure")
    return err


@dataclass
class HodgeFrame:
    J: np.ndarray
    D: np.ndarray
    pi20: np.ndarray
    pi11: np.ndarray
    pi02: np.ndarray

    @property
    def n(self):
        return self.J.shape[0] // 2

    def ranks(self):
        return tuple(int(round(np.trace(P).real)) for P in (self.pi20, self.pi11, self.pi02))

    def axiom_defects(self) -> dict:
        P = (self.pi20, self.pi11, self.pi02)
        eye = np.eye(self.D.shape[0])
        return {
            "idempotence": max(float(np.max(np.abs(p @ p - p))) for p in P),
            "partition": float(np.max(np.abs(sum(P) - eye))),
            "conjugation": max(
                float(np.max(np.abs(np.conj(self.pi20) - self.pi02))),
                float(np.max(np.abs(np.conj(self.pi11) - self.pi11))),
            ),
            "trace": max(abs(np.trace(p).real - r) for p, r in zip(P, expected_ranks(self.n))),
        }

    def check(self, tol=FRAME_TOL):
        bad = {k: v for k, v in self.axiom_defects().items() if v > tol * max(1.0, np.max(np.abs(self.D)) ** 2)}
        if bad:
            raise FamilyError("projector axioms fail: " + ", ".join(f"{k} {v:.3e}" for k, v in sorted(bad.items())))
        if self.ranks() != expected_ranks(self.n):
            raise FamilyError(f"projector ranks {self.ranks()} differ from {expected_ranks(self.n)}")


def expected_ranks(n):
    return (comb(n, 2), n * n, comb(n, 2))


def hodge_projectors(J) -> HodgeFrame:
    check_complex_structure(J)
    J = np.asarray(J, dtype=float)
    D = derivation_matrix(J)
    eye = np.eye(D.shape[0])
    D2 = D @ D
    pi11 = (D2 + 4 * eye) / 4
    pi20 = -(D2 + 2j * D) / 8
    pi02 = -(D2 - 2j * D) / 8
    return HodgeFrame(J, D, pi20, pi11.astype(complex), pi02)


def form_derivation(J, form: AlternatingForm) -> AlternatingForm:
    """``sum_r zeta(..., J v_r, ...)`` for a k-form; zero exactly on sums of (q,q)-forms."""
    n = form.n
    J = np.asarray(J, dtype=float)
    out = AlternatingForm(n, form.k, [0.0] * comb(2 * n, form.k), exact=False)
    if form.k == 0:
        return out
    ones = [AlternatingForm(n, 1, [float(x) for x in J[i]], exact=False) for i in range(2 * n)]
    unit = [AlternatingForm(n, 1, [1.0 if j == i else 0.0 for j in range(2 * n)], exact=False) for i in range(2 * n)]
    for b, c in zip(form.basis, form.coeffs):
        if c == 0:
            continue
        for r in range(len(b)):
            acc = AlternatingForm.one(n, exact=False)
            for s, i in enumerate(b):
                acc = acc.wedge(ones[i] if s == r else unit[i])
            out = out + acc * float(c)
    return out


# ----------------------------------------------------------------------------
# Paths


@dataclass(frozen=True)
class FamilyCycle:
    name: str
    form: AlternatingForm  # Poincare-dual form, degree 2(n - dim)

    @property
    def dim(self):
        return self.form.n - self.form.k // 2


@dataclass
class ComplexStructurePath:
    """``J(u)`` with polynomial entries (ascending exact coefficients in u)."""

    n: int
    entries: list
    cycles: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        size = 2 * self.n
        if len(self.entries) != size or any(len(r) != size for r in self.entries):
            raise FamilyError(f"J must be {size} x {size}")
        self.entries = [[tuple(up.trim([rational(c) for c in e])) for e in row] for row in self.entries]
        deg = max(len(e) for row in self.entries for e in row)
        self._coef = np.zeros((max(deg, 1), size, size))
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                for d, c in enumerate(e):
                    self._coef[d, i, j] = float(c)
        self._dcoef = self._coef[1:] * np.arange(1, self._coef.shape[0])[:, None, None]
        names = [c.name for c in self.cycles]
        if len(set(names)) != len(names):
            raise FamilyError("duplicate cycle names")
        for c in self.cycles:
            if c.form.n != self.n or c.form.k % 2 or not 0 < c.form.k < 2 * self.n:
                raise FamilyError(f"cycle {c.name}: dual form must have even degree in (0, {2 * self.n})")

    # polynomial J(u)
    @staticmethod
    def _horner(coef, u):
        acc = np.zeros(coef.shape[1:])
        for c in coef[::-1]:
            acc = acc * u + c
        return acc

    def J(self, u):
        return self._horner(self._coef, float(u))

    def dJ(self, u):
        if not len(self._dcoef):
            return np.zeros(self._coef.shape[1:])
        return self._horner(self._dcoef, float(u))

    @property
    def degree(self):
        return self._coef.shape[0] - 1

    @property
    def is_closed(self):
        return bool(np.allclose(self.J(0.0), self.J(1.0), atol=0, rtol=0))

    def frame(self, u) -> HodgeFrame:
        return hodge_projectors(self.J(u))

    def pi11_and_derivative(self, u):
        J, dJ = self.J(u), self.dJ(u)
        D = derivation_matrix(J)
        dD = _derivation_linear(dJ)
        eye = np.eye(D.shape[0])
        return (D @ D + 4 * eye) / 4, (dD @ D + D @ dD) / 4

    def validate(self, samples=101):
        """J^2 = -I, projector axioms and cycle types at ``samples`` points of [0, 1]."""
        for u in np.linspace(0.0, 1.0, samples):
            J = self.J(u)
            self.frame(u).check()
            for c in self.cycles:
                d = form_derivation(J, c.form)
                err = max(abs(x) for x in d.coeffs)
                if err > J_TOL * max(1.0, float(np.max(np.abs(J)))):
                    raise FamilyError(f"cycle {c.name} is not of pure type in the fiber u = {u:.6g} (defect {err:.3e})")
        return self

    # constructors
    @classmethod
    def constant(cls, n, J0=None, cycles=(), name="constant"):
        J0 = _standard_j_exact(n) if J0 is None else [[rational(x) for x in r] for r in J0]
        return cls(n, [[(x,) for x in r] for r in J0], list(cycles), name)

    @classmethod
    def conjugation(cls, n, X, s, J0=None, cycles=(), name="conjugation"):
        """``(I + s(u) X) J0 (I - s(u) X)`` for a nilpotent ``X`` (``X^2 = 0``)."""
        size = 2 * n
        J0 = _standard_j_exact(n) if J0 is None else [[rational(x) for x in r] for r in J0]
        X = [[rational(x) for x in r] for r in X]
        s = [rational(c) for c in s]
        if len(X) != size or any(len(r) != size for r in X):
            raise FamilyError(f"X must be {size} x {size}")
        if any(x != 0 for r in _matmul(X, X) for x in r):
            raise FamilyError("X must satisfy X^2 = 0")
        P1 = _matsub(_matmul(X, J0), _matmul(J0, X))
        P2 = [[-x for x in r] for r in _matmul(_matmul(X, J0), X)]
        s2 = up.mul(s, s)
        entries = [
            [up.add(up.add([J0[i][j]], up.scale(s, P1[i][j])), up.scale(s2, P2[i][j])) for j in range(size)]
            for i in range(size)
        ]
        return cls(n, entries, list(cycles), name)


def _derivation_linear(M):
    """``B -> M^T B + B M`` for arbitrary ``M`` (derivative of ``D`` along J')."""
    return derivation_matrix(M)


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), ZERO) for j in range(len(B[0]))] for i in range(len(A))]


def _matsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def fundamental_cycle(n) -> FamilyCycle:
    return FamilyCycle("X", AlternatingForm.one(n))


# ----------------------------------------------------------------------------
# Transport


def class_coordinates(n, alpha):
    """Real degree-2 coordinates of a Hermitian form, 2-form or coordinate list."""
    if isinstance(alpha, HermitianForm):
        alpha = realize(alpha)
    if isinstance(alpha, AlternatingForm):
        if alpha.k != 2 or alpha.n != n:
            raise DimensionError(f"expected a 2-form on R^{2 * n}")
        return np.array([float(c) for c in alpha.coeffs])
    v = np.asarray(alpha, dtype=float).ravel()
    if v.shape[0] != comb(2 * n, 2):
        raise DimensionError(f"a 2-form on R^{2 * n} has {comb(2 * n, 2)} coordinates, got {v.shape[0]}")
    return v


@dataclass
class TransportResult:
    path: ComplexStructurePath
    u: np.ndarray
    states: np.ndarray  # complex, (samples, C(2n, 2))
    subbundle_defect: np.ndarray
    reality_defect: np.ndarray
    norms: np.ndarray
    lipschitz: float
    method: str = "rk4"

    @property
    def steps(self):
        return len(self.u) - 1

    @property
    def max_subbundle_defect(self):
        return float(np.max(self.subbundle_defect))

    @property
    def max_reality_defect(self):
        return float(np.max(self.reality_defect))

    def alpha(self, i) -> AlternatingForm:
        return AlternatingForm(self.path.n, 2, [float(x) for x in self.states[i].real], exact=False)

    @property
    def norm_controlled(self) -> bool:
        bound = np.exp(self.lipschitz * self.u) * self.norms[0]
        return bool(np.all(self.norms <= bound * (1 + 1e-12) + 1e-14))


def transport(path: ComplexStructurePath, alpha0, steps=1000, check=True, tol=DEFECT_TOL) -> TransportResult:
    """Integrate ``s' = P11'(u) s`` from u = 0 to 1 with classical RK4."""
    if steps < MIN_STEPS:
        raise ValueError(f"steps must be >= {MIN_STEPS}, got {steps}")
    s = class_coordinates(path.n, alpha0).astype(complex)
    P0, _ = path.pi11_and_derivative(0.0)
    start = float(np.linalg.norm(s - P0 @ s))
    if start > START_TOL * max(1.0, float(np.linalg.norm(s))):
        raise FamilyError(f"initial class is not of type (1,1) in the fiber u = 0 (projection defect {start:.3e})")
    h = 1.0 / steps
    us = np.linspace(0.0, 1.0, steps + 1)
    states = np.empty((steps + 1, s.shape[0]), dtype=complex)
    sub = np.empty(steps + 1)
    real = np.empty(steps + 1)
    lip = 0.0
    P, dP = path.pi11_and_derivative(0.0)
    for i, u in enumerate(us):
        states[i] = s
        sub[i] = float(np.linalg.norm(s - P @ s))
        real[i] = float(np.linalg.norm(s - np.conj(s)))
        lip = max(lip, float(np.linalg.norm(dP, 2)))
        if check:
            if sub[i] > tol:
                raise TransportDefectError("subbundle", u, sub[i], tol)
            if real[i] > tol:
                raise TransportDefectError("reality", u, real[i], tol)
        if i == steps:
            break
        _, dPm = path.pi11_and_derivative(u + h / 2)
        P1, dP1 = path.pi11_and_derivative(us[i + 1])
        lip = max(lip, float(np.linalg.norm(dPm, 2)))
        k1 = dP @ s
        k2 = dPm @ (s + h / 2 * k1)
        k3 = dPm @ (s + h / 2 * k2)
        k4 = dP1 @ (s + h * k3)
        s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        P, dP = P1, dP1
    norms = np.linalg.norm(states, axis=1)
    return TransportResult(path, us, states, sub, real, norms, lip)


def naive_transport(path: ComplexStructurePath, alpha0, steps=1000) -> TransportResult:
    """Negative control: reproject the initial class into each fiber, ignoring the connection."""
    s0 = class_coordinates(path.n, alpha0).astype(complex)
    us = np.linspace(0.0, 1.0, steps + 1)
    states = np.array([path.pi11_and_derivative(u)[0] @ s0 for u in us])
    zeros = np.zeros(steps + 1)
    return TransportResult(path, us, states, zeros, np.linalg.norm(states.imag, axis=1) * 2, np.linalg.norm(states, axis=1), float("inf"), "reprojection")


def convergence_table(path, alpha0, steps=(100, 200, 400)):
    """``[(steps, max subbundle defect, ratio to previous)]`` for step halving."""
    out = []
    prev = None
    for n_steps in steps:
        d = transport(path, alpha0, n_steps, check=False).max_subbundle_defect
        out.append((n_steps, d, prev / d if prev is not None and d > 0 else None))
        prev = d
    return out


@dataclass
class PairingSeries:
    cycle: str
    p: int
    values: np.ndarray

    @property
    def drift(self) -> float:
        return float(np.max(np.abs(self.values - self.values[0])))


def pairing_values(result: TransportResult, zeta, p) -> np.ndarray:
    form = zeta.form if isinstance(zeta, FamilyCycle) else zeta
    n = result.path.n
    if form.n != n or form.k + 2 * p != 2 * n:
        raise DimensionError(f"deg zeta + 2p = {form.k + 2 * p}, expected {2 * n}")
    zf = form.to_float()
    return np.array([float(wedge_top([result.alpha(i)] * p + [zf])) for i in range(len(result.u))])


def pairing_drift(result: TransportResult, zeta, p=None) -> PairingSeries:
    """``max_u |alpha(u)^p . zeta - alpha(0)^p . zeta|``; ``p`` defaults to the cycle dimension."""
    form = zeta.form if isinstance(zeta, FamilyCycle) else zeta
    if p is None:
        p = result.path.n - form.k // 2
    name = zeta.name if isinstance(zeta, FamilyCycle) else "zeta"
    return PairingSeries(name, p, pairing_values(result, form, p))


def all_pairings(result: TransportResult):
    cycles = [fundamental_cycle(result.path.n)] + list(result.path.cycles)
    return [pairing_drift(result, c) for c in cycles]


# ----------------------------------------------------------------------------
# Verdicts along the path


class FiberModel:
    """Model of one fiber: the shared cycle table plus the fiber's complex structure."""

    kind = "fiber"
    generic = False

    def __init__(self, path: ComplexStructurePath, u):
        self.n = path.n
        self.J = path.J(u)
        self.cycles = [fundamental_cycle(self.n)] + list(path.cycles)

    @property
    def positive_dimensional_cycles(self):
        return [c for c in self.cycles if c.dim >= 1]

    def coerce_class(self, alpha):
        return [float(x) for x in class_coordinates(self.n, alpha)]

    def self_intersection(self, cycle, alpha):
        a = AlternatingForm(self.n, 2, list(alpha), exact=False)
        return float(wedge_top([a] * cycle.dim + [cycle.form.to_float()]))

    def signature(self, alpha, rtol=1e-9):
        """Inertia of ``g(v, w) = alpha(v, J w)``, halved."""
        coords = self.coerce_class(alpha)
        B = np.zeros((2 * self.n, 2 * self.n))
        for (a, b), c in zip(two_form_basis(self.n), coords):
            B[a, b], B[b, a] = c, -c
        g = B @ self.J
        g = (g + g.T) / 2
        ev = np.linalg.eigvalsh(g)
        tol = rtol * max(1.0, float(np.max(np.abs(ev))))
        pos, neg = int(np.sum(ev > tol)), int(np.sum(ev < -tol))
        return pos // 2, neg // 2


@dataclass
class FiberVerdict:
    u: float
    answer: str
    signature: tuple

    @property
    def label(self):
        if self.answer != "yes":
            return "not in P"
        p, q = self.signature
        return f"({p},{q}) " + ("Kahler component" if q == 0 else "non-Kahler component of P")


@dataclass
class InvarianceReport:
    rows: list

    @property
    def answers(self):
        return sorted({r.answer for r in self.rows})

    @property
    def constant(self) -> bool:
        return len({(r.answer, r.signature) for r in self.rows}) == 1

    @property
    def ever_kahler(self) -> bool:
        return any(r.answer == "yes" and r.signature[1] == 0 for r in self.rows)


def verdict_invariance(result: TransportResult, every=1) -> InvarianceReport:
    """``in_P`` and the signature label in every ``every``-th fiber (and the last)."""
    idx = list(range(0, len(result.u), every))
    if idx[-1] != len(result.u) - 1:
        idx.append(len(result.u) - 1)
    rows = []
    for i in idx:
        fiber = FiberModel(result.path, result.u[i])
        alpha = result.states[i].real
        rows.append(FiberVerdict(float(result.u[i]), in_P(fiber, alpha).answer, fiber.signature(alpha)))
    return InvarianceReport(rows)


# ----------------------------------------------------------------------------
# Family documents


def _poly_entry(doc, value, path):
    if isinstance(value, list):
        return [_num(doc, c, f"{path}[{i}]") for i, c in enumerate(value)]
    return [_num(doc, value, path)]


def _indices(doc, key, n, path):
    try:
        idx = tuple(int(t) - 1 for t in str(key).replace(" ", "").split(","))
    except ValueError:
        raise doc.error(f"bad index tuple {key!r}; write 1-based indices like '3,4'", path) from None
    if any(not 0 <= i < 2 * n for i in idx) or len(set(idx)) != len(idx):
        raise doc.error(f"index tuple {key!r} out of range 1..{2 * n} or repeated", path)
    return idx


def load_family(text: str) -> ComplexStructurePath:
    """Parse a family document (YAML; see README)."""
    doc = _Doc(text)
    data = doc.data
    if not isinstance(data, dict):
        raise doc.error("family document must be a mapping", None)
    for key in data:
        if key not in ("name", "n", "J", "conjugation", "cycles"):
            raise doc.error(f"unknown field {key!r}", key)
    n = doc.get(data, "n", "")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise doc.error("n must be a positive integer", "n")
    cycles = []
    for i, c in enumerate(doc.get(data, "cycles", "", required=False, default=[]) or []):
        cp = f"cycles[{i}]"
        name = str(doc.get(c, "name", cp))
        terms = doc.get(c, "form", cp)
        if not isinstance(terms, dict) or not terms:
            raise doc.error("form must be a non-empty mapping of index tuples to rationals", cp + ".form")
        parsed = {_indices(doc, k, n, f"{cp}.form"): _num(doc, v, f"{cp}.form.{k}") for k, v in terms.items()}
        degrees = {len(k) for k in parsed}
        if len(degrees) != 1:
            raise doc.error("all terms of a form need the same degree", cp + ".form")
        cycles.append(FamilyCycle(name, AlternatingForm.from_dict(n, degrees.pop(), parsed, exact=True)))
    name = str(data.get("name", "") or "")
    try:
        if ("J" in data) == ("conjugation" in data):
            raise doc.error("give exactly one of J and conjugation", None)
        if "J" in data:
            rows = data["J"]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise doc.error("J must be a list of rows", "J")
            entries = [[_poly_entry(doc, e, f"J[{i}][{j}]") for j, e in enumerate(r)] for i, r in enumerate(rows)]
            path = ComplexStructurePath(n, entries, cycles, name)
        else:
            spec = data["conjugation"]
            X = doc.get(spec, "X", "conjugation")
            s = doc.get(spec, "s", "conjugation")
            X = [[_num(doc, x, f"conjugation.X[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(X)]
            s = _poly_entry(doc, s, "conjugation.s")
            path = ComplexStructurePath.conjugation(n, X, s, cycles=cycles, name=name)
        return path.validate()
    except ModelParseError:
        raise
    except FamilyError as exc:
        raise ModelParseError(str(exc)) from None


def family_to_dict(path: ComplexStructurePath) -> dict:
    def entry(e):
        if len(e) <= 1:
            return _lit(e[0]) if e else 0
        return [_lit(c) for c in e]

    out = {"name": path.name, "n": path.n, "J": [[entry(e) for e in row] for row in path.entries]}
    out["cycles"] = [
        {"name": c.name, "form": {",".join(str(i + 1) for i in b): _lit(v) for b, v in c.form.as_dict().items()}}
        for c in path.cycles
    ]
    return out


def dump_family(path: ComplexStructurePath) -> str:
    return yaml.safe_dump(family_to_dict(path), sort_keys=False, default_flow_style=None)


def describe_coordinate(b):
    return "e" + "".join(str(i + 1) for i in b)


__all__ = [
    "BANNER",
    "ComplexStructurePath",
    "FamilyCycle",
    "FamilyError",
    "FiberModel",
    "FiberVerdict",
    "HodgeFrame",
    "InvarianceReport",
    "PairingSeries",
    "TransportDefectError",
    "TransportResult",
    "all_pairings",
    "check_complex_structure",
    "class_coordinates",
    "convergence_table",
    "derivation_matrix",
    "describe_coordinate",
    "dump_family",
    "expected_ranks",
    "family_to_dict",
    "form_derivation",
    "fundamental_cycle",
    "hodge_projectors",
    "load_family",
    "naive_transport",
    "pairing_drift",
    "pairing_values",
    "standard_j",
    "transport",
    "two_form_basis",
    "verdict_invariance",
]
