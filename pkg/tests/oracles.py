"""Independent oracles for the test suite.

Nothing here imports the package's arithmetic: sympy, ``fractions`` and
scipy do the work, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import numpy as np
import sympy as sp
from scipy.optimize import minimize


# ----------------------------------------------------------------------------
# Hermitian algebra


def sympy_matrix(rows):
    """Rows of rationals or ``(re, im)`` pairs as a sympy matrix."""

    def conv(x):
        if isinstance(x, (tuple, list)):
            return sp.Rational(str(x[0])) + sp.I * sp.Rational(str(x[1]))
        return sp.Rational(str(x))

    return sp.Matrix([[conv(x) for x in r] for r in rows])


def mixed_discriminant_sympy(mats):
    """Coefficient of ``t_1 ... t_n`` in ``det(sum t_i A_i)``, divided by n!."""
    n = len(mats)
    ts = sp.symbols(f"t0:{n}")
    M = sp.zeros(n, n)
    for t, A in zip(ts, mats):
        M += t * A
    poly = sp.Poly(sp.expand(M.det()), *ts)
    coeff = poly.coeff_monomial(sp.Mul(*ts))
    return sp.nsimplify(sp.expand(coeff)) / factorial(n)


def gauss_det(rows):
    """Determinant over Q(i) by permutation expansion (n <= 4); values are (re, im) Fractions."""
    n = len(rows)

    def mul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    total = (Fraction(0), Fraction(0))
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = (Fraction(sign), Fraction(0))
        for i in range(n):
            term = mul(term, rows[i][perm[i]])
        total = (total[0] + term[0], total[1] + term[1])
    return total


def positive_definite_sylvester(rows) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    n = len(rows)
    for k in range(1, n + 1):
        re, im = gauss_det([r[:k] for r in rows[:k]])
        assert im == 0
        if re <= 0:
            return False
    return True


def random_gauss_hermitian(rng, n, num=5, den=4):
    """Random Hermitian matrix over Q(i) as (re, im) Fraction pairs."""

    def q():
        return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))

    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = (q(), Fraction(0))
        for j in range(i + 1, n):
            z = (q(), q())
            rows[i][j] = z
            rows[j][i] = (z[0], -z[1])
    return rows


def to_package_rows(rows):
    """Pair rows for ``HermitianForm`` (via ``GaussRat``-compatible strings)."""
    from kahlercone._exact import make_complex, rational

    return [[make_complex(rational(str(re)), rational(str(im))) for re, im in r] for r in rows]


# ----------------------------------------------------------------------------
# Polynomial identity


def identity_holds_sympy(a_coeffs, p) -> bool:
    """``(y - dx)^p - (1-d)^p x^p == (y - x) int_0^1 A_p ((1-t)x + ty)^(p-1) dt``."""
    t, d, x, y = sp.symbols("t d x y")
    A = sum(sp.Rational(str(c)) * t**r * d**m for m, poly in enumerate(a_coeffs) for r, c in enumerate(poly))
    integrand = sp.expand(A * ((1 - t) * x + t * y) ** (p - 1))
    rhs = (y - x) * sp.integrate(integrand, (t, 0, 1))
    lhs = (y - d * x) ** p - (1 - d) ** p * x**p
    return sp.expand(lhs - rhs) == 0


# ----------------------------------------------------------------------------
# Cones


def cone_member_bruteforce(gens, b, tol=1e-6) -> bool:
    """Caratheodory search: is ``b`` a nonnegative combination of at most dim generators?"""
    G = np.asarray(gens, dtype=float).T
    b = np.asarray(b, dtype=float)
    dim, m = G.shape
    if np.linalg.norm(b) <= tol:
        return True
    scale = max(1.0, float(np.linalg.norm(b)))
    for k in range(1, min(dim, m) + 1):
        for sub in combinations(range(m), k):
            S = G[:, sub]
            lam, *_ = np.linalg.lstsq(S, b, rcond=None)
            if np.all(lam >= -tol) and np.linalg.norm(S @ np.maximum(lam, 0) - b) <= tol * scale:
                return True
    return False


def surface_nef_slsqp(Q, curves, ref, alpha, tol=1e-8) -> bool:
    """Nef on a surface: ``alpha.C >= 0`` for every curve and ``alpha.w >= 0`` on the Kahler chamber.

    In Lorentz coordinates ``z`` (``w^2 = z0^2 - |z'|^2``) the chamber slice
    ``{w.ref = 1, z0 >= |z'|, w.C >= 0}`` is cut out by concave constraints,
    so SLSQP finds the minimum of the linear functional ``w -> alpha.w``.
    """
    Q = np.asarray(Q, dtype=float)
    a = np.asarray(alpha, dtype=float)
    ref = np.asarray(ref, dtype=float)
    curves = [np.asarray(c, dtype=float) for c in curves]
    for c in curves:
        if a @ Q @ c < -tol:
            return False
    lam, V = np.linalg.eigh(Q)
    order = np.argsort(-lam)
    lam, V = lam[order], V[:, order]
    if lam[0] <= 0 or np.any(lam[1:] >= 0):
        raise ValueError("oracle needs a Lorentzian intersection form")
    to_w = V / np.sqrt(np.abs(lam))  # w = to_w @ z
    z_ref = np.sqrt(np.abs(lam)) * (V.T @ ref)
    flip = 1.0 if z_ref[0] > 0 else -1.0
    to_w = to_w * np.r_[flip, np.ones(len(lam) - 1)]

    def w_of(z):
        return to_w @ z

    cons = [
        {"type": "eq", "fun": lambda z: w_of(z) @ Q @ ref - 1.0},
        {"type": "ineq", "fun": lambda z: z[0] - np.sqrt(z[1:] @ z[1:] + 1e-30)},
    ] + [{"type": "ineq", "fun": (lambda z, c=c: w_of(z) @ Q @ c)} for c in curves]
    z0 = np.linalg.solve(to_w, ref / (ref @ Q @ ref))

    def feasible(z):
        return abs(cons[0]["fun"](z)) <= 1e-7 and all(c["fun"](z) >= -1e-7 for c in cons[1:])

    best = float(a @ Q @ w_of(z0))
    res = minimize(lambda z: a @ Q @ w_of(z), z0, constraints=cons, method="SLSQP", options={"ftol": 1e-14, "maxiter": 1000})
    # SLSQP may stop with a line-search warning at a feasible optimum
    if feasible(res.x):
        best = min(best, float(res.fun))
    return best >= -1e-7 * max(1.0, float(np.linalg.norm(a)))
