"""Complex Monge-Ampere equation ``(B + hess phi)^n = C omega_eps^n`` on grid tori.

``B = alpha + eps omega`` is a constant class representative; ``C`` is an
unknown constant.  For n = 1 the equation is linear in ``phi`` and solved by
one spectral inversion.  For n = 2 a damped Newton iteration runs on
``(phi, C)``; each step solves the bordered linearisation with GMRES,
preconditioned by the constant-coefficient operator at the mean of ``B +
hess phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from ..linalg import HermitianForm, generalized_eigvalsh
from ..models import FUNDAMENTAL, ManifoldModel
from .grid import GridChart, GridField, apply_symbol
from .potentials import GeneratorSystem, build_potentials, measure_hessian_floor, omega_eps

N1_TOL = 1e-10
N2_TOL = 1e-6
MAX_FAILED_STEPS = 50


class MASolverError(ArithmeticError):
    def __init__(self, message, history=()):
        self.history = list(history)
        tail = ", ".join(f"{r:.3e}" for r in self.history[-6:])
        super().__init__(message + (f" (residual history: {tail})" if tail else ""))


@dataclass
class MASolution:
    chart: GridChart
    eps: float
    phi: GridField
    C: float
    residual: float
    min_eigenvalue: float
    alpha_eps: GridField
    omega_eps: GridField
    psi: GridField
    class_ratio: float
    A: float
    alpha: np.ndarray
    omega: np.ndarray
    iterations: int = 0
    history: list = field(default_factory=list)

    @property
    def n(self):
        return self.chart.n


def class_ratio(alpha, omega, eps):
    """``int (alpha + eps omega)^n / int omega^n`` from torus intersection numbers."""
    n = np.asarray(alpha).shape[0]
    model = ManifoldModel.torus(n)
    a = HermitianForm(np.asarray(alpha, dtype=complex), check=False)
    w = HermitianForm(np.asarray(omega, dtype=complex), check=False)
    num = model.self_intersection(FUNDAMENTAL, a + w * float(eps))
    den = model.self_intersection(FUNDAMENTAL, w)
    return float(num) / float(den)


def _det(m):
    if m.shape[-1] == 1:
        return m[..., 0, 0].real
    return np.linalg.det(m).real


def _adj2(m):
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def _min_eig(m):
    return float(np.min(np.linalg.eigvalsh(m)[..., 0]))


def _hess(sig, u):
    uh = np.fft.fft2(u)
    return np.fft.ifft2(sig * uh[..., None, None], axes=(0, 1)).real


def solve_ma(alpha, eps, system: GeneratorSystem, chart: GridChart, omega=None, A=None, tol=None, max_iter=60, psi_eps=None):
    """Solve ``(alpha + eps omega + hess phi)^n = C omega_eps^n`` with mean(phi) = 0."""
    n = chart.n
    alpha = np.asarray(alpha.to_numpy() if isinstance(alpha, HermitianForm) else alpha, dtype=complex).reshape(n, n)
    omega = np.eye(n, dtype=complex) if omega is None else np.asarray(omega, dtype=complex).reshape(n, n)
    if np.min(np.linalg.eigvalsh(omega)) <= 0:
        raise ValueError("omega must be positive definite")
    ratio = class_ratio(alpha, omega, eps)
    if ratio <= 0:
        raise ValueError(f"class volume int (alpha + eps omega)^n = {ratio:.6g} * int omega^n is not positive")
    if A is None:
        A, _ = measure_hessian_floor(system, chart, [eps], omega)
    psi, pe = build_potentials(system, eps, chart)
    if psi_eps is not None:
        pe = psi_eps
    oe = omega_eps(omega, pe, A)
    B = alpha + eps * omega
    if n == 1:
        return _solve_linear_n1(chart, eps, B, oe, psi, ratio, A, alpha, omega, tol if tol is not None else N1_TOL)
    return _solve_newton(chart, eps, B, oe, psi, ratio, A, alpha, omega, tol if tol is not None else N2_TOL, max_iter)


def _solve_linear_n1(chart, eps, B, oe, psi, ratio, A, alpha, omega, tol):
    sig = chart.hessian_symbols()[..., 0, 0]
    w = oe.values[..., 0, 0].real
    b = float(B[0, 0].real)
    C = ratio
    rhs = C * w - b
    rhs -= rhs.mean()  # removes roundoff in the mean of the Hessian term
    inv = np.zeros_like(sig)
    nz = sig != 0
    inv[nz] = 1.0 / sig[nz]
    phi = apply_symbol(chart, inv, rhs)
    phi -= phi.mean()
    hp = _hess(chart.hessian_symbols(), phi)
    a_eps = B + hp
    residual = float(np.max(np.abs(a_eps[..., 0, 0].real - C * w)))
    min_eig = float(np.min(a_eps[..., 0, 0].real))
    if residual > tol:
        raise MASolverError(f"spectral solve residual {residual:.3e} exceeds {tol:.1e}", [residual])
    if min_eig <= 0:
        raise MASolverError(f"alpha_eps lost positivity (min {min_eig:.3e})", [residual])
    return MASolution(
        chart, eps, GridField(chart, phi, eps=eps, name="phi"), C, residual, min_eig,
        GridField(chart, a_eps.astype(complex), "hermitian", eps=eps, name="alpha_eps"), oe, psi, ratio, A, alpha, omega, 1, [residual],
    )


def _solve_newton(chart, eps, B, oe, psi, ratio, A, alpha, omega, tol, max_iter):
    N = chart.resolution
    n = chart.n
    nf = factorial(n)
    sig = chart.hessian_symbols()
    floor = chart.h**2
    w = _det(oe.values)
    wmean = float(w.mean())
    phi = np.zeros((N, N))
    C = ratio

    def state(phi, C):
        M = B + _hess(sig, phi)
        F = _det(M) - C * w
        return M, F, nf * float(np.max(np.abs(F)))

    M, F, res = state(phi, C)
    history = [res]
    failures = 0
    it = 0
    target = min(tol, 1e-11)
    while res > target and it < max_iter:
        it += 1
        adj = _adj2(M)
        # tr(adj(M) S) for real symmetric S: sum_jk Re(adj_kj) S_jk
        coef = np.real(np.swapaxes(adj, -1, -2))
        cbar = coef.mean(axis=(0, 1))
        sym0 = np.einsum("abjk,jk->ab", sig, cbar)
        inv0 = np.zeros_like(sym0)
        nz = np.abs(sym0) > 1e-300
        inv0[nz] = 1.0 / sym0[nz]

        def matvec(x):
            u = x[:-1].reshape(N, N)
            dC = x[-1]
            u0 = u - u.mean()
            L = np.einsum("abjk,abjk->ab", coef, _hess(sig, u0))
            return np.concatenate([(L - dC * w).ravel(), [u.mean()]])

        def precond(r):
            rr = r[:-1].reshape(N, N)
            dC = -rr.mean() / wmean
            u = apply_symbol(chart, inv0, rr + dC * wmean)
            u += r[-1] - u.mean()
            return np.concatenate([u.ravel(), [dC]])

        op = LinearOperator((N * N + 1, N * N + 1), matvec=matvec, dtype=float)
        pc = LinearOperator((N * N + 1, N * N + 1), matvec=precond, dtype=float)
        rhs = np.concatenate([-F.ravel(), [0.0]])
        x, info = gmres(op, rhs, M=pc, rtol=1e-10, atol=0.0, restart=60, maxiter=20)
        if info < 0:
            raise MASolverError(f"GMRES breakdown (info={info})", history)
        dphi = x[:-1].reshape(N, N)
        dphi -= dphi.mean()
        dC = x[-1]
        t = 1.0
        while True:
            M_new, F_new, res_new = state(phi + t * dphi, C + t * dC)
            ok_pos = _min_eig(M_new) >= floor
            if ok_pos and res_new < res:
                break
            failures += 1
            if res <= tol:
                # within tolerance and at roundoff: no further decrease available
                return _package(chart, eps, phi, C, M, res, oe, psi, ratio, A, alpha, omega, it, history)
            if failures >= MAX_FAILED_STEPS:
                raise MASolverError("Newton stagnation: step acceptance failed 50 times", history)
            t *= 0.5
            if t < floor:
                raise MASolverError(f"step length reached the safeguard floor h^2 = {floor:.3e}", history)
        phi = phi + t * dphi
        C = C + t * dC
        M, F, res = M_new, F_new, res_new
        history.append(res)
    if res > tol:
        raise MASolverError(f"Newton did not reach residual {tol:.1e} in {max_iter} iterations", history)
    return _package(chart, eps, phi, C, M, res, oe, psi, ratio, A, alpha, omega, it, history)


def _package(chart, eps, phi, C, M, res, oe, psi, ratio, A, alpha, omega, it, history):
    min_eig = _min_eig(M)
    if min_eig <= 0:
        raise MASolverError(f"alpha_eps is not positive definite (min eigenvalue {min_eig:.3e})", history)
    phi = phi - phi.mean()
    return MASolution(
        chart, eps, GridField(chart, phi, eps=eps, name="phi"), float(C), res, min_eig,
        GridField(chart, M, "hermitian", eps=eps, name="alpha_eps"), oe, psi, ratio, A, alpha, omega, it, history,
    )


def relative_spectrum(sol: MASolution):
    """Pointwise eigenvalues of alpha_eps relative to omega_eps, ascending."""
    return generalized_eigvalsh(sol.alpha_eps.values, sol.omega_eps.values)


__all__ = ["MASolution", "MASolverError", "class_ratio", "relative_spectrum", "solve_ma"]
