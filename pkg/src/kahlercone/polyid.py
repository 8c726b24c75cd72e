"""The divided-difference identity behind the nef iteration.

For each degree p there are unique polynomials ``a_m(t)`` of degree at most
p-1 such that, with ``A_p(t, d) = sum_m a_m(t) d^m``,

    (y - d x)^p - (1 - d)^p x^p = (y - x) * int_0^1 A_p(t, d) ((1-t) x + t y)^(p-1) dt.

The quotient by ``y - x`` has coefficients ``b[l, m]`` on ``x^l y^(p-1-l) d^m``,
and ``b[l, m] = int_0^1 a_m(t) C(p-1, l) (1-t)^l t^(p-1-l) dt``; each ``a_m`` is
recovered from a p x p moment system.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from . import univariate as up
from ._exact import ONE, ZERO, format_rational, rational
from .linalg import solve_exact

P_MAX = 12
MAX_DEPTH = 12


class PolyIdentityError(ValueError):
    pass


class CertificationError(RuntimeError):
    """No certifiable delta0 found (numerical failure, exit code 3)."""


def _check_p(p):
    if not isinstance(p, int) or not 1 <= p <= P_MAX:
        raise PolyIdentityError(f"degree p must be an integer in [1, {P_MAX}], got {p!r}")


@dataclass(frozen=True)
class CoeffTable:
    p: int
    b: dict  # (l, m) -> mpq, nonzero entries only

    def __getitem__(self, key):
        return self.b.get(key, ZERO)

    def as_polynomial(self):
        """Quotient as ``{(deg_x, deg_y, deg_d): coeff}``."""
        return {(l, self.p - 1 - l, m): c for (l, m), c in self.b.items()}


def target_polynomial(p):
    """``(y - d x)^p - (1 - d)^p x^p`` as ``{(deg_x, deg_y, deg_d): coeff}``."""
    out = {}
    for j in range(p + 1):
        # C(p, j) y^j (-d x)^(p-j)
        _acc(out, (p - j, j, p - j), rational(comb(p, j) * (-1) ** (p - j)))
    for m in range(p + 1):
        _acc(out, (p, 0, m), rational(-comb(p, m) * (-1) ** m))
    return _clean(out)


def _acc(poly, key, c):
    poly[key] = poly.get(key, ZERO) + c


def _clean(poly):
    return {k: v for k, v in poly.items() if v != 0}


def _mul3(a, b):
    out = {}
    for (i1, j1, k1), c1 in a.items():
        for (i2, j2, k2), c2 in b.items():
            _acc(out, (i1 + i2, j1 + j2, k1 + k2), c1 * c2)
    return _clean(out)


def divided_expansion(p: int) -> CoeffTable:
    """Exact division of the target polynomial by ``y - x``.

    The dividend is homogeneous of degree p in (x, y); writing it as
    ``sum_j f_j(d) x^(p-j) y^j`` the quotient ``sum_j q_j(d) x^(p-1-j) y^j``
    follows from ``q_{p-1} = f_p`` and ``q_{j-1} = f_j + q_j``.  The remainder
    ``f_0 + q_0`` must vanish.
    """
    _check_p(p)
    target = target_polynomial(p)
    f = [[ZERO] * (p + 1) for _ in range(p + 1)]  # f[j][m]
    for (i, j, m), c in target.items():
        f[j][m] += c
    q = [None] * p
    q[p - 1] = list(f[p])
    for j in range(p - 1, 0, -1):
        q[j - 1] = [a + b for a, b in zip(f[j], q[j])]
    remainder = [a + b for a, b in zip(f[0], q[0])]
    if any(c != 0 for c in remainder):
        raise PolyIdentityError(f"nonzero remainder dividing by (y - x) at p={p}")
    b = {}
    for j in range(p):
        l = p - 1 - j
        for m, c in enumerate(q[j]):
            if c != 0:
                b[(l, m)] = c
    table = CoeffTable(p, b)
    if _mul3(table.as_polynomial(), {(1, 0, 0): -ONE, (0, 1, 0): ONE}) != target:
        raise PolyIdentityError(f"division check failed at p={p}")
    return table


def moment_matrix(p):
    """``M[l][r] = int_0^1 t^r C(p-1, l) (1-t)^l t^(p-1-l) dt``."""
    _check_p(p)
    return [
        [rational(comb(p - 1, l) * factorial(l) * factorial(r + p - 1 - l)) / factorial(r + p) for r in range(p)]
        for l in range(p)
    ]


@dataclass
class PolyIdentity:
    p: int
    a: tuple  # a[m] = ascending coefficients of a_m(t)
    delta0: object = None
    certificate: dict = field(default_factory=dict)

    def coefficient_grid(self):
        """``c[r][m]`` with ``A_p = sum c[r][m] t^r d^m``."""
        grid = [[ZERO] * (self.p + 1) for _ in range(self.p)]
        for m, poly in enumerate(self.a):
            for r, c in enumerate(poly):
                grid[r][m] = c
        return grid

    def evaluate(self, t, d):
        return sum((up.evaluate(poly, t) * d**m for m, poly in enumerate(self.a)), ZERO)

    def at_delta(self, d):
        """``A_p(t, d)`` as a polynomial in t."""
        out = []
        for m, poly in enumerate(self.a):
            out = up.add(out, up.scale(poly, rational(d) ** m))
        return out

    def to_string(self, t="t", d="delta") -> str:
        parts = []
        for m, poly in enumerate(self.a):
            poly = up.trim(poly)
            if not poly:
                continue
            body = up.to_string(poly, t)
            if m == 0:
                parts.append(body)
                continue
            mono = d if m == 1 else f"{d}^{m}"
            if len(poly) == 1:
                c = poly[0]
                if c == 1:
                    term = mono
                elif c == -1:
                    term = f"-{mono}"
                else:
                    term = f"{format_rational(c)}*{mono}"
            elif sum(1 for c in poly if c != 0) == 1:
                term = f"{body}*{mono}"
            else:
                term = f"({body})*{mono}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def solve_A(p: int) -> PolyIdentity:
    table = divided_expansion(p)
    mom = moment_matrix(p)
    a = []
    for m in range(p + 1):
        rhs = [table[(l, m)] for l in range(p)]
        sol = solve_exact(mom, rhs)
        if sol is None:
            raise PolyIdentityError(f"moment system inconsistent at p={p}, m={m}")
        a.append(tuple(up.trim(sol)))
    return PolyIdentity(p, tuple(a))


def verify_identity(ident: PolyIdentity) -> bool:
    """Integrate ``A_p(t,d) ((1-t)x + ty)^(p-1)`` over [0,1] term by term,
    multiply by ``y - x`` and compare with the target coefficientwise."""
    p = ident.p
    integral = {}
    grid = ident.coefficient_grid()
    for l in range(p):
        base = comb(p - 1, l)
        for r in range(p):
            # int t^r (1-t)^l t^(p-1-l) dt via the beta integral
            mom = rational(base * factorial(l) * factorial(r + p - 1 - l)) / factorial(r + p)
            for m in range(p + 1):
                c = grid[r][m]
                if c != 0:
                    _acc(integral, (l, p - 1 - l, m), c * mom)
    lhs = _mul3(_clean(integral), {(1, 0, 0): -ONE, (0, 1, 0): ONE})
    return lhs == target_polynomial(p)


# ----------------------------------------------------------------------------
# Positivity certificates on [0,1] x [0, delta0]


def _to_bernstein(coeffs, degree):
    """Univariate monomial -> Bernstein coefficients on [0,1]."""
    c = list(coeffs) + [ZERO] * (degree + 1 - len(coeffs))
    return [sum((rational(comb(k, i)) / comb(degree, i) * c[i] for i in range(k + 1)), ZERO) for k in range(degree + 1)]


def bernstein_grid(ident: PolyIdentity, delta0):
    """Tensor Bernstein coefficients of ``A_p(t, delta0 * s)`` on [0,1]^2."""
    p = ident.p
    dt, ds = p - 1, p
    d0 = rational(delta0)
    grid = ident.coefficient_grid()
    scaled = [[grid[r][m] * d0**m for m in range(ds + 1)] for r in range(dt + 1)]
    rows = [_to_bernstein(row, ds) for row in scaled]  # along s
    cols = [_to_bernstein([rows[r][k] for r in range(dt + 1)], dt) for k in range(ds + 1)]  # along t
    return [[cols[k][r] for k in range(ds + 1)] for r in range(dt + 1)]


def _split(coeffs):
    """de Casteljau split at 1/2 of a univariate Bernstein coefficient list."""
    pts = list(coeffs)
    left, right = [pts[0]], [pts[-1]]
    while len(pts) > 1:
        pts = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
        left.append(pts[0])
        right.append(pts[-1])
    return left, right[::-1]


def _split_rows(grid):
    halves = [_split(row) for row in grid]
    return [h[0] for h in halves], [h[1] for h in halves]


def _transpose(grid):
    return [list(r) for r in zip(*grid)]


def certify_positive(ident: PolyIdentity, delta0, max_depth=MAX_DEPTH):
    """Certify ``A_p > 0`` on ``[0,1] x [0, delta0]`` by Bernstein subdivision.

    Returns ``(ok, certificate)``.  A nonpositive corner coefficient is an
    actual value of ``A_p`` and refutes positivity outright.
    """
    d0 = rational(delta0)
    if d0 <= 0:
        raise PolyIdentityError("delta0 must be positive")
    stack = [(bernstein_grid(ident, d0), 0, (ZERO, ONE, ZERO, ONE))]
    boxes = 0
    deepest = 0
    min_coeff = None
    while stack:
        grid, depth, box = stack.pop()
        corners = [grid[0][0], grid[0][-1], grid[-1][0], grid[-1][-1]]
        if min(corners) <= 0:
            t0, t1, s0, s1 = box
            where = [(t0, s0), (t0, s1), (t1, s0), (t1, s1)][corners.index(min(corners))]
            return False, {
                "kind": "bernstein-subdivision",
                "p": ident.p,
                "delta0": d0,
                "reason": "nonpositive value",
                "t": where[0],
                "delta": where[1] * d0,
                "value": min(corners),
            }
        lo = min(min(r) for r in grid)
        if lo > 0:
            boxes += 1
            deepest = max(deepest, depth)
            min_coeff = lo if min_coeff is None else min(min_coeff, lo)
            continue
        if depth >= max_depth:
            return False, {
                "kind": "bernstein-subdivision",
                "p": ident.p,
                "delta0": d0,
                "reason": f"undecided at depth {max_depth}",
            }
        t0, t1, s0, s1 = box
        tm, sm = (t0 + t1) / 2, (s0 + s1) / 2
        if len(grid) > 1:
            lower, upper = _split_rows(_transpose(grid))
            lower, upper = _transpose(lower), _transpose(upper)
            t_halves = [(lower, t0, tm), (upper, tm, t1)]
        else:
            t_halves = [(grid, t0, t1)]
        for g, a, b in t_halves:
            left, right = _split_rows(g)
            stack.append((left, depth + 1, (a, b, s0, sm)))
            stack.append((right, depth + 1, (a, b, sm, s1)))
    return True, {
        "kind": "bernstein-subdivision",
        "p": ident.p,
        "delta0": d0,
        "boxes": boxes,
        "depth": deepest,
        "min_coefficient": min_coeff,
    }


_CACHE = {}


def identity(p: int) -> PolyIdentity:
    """Cached :func:`solve_A`."""
    if p not in _CACHE:
        _CACHE[p] = solve_A(p)
    return _CACHE[p]


def certify_delta0(n: int, delta0):
    """Certify a candidate for every p = 1..n; returns ``(ok, {p: certificate})``."""
    _check_p(n)
    certs = {}
    for p in range(1, n + 1):
        ok, cert = certify_positive(identity(p), delta0)
        certs[p] = cert
        if not ok:
            return False, certs
    return True, certs


def find_delta0(n: int, start="1/2", min_delta="1/1048576"):
    """Halve from ``start`` until every ``A_p`` (p <= n) certifies."""
    _check_p(n)
    d = rational(start)
    floor = rational(min_delta)
    tried = []
    while d >= floor:
        ok, certs = certify_delta0(n, d)
        tried.append((d, ok))
        if ok:
            return d, {"tried": tried, "certificates": certs}
        d /= 2
    raise CertificationError(f"no delta0 >= {floor} certified for n={n}")


__all__ = [
    "CertificationError",
    "CoeffTable",
    "PolyIdentity",
    "PolyIdentityError",
    "bernstein_grid",
    "certify_delta0",
    "certify_positive",
    "divided_expansion",
    "find_delta0",
    "identity",
    "moment_matrix",
    "solve_A",
    "target_polynomial",
    "verify_identity",
]
