"""Exact univariate polynomials over Q, stored as ascending coefficient lists.

Used for the t-polynomials ``q_Y(t)`` of the Kahler test, characteristic
polynomials, and Sturm-sequence root counting.  ``[c0, c1, c2]`` is
``c0 + c1*t + c2*t**2``; the zero polynomial is ``[]``.
"""

from __future__ import annotations

from math import comb

from ._exact import ONE, ZERO, mpq, rational, sign


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def integrate01(p):
    """Exact integral of ``p`` over [0, 1]."""
    return sum((c / (i + 1) for i, c in enumerate(p)), ZERO)


def divmod_poly(p, d):
    p = trim(p)
    d = trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [ZERO] * max(len(p) - len(d) + 1, 0)
    rem = list(p)
    lead = d[-1]
    while len(rem) >= len(d) and rem:
        k = len(rem) - len(d)
        f = rem[-1] / lead
        quot[k] = f
        for i, c in enumerate(d):
            rem[k + i] -= f * c
        rem = trim(rem)
    return trim(quot), rem


def gcd(p, q):
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def squarefree(p):
    """``p / gcd(p, p')``: same real roots, all simple."""
    g = gcd(p, derivative(p))
    if len(g) <= 1:
        return trim(p)
    return divmod_poly(p, g)[0]


def shift(p, a):
    """Coefficients of ``p(t + a)``."""
    out = []
    for i, c in enumerate(p):
        out = add(out, [c * comb(i, k) * a ** (i - k) for k in range(i + 1)])
    return out


def interpolate(xs, ys):
    """Exact Newton-form interpolation, returned in the monomial basis."""
    xs = [rational(x) for x in xs]
    coef = [rational(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        poly = add(mul(poly, [-xs[i], ONE]), [coef[i]])
    return trim(poly)


def sturm_sequence(p):
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    seq.pop()
    return seq


def _sign_changes(values):
    signs = [s for s in (sign(v) for v in values) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq, x):
    return _sign_changes([evaluate(s, x) for s in seq])


def _variations_at_infinity(seq):
    return _sign_changes([s[-1] for s in seq if s])


def count_roots(p, a, b=None, seq=None) -> int:
    """Distinct real roots of ``p`` in the half-open interval ``(a, b]``.

    ``b=None`` means ``+infinity``.
    """
    seq = seq if seq is not None else sturm_sequence(p)
    va = _variations_at(seq, a)
    vb = _variations_at_infinity(seq) if b is None else _variations_at(seq, b)
    return va - vb


def cauchy_bound(p):
    """Every real root satisfies ``|t| < 1 + max |c_i / c_lead|``."""
    p = trim(p)
    lead = abs(p[-1])
    return ONE + max((abs(c) / lead for c in p[:-1]), default=ZERO)


def isolate_roots(p, a, b, seq=None, max_depth=200):
    """Isolating intervals ``(lo, hi]`` for the distinct roots of ``p`` in ``(a, b]``.

    Each returned interval contains exactly one root; intervals are refined
    until that holds or ``max_depth`` bisections are used.
    """
    seq = seq if seq is not None else sturm_sequence(p)
    out = []
    stack = [(rational(a), rational(b), 0)]
    while stack:
        lo, hi, depth = stack.pop()
        k = count_roots(p, lo, hi, seq)
        if k == 0:
            continue
        if k == 1 or depth >= max_depth:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return sorted(out)


def positive_on_ray(p):
    """Certify ``p(t) > 0`` for every ``t >= 0``.

    Returns ``(ok, info)``.  ``info`` records the Sturm bound ``T`` and, on
    failure, the isolating intervals of the offending roots in ``[0, T]``.
    """
    p = trim(p)
    if not p:
        return False, {"reason": "zero polynomial", "roots": [(ZERO, ZERO)]}
    if p[0] <= 0:
        return False, {"reason": "value at t=0 is not positive", "roots": [(ZERO, ZERO)] if p[0] == 0 else []}
    if p[-1] < 0:
        return False, {"reason": "negative leading coefficient", "roots": []}
    if len(p) == 1:
        return True, {"bound": ZERO, "roots": []}
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    n = count_roots(p, ZERO, bound, seq)
    if n == 0:
        return True, {"bound": bound, "roots": []}
    return False, {"reason": "root in (0, T]", "bound": bound, "roots": isolate_roots(p, ZERO, bound, seq, 60)}


def to_string(p, var="t") -> str:
    """Human-readable polynomial with exact coefficients, highest power first."""
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


def factor_out_root_power(p, r):
    """Return ``(k, q)`` with ``p = (t - r)^k * q`` and ``q(r) != 0``."""
    k = 0
    p = trim(p)
    while p and evaluate(p, r) == 0:
        p, rem = divmod_poly(p, [-r, ONE])
        assert not rem
        k += 1
    return k, p


__all__ = [
    "add",
    "cauchy_bound",
    "count_roots",
    "degree",
    "derivative",
    "divmod_poly",
    "evaluate",
    "gcd",
    "integrate01",
    "interpolate",
    "isolate_roots",
    "mpq",
    "mul",
    "positive_on_ray",
    "scale",
    "shift",
    "squarefree",
    "sturm_sequence",
    "to_string",
    "trim",
]
