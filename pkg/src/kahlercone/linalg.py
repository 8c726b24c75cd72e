"""Hermitian and alternating forms on C^n: the substrate for intersection numbers.

Conventions
-----------
A Hermitian matrix ``H`` stands for the real (1,1)-form

    (i/2) * sum_jk H[j,k] dz_j ^ dzbar_k

on C^n = R^{2n} with real coordinates ordered ``(x1, y1, x2, y2, ...)``.
With the lattice volume normalised to 1 this makes ``int_X H^n = n! det H``
on a torus, and the identity matrix realises to ``sum_j dx_j ^ dy_j``.

Exact matrices hold ``gmpy2.mpq`` / :class:`GaussRat` entries in an object
array; float matrices are ``complex128``.  Operations keep exactness when
every input is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial

import numpy as np

from . import univariate as up
from ._exact import (
    ONE,
    ZERO,
    ExactnessError,
    GaussRat,
    conj,
    exact_scalar,
    imag_part,
    make_complex,
    rational,
    real_part,
    to_complex,
)

MAX_N = 8
_EXACT_EXPANSION_MAX_N = 6


class DimensionError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"reference form is not positive definite (minimum eigenvalue {self.min_eigenvalue:.6g})")


class HermitianForm:
    """Constant real (1,1)-form, held as an n x n Hermitian matrix."""

    __slots__ = ("_m", "exact")

    def __init__(self, entries, *, check=True):
        if isinstance(entries, HermitianForm):
            self._m = entries._m
            self.exact = entries.exact
            return
        exact, m = _coerce_matrix(entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"Hermitian form needs a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise DimensionError("Hermitian form needs n >= 1")
        if check:
            _check_hermitian(m, exact)
        self._m = m
        self.exact = exact

    @classmethod
    def identity(cls, n):
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values):
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(rows)

    @classmethod
    def zero(cls, n):
        return cls.diag([0] * n)

    @property
    def n(self) -> int:
        return self._m.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._m.copy()

    def __getitem__(self, idx):
        return self._m[idx]

    def to_numpy(self) -> np.ndarray:
        if not self.exact:
            return self._m.copy()
        return np.array([[to_complex(x) for x in row] for row in self._m], dtype=complex)

    def to_float(self) -> "HermitianForm":
        return HermitianForm(self.to_numpy(), check=False)

    def rows(self):
        return [list(r) for r in self._m]

    def _combine(self, other, op):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        _same_n(self, other)
        if self.exact and other.exact:
            m = np.empty_like(self._m)
            for idx in np.ndindex(m.shape):
                m[idx] = op(self._m[idx], other._m[idx])
            return HermitianForm(m, check=False)
        return HermitianForm(op(self.to_numpy(), other.to_numpy()), check=False)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        if isinstance(c, HermitianForm):
            return NotImplemented
        if self.exact and not isinstance(c, float):
            c = rational(c)
            m = np.empty_like(self._m)
            for idx in np.ndindex(m.shape):
                m[idx] = c * self._m[idx]
            return HermitianForm(m, check=False)
        return HermitianForm(float(c) * self.to_numpy(), check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HermitianForm) or other.n != self.n:
            return NotImplemented
        if self.exact and other.exact:
            return all(self._m[idx] == other._m[idx] for idx in np.ndindex(self._m.shape))
        return bool(np.array_equal(self.to_numpy(), other.to_numpy()))

    def __hash__(self):
        if self.exact:
            return hash(tuple(self._m.ravel()))
        return hash(self._m.tobytes())

    def __repr__(self):
        if self.exact:
            body = "; ".join(", ".join(str(x) for x in row) for row in self._m)
        else:
            body = "; ".join(", ".join(f"{x:.6g}" for x in row) for row in self._m)
        return f"HermitianForm([{body}])"

    def det(self):
        """Determinant (real): ``mpq`` when exact, ``float`` otherwise."""
        if self.exact:
            return real_part(det_exact(self._m))
        return float(np.linalg.det(self._m).real)

    def restrict(self, basis) -> "HermitianForm":
        """Restriction to the complex span of the columns of ``basis`` (n x p).

        The realised 2-form evaluated on ``(v, i v)`` is ``v^T H conj(v)``;
        the restricted matrix is therefore ``B^T H conj(B)``.
        """
        if self.exact and _is_exact_array(basis):
            b = np.array(basis, dtype=object)
            bt = b.T
            bc = np.vectorize(conj, otypes=[object])(b)
            return HermitianForm(_matmul_exact(_matmul_exact(bt, self._m), bc), check=False)
        b = np.asarray(_to_complex_array(basis))
        return HermitianForm(b.T @ self.to_numpy() @ b.conj(), check=False)


def _is_exact_array(a) -> bool:
    arr = np.array(a, dtype=object)
    return all(not isinstance(x, (float, complex, np.floating, np.complexfloating)) for x in arr.ravel())


def _to_complex_array(a):
    arr = np.array(a, dtype=object)
    return np.vectorize(to_complex, otypes=[complex])(arr) if arr.dtype == object else arr.astype(complex)


def _coerce_matrix(entries):
    if isinstance(entries, np.ndarray) and entries.dtype != object:
        return False, entries.astype(complex)
    rows = [list(r) for r in entries]
    flat = [x for r in rows for x in r]
    if any(isinstance(x, (float, complex, np.floating, np.complexfloating)) for x in flat):
        return False, np.array([[complex(*x) if isinstance(x, (tuple, list)) else complex(x) for x in r] for r in rows], dtype=complex)
    n = len(rows)
    m = np.empty((n, len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != m.shape[1]:
            raise DimensionError("ragged matrix rows")
        for j, x in enumerate(r):
            m[i, j] = exact_scalar(x)
    return True, m


def _check_hermitian(m, exact):
    n = m.shape[0]
    if exact:
        for j in range(n):
            for k in range(j, n):
                if m[k, j] != conj(m[j, k]):
                    raise ValueError(f"matrix is not Hermitian at entries ({j},{k}) and ({k},{j})")
    else:
        scale = max(1.0, float(np.max(np.abs(m))))
        if not np.allclose(m, m.conj().T, atol=1e-12 * scale, rtol=0):
            raise ValueError("matrix is not Hermitian")


def _same_n(*forms):
    ns = {f.n for f in forms}
    if len(ns) != 1:
        raise DimensionError(f"forms have mismatched dimensions {sorted(ns)}")
    return ns.pop()


def _matmul_exact(a, b):
    out = np.empty((a.shape[0], b.shape[1]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = ZERO
            for k in range(a.shape[1]):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def det_exact(rows):
    """Exact determinant by Gaussian elimination over Q(i)."""
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        inv = ONE / p
        row_c = m[c]
        for r in range(c + 1, n):
            f = m[r][c]
            if f == 0:
                continue
            f = f * inv
            row_r = m[r]
            for k in range(c + 1, n):
                if row_c[k] != 0:
                    row_r[k] = row_r[k] - f * row_c[k]
    return det


def rank_exact(rows) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = ONE / m[rank][c]
        for r in range(nrows):
            if r != rank and m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def solve_exact(rows, rhs):
    """Exact solution of ``A x = b`` for ``A`` of full column rank.

    Returns ``None`` when the system is inconsistent.  Raises
    :class:`DimensionError` when the columns are dependent.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(m[0]) - 1 if m else 0
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            raise DimensionError("linear system has dependent columns")
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][-1] != 0 for i in range(r, nrows)):
        return None
    return [m[i][-1] for i in range(ncols)]


# ----------------------------------------------------------------------------
# Spectra


@dataclass(frozen=True)
class EigenSpectrum:
    values: tuple

    def __post_init__(self):
        v = self.values
        if any(a > b for a, b in zip(v, v[1:])):
            raise ValueError("eigen spectrum must be nondecreasing")

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def product(self) -> float:
        return float(np.prod(self.values))


def generalized_eigvalsh(a, b):
    """Eigenvalues of ``a`` relative to PD ``b``, batched over leading axes.

    Cholesky-reduces ``b = L L^*`` and diagonalises ``L^{-1} a L^{-*}``.
    Raises :class:`NotPositiveDefiniteError` if any ``b`` fails Cholesky.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    try:
        chol = np.linalg.cholesky(b)
    except np.linalg.LinAlgError:
        raise NotPositiveDefiniteError(np.min(np.linalg.eigvalsh(b))) from None
    n = a.shape[-1]
    eye = np.broadcast_to(np.eye(n, dtype=complex), chol.shape)
    linv = np.linalg.solve(chol, eye)
    c = linv @ a @ np.conj(np.swapaxes(linv, -1, -2))
    c = 0.5 * (c + np.conj(np.swapaxes(c, -1, -2)))
    return np.linalg.eigvalsh(c)


def relative_eigenvalues(alpha: HermitianForm, omega: HermitianForm) -> EigenSpectrum:
    """Roots of ``det(alpha - lambda*omega) = 0``, ascending."""
    _same_n(alpha, omega)
    w = omega.to_numpy()
    ev = np.linalg.eigvalsh(w)
    if ev[0] <= 0:
        raise NotPositiveDefiniteError(ev[0])
    vals = generalized_eigvalsh(alpha.to_numpy(), w)
    return EigenSpectrum(tuple(float(x) for x in np.sort(vals)))


SIGNATURE_RTOL = 1e-9


def charpoly(alpha: HermitianForm):
    """Exact characteristic polynomial ``det(lambda*I - alpha)`` (ascending)."""
    if not alpha.exact:
        raise ExactnessError("charpoly needs an exact form")
    n = alpha.n
    xs, ys = [], []
    for k in range(n + 1):
        lam = rational(k)
        m = [[(lam if i == j else ZERO) - alpha[i, j] for j in range(n)] for i in range(n)]
        xs.append(lam)
        ys.append(real_part(det_exact(m)))
    return up.interpolate(xs, ys)


def signature(alpha: HermitianForm, zero_rtol: float = SIGNATURE_RTOL):
    """Inertia ``(positive, negative, zero)`` of a Hermitian form.

    Exact forms use Descartes' rule on the characteristic polynomial (exact
    because every root is real).  Float forms count eigenvalues with the
    threshold ``zero_rtol * max|eig|`` (or ``zero_rtol`` if all vanish).
    """
    n = alpha.n
    if alpha.exact:
        p = charpoly(alpha)
        zero = next(i for i, c in enumerate(p) if c != 0)
        nonzero = [c for c in p if c != 0]
        pos = sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))
        return pos, n - pos - zero, zero
    ev = np.linalg.eigvalsh(alpha.to_numpy())
    scale = float(np.max(np.abs(ev)))
    thr = zero_rtol * (scale if scale > 0 else 1.0)
    pos = int(np.sum(ev > thr))
    neg = int(np.sum(ev < -thr))
    return pos, neg, n - pos - neg


# ----------------------------------------------------------------------------
# Mixed discriminants


def _multiset_permutations(counts):
    total = sum(counts)
    seq = [0] * total

    def rec(pos):
        if pos == total:
            yield tuple(seq)
            return
        for g, c in enumerate(counts):
            if c:
                counts[g] -= 1
                seq[pos] = g
                yield from rec(pos + 1)
                counts[g] += 1

    yield from rec(0)


def _group_forms(forms):
    groups, counts, index = [], [], []
    for f in forms:
        for gi, g in enumerate(groups):
            if g is f or (g.exact == f.exact and g == f):
                counts[gi] += 1
                index.append(gi)
                break
        else:
            groups.append(f)
            counts.append(1)
            index.append(len(groups) - 1)
    return groups, counts


def mixed_discriminant(forms):
    """Polarised determinant ``D(a_1, ..., a_n)``, normalised so D(a,...,a) = det a.

    Exact inputs are expanded multilinearly: column ``j`` of the mixed
    matrix is drawn from the form assigned to slot ``j``, summed over all
    distinct assignments of the (grouped) forms.  Float inputs use the
    inclusion-exclusion polarisation formula.
    """
    forms = list(forms)
    if not forms:
        raise DimensionError("mixed discriminant of an empty list")
    n = _same_n(*forms)
    if len(forms) != n:
        raise DimensionError(f"mixed discriminant needs exactly n={n} forms, got {len(forms)}")
    if all(f.exact for f in forms) and n <= _EXACT_EXPANSION_MAX_N:
        groups, counts = _group_forms(forms)
        if len(groups) == 1:
            return groups[0].det()
        weight = ONE
        for c in counts:
            weight *= factorial(c)
        weight /= factorial(n)
        total = ZERO
        mats = [g._m for g in groups]
        for assign in _multiset_permutations(list(counts)):
            m = [[mats[assign[j]][i, j] for j in range(n)] for i in range(n)]
            total = total + det_exact(m)
        return real_part(total) * weight
    return float(mixed_discriminant_batch([f.to_numpy() for f in forms]))


def mixed_discriminant_batch(arrays):
    """Float polarisation formula, broadcasting over leading axes.

    ``arrays`` is a list of n arrays of shape ``(..., n, n)``.
    """
    arrays = [np.asarray(a, dtype=complex) for a in arrays]
    n = arrays[0].shape[-1]
    if len(arrays) != n:
        raise DimensionError(f"mixed discriminant needs exactly n={n} forms, got {len(arrays)}")
    shape = np.broadcast_shapes(*(a.shape for a in arrays))
    total = np.zeros(shape[:-2])
    for r in range(1, n + 1):
        sgn = (-1) ** (n - r)
        for subset in combinations(range(n), r):
            s = sum(arrays[i] for i in subset)
            total = total + sgn * np.linalg.det(np.broadcast_to(s, shape)).real
    return total / factorial(n)


def top_density(forms_with_powers):
    """Pointwise density of a wedge product of (1,1)-forms against Lebesgue measure.

    ``forms_with_powers`` is a list of ``(array, power)``; the powers must
    sum to n.  The density of ``a_1 ^ ... ^ a_n`` is ``n! D(a_1, ..., a_n)``.
    """
    arrays = []
    for a, k in forms_with_powers:
        arrays.extend([a] * k)
    n = np.asarray(arrays[0]).shape[-1]
    if n == 1:
        return np.asarray(arrays[0], dtype=complex)[..., 0, 0].real
    return factorial(n) * mixed_discriminant_batch(arrays)


# ----------------------------------------------------------------------------
# Alternating forms on R^{2n}


def _basis(real_dim, k):
    return list(combinations(range(real_dim), k))


def _index(real_dim, k):
    return {idx: i for i, idx in enumerate(_basis(real_dim, k))}


def _merge_sign(a, b):
    """Sign of the permutation sorting ``a + b`` (disjoint increasing tuples)."""
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return -1 if inversions % 2 else 1


class AlternatingForm:
    """Constant k-form on R^{2n}, one coefficient per increasing k-subset.

    Basis vectors are numbered from 0: ``e_{2j}`` is ``dx_{j+1}`` and
    ``e_{2j+1}`` is ``dy_{j+1}``.
    """

    __slots__ = ("n", "k", "coeffs", "exact")

    def __init__(self, n, k, coeffs=None, exact=None):
        if not 0 <= k <= 2 * n:
            raise DimensionError(f"degree {k} outside [0, {2 * n}]")
        size = comb(2 * n, k)
        if coeffs is None:
            coeffs = [ZERO] * size
            exact = True if exact is None else exact
        coeffs = list(coeffs)
        if len(coeffs) != size:
            raise DimensionError(f"a {k}-form on R^{2 * n} has {size} coefficients, got {len(coeffs)}")
        if exact is None:
            exact = all(not isinstance(c, (float, np.floating)) for c in coeffs)
        if exact:
            coeffs = [rational(c) for c in coeffs]
        else:
            coeffs = [float(c) for c in coeffs]
        self.n, self.k, self.coeffs, self.exact = n, k, coeffs, exact

    @classmethod
    def from_dict(cls, n, k, terms, exact=None):
        """Build from ``{(i1, ..., ik): value}`` with 0-based, any-order indices."""
        idx = _index(2 * n, k)
        vals = [ZERO] * comb(2 * n, k)
        if exact is False:
            vals = [0.0] * len(vals)
        for key, v in terms.items():
            key = tuple(key)
            if len(set(key)) != len(key):
                continue
            order = sorted(range(len(key)), key=lambda i: key[i])
            perm_sign = _perm_sign(order)
            vals[idx[tuple(sorted(key))]] += perm_sign * (rational(v) if exact is not False and not isinstance(v, float) else float(v))
        return cls(n, k, vals, exact)

    @classmethod
    def one(cls, n, exact=True):
        return cls(n, 0, [ONE if exact else 1.0], exact)

    @property
    def basis(self):
        return _basis(2 * self.n, self.k)

    def as_dict(self):
        return {b: c for b, c in zip(self.basis, self.coeffs) if c != 0}

    def to_float(self):
        return AlternatingForm(self.n, self.k, [float(c) for c in self.coeffs], exact=False)

    def __add__(self, other):
        self._check(other)
        return AlternatingForm(self.n, self.k, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.exact and other.exact)

    def __sub__(self, other):
        self._check(other)
        return AlternatingForm(self.n, self.k, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.exact and other.exact)

    def __mul__(self, c):
        exact = self.exact and not isinstance(c, float)
        c = rational(c) if exact else float(c)
        return AlternatingForm(self.n, self.k, [c * a for a in self.coeffs], exact)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, AlternatingForm):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ", ".join(f"e{''.join(str(i + 1) for i in b)}: {c}" for b, c in self.as_dict().items())
        return f"AlternatingForm(n={self.n}, k={self.k}, {{{terms}}})"

    def _check(self, other):
        if (self.n, self.k) != (other.n, other.k):
            raise DimensionError("alternating forms of different shape")

    def wedge(self, other) -> "AlternatingForm":
        if self.n != other.n:
            raise DimensionError("wedge of forms on different spaces")
        k = self.k + other.k
        if k > 2 * self.n:
            raise DimensionError(f"wedge degree {k} exceeds {2 * self.n}")
        exact = self.exact and other.exact
        idx = _index(2 * self.n, k)
        out = [ZERO if exact else 0.0] * len(idx)
        for a, ca in zip(self.basis, self.coeffs):
            if ca == 0:
                continue
            sa = set(a)
            for b, cb in zip(other.basis, other.coeffs):
                if cb == 0 or sa.intersection(b):
                    continue
                out[idx[tuple(sorted(a + b))]] += _merge_sign(a, b) * ca * cb
        return AlternatingForm(self.n, k, out, exact)

    def power(self, p) -> "AlternatingForm":
        out = AlternatingForm.one(self.n, self.exact)
        for _ in range(p):
            out = out.wedge(self)
        return out

    def evaluate(self, vectors):
        """Value on ``k`` vectors of R^{2n} (rows of a k x 2n array)."""
        vectors = [list(v) for v in vectors]
        if len(vectors) != self.k:
            raise DimensionError(f"{self.k}-form evaluated on {len(vectors)} vectors")
        total = ZERO if self.exact else 0.0
        for b, c in zip(self.basis, self.coeffs):
            if c == 0:
                continue
            minor = [[v[i] for i in b] for v in vectors]
            d = det_exact(minor) if self.exact else float(np.linalg.det(np.array(minor, dtype=float))) if minor else 1.0
            total += c * d
        return total


def _perm_sign(order):
    order = list(order)
    sgn = 1
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sgn = -sgn
    return sgn


def wedge_top(forms) -> object:
    """Coefficient of ``e_1 ^ ... ^ e_{2n}`` in the wedge of ``forms``."""
    forms = list(forms)
    if not forms:
        raise DimensionError("wedge_top of an empty list")
    n = forms[0].n
    total = sum(f.k for f in forms)
    if total != 2 * n:
        raise DimensionError(f"degrees sum to {total}, expected {2 * n}")
    acc = forms[0]
    for f in forms[1:]:
        acc = acc.wedge(f)
    return acc.coeffs[0]


def realize(alpha: HermitianForm) -> AlternatingForm:
    """Real 2-form of a Hermitian matrix (see module docstring).

    With ``H = A + iB`` (A symmetric, B antisymmetric)::

        sum_jk A[j,k] dx_j ^ dy_k  -  sum_{j<k} B[j,k] (dx_j ^ dx_k + dy_j ^ dy_k)
    """
    n = alpha.n
    exact = alpha.exact
    terms = {}
    m = alpha._m if exact else alpha.to_numpy()
    re = (lambda z: real_part(z)) if exact else (lambda z: float(z.real))
    im = (lambda z: imag_part(z)) if exact else (lambda z: float(z.imag))
    for j in range(n):
        for k in range(n):
            a = re(m[j, k])
            if a != 0:
                terms[(2 * j, 2 * k + 1)] = terms.get((2 * j, 2 * k + 1), 0) + a
            if j < k:
                b = im(m[j, k])
                if b != 0:
                    terms[(2 * j, 2 * k)] = terms.get((2 * j, 2 * k), 0) - b
                    terms[(2 * j + 1, 2 * k + 1)] = terms.get((2 * j + 1, 2 * k + 1), 0) - b
    return AlternatingForm.from_dict(n, 2, terms, exact=exact)


def real_frame(basis_columns):
    """Oriented real frame ``(v1, i v1, v2, i v2, ...)`` of a complex span.

    ``basis_columns`` holds p complex vectors as length-2n real lists
    ``(Re v_1, Im v_1, Re v_2, Im v_2, ...)``.
    """
    out = []
    for col in basis_columns:
        col = list(col)
        out.append(col)
        rot = []
        for j in range(0, len(col), 2):
            rot.extend([-col[j + 1], col[j]])
        out.append(rot)
    return out


def complex_columns(basis_columns, exact=True):
    """n x p complex matrix from real column lists."""
    cols = []
    for col in basis_columns:
        col = list(col)
        if len(col) % 2:
            raise DimensionError("real column length must be even (2n)")
        if exact:
            cols.append([make_complex(rational(col[2 * j]), rational(col[2 * j + 1])) for j in range(len(col) // 2)])
        else:
            cols.append([complex(float(col[2 * j]), float(col[2 * j + 1])) for j in range(len(col) // 2)])
    if not cols:
        return np.empty((0, 0), dtype=object if exact else complex)
    return np.array(cols, dtype=object if exact else complex).T


__all__ = [
    "AlternatingForm",
    "DimensionError",
    "EigenSpectrum",
    "GaussRat",
    "HermitianForm",
    "NotPositiveDefiniteError",
    "charpoly",
    "complex_columns",
    "det_exact",
    "generalized_eigvalsh",
    "mixed_discriminant",
    "mixed_discriminant_batch",
    "rank_exact",
    "real_frame",
    "realize",
    "relative_eigenvalues",
    "signature",
    "solve_exact",
    "top_density",
    "wedge_top",
]
