from math import factorial

import numpy as np
import pytest
import scipy.linalg
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from kahlercone._exact import make_complex, rational
from kahlercone.linalg import (
    AlternatingForm,
    DimensionError,
    HermitianForm,
    NotPositiveDefiniteError,
    charpoly,
    det_exact,
    generalized_eigvalsh,
    mixed_discriminant,
    rank_exact,
    realize,
    relative_eigenvalues,
    signature,
    solve_exact,
    wedge_top,
)
from oracles import mixed_discriminant_sympy, sympy_matrix

small = st.integers(-4, 4)


@st.composite
def hermitian_rows(draw, n):
    rows = [[None] * n for _ in range(n)]
    pairs = [[None] * n for _ in range(n)]
    for i in range(n):
        d = draw(small)
        rows[i][i] = rational(d)
        pairs[i][i] = d
        for j in range(i + 1, n):
            re, im = draw(small), draw(small)
            rows[i][j] = make_complex(rational(re), rational(im))
            rows[j][i] = make_complex(rational(re), rational(-im))
            pairs[i][j] = (re, im)
            pairs[j][i] = (re, -im)
    return rows, pairs


@given(st.data())
def test_mixed_discriminant_matches_polarization_oracle(data):
    n = data.draw(st.integers(2, 3))
    drawn = [data.draw(hermitian_rows(n)) for _ in range(n)]
    forms = [HermitianForm(r) for r, _ in drawn]
    want = mixed_discriminant_sympy([sympy_matrix(p) for _, p in drawn])
    got = mixed_discriminant(forms)
    assert sp.Rational(int(got.numerator), int(got.denominator)) == want
    flt = mixed_discriminant([f.to_float() for f in forms])
    assert flt == pytest.approx(float(got), abs=1e-9 * max(1, abs(float(got))))


@given(st.data())
def test_mixed_discriminant_of_equal_forms_is_det(data):
    n = data.draw(st.integers(1, 4))
    rows, pairs = data.draw(hermitian_rows(n))
    h = HermitianForm(rows)
    assert mixed_discriminant([h] * n) == h.det()
    assert sp.Rational(str(h.det())) == sympy_matrix(pairs).det()


@given(st.data())
def test_wedge_top_of_realized_power(data):
    n = data.draw(st.integers(1, 3))
    rows, _ = data.draw(hermitian_rows(n))
    h = HermitianForm(rows)
    a = realize(h)
    assert wedge_top([a] * n) == factorial(n) * h.det()


def test_realize_identity_and_orientation():
    a = realize(HermitianForm.identity(2))
    assert a.as_dict() == {(0, 1): 1, (2, 3): 1}
    assert wedge_top([a, a]) == 2
    vol = AlternatingForm.from_dict(2, 4, {(0, 1, 2, 3): 1})
    assert vol.evaluate(np.eye(4).tolist()) == 1


def test_alternating_form_signs():
    e1 = AlternatingForm(1, 1, [1, 0])
    e2 = AlternatingForm(1, 1, [0, 1])
    assert e1.wedge(e2).coeffs == [1]
    assert e2.wedge(e1).coeffs == [-1]
    assert AlternatingForm.from_dict(1, 2, {(1, 0): 3}).coeffs == [-3]
    with pytest.raises(DimensionError):
        wedge_top([e1])


@given(st.data())
def test_signature_matches_numpy(data):
    n = data.draw(st.integers(1, 4))
    rows, _ = data.draw(hermitian_rows(n))
    h = HermitianForm(rows)
    ev = np.linalg.eigvalsh(h.to_numpy())
    pos, neg, zero = signature(h)
    assert pos + neg + zero == n
    assert pos == int(np.sum(ev > 1e-9))
    assert neg == int(np.sum(ev < -1e-9))
    assert signature(h.to_float()) == (pos, neg, zero)


@given(st.data())
def test_charpoly_matches_sympy(data):
    n = data.draw(st.integers(1, 3))
    rows, pairs = data.draw(hermitian_rows(n))
    lam = sp.symbols("lam")
    want = sp.Poly((lam * sp.eye(n) - sympy_matrix(pairs)).det(), lam).all_coeffs()[::-1]
    got = charpoly(HermitianForm(rows))
    assert [sp.Rational(str(c)) for c in got] == [sp.nsimplify(c) for c in want]


def test_restriction_to_subtorus():
    h = HermitianForm([[2, [0, 1]], [[0, -1], 3]])
    assert h.restrict([[rational(1)], [rational(0)]]).det() == 2
    diag = np.array([[1], [1]], dtype=complex)
    assert h.to_float().restrict(diag).det() == pytest.approx(5.0)


def test_generalized_eigenvalues_match_scipy():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(5, 3, 3)) + 1j * rng.normal(size=(5, 3, 3))
    a = a + np.conj(np.swapaxes(a, -1, -2))
    m = rng.normal(size=(5, 3, 3)) + 1j * rng.normal(size=(5, 3, 3))
    b = m @ np.conj(np.swapaxes(m, -1, -2)) + 3 * np.eye(3)
    got = generalized_eigvalsh(a, b)
    for k in range(5):
        assert np.allclose(got[k], scipy.linalg.eigh(a[k], b[k], eigvals_only=True), atol=1e-10)
    with pytest.raises(NotPositiveDefiniteError):
        relative_eigenvalues(HermitianForm.identity(2), HermitianForm.diag([1, -1]))


def test_exact_linear_algebra():
    rows = [[rational(2), rational(1)], [rational(1), rational(1)]]
    assert det_exact(rows) == 1
    assert rank_exact([[1, 2], [2, 4]]) == 1
    assert solve_exact(rows, [rational(3), rational(2)]) == [1, 1]
    assert solve_exact([[rational(1)], [rational(1)]], [rational(1), rational(2)]) is None


def test_hermitian_validation():
    with pytest.raises(ValueError):
        HermitianForm([[1, 2], [3, 1]])
    with pytest.raises(DimensionError):
        mixed_discriminant([HermitianForm.identity(2)])
    assert HermitianForm.identity(2) + HermitianForm.diag([1, -1]) == HermitianForm.diag([2, 0])
