from fractions import Fraction

import numpy as np
import pytest

from kahlercone._exact import rational
from kahlercone.polyid import (
    PolyIdentityError,
    certify_delta0,
    certify_positive,
    divided_expansion,
    find_delta0,
    identity,
    solve_A,
    target_polynomial,
    verify_identity,
)
from oracles import identity_holds_sympy

# frozen from find_delta0 (halving from 1/2); each checked against a float grid below
FROZEN_DELTA0 = {1: "1/2", 2: "1/8", 3: "1/8", 4: "1/16", 5: "1/16", 6: "1/32"}


def grid_min(ident, delta0, k=201):
    ts = np.linspace(0, 1, k)
    ds = np.linspace(0, float(delta0), k)
    vals = np.zeros((k, k))
    for m, poly in enumerate(ident.a):
        if poly:
            vals += np.polynomial.polynomial.polyval(ts, [float(c) for c in poly])[:, None] * ds[None, :] ** m
    return vals.min()


@pytest.mark.parametrize("p", range(1, 6))
def test_identity_matches_sympy(p):
    ident = solve_A(p)
    assert verify_identity(ident)
    assert identity_holds_sympy(ident.a, p)


def test_a2_closed_form():
    ident = identity(2)
    assert ident.to_string() == "2 + (12*t - 8)*delta"
    assert identity(1).to_string() == "1"


@pytest.mark.parametrize("p", range(1, 9))
def test_value_at_zero_delta(p):
    assert identity(p).at_delta(0) == [p]


def test_target_and_expansion_consistent():
    # (y - x) * quotient == target, p = 3
    p = 3
    q = divided_expansion(p).as_polynomial()
    prod = {}
    for (i, j, m), c in q.items():
        for (di, dj), s in (((0, 1), 1), ((1, 0), -1)):
            key = (i + di, j + dj, m)
            prod[key] = prod.get(key, 0) + s * c
    prod = {k: v for k, v in prod.items() if v != 0}
    assert prod == target_polynomial(p)


def test_perturbed_identity_is_rejected():
    ident = solve_A(3)
    a = list(ident.a)
    a[1] = tuple(list(a[1][:-1]) + [a[1][-1] + 1])
    assert not verify_identity(type(ident)(3, tuple(a)))


@pytest.mark.parametrize("n, d", sorted(FROZEN_DELTA0.items()))
def test_frozen_delta0(n, d):
    got, info = find_delta0(n)
    assert got == rational(d)
    for p in range(1, n + 1):
        assert grid_min(identity(p), got) > 0
    # the previous candidate failed for some p
    if got < Fraction(1, 2):
        assert not certify_delta0(n, 2 * got)[0]


def test_refutation_reports_a_real_value():
    ok, cert = certify_positive(identity(2), "1/3")
    assert not ok
    ident = identity(2)
    assert ident.evaluate(cert["t"], cert["delta"]) == cert["value"] <= 0
    assert grid_min(ident, Fraction(1, 3)) <= 0


def test_certificate_fields():
    ok, cert = certify_positive(identity(3), "1/8")
    assert ok
    assert cert["boxes"] >= 1 and cert["min_coefficient"] > 0


def test_degree_validation():
    for bad in (0, 13, 2.0):
        with pytest.raises(PolyIdentityError):
            find_delta0(bad)
    with pytest.raises(PolyIdentityError):
        certify_positive(identity(2), 0)
