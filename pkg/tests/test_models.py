from fractions import Fraction

import numpy as np
import pytest

from kahlercone._exact import make_complex, rational
from kahlercone.linalg import HermitianForm
from kahlercone.models import (
    FUNDAMENTAL,
    POINT,
    ManifoldModel,
    ModelError,
    ModelParseError,
    dump_class,
    dump_model,
    hermitian_coordinates,
    hermitian_from_coordinates,
    load_class,
    load_model,
    model_to_dict,
    product_intersection_check,
)
from oracles import random_gauss_hermitian, to_package_rows

SUBTORUS = """\
kind: torus
n: 2
cycles:
  - name: E1
    dim: 1
    basis: [[1, 0, 0, 0]]
  - name: D
    dim: 1
    basis: [[1, 0, 1, 0]]
    weight: 1/2
"""


def test_fixture_models_load(fixtures):
    torus = load_model((fixtures / "torus2.km").read_text())
    assert torus.generic and torus.h11 == 4
    assert [c.name for c in torus.positive_dimensional_cycles] == [FUNDAMENTAL]
    surf = load_model((fixtures / "surface.km").read_text())
    assert surf.h11 == 2 and surf.kahler == (2, -1)
    assert surf.intersect("E", [[1, 0]]) == 0
    assert surf.intersect("F", [[2, -1]]) == 1


def test_subtorus_intersections():
    m = load_model(SUBTORUS)
    h = HermitianForm([[2, [0, 1]], [[0, -1], 3]])
    assert m.self_intersection("E1", h) == 2
    # D spans (1, 1): H(v, v) = 2 + 3 + 2 Re(i) = 5, weight 1/2
    assert m.self_intersection("D", h) == Fraction(5, 2)
    assert m.self_intersection(FUNDAMENTAL, h) == 2 * h.det()
    assert m.self_intersection(POINT, h) == 1


@pytest.mark.parametrize(
    "text, field, line",
    [
        ("kind: torus\nn: 2\ngenric: true\n", "genric", 3),
        ("kind: sphere\nn: 2\n", "kind", 1),
        ("kind: torus\nn: two\n", "n", 2),
        ("kind: surface\nn: 2\nintersection_matrix: [[1, x]]\n", "intersection_matrix[0][1]", 3),
        ("kind: torus\nn: 2\ncycles:\n  - {name: A, dim: 2, basis: [[1, 0, 0, 0]]}\n", "cycles[0]", 4),
        ("kind: surface\nn: 2\nintersection_matrix: [[1]]\ncycles:\n  - {name: C, curve: [1/2]}\n", None, None),
    ],
)
def test_parse_errors_name_field_and_line(text, field, line):
    with pytest.raises(ModelParseError) as exc:
        load_model(text)
    if field is not None:
        assert exc.value.field == field
        assert exc.value.line == line
        assert f"[field {field}]" in str(exc.value)


def test_parse_error_on_bad_yaml_and_duplicates():
    with pytest.raises(ModelParseError) as exc:
        load_model("kind: torus\nn: [1,\n")
    assert exc.value.line is not None
    with pytest.raises(ModelParseError, match="duplicate key"):
        load_model("kind: torus\nn: 2\nn: 3\n")
    with pytest.raises(ModelParseError, match="empty"):
        load_model("")


def test_semantic_errors(fixtures):
    with pytest.raises(ModelParseError, match="not symmetric"):
        load_model((fixtures / "bad.km").read_text())
    with pytest.raises(ModelError, match="not in the Kahler chamber"):
        ManifoldModel.surface([[1, 0], [0, -1]], [("E", [0, 1])], kahler=[2, 1])
    with pytest.raises(ModelError, match="reserved"):
        ManifoldModel.torus(2, [("X", 1, [[1, 0, 0, 0]], 1)])
    m = ManifoldModel.torus(2)
    with pytest.raises(ModelError):
        m.cycle("nope")
    with pytest.raises(ModelError):
        m.coerce_class(HermitianForm.identity(3))


@pytest.mark.parametrize("name", ["torus2.km", "surface.km"])
def test_model_round_trip(fixtures, name):
    m = load_model((fixtures / name).read_text())
    again = load_model(dump_model(m))
    assert again == m
    assert model_to_dict(again) == model_to_dict(m)


def test_subtorus_and_product_round_trip():
    m = load_model(SUBTORUS)
    assert load_model(dump_model(m)) == m
    p = ManifoldModel.product(ManifoldModel.torus(1))
    assert p.n == 2
    assert load_model(dump_model(p)) == p


def test_class_documents(fixtures):
    torus = ManifoldModel.torus(2)
    a = load_class((fixtures / "alpha0.vec").read_text(), torus)
    assert a.rows()[0][1] == make_complex(rational(0), rational(1))
    assert load_class(dump_class(torus, a), torus) == a
    surf = load_model((fixtures / "surface.km").read_text())
    b = load_class((fixtures / "surf_beta.vec").read_text(), surf)
    assert b == (1, -2)
    assert load_class(dump_class(surf, b), surf) == b
    with pytest.raises(ModelParseError):
        load_class("form: [[1, 2], [3, 1]]\n", torus)
    with pytest.raises(ModelParseError):
        load_class("form: 3\n", torus)


def test_decimal_literals_are_exact():
    m = ManifoldModel.torus(1)
    a = load_class("form: [[0.1]]\n", m)
    assert a.rows()[0][0] == Fraction(1, 10)


def test_hermitian_coordinates_round_trip():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3):
        h = HermitianForm(to_package_rows(random_gauss_hermitian(rng, n)))
        coords = hermitian_coordinates(h)
        assert len(coords) == n * n
        assert hermitian_from_coordinates(n, coords) == h


def test_product_identity_small_cases():
    for n in (1, 2, 3):
        m = ManifoldModel.torus(n)
        lhs, rhs = product_intersection_check(m, HermitianForm.identity(n))
        assert lhs == rhs
    m = ManifoldModel.torus(2)
    lhs, rhs = product_intersection_check(m, HermitianForm.diag([1, -1]))
    assert lhs == rhs == 6 * 4
    with pytest.raises(ModelError):
        product_intersection_check(ManifoldModel.surface([[1]], kahler=[1]), [1])


def test_surface_reference_contract():
    m = ManifoldModel.surface([[1, 0], [0, -1]], [("E", [0, 1])], kahler=[2, -1])
    assert m.is_kahler_reference([3, -1])
    assert not m.is_kahler_reference([1, 1])
    bare = ManifoldModel.surface([[1]])
    with pytest.raises(ModelError, match="no kahler reference"):
        bare.default_reference()
