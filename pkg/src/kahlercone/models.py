"""Finite manifold models: cycle tables plus an intersection evaluator.

Three families are supported:

* ``torus``   -- C^n / Z^{2n} with unit lattice volume; (1,1)-classes are
  Hermitian matrices, cycles are the point, X itself, and declared complex
  subtori (a complex basis plus a volume weight).
* ``surface`` -- a compact surface known through the intersection matrix
  ``Q`` of its real (1,1) lattice and a list of curve classes.
* ``product`` -- ``X x X`` for a torus ``X``; it is itself a torus of
  dimension 2n with the factors and the diagonal as extra cycles.

Every verdict built on these models is relative to the declared cycle table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np
import yaml

from ._exact import ONE, ZERO, ExactnessError, format_rational, rational
from .linalg import (
    HermitianForm,
    complex_columns,
    mixed_discriminant,
    rank_exact,
    signature,
)

FUNDAMENTAL = "X"
POINT = "point"
KINDS = ("torus", "surface", "product")


class ModelError(ValueError):
    """Invalid model, unknown cycle, or incompatible class."""


class ModelParseError(ModelError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = ""
        if field:
            where += f" [field {field}]"
        if line is not None:
            where += f" [line {line}]"
        super().__init__(message + where)


@dataclass(frozen=True)
class CycleClass:
    """An irreducible analytic cycle ``Y`` of complex dimension ``dim``.

    ``basis`` (tori): complex spanning vectors as real columns of length 2n.
    ``curve`` (surfaces): integral coordinates in the (1,1) lattice.
    """

    name: str
    dim: int
    basis: tuple | None = None
    weight: object = ONE
    curve: tuple | None = None

    @property
    def is_point(self):
        return self.dim == 0


@dataclass(frozen=True)
class ManifoldModel:
    kind: str
    n: int
    cycles: tuple
    intersection_matrix: tuple | None = None
    generic: bool = False
    kahler: tuple | None = None
    base: "ManifoldModel | None" = None
    _torus: "ManifoldModel | None" = field(default=None, compare=False, repr=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def torus(cls, n, subtori=(), generic=None):
        """Torus of dimension n; ``subtori`` are ``(name, dim, columns, weight)``."""
        if generic is None:
            generic = not subtori
        if generic and subtori:
            raise ModelError("a generic torus carries no subtori besides points and X")
        cycles = [CycleClass(FUNDAMENTAL, n), CycleClass(POINT, 0)]
        for name, dim, cols, weight in subtori:
            cycles.append(_torus_cycle(n, name, dim, cols, weight))
        return cls("torus", n, tuple(cycles), generic=generic)._validated()

    @classmethod
    def surface(cls, intersection_matrix, curves=(), kahler=None):
        """Surface model; ``curves`` are ``(name, coordinates)``."""
        q = tuple(tuple(rational(x) for x in row) for row in intersection_matrix)
        cycles = [CycleClass(FUNDAMENTAL, 2), CycleClass(POINT, 0)]
        for name, vec in curves:
            cycles.append(CycleClass(name, 1, curve=tuple(rational(x) for x in vec)))
        kref = tuple(rational(x) for x in kahler) if kahler is not None else None
        return cls("surface", 2, tuple(cycles), intersection_matrix=q, kahler=kref)._validated()

    @classmethod
    def product(cls, base):
        if base.kind != "torus":
            raise ModelError("product models are built over a torus")
        m = cls("product", 2 * base.n, _product_cycles(base), base=base)
        return m._validated()

    def _validated(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown model kind {self.kind!r}")
        if self.n < 1:
            raise ModelError("dimension n must be >= 1")
        names = [c.name for c in self.cycles]
        if len(set(names)) != len(names):
            raise ModelError("duplicate cycle names")
        for c in self.cycles:
            if not 0 <= c.dim <= self.n:
                raise ModelError(f"cycle {c.name}: dimension {c.dim} outside [0, {self.n}]")
        if self.kind == "surface":
            q = self.intersection_matrix
            h = len(q)
            if h < 1 or any(len(r) != h for r in q):
                raise ModelError("intersection matrix must be square")
            for i in range(h):
                for j in range(i + 1, h):
                    if q[i][j] != q[j][i]:
                        raise ModelError("intersection matrix not symmetric")
            for c in self.cycles:
                if c.dim == 1:
                    if c.curve is None or len(c.curve) != h:
                        raise ModelError(f"curve {c.name}: needs {h} lattice coordinates")
                    if any(x.denominator != 1 for x in c.curve):
                        raise ModelError(f"curve {c.name}: lattice coordinates must be integers")
            if self.kahler is not None:
                if len(self.kahler) != h:
                    raise ModelError(f"kahler reference needs {h} coordinates")
                if not self._surface_chamber_ok(self.kahler, use_ref=False):
                    raise ModelError("declared kahler reference class is not in the Kahler chamber")
        if self.kind == "product":
            object.__setattr__(self, "_torus", ManifoldModel("torus", self.n, self.cycles, generic=False))
        return self

    # -- lookups ------------------------------------------------------------

    @property
    def h11(self) -> int:
        """Real dimension of the (1,1) space."""
        if self.kind == "surface":
            return len(self.intersection_matrix)
        return self.n * self.n

    def cycle(self, name) -> CycleClass:
        if isinstance(name, CycleClass):
            name = name.name
        for c in self.cycles:
            if c.name == name:
                return c
        raise ModelError(f"unknown cycle {name!r}")

    @property
    def positive_dimensional_cycles(self):
        return [c for c in self.cycles if c.dim >= 1]

    # -- classes ------------------------------------------------------------

    def coerce_class(self, cls_):
        if self.kind == "surface":
            vec = tuple(cls_)
            if len(vec) != self.h11:
                raise ModelError(f"surface class needs {self.h11} coordinates, got {len(vec)}")
            if all(not isinstance(x, (float, np.floating)) for x in vec):
                return tuple(rational(x) for x in vec)
            return tuple(float(x) for x in vec)
        if not isinstance(cls_, HermitianForm):
            try:
                cls_ = HermitianForm(cls_)
            except (ValueError, ExactnessError) as exc:
                raise ModelError(f"not a Hermitian class: {exc}") from None
        if cls_.n != self.n:
            raise ModelError(f"class has dimension {cls_.n}, model has {self.n}")
        return cls_

    def zero_class(self):
        if self.kind == "surface":
            return tuple(ZERO for _ in range(self.h11))
        return HermitianForm.zero(self.n)

    def combine(self, terms):
        """Linear combination ``sum c_i * class_i`` of ``(c_i, class_i)`` pairs."""
        out = None
        for c, v in terms:
            v = self.coerce_class(v)
            if self.kind == "surface":
                exact = not isinstance(c, float) and all(not isinstance(x, float) for x in v)
                c = rational(c) if exact else float(c)
                term = tuple(c * x for x in v)
                out = term if out is None else tuple(a + b for a, b in zip(out, term))
            else:
                term = v * c
                out = term if out is None else out + term
        return out if out is not None else self.zero_class()

    def pairing(self, u, v):
        """Surface Q-pairing ``u^T Q v``."""
        q = self.intersection_matrix
        if any(isinstance(x, float) for x in (*u, *v)):
            return float(np.asarray(u, float) @ np.asarray(q, float) @ np.asarray(v, float))
        h = len(q)
        return sum((u[i] * q[i][j] * v[j] for i in range(h) for j in range(h) if q[i][j] != 0), ZERO)

    def coordinates(self, cls_):
        """Real coordinates of a (1,1)-class.

        Tori: ``(H_11, ..., H_nn, Re H_12, Im H_12, Re H_13, ...)``.
        """
        cls_ = self.coerce_class(cls_)
        if self.kind == "surface":
            return tuple(cls_)
        return hermitian_coordinates(cls_)

    def from_coordinates(self, coords):
        if self.kind == "surface":
            return self.coerce_class(coords)
        return hermitian_from_coordinates(self.n, coords)

    def coordinate_basis(self):
        eye = [[ONE if i == j else ZERO for j in range(self.h11)] for i in range(self.h11)]
        return [self.from_coordinates(row) for row in eye]

    # -- intersection numbers -------------------------------------------------

    def intersect(self, cycle, forms):
        """``int_Y form_1 ^ ... ^ form_p`` for a cycle ``Y`` of dimension p."""
        y = self.cycle(cycle)
        forms = [self.coerce_class(f) for f in forms]
        if len(forms) != y.dim:
            raise ModelError(f"cycle {y.name} has dimension {y.dim}; got {len(forms)} forms")
        if y.dim == 0:
            return ONE
        if self.kind == "product":
            return self._torus.intersect(y.name, forms)
        if self.kind == "surface":
            if y.dim == 1:
                return self.pairing(forms[0], y.curve)
            return self.pairing(forms[0], forms[1])
        p = y.dim
        if y.name == FUNDAMENTAL and y.basis is None:
            return factorial(p) * mixed_discriminant(forms)
        exact = all(f.exact for f in forms) and not isinstance(y.weight, float)
        b = complex_columns(y.basis, exact=exact)
        restricted = [f.restrict(b) for f in forms]
        return factorial(p) * y.weight * mixed_discriminant(restricted)

    def self_intersection(self, cycle, cls_):
        y = self.cycle(cycle)
        return self.intersect(y, [cls_] * y.dim)

    # -- Kahler reference contract --------------------------------------------

    def default_reference(self):
        if self.kind == "surface":
            if self.kahler is None:
                raise ModelError("surface model declares no kahler reference class; pass one explicitly")
            return self.kahler
        return HermitianForm.identity(self.n)

    def is_kahler_reference(self, omega) -> bool:
        omega = self.coerce_class(omega)
        if self.kind == "surface":
            return self._surface_chamber_ok(omega, use_ref=True)
        pos, _, _ = signature(omega)
        return pos == self.n

    def _surface_chamber_ok(self, w, use_ref):
        if self.pairing(w, w) <= 0:
            return False
        for c in self.cycles:
            if c.dim == 1 and self.pairing(w, c.curve) <= 0:
                return False
        if use_ref and self.kahler is not None and self.pairing(w, self.kahler) <= 0:
            return False
        return True


def _torus_cycle(n, name, dim, cols, weight):
    if name in (FUNDAMENTAL, POINT):
        raise ModelError(f"cycle name {name!r} is reserved")
    cols = tuple(tuple(rational(x) if not isinstance(x, float) else x for x in col) for col in cols)
    if any(len(col) != 2 * n for col in cols):
        raise ModelError(f"cycle {name}: basis columns must have 2n = {2 * n} entries")
    if len(cols) != dim:
        raise ModelError(f"cycle basis rank mismatch: cycle {name} claims dimension {dim} but lists {len(cols)} columns")
    if not 1 <= dim <= n:
        raise ModelError(f"cycle {name}: subtorus dimension {dim} outside [1, {n}]")
    b = complex_columns(cols, exact=True)
    if rank_exact(b.T.tolist()) != dim:
        raise ModelError(f"cycle basis rank mismatch: cycle {name} columns are not complex-independent")
    weight = rational(weight)
    if weight <= 0:
        raise ModelError(f"cycle {name}: weight must be positive")
    return CycleClass(name, dim, basis=cols, weight=weight)


def _product_cycles(base):
    n = base.n
    zero_col = [ZERO] * (2 * n)
    first, second, diag = [], [], []
    for j in range(n):
        e = [ZERO] * (2 * n)
        e[2 * j] = ONE
        first.append(tuple(e + zero_col))
        second.append(tuple(zero_col + e))
        diag.append(tuple(e + e))
    return (
        CycleClass(FUNDAMENTAL, 2 * n),
        CycleClass(POINT, 0),
        CycleClass("X_x_point", n, basis=tuple(first)),
        CycleClass("point_x_X", n, basis=tuple(second)),
        CycleClass("diagonal", n, basis=tuple(diag)),
    )


def hermitian_coordinates(h: HermitianForm):
    n = h.n
    m = h._m if h.exact else h.to_numpy()
    if h.exact:
        from ._exact import imag_part, real_part

        re, im = real_part, imag_part
    else:
        re, im = (lambda z: float(z.real)), (lambda z: float(z.imag))
    coords = [re(m[j, j]) for j in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            coords.extend([re(m[j, k]), im(m[j, k])])
    return tuple(coords)


def hermitian_from_coordinates(n, coords):
    coords = list(coords)
    if len(coords) != n * n:
        raise ModelError(f"need {n * n} coordinates for an {n}x{n} Hermitian class")
    rows = [[0] * n for _ in range(n)]
    for j in range(n):
        rows[j][j] = coords[j]
    i = n
    for j in range(n):
        for k in range(j + 1, n):
            a, b = coords[i], coords[i + 1]
            rows[j][k] = [a, b]
            rows[k][j] = [a, -b]
            i += 2
    if any(isinstance(x, float) for x in coords):
        return HermitianForm(np.array([[complex(*x) if isinstance(x, list) else complex(x) for x in r] for r in rows]))
    return HermitianForm(rows)


def product_intersection_check(model: ManifoldModel, alpha):
    """Both sides of the binomial identity on ``X x X``.

    ``lhs = int_{XxX} (pr1*a + pr2*a)^{2n}`` evaluated on the product model,
    ``rhs = C(2n, n) (int_X a^n)^2``.
    """
    if model.kind != "torus":
        raise ModelError("product_intersection_check needs a torus model")
    alpha = model.coerce_class(alpha)
    n = model.n
    prod = ManifoldModel.product(model)
    lifted = pullback_sum(alpha)
    lhs = prod.self_intersection(FUNDAMENTAL, lifted)
    rhs = comb(2 * n, n) * model.self_intersection(FUNDAMENTAL, alpha) ** 2
    return lhs, rhs


def pullback_sum(alpha: HermitianForm) -> HermitianForm:
    """``pr1* alpha + pr2* alpha`` as a block-diagonal form on C^{2n}."""
    n = alpha.n
    zero = 0 if alpha.exact else 0.0
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    m = alpha.rows()
    for i in range(n):
        for j in range(n):
            rows[i][j] = m[i][j]
            rows[n + i][n + j] = m[i][j]
    if alpha.exact:
        return HermitianForm(rows)
    return HermitianForm(np.array(rows, dtype=complex))


# ----------------------------------------------------------------------------
# Documents


class _Doc:
    """YAML mapping/sequence tree that remembers source lines per field path."""

    def __init__(self, text):
        try:
            node = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ModelParseError(f"YAML syntax error: {getattr(exc, 'problem', exc)}", line=line) from None
        if node is None:
            raise ModelParseError("empty document")
        self.lines = {}
        self.data = self._convert(node, "")

    def _convert(self, node, path):
        self.lines[path] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                key = k.value
                if key in out:
                    raise ModelParseError(f"duplicate key {key!r}", field=f"{path}.{key}".lstrip("."), line=k.start_mark.line + 1)
                out[key] = self._convert(v, f"{path}.{key}".lstrip("."))
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, f"{path}[{i}]") for i, v in enumerate(node.value)]
        tag = node.tag
        if tag.endswith(":int"):
            return yaml.safe_load(node.value)
        if tag.endswith(":float"):
            return _ExactLiteral(node.value)
        if tag.endswith(":bool"):
            return node.value.lower() in ("true", "yes", "on")
        if tag.endswith(":null"):
            return None
        return node.value

    def error(self, message, path):
        return ModelParseError(message, field=path, line=self.lines.get(path))

    def get(self, mapping, key, path, required=True, default=None):
        if not isinstance(mapping, dict):
            raise self.error("expected a mapping", path)
        if key not in mapping:
            if required:
                raise self.error(f"missing required field {key!r}", path or "<root>")
            return default
        return mapping[key]


class _ExactLiteral(str):
    """Decimal literal kept as text so it converts exactly."""


def _num(doc, value, path):
    try:
        return rational(str(value) if isinstance(value, (_ExactLiteral, str)) else value)
    except (ValueError, ExactnessError, ZeroDivisionError):
        raise doc.error(f"not a rational literal: {value!r}", path) from None


def _int(doc, value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise doc.error(f"expected an integer, got {value!r}", path)
    return value


def _scalar_or_pair(doc, value, path):
    if isinstance(value, list):
        if len(value) != 2:
            raise doc.error("complex entries are written [re, im]", path)
        return [_num(doc, value[0], path + "[0]"), _num(doc, value[1], path + "[1]")]
    return _num(doc, value, path)


def load_model(text: str) -> ManifoldModel:
    """Parse and validate a model document (YAML; see README for the grammar)."""
    doc = _Doc(text)
    return _model_from(doc, doc.data, "")


def _model_from(doc, data, root):
    def p(key):
        return f"{root}.{key}".lstrip(".")

    kind = doc.get(data, "kind", root)
    if kind not in KINDS:
        raise doc.error(f"kind must be one of {', '.join(KINDS)}", p("kind"))
    known = {
        "torus": {"kind", "n", "generic", "cycles"},
        "surface": {"kind", "n", "intersection_matrix", "kahler", "cycles"},
        "product": {"kind", "n", "base"},
    }[kind]
    for key in data:
        if key not in known:
            raise doc.error(f"unknown field {key!r} for a {kind} model", p(key))
    try:
        if kind == "product":
            base = _model_from(doc, doc.get(data, "base", root), p("base"))
            model = ManifoldModel.product(base)
            if "n" in data and _int(doc, data["n"], p("n")) != model.n:
                raise doc.error(f"product of a {base.n}-dimensional torus has n = {model.n}", p("n"))
            return model
        n = _int(doc, doc.get(data, "n", root), p("n"))
        cycles = doc.get(data, "cycles", root, required=False, default=[]) or []
        if not isinstance(cycles, list):
            raise doc.error("cycles must be a list", p("cycles"))
        if kind == "torus":
            generic = doc.get(data, "generic", root, required=False, default=None)
            subtori = []
            for i, c in enumerate(cycles):
                cp = f"{p('cycles')}[{i}]"
                name = str(doc.get(c, "name", cp))
                dim = _int(doc, doc.get(c, "dim", cp), cp + ".dim")
                basis = doc.get(c, "basis", cp)
                if not isinstance(basis, list) or not all(isinstance(col, list) for col in basis):
                    raise doc.error("basis must be a list of real columns", cp + ".basis")
                cols = [[_num(doc, x, f"{cp}.basis[{j}][{k}]") for k, x in enumerate(col)] for j, col in enumerate(basis)]
                weight = _num(doc, doc.get(c, "weight", cp, required=False, default=1), cp + ".weight")
                try:
                    subtori.append((name, dim, cols, weight))
                    _torus_cycle(n, name, dim, cols, weight)
                except ModelError as exc:
                    raise doc.error(str(exc), cp) from None
            return ManifoldModel.torus(n, subtori, generic=generic)
        if n != 2:
            raise doc.error("surface models have n = 2", p("n"))
        qrows = doc.get(data, "intersection_matrix", root)
        if not isinstance(qrows, list) or not all(isinstance(r, list) for r in qrows):
            raise doc.error("intersection_matrix must be a list of rows", p("intersection_matrix"))
        q = [[_num(doc, x, f"{p('intersection_matrix')}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(qrows)]
        kahler = doc.get(data, "kahler", root, required=False)
        if kahler is not None:
            kahler = [_num(doc, x, f"{p('kahler')}[{i}]") for i, x in enumerate(kahler)]
        curves = []
        for i, c in enumerate(cycles):
            cp = f"{p('cycles')}[{i}]"
            name = str(doc.get(c, "name", cp))
            dim = _int(doc, doc.get(c, "dim", cp, required=False, default=1), cp + ".dim")
            if dim != 1:
                raise doc.error("declared surface cycles are curves (dim 1)", cp + ".dim")
            vec = doc.get(c, "curve", cp)
            curves.append((name, [_num(doc, x, f"{cp}.curve[{k}]") for k, x in enumerate(vec)]))
        return ManifoldModel.surface(q, curves, kahler)
    except ModelParseError:
        raise
    except ModelError as exc:
        raise doc.error(str(exc), root or None) from None


def model_to_dict(model: ManifoldModel) -> dict:
    if model.kind == "product":
        return {"kind": "product", "n": model.n, "base": model_to_dict(model.base)}
    out = {"kind": model.kind, "n": model.n}
    if model.kind == "torus":
        out["generic"] = bool(model.generic)
        declared = [c for c in model.cycles if c.name not in (FUNDAMENTAL, POINT)]
        out["cycles"] = [
            {
                "name": c.name,
                "dim": c.dim,
                "basis": [[_lit(x) for x in col] for col in c.basis],
                "weight": _lit(c.weight),
            }
            for c in declared
        ]
    else:
        out["intersection_matrix"] = [[_lit(x) for x in row] for row in model.intersection_matrix]
        if model.kahler is not None:
            out["kahler"] = [_lit(x) for x in model.kahler]
        out["cycles"] = [
            {"name": c.name, "dim": 1, "curve": [_lit(x) for x in c.curve]} for c in model.cycles if c.dim == 1
        ]
    return out


def _lit(x):
    q = rational(x)
    if q.denominator == 1:
        return int(q)
    return format_rational(q)


def dump_model(model: ManifoldModel) -> str:
    return yaml.safe_dump(model_to_dict(model), sort_keys=False, default_flow_style=None)


def load_class(text: str, model: ManifoldModel):
    """Parse a class document for ``model``.

    Tori: ``form: [[...], ...]`` (entries rational or ``[re, im]``).
    Surfaces: ``vector: [...]``.  A bare list is also accepted.
    """
    doc = _Doc(text)
    data = doc.data
    if isinstance(data, dict):
        key = "vector" if model.kind == "surface" else "form"
        data = doc.get(data, key, "")
        path = key
    else:
        path = ""
    if not isinstance(data, list):
        raise doc.error("class must be a list", path or None)
    if model.kind == "surface":
        vec = [_num(doc, x, f"{path}[{i}]") for i, x in enumerate(data)]
        return model.coerce_class(vec)
    rows = []
    for i, r in enumerate(data):
        if not isinstance(r, list):
            raise doc.error("form rows must be lists", f"{path}[{i}]")
        rows.append([_scalar_or_pair(doc, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)])
    try:
        return model.coerce_class(rows)
    except ModelError as exc:
        raise doc.error(str(exc), path or None) from None


def dump_class(model, cls_) -> str:
    cls_ = model.coerce_class(cls_)
    if model.kind == "surface":
        return yaml.safe_dump({"vector": [_lit(x) for x in cls_]}, default_flow_style=None)
    from ._exact import imag_part, real_part

    rows = []
    for row in cls_.rows():
        rows.append([_lit(x) if imag_part(x) == 0 else [_lit(real_part(x)), _lit(imag_part(x))] for x in row])
    return yaml.safe_dump({"form": rows}, default_flow_style=None)


__all__ = [
    "FUNDAMENTAL",
    "POINT",
    "CycleClass",
    "ManifoldModel",
    "ModelError",
    "ModelParseError",
    "dump_class",
    "dump_model",
    "hermitian_coordinates",
    "hermitian_from_coordinates",
    "load_class",
    "load_model",
    "model_to_dict",
    "product_intersection_check",
    "pullback_sum",
]
