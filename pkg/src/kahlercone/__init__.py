"""Kahler-cone verdicts on finite manifold models.

Modules: ``linalg`` (exact Hermitian algebra, mixed discriminants),
``models`` (tori, surfaces, products and their documents), ``cone``
(P / Kahler / nef / dual-cone verdicts), ``polyid`` (the divided-difference
identity and delta0 certification), ``mass`` (grid potentials,
Monge-Ampere, concentration) and ``transport`` (Hodge frames and (1,1)
transport along families of complex structures).
"""

from .cone import (
    Verdict,
    Witness,
    classify_component,
    dual_cone_generators,
    in_dual_cone,
    in_P,
    is_kahler,
    is_nef,
    nef_by_iteration,
)
from .linalg import AlternatingForm, HermitianForm, mixed_discriminant, signature, wedge_top
from .models import ManifoldModel, dump_model, load_class, load_model, product_intersection_check
from .polyid import find_delta0, identity

__version__ = "0.1.0"

__all__ = [
    "AlternatingForm",
    "HermitianForm",
    "ManifoldModel",
    "Verdict",
    "Witness",
    "classify_component",
    "dual_cone_generators",
    "dump_model",
    "find_delta0",
    "identity",
    "in_P",
    "in_dual_cone",
    "is_kahler",
    "is_nef",
    "load_class",
    "load_model",
    "mixed_discriminant",
    "nef_by_iteration",
    "product_intersection_check",
    "signature",
    "wedge_top",
]
