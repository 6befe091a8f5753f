"""Exact construction and certification of real rational functions h = f o g
whose inner factor g is not real up to Moebius transformations."""

__version__ = "0.1.0"

from .numfield import NumberField, FieldElement, get_field, field_from_spec
from .ratfunc import INF, MoebiusTransform, RationalFunction, moebius_from_triples, rf_compose, rf_is_real
from .elliptic import (
    EllipticCurve,
    catalog_entry,
    dual_isogeny,
    ec_add,
    ec_mul,
    halving_obstruction,
    torsion_conjugate_check,
    velu,
    verify_dual,
)
from .construction import build_pair, eliminate_pushforward, normalize_pair, quotient_map, search_normalization
from .certificates import certify_injective, certify_weakly_injective, circle_test, sample_curve

__all__ = [
    "INF",
    "EllipticCurve",
    "FieldElement",
    "MoebiusTransform",
    "NumberField",
    "RationalFunction",
    "build_pair",
    "catalog_entry",
    "certify_injective",
    "certify_weakly_injective",
    "circle_test",
    "dual_isogeny",
    "ec_add",
    "ec_mul",
    "eliminate_pushforward",
    "field_from_spec",
    "get_field",
    "halving_obstruction",
    "moebius_from_triples",
    "normalize_pair",
    "quotient_map",
    "rf_compose",
    "rf_is_real",
    "sample_curve",
    "search_normalization",
    "torsion_conjugate_check",
    "velu",
    "verify_dual",
]
