"""Exact-arithmetic toolkit for complete toric varieties given as fans.

Everything runs over Python integers and fractions: fan validation,
Picard groups, intersection numbers, nef/ample tests, a rational-LP
projectivity decision with verifiable witnesses and certificates, and a
seeded mutation search for degenerate specimens.
"""

from .catalog import CatalogEntry, get, names, product_power, xk_tower
from .divisor import (
    CartierData,
    PicardBasis,
    TWeilDivisor,
    anticanonical,
    cartier_data,
    is_cartier,
    is_gorenstein,
    picard,
    principal_divisor,
)
from .explorer import Finding, SearchConfig, mutate, search, signature
from .fan import (
    Fan,
    FanValidationError,
    Wall,
    build_fan,
    classify,
    fan_from_dict,
    fan_to_dict,
    fans_match,
    is_complete,
    product,
    stellar_subdivide,
    walls,
)
from .intersection import (
    ConeReport,
    KleimanVerdict,
    ProjectivityResult,
    cone_report,
    curve_classes,
    intersection_number,
    is_ample,
    is_nef,
    is_projective,
    kleiman_diagnosis,
)
from .report import AnalysisReport, analyze, from_json, to_json

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CartierData",
    "CatalogEntry",
    "ConeReport",
    "Fan",
    "FanValidationError",
    "Finding",
    "KleimanVerdict",
    "PicardBasis",
    "ProjectivityResult",
    "SearchConfig",
    "TWeilDivisor",
    "Wall",
    "analyze",
    "anticanonical",
    "build_fan",
    "cartier_data",
    "classify",
    "cone_report",
    "curve_classes",
    "fan_from_dict",
    "fan_to_dict",
    "fans_match",
    "from_json",
    "get",
    "intersection_number",
    "is_ample",
    "is_cartier",
    "is_complete",
    "is_gorenstein",
    "is_nef",
    "is_projective",
    "kleiman_diagnosis",
    "mutate",
    "names",
    "picard",
    "principal_divisor",
    "product",
    "product_power",
    "search",
    "signature",
    "stellar_subdivide",
    "to_json",
    "walls",
    "xk_tower",
]
