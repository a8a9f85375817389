"""Quaternary cyclic codes from MDS codes over GF(4^h), their duals and support 3-designs."""

__version__ = "0.1.0"

from .codes import (
    CyclicCode,
    LinearCode,
    bch_bound,
    bch_code,
    cyclic_code_from_zeros,
    cyclic_dual,
    is_lcd,
    mds_family_code,
)
from .cyclotomic import build_E, build_T, build_Tc, coset_system, verify_partition
from .designs import DesignVerdict, SupportDesign, assmus_mattson, supports, verify_design
from .errors import InvalidArgument, InvalidTower, QuatcodeError, ResourceLimit
from .galois import GF2m, Tower, embedding, make_field, quaternary_tower, tower
from .polyring import Poly, minimal_polynomial
from .projective import (
    INF,
    LinearFractionalMap,
    StabilizerElement,
    stabilizer_sample,
    verify_block_invariance,
    verify_spectrum_lemma,
)
from .subfield import (
    quaternary_code,
    quaternary_dual,
    subfield_code,
    subfield_subcode,
    verify_delsarte,
)
from .weights import WeightDistribution, macwilliams, min_distance, weight_distribution

__all__ = [
    "CyclicCode", "LinearCode", "bch_bound", "bch_code", "cyclic_code_from_zeros", "cyclic_dual",
    "is_lcd", "mds_family_code", "build_E", "build_T", "build_Tc", "coset_system", "verify_partition",
    "DesignVerdict", "SupportDesign", "assmus_mattson", "supports", "verify_design",
    "InvalidArgument", "InvalidTower", "QuatcodeError", "ResourceLimit",
    "GF2m", "Tower", "embedding", "make_field", "quaternary_tower", "tower",
    "Poly", "minimal_polynomial",
    "INF", "LinearFractionalMap", "StabilizerElement", "stabilizer_sample",
    "verify_block_invariance", "verify_spectrum_lemma",
    "quaternary_code", "quaternary_dual", "subfield_code", "subfield_subcode", "verify_delsarte",
    "WeightDistribution", "macwilliams", "min_distance", "weight_distribution",
]
