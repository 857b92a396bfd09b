"""Exact SL(2,Z) modular data for quantum PSU(3) and PSU(2) at a prime root of unity."""

from modrep.cyclotomic import CycNum, embed, galois, gauss_sqrt, root_power
from modrep.eisenstein import EisElem, UnsupportedPrime, build_symmetry_data
from modrep.matrix import CycMatrix, SignedPerm
from modrep.psu2 import build_psu2, build_psu2_conjugated, build_psu2_le_form, reindex_witness
from modrep.repcheck import (
    ResourceGuardError,
    VerifyReport,
    commutant_dim,
    lift,
    parity_split,
    product_check,
    projective_relations,
    proportionality,
    theorem2_verify,
)
from modrep.weil import RepPair, build_restricted, build_unfolded, orbit_basis, restriction_crosscheck

__all__ = [
    "CycMatrix",
    "CycNum",
    "EisElem",
    "RepPair",
    "ResourceGuardError",
    "SignedPerm",
    "UnsupportedPrime",
    "VerifyReport",
    "build_psu2",
    "build_psu2_conjugated",
    "build_psu2_le_form",
    "build_restricted",
    "build_symmetry_data",
    "build_unfolded",
    "commutant_dim",
    "embed",
    "galois",
    "gauss_sqrt",
    "lift",
    "orbit_basis",
    "parity_split",
    "product_check",
    "projective_relations",
    "proportionality",
    "reindex_witness",
    "restriction_crosscheck",
    "root_power",
    "theorem2_verify",
]
