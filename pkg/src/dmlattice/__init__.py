"""Verification tools for the Deligne-Mostow lattices with three-fold symmetry."""

from .cxgeom import DEFAULT_TOL, GeometryError, Isometry, hermitian_form
from .moves import GeneratorSet, build_generators, verify_relations
from .params import (
    INF,
    TABLE,
    CollapseCase,
    ExtRational,
    LatticeParams,
    derive_params,
    parse_rational,
    table_params,
)
from .poincare import cycle_table, euler_characteristic, presentation
from .polyhedron import facet_complex, membership, vertex_table
from .verify import DEFAULT_SEED, VerificationReport, verify_lattice

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "INF",
    "TABLE",
    "CollapseCase",
    "ExtRational",
    "GeneratorSet",
    "GeometryError",
    "Isometry",
    "LatticeParams",
    "VerificationReport",
    "build_generators",
    "cycle_table",
    "derive_params",
    "euler_characteristic",
    "facet_complex",
    "hermitian_form",
    "membership",
    "parse_rational",
    "presentation",
    "table_params",
    "verify_lattice",
    "verify_relations",
    "vertex_table",
]
