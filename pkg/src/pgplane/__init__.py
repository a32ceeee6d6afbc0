"""Exact computational workbench for the projective plane PG(2, q)."""

from .gf import FieldError, FieldSpec, field_arith, field_create, frobenius
from .plane import INF, Plane, PlaneError, plane_create, plane_for_q
from .secant import (
    PreconditionError,
    SecantProfile,
    analysis_report,
    blocking_report,
    is_dual_arc,
    is_kn_arc,
    is_semioval,
    nucleus,
    odd_secant_count,
    point_profile,
    profile,
    tangents_at,
    type_02t,
    weight_theorem_checks,
)
from .redei import (
    AffineQSet,
    DirectionSet,
    affine_qset,
    bisecant_slope,
    check_fg_identity,
    direction_bounds,
    directions_of,
    f_poly,
    is_permutation_direction,
    redei_blocking_set,
    verify_bisecant_theorems,
    verify_lemma_poly,
)
from .search import (
    SearchResult,
    SearchSpec,
    enumerate_semiovals,
    min_odd_secants,
    orbit_reps,
    search_generic,
    verify_blokhuis_classification,
    verify_peter_nonexistence,
)
from . import constructions

__all__ = [
    'AffineQSet', 'DirectionSet', 'FieldError', 'FieldSpec', 'INF', 'Plane',
    'PlaneError', 'PreconditionError', 'SecantProfile', 'affine_qset',
    'analysis_report', 'bisecant_slope', 'blocking_report', 'check_fg_identity',
    'constructions', 'direction_bounds', 'directions_of', 'f_poly',
    'field_arith', 'field_create', 'frobenius', 'is_dual_arc', 'is_kn_arc',
    'is_permutation_direction', 'is_semioval', 'nucleus', 'odd_secant_count',
    'plane_create', 'plane_for_q', 'point_profile', 'profile',
    'redei_blocking_set', 'SearchResult', 'SearchSpec', 'enumerate_semiovals',
    'min_odd_secants', 'orbit_reps', 'search_generic', 'tangents_at',
    'type_02t', 'verify_bisecant_theorems', 'verify_blokhuis_classification',
    'verify_lemma_poly', 'verify_peter_nonexistence', 'weight_theorem_checks',
]
