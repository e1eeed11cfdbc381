"""Closure systems, implicational bases and their optimization."""

from .canonical import (
    canonical_basis, canonical_from_closure, critical_sets, is_regular, is_uc_system,
    regularize, saturation,
)
from .core import (
    AttrSet, GroundSet, Implication, ImplicationSet, SizeMetrics, aggregation, closure,
    entails, equivalent, format_set, from_json, is_closed, metrics, parse, to_json, to_text,
    unit_expansion,
)
from .drelation import PairRelation, delta, is_d_cycle_free, sigma_star
from .ebasis import (
    aggregated_e_basis, e_basis, f_basis, foe_basis, m_sets, optimized_e_basis,
)
from .errors import (
    BoundExceededError, ClosureBasesError, DCycleError, NotStandardError, ParseError,
    PreconditionError,
)
from .instances import SetCoverInstance, paper_fixture, random_system
from .oracle import enumerate_closed, is_standard
from .kbasis import all_k_bases, k_basis, minimal_order_generator, phi_order
from .optsearch import b_c, k_c, optimum_bases, verify_hierarchy

__all__ = [name for name in dir() if not name.startswith("_")]
