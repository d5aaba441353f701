"""Exact-arithmetic relative poset polytopes, regular subdivisions and
type-A flag degenerations."""

from .posets import (
    Poset,
    RelativeStructure,
    antichain_poset,
    build_poset,
    chain_poset,
    chain_structure,
    linear_extensions,
    order_structure,
    stronger_orders,
    validate_relative_structure,
)
from .lattice import enumerate_ideals, max_antichain, star, sublattice_to_order
from .polytopes import (
    build_polytope,
    canonical_triangulation,
    check_normality,
    decompose_point,
    ehrhart_values,
    lattice_points,
    transfer_map,
)
from .degeneration import (
    WeightVector,
    canonical_interior_weight,
    cone_position,
    ideal_presentation,
    sample_cone_weight,
    standard_monomial_count,
    subdivide,
    zhu_components,
)
from .marked import (
    build_mrpp,
    fundamental_decomposition,
    fundamental_mrpp,
    mcop_build,
    mcop_recognize,
    mrpp_subdivide,
    standardize,
)
from .flag import build_flag_poset, flag_degeneration, flag_polytope, pluecker_maps

__all__ = [name for name in dir() if not name.startswith("_")]
