from .pispec import PoissonHomSpec, build_pi_spec, jacobi_obstruction
from .lagrangian import (
    LagrangianSubalgebra, KarolinskyTriple, compact_intersection_dim, conjugated_lagrangian,
    karolinsky_triple, lagrangian_subalgebra, subspace_distance, verify_lagrangian,
)
from .limits import limit_distance, plucker_distance, shifted_spec
from .leaves import LeafAtlas, enumerate_leaves, rank_at_weyl_point

__all__ = [
    "PoissonHomSpec", "build_pi_spec", "jacobi_obstruction", "LagrangianSubalgebra",
    "KarolinskyTriple", "compact_intersection_dim", "conjugated_lagrangian", "karolinsky_triple",
    "lagrangian_subalgebra", "subspace_distance", "verify_lagrangian", "limit_distance",
    "plucker_distance", "shifted_spec", "LeafAtlas", "enumerate_leaves", "rank_at_weyl_point",
]
