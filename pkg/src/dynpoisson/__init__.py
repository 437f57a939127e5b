"""Dynamical r-matrices and homogeneous Poisson structures on flag manifolds K/T."""

__version__ = "0.1.0"

from .rootsys import RootSystem, WeylGroup, build_root_system, parse_designator
from .liealg import LieAlgebra, build_chevalley


def algebra(designator: str) -> LieAlgebra:
    """Chevalley-basis Lie algebra from a designator such as "A2" or "G2"."""
    return build_chevalley(build_root_system(*parse_designator(designator)))


__all__ = ["RootSystem", "WeylGroup", "build_root_system", "parse_designator",
           "LieAlgebra", "build_chevalley", "algebra", "__version__"]
