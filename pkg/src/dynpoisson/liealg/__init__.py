from .algebra import LieAlgebra, build_chevalley
from .tensors import Tensor, Wedge, cyb_tensor, schouten_bracket
from .compact import CompactForm, compact_form

__all__ = [
    "LieAlgebra", "build_chevalley", "Tensor", "Wedge", "cyb_tensor",
    "schouten_bracket", "CompactForm", "compact_form",
]
