from .model import MatrixModel, fundamental_rep, project_su
from .iwasawa import IwasawaFactors, iwasawa, p_a
from .bivector import (
    coordinate_bracket_table, group_bivector, leaf_census, m1_defect, xy_table,
)
from .moment import (
    HAMILTONIAN_SIGN, MomentValue, hamiltonian_consistency, hamiltonian_defects, moment_map_eval,
)
from .modular import modular_field_numeric
from .relement import r_element, r_pairing_defect

__all__ = [
    "MatrixModel", "fundamental_rep", "project_su", "IwasawaFactors", "iwasawa", "p_a",
    "coordinate_bracket_table", "group_bivector", "leaf_census", "m1_defect", "xy_table",
    "HAMILTONIAN_SIGN", "MomentValue", "hamiltonian_consistency", "hamiltonian_defects",
    "moment_map_eval", "modular_field_numeric", "r_element", "r_pairing_defect",
]
