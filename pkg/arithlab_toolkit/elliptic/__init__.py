"""Elliptic curves over Q: group law, reduction, torsion, heights and root numbers."""

from arithlab_toolkit.elliptic.curve import CurvePoint, WeierstrassCurve, add, double_x, mul, neg
from arithlab_toolkit.elliptic.curves import CURVES, curve
from arithlab_toolkit.elliptic.heights import (HeightValue, canonical_height,
                                               canonical_height_at, height_matrix,
                                               height_pairing, naive_height, naive_height_x,
                                               parallelogram_defect, regulator)
from arithlab_toolkit.elliptic.reduction import (ADDITIVE, GOOD, NONSPLIT, SPLIT,
                                                 ConductorReport, GroupStructure, ReductionData,
                                                 an_coefficients, conductor_away_23,
                                                 count_points, group_structure_mod_p,
                                                 points_mod_p, reduce_and_count,
                                                 reduction_table, singular_point_mod_p)
from arithlab_toolkit.elliptic.rootnumber import (LocalRootNumber, RootNumberReport,
                                                  local_root_numbers, root_number)
from arithlab_toolkit.elliptic.torsion import TorsionGroup, is_torsion_point, torsion

__all__ = [
    "CurvePoint", "WeierstrassCurve", "add", "double_x", "mul", "neg", "CURVES", "curve",
    "HeightValue", "canonical_height", "canonical_height_at", "height_matrix", "height_pairing",
    "naive_height", "naive_height_x", "parallelogram_defect", "regulator", "ADDITIVE", "GOOD",
    "NONSPLIT", "SPLIT", "ConductorReport", "GroupStructure", "ReductionData", "an_coefficients",
    "conductor_away_23", "count_points", "group_structure_mod_p", "points_mod_p",
    "reduce_and_count", "reduction_table", "singular_point_mod_p", "LocalRootNumber",
    "RootNumberReport", "local_root_numbers", "root_number", "TorsionGroup", "is_torsion_point",
    "torsion",
]
