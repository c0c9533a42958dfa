"""Algebraic numbers: Mahler measure, Weil height, orbit energy and equidistribution."""

from arithlab_toolkit.algebraic.numbers import (
    AlgebraicNumber, CertifiedReal, RootCluster, as_int_poly, certified_roots,
    cyclotomic_indices_of_degree, lehmer_polynomial, roots_of_unity_sequence,
)
from arithlab_toolkit.algebraic.measures import (
    EnergyGap, MahlerIdentities, discriminant, energy_height_gap, is_root_of_unity,
    log_mahler_measure, mahler_identity_check, mahler_measure, minpoly_power, orbit_energy,
    power_resultant, resultant, root_of_unity_order, weil_height,
)
from arithlab_toolkit.algebraic.equidistribution import (
    DiscreteMeasure, EquidistributionRow, NorthcottEntry, NorthcottResult,
    equidistribution_stats, northcott_enumerate, ramanujan_sum,
)

__all__ = [
    "AlgebraicNumber", "CertifiedReal", "RootCluster", "as_int_poly", "certified_roots",
    "cyclotomic_indices_of_degree", "lehmer_polynomial", "roots_of_unity_sequence",
    "EnergyGap", "MahlerIdentities", "discriminant", "energy_height_gap", "is_root_of_unity",
    "log_mahler_measure", "mahler_identity_check", "mahler_measure", "minpoly_power",
    "orbit_energy", "power_resultant", "resultant", "root_of_unity_order", "weil_height",
    "DiscreteMeasure", "EquidistributionRow", "NorthcottEntry", "NorthcottResult",
    "equidistribution_stats", "northcott_enumerate", "ramanujan_sum",
]
