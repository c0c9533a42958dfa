"""Additive combinatorics: sumsets, incidences, Kakeya sets and Sidon sets."""

from arithlab_toolkit.combin.sumsets import (
    INTEGERS, Ambient, EnergyReport, GroupAmbient, InequalityCheck, SmallDoublingReport,
    cauchy_davenport, check_pluennecke, check_ruzsa_triangle, difference_set, energy_additive,
    energy_multiplicative, energy_report, iterated_sumset, productset, restricted_sumset,
    restricted_sumset_bound, ruzsa_covering, small_doubling_f2n, sum_product_measurement, sumset,
)
from arithlab_toolkit.combin.incidences import (
    IncidenceInstance, IncidenceReport, all_lines_fp, count_incidences, incidences,
    incidences_fp_full, line_through_slope, st_grid_instance, szemeredi_trotter_bound,
    vertical_line, vinh_bound,
)
from arithlab_toolkit.combin.kakeya import (
    KakeyaVerdict, dvir_bound, kakeya_construct, kakeya_report, kakeya_verify,
)
from arithlab_toolkit.combin.sidon import (
    F2Result, SidonBounds, SidonCertificate, SidonConstruction, difference_triangle,
    f2_exhaustive, greedy_bh, greedy_mian_chowla, sidon_construct, sidon_upper_bounds,
    sidon_verify,
)

__all__ = [
    "INTEGERS", "Ambient", "EnergyReport", "GroupAmbient", "InequalityCheck",
    "SmallDoublingReport", "cauchy_davenport", "check_pluennecke", "check_ruzsa_triangle",
    "difference_set", "energy_additive", "energy_multiplicative", "energy_report",
    "iterated_sumset", "productset", "restricted_sumset", "restricted_sumset_bound",
    "ruzsa_covering", "small_doubling_f2n", "sum_product_measurement", "sumset",
    "IncidenceInstance", "IncidenceReport", "all_lines_fp", "count_incidences", "incidences",
    "incidences_fp_full", "line_through_slope", "st_grid_instance", "szemeredi_trotter_bound",
    "vertical_line", "vinh_bound", "KakeyaVerdict", "dvir_bound", "kakeya_construct",
    "kakeya_report", "kakeya_verify", "F2Result", "SidonBounds", "SidonCertificate",
    "SidonConstruction", "difference_triangle", "f2_exhaustive", "greedy_bh",
    "greedy_mian_chowla", "sidon_construct", "sidon_upper_bounds", "sidon_verify",
]
