"""Finite groups, Cayley graphs, growth and expansion."""

from arithlab_toolkit.groups.finite import (
    CyclicGroup, FiniteGroup, GroupTable, SL2Group, SymmetricGroup, counter_rng,
)
from arithlab_toolkit.groups.cayley import (
    BorelExample, CayleyGraph, GrowthProfile, NikolovPyberReport, OrbitStabilizerCheck,
    SpectrumReport, adjacency_spectrum, cayley_diameter, cluster_eigenvalues, conjugation_check,
    growth_profile, helfgott_ex31_instance, nikolov_pyber_check, nikolov_pyber_threshold,
    orbit_stabilizer_check, product_set, tripling_check,
)
from arithlab_toolkit.groups.expanders import (
    LINK_PRESETS, BipartiteSample, ExpanderSample, ReturnProbability, ZukVerdict,
    boundary_ratio_exact, feit_higman_lambda1, link_graph, link_preset, normalized_laplacian,
    projective_plane_incidence, random_expander_sample, return_probability, sample_bipartite,
    zuk_criterion,
)

__all__ = [
    "CyclicGroup", "FiniteGroup", "GroupTable", "SL2Group", "SymmetricGroup", "counter_rng",
    "BorelExample", "CayleyGraph", "GrowthProfile", "NikolovPyberReport",
    "OrbitStabilizerCheck", "SpectrumReport", "adjacency_spectrum", "cayley_diameter",
    "cluster_eigenvalues", "conjugation_check", "growth_profile", "helfgott_ex31_instance",
    "nikolov_pyber_check", "nikolov_pyber_threshold", "orbit_stabilizer_check", "product_set",
    "tripling_check", "LINK_PRESETS", "BipartiteSample", "ExpanderSample", "ReturnProbability",
    "ZukVerdict", "boundary_ratio_exact", "feit_higman_lambda1", "link_graph", "link_preset",
    "normalized_laplacian", "projective_plane_incidence", "random_expander_sample",
    "return_probability", "sample_bipartite", "zuk_criterion",
]
