"""Fourier analysis on finite abelian groups and its additive-combinatorial applications."""

from arithlab_toolkit.fourier.group import (
    FiniteAbelianGroup, GroupFunction, balanced_function, density, indicator, random_set,
    u3_contrast_function,
)
from arithlab_toolkit.fourier.analysis import (
    AP3Deviation, UniformityReport, ap3_brute, ap3_deviation, convolution,
    count_linear_solutions, count_linear_solutions_brute, dft, general_count_deviation,
    inverse_dft, inversion_residual, parseval_residual, quasirandom_bound, spectrum, t3_count,
    u2_norm, u2_norm_brute, uniformity_norm, uniformity_sandwich,
)
from arithlab_toolkit.fourier.bohr import (
    BogolyubovCertificate, BohrSet, bogolyubov_certificate, bohr_set, check_bohr_bounds,
    check_bohr_doubling,
)
from arithlab_toolkit.fourier.increments import (
    CosetIncrement, ProgressionIncrement, density_increment_vs, density_increment_zn,
    progression_partition,
)
from arithlab_toolkit.fourier.behrend import (
    BehrendParameters, BehrendSet, behrend_parameters, behrend_set, is_ap3_free,
)
from arithlab_toolkit.fourier.roth import RothGraph, count_midpoint_solutions, roth_graph

__all__ = [
    "FiniteAbelianGroup", "GroupFunction", "balanced_function", "density", "indicator",
    "random_set", "u3_contrast_function", "AP3Deviation", "UniformityReport", "ap3_brute",
    "ap3_deviation", "convolution", "count_linear_solutions", "count_linear_solutions_brute",
    "dft", "general_count_deviation", "inverse_dft", "inversion_residual", "parseval_residual",
    "quasirandom_bound", "spectrum", "t3_count", "u2_norm", "u2_norm_brute", "uniformity_norm",
    "uniformity_sandwich", "BogolyubovCertificate", "BohrSet", "bogolyubov_certificate",
    "bohr_set", "check_bohr_bounds", "check_bohr_doubling", "CosetIncrement",
    "ProgressionIncrement", "density_increment_vs", "density_increment_zn",
    "progression_partition", "BehrendParameters", "BehrendSet", "behrend_parameters",
    "behrend_set", "is_ap3_free", "RothGraph", "count_midpoint_solutions", "roth_graph",
]
