"""Definite quaternion algebras: orders, ideal classes, Brandt matrices and theta series."""

from arithlab_toolkit.quat.algebra import INFINITY, QuatAlgebra, Quaternion, quaternion
from arithlab_toolkit.quat.brandt import (BrandtModule, BrandtReport, Eigenvector,
                                          brandt_matrix, brandt_module, eichler_shimura_check,
                                          eigenbasis, theta_matrix, theta_pair,
                                          theta_pair_direct)
from arithlab_toolkit.quat.classes import (ClassSet, are_equivalent, class_number_formula,
                                           class_set, eichler_mass, equivalence_witness,
                                           hecke_neighbours, ideal_from_basis, ideal_norm,
                                           p_neighbours, stabilizer_weight)
from arithlab_toolkit.quat.lattice import QuatLattice, rational_gcd
from arithlab_toolkit.quat.orders import (QuatOrder, hurwitz_order, lipschitz_order,
                                          maximal_order, standard_maximal_order)
from arithlab_toolkit.quat.systole import (SystoleReport, congruence_trace_floor,
                                           systole_length_bound)

__all__ = [
    "INFINITY", "QuatAlgebra", "Quaternion", "quaternion", "QuatLattice", "rational_gcd",
    "QuatOrder", "hurwitz_order", "lipschitz_order", "maximal_order", "standard_maximal_order",
    "ClassSet", "are_equivalent", "class_number_formula", "class_set", "eichler_mass",
    "equivalence_witness", "hecke_neighbours", "ideal_from_basis", "ideal_norm",
    "p_neighbours", "stabilizer_weight", "BrandtModule", "BrandtReport", "Eigenvector",
    "brandt_matrix", "brandt_module", "eichler_shimura_check", "eigenbasis", "theta_matrix",
    "theta_pair", "theta_pair_direct", "SystoleReport", "congruence_trace_floor",
    "systole_length_bound",
]
