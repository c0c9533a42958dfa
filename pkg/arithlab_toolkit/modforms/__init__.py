"""Level-one modular forms, Hecke operators and lattice theta series."""

from arithlab_toolkit.modforms.qseries import QSeries, sigma_table
from arithlab_toolkit.modforms.forms import (
    EigenformReport, SigmaIdentityReport, delta_series, eisenstein, eisenstein_constant,
    eisenstein_normalized, hecke_eigenvalue, hecke_Tn, is_hecke_eigenform,
    is_normalized_eigenform, ramanujan_bound_holds, tau, tau_values, verify_sigma_identities,
)
from arithlab_toolkit.modforms.lattice import EvenLattice, e8_lattice, theta_series

__all__ = [
    "QSeries", "sigma_table", "EigenformReport", "SigmaIdentityReport", "delta_series",
    "eisenstein", "eisenstein_constant", "eisenstein_normalized", "hecke_eigenvalue", "hecke_Tn",
    "is_hecke_eigenform", "is_normalized_eigenform", "ramanujan_bound_holds", "tau", "tau_values",
    "verify_sigma_identities", "EvenLattice", "e8_lattice", "theta_series",
]
