"""Alpha-monogeneity of pure number fields Q(m^(1/n)).

The congruence criterion lives in :mod:`puremono.criterion`, the independent
Dedekind index test in :mod:`puremono.dedekind`, exact densities in
:mod:`puremono.density` and sieve-based sweeps in :mod:`puremono.census`.
"""

from .criterion import (
    MonogenicityReport,
    congruence_shortcut,
    frobenius_fixed_classes,
    is_alpha_monogenic,
    is_irreducible_pure,
    local_condition,
)
from .dedekind import dedekind_index_divides, oracle_is_monogenic
from .density import ExactDensity, ap_density, delta_n

__all__ = [
    "ExactDensity",
    "MonogenicityReport",
    "ap_density",
    "congruence_shortcut",
    "dedekind_index_divides",
    "delta_n",
    "frobenius_fixed_classes",
    "is_alpha_monogenic",
    "is_irreducible_pure",
    "local_condition",
    "oracle_is_monogenic",
]
