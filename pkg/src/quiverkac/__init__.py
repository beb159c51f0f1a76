"""Betti numbers of Nakajima quiver varieties, Kac A-polynomials and
Kac-Moody multiplicities, computed in exact arithmetic and cross-checked
against finite-field point counts."""

__version__ = "0.1.0"

from .quiver import Quiver, parse_quiver, load_quiver, half_dimension, cartan_matrix
from .partitions import Partition, pairing, centralizer_order, enumerate_partitions, enumerate_multipartitions
from .exactalg import IntPoly, RationalFunction, MSeries
from .hua import hua_series, framed_numerator_series, kac_a_polynomials, constant_terms
from .weyl import weyl_orbit_sum, root_multiplicities, character_multiplicities
from .betti import poincare_series, betti_numbers, top_betti_equals_weight_multiplicity

__all__ = [
    "Quiver", "parse_quiver", "load_quiver", "half_dimension", "cartan_matrix",
    "Partition", "pairing", "centralizer_order", "enumerate_partitions", "enumerate_multipartitions",
    "IntPoly", "RationalFunction", "MSeries",
    "hua_series", "framed_numerator_series", "kac_a_polynomials", "constant_terms",
    "weyl_orbit_sum", "root_multiplicities", "character_multiplicities",
    "poincare_series", "betti_numbers", "top_betti_equals_weight_multiplicity",
]
