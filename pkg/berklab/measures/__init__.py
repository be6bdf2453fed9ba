from berklab.berkovich.tree_measure import TreeMeasure
from berklab.measures.divisors import DivisorPoly, divisor_poly, retract_divisor
from berklab.measures.equilibrium import mu_green, mu_pullback, reference_measure
from berklab.measures.identities import (
    IdentityCheck, check_affine_log, check_divisor_identity, divisor_potential
)
from berklab.measures.experiment import (
    EquidistReport, EquidistRow, equidist_experiment, tv_distance
)

__all__ = [
    "TreeMeasure", "DivisorPoly", "divisor_poly", "retract_divisor",
    "mu_green", "mu_pullback", "reference_measure", "EquidistReport",
    "EquidistRow", "equidist_experiment", "tv_distance", "IdentityCheck",
    "check_affine_log", "check_divisor_identity", "divisor_potential"
]
