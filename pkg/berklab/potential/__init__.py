from berklab.potential.functions import (
    Target, chordal_can, log_norm, t_h, t_target, target_degree, target_lift,
    wedge
)
from berklab.potential.green import GreenApprox, green, iterations_for, t_bounds
from berklab.potential.laplacian import edge_breakpoints, tree_laplacian
from berklab.potential.apriori import AprioriTerm, apriori_sequence, apriori_term

__all__ = [
    "Target", "chordal_can", "log_norm", "t_h", "t_target", "target_degree",
    "target_lift", "wedge", "GreenApprox", "green", "iterations_for",
    "t_bounds", "edge_breakpoints", "tree_laplacian", "AprioriTerm",
    "apriori_sequence", "apriori_term"
]
