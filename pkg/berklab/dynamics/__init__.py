from berklab.dynamics.rational_map import (
    RationalMap, Mobius, normalize, compose, iterate, conjugate,
    clear_iterate_cache
)
from berklab.dynamics.reduction import (
    ReductionReport, reduce, good_reduction, resultant_objective,
    PGRStats, GoodReductionFound, NoneFoundUpTo, pgr_search
)
from berklab.dynamics.action import map_typeII, non_exceptional_witness

__all__ = [
    "RationalMap", "Mobius", "normalize", "compose", "iterate", "conjugate",
    "clear_iterate_cache", "ReductionReport", "reduce", "good_reduction",
    "resultant_objective", "PGRStats", "GoodReductionFound", "NoneFoundUpTo",
    "pgr_search", "map_typeII", "non_exceptional_witness"
]
