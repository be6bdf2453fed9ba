"""
Sampled a priori sequence s_n = max_S log_p [f^n, g]_can(S) / (d^n + deg g).

Every term is <= 0 and the true supremum over the region lies between
s_n and 0, so s_n -> 0 certifies the limit on the sampled family.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from dask import delayed

from berklab import engine
from berklab.berkovich.points import ClassicalPoint, TypeIIPoint
from berklab.dynamics.action import non_exceptional_witness
from berklab.dynamics.rational_map import RationalMap, iterate
from berklab.errors import ExceptionalBasePoint, IdenticallyEqual
from berklab.potential.functions import Target, chordal_can, target_degree
from berklab.valued.fields import format_val

__all__ = ["AprioriTerm", "apriori_term", "apriori_sequence"]


@dataclass(frozen=True)
class AprioriTerm:
    n: int
    value: Fraction
    normalizer: int
    argmax: TypeIIPoint

    def to_dict(self):
        return {
            "n": self.n,
            "s_n": format_val(self.value),
            "normalizer": self.normalizer,
            "argmax": self.argmax.format(),
        }


def apriori_term(f: RationalMap, g: Target, samples: Sequence[TypeIIPoint],
                 n: int) -> AprioriTerm:
    """Single term s_n; the first sample attaining the max is reported."""
    Fn = iterate(f, n)
    normalizer = f.degree ** n + target_degree(g)
    best, argmax = None, None
    for S in samples:
        value = chordal_can(Fn, g, S)
        if best is None or value > best:
            best, argmax = value, S
    return AprioriTerm(n, best / normalizer, normalizer, argmax)


def _term_or_skip(f, g, samples, n, skip_identical):
    try:
        return apriori_term(f, g, samples, n)
    except IdenticallyEqual:
        if not skip_identical:
            raise
        logging.warning(f'f^{n} = g, skipping n={n}')
        return None


def apriori_sequence(f: RationalMap, g: Target, samples: Sequence[TypeIIPoint],
                     n_max: int, n_min: int = 1,
                     region: Optional[TypeIIPoint] = None,
                     skip_identical: bool = False,
                     n_workers: Optional[int] = None) -> List[AprioriTerm]:
    """
    Terms s_n for n_min <= n <= n_max, evaluated in parallel over n.
    :param f: map of degree > 1
    :param g: map of degree > 0 or a non-exceptional constant
    :param samples: type-II points inside region
    :param region: disk D the samples are drawn from, optional
    :param skip_identical: drop the n with f^n = g instead of raising
    :return: terms in increasing n
    """
    if f.degree < 2:
        raise ValueError('apriori_sequence needs deg f > 1')
    if not samples:
        raise ValueError('apriori_sequence needs at least one sample')
    if region is not None:
        outside = [S.format() for S in samples if not region.contains(S)]
        if outside:
            raise ValueError(f'samples outside {region.format()}: {outside}')
    if isinstance(g, ClassicalPoint):
        if not non_exceptional_witness(f, g):
            raise ExceptionalBasePoint(
                f'constant target {g.format()} may be exceptional for f')
    elif g.degree < 1:
        raise ValueError('target map must have degree > 0')

    # warm the iterate cache sequentially, the tasks only read it
    iterate(f, n_max)
    tasks = [delayed(_term_or_skip)(f, g, list(samples), n, skip_identical)
             for n in range(n_min, n_max + 1)]
    terms = [t for t in engine.compute(tasks, n_workers) if t is not None]
    for term in terms:
        logging.info(f's_{term.n} = {term.value} at {term.argmax.format()}')
    return terms
