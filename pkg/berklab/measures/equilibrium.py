"""
Retracted approximations of the equilibrium measure mu_f.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from dask import delayed

from berklab import engine
from berklab.berkovich.points import ClassicalPoint, TypeIIPoint
from berklab.berkovich.tree import FiniteTree
from berklab.berkovich.tree_measure import TreeMeasure
from berklab.dynamics.action import non_exceptional_witness
from berklab.dynamics.rational_map import RationalMap
from berklab.dynamics.reduction import GoodReductionFound, Verdict
from berklab.errors import ExceptionalBasePoint, InsufficientResolution
from berklab.measures.divisors import divisor_poly, retract_divisor
from berklab.potential.green import green, iterations_for
from berklab.potential.laplacian import tree_laplacian
from berklab.valued.fields import LaurentField, format_val

__all__ = ["mu_pullback", "mu_green", "reference_measure"]


def mu_pullback(f: RationalMap, a: ClassicalPoint, n: int,
                tree: FiniteTree) -> TreeMeasure:
    """
    (f^n)^* delta_a / d^n retracted to tree.
    :raises ExceptionalBasePoint: the witness could not certify a
    """
    if not non_exceptional_witness(f, a):
        raise ExceptionalBasePoint(
            f'{a.format()} is not certified non-exceptional for f')
    if n == 0:
        return TreeMeasure.dirac(tree, a)
    P = divisor_poly(f, a, n)
    return retract_divisor(P, tree).scale(Fraction(1, P.degree))


def mu_green(f: RationalMap, tree: FiniteTree,
             tolerance: Fraction = Fraction(1, 1000),
             max_subdivision: int = 12, strategy: str = "auto",
             n_workers: Optional[int] = None) -> TreeMeasure:
    """
    Laplacian of the Green function plus delta_Gauss, pushed to tree.
    Masses carry an error of at most the Green bound per refined edge.
    """
    tolerance = Fraction(tolerance)
    _, bound = iterations_for(f, tolerance)
    tasks = [delayed(green)(f, v, tolerance, strategy=strategy) for v in tree.ordered]
    values: Dict[TypeIIPoint, Fraction] = {
        v: approx.value for v, approx in zip(tree.ordered, engine.compute(tasks, n_workers))
    }

    def g_f(S: TypeIIPoint) -> Fraction:
        if S not in values:
            values[S] = green(f, S, tolerance, strategy=strategy).value
        return values[S]

    laplacian = tree_laplacian(g_f, tree, max_subdivision, atol=2 * bound)
    slack = bound * max(len(laplacian.tree.edges), 1)
    mu = laplacian.pushforward(tree) \
        + TreeMeasure.dirac(tree, TypeIIPoint.gauss(f.field))
    negative = {v: x for v, x in mu.masses.items() if x < -slack}
    if negative:
        listed = ', '.join(f'{v.format()}: {format_val(x)}' for v, x in negative.items())
        raise InsufficientResolution(f'masses below -{slack}: {listed}')
    return mu


def reference_measure(f: RationalMap, tree: FiniteTree,
                      verdict: Optional[Verdict] = None, n_ref: int = 10,
                      base_point: Optional[ClassicalPoint] = None,
                      tolerance: Fraction = Fraction(1, 1000),
                      max_subdivision: int = 12) -> Tuple[TreeMeasure, Dict[str, Any]]:
    """
    mu_ref for the equidistribution experiment with a description of how it
    was obtained. Good reduction at S gives mu_f = delta_S exactly; otherwise
    the pullback of a witnessed base point is used. In characteristic 0 an
    unwitnessed base point falls back to the Green Laplacian, in
    characteristic p it aborts.
    """
    if isinstance(verdict, GoodReductionFound):
        logging.info(f'mu_f is the point mass at {verdict.point.format()}')
        return (TreeMeasure.dirac(tree, verdict.point),
                {"method": "good_reduction", "point": verdict.point.format()})
    a = base_point or ClassicalPoint.affine(f.field, 1)
    if non_exceptional_witness(f, a):
        return (mu_pullback(f, a, n_ref, tree),
                {"method": "pullback", "n_ref": n_ref, "base_point": a.format()})
    if isinstance(f.field, LaurentField):
        raise ExceptionalBasePoint(
            f'{a.format()} is not witnessed non-exceptional; in characteristic '
            f'{f.field.p} pick another base point')
    logging.warning(f'{a.format()} not witnessed, using the Green Laplacian')
    return (mu_green(f, tree, tolerance, max_subdivision),
            {"method": "green", "tolerance": format_val(Fraction(tolerance))})
