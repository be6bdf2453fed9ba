"""
Laplacian of a piecewise affine function on a finite tree.

The mass at a vertex is the sum of the outgoing slopes of h along the
incident edges, so the Laplacian of any function has total mass 0.
Slopes are taken along the hyperbolic metric, that is in the radius
exponent m. A function given by a callable is sampled inside every edge
and the edge is split at its breakpoints first; h must be convex along
edge interiors (nonnegative Laplacian away from the vertices), which
holds for every potential in this package.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Union

from berklab.berkovich.points import TypeIIPoint
from berklab.berkovich.tree import FiniteTree
from berklab.berkovich.tree_measure import TreeMeasure
from berklab.errors import InsufficientResolution

__all__ = ["tree_laplacian", "edge_breakpoints"]

Values = Union[Callable[[TypeIIPoint], Fraction], Mapping[TypeIIPoint, Fraction]]


def _close(a: Fraction, b: Fraction, atol: Fraction) -> bool:
    return abs(a - b) <= atol


def edge_breakpoints(h: Callable[[Fraction], Fraction], t0: Fraction, t1: Fraction,
                     max_depth: int = 12, atol: Fraction = Fraction(0),
                     depth: int = 0) -> List[Fraction]:
    """
    Interior breakpoints of a convex piecewise affine h on [t0, t1].

    An interval is affine when the midpoint sits on the chord. Otherwise the
    secant lines through the two quarter intervals at the ends are
    intersected; if h meets that corner exactly, it is the only break.
    Failing that the interval is bisected.
    :raises InsufficientResolution: still not resolved after max_depth halvings
    """
    h0, h1 = h(t0), h(t1)
    tm = (t0 + t1) / 2
    if _close(h(tm), (h0 + h1) / 2, atol):
        return []
    if depth >= max_depth:
        raise InsufficientResolution(
            f'no affine pieces found on [{t0}, {t1}] after {max_depth} halvings')
    q1, q3 = (t0 + tm) / 2, (tm + t1) / 2
    s_left = (h(q1) - h0) / (q1 - t0)
    s_right = (h1 - h(q3)) / (t1 - q3)
    if s_left != s_right:
        c = (h1 - h0 + s_left * t0 - s_right * t1) / (s_left - s_right)
        if t0 < c < t1 and _close(h(c), h0 + s_left * (c - t0), atol) \
                and _close(h((t0 + c) / 2), h0 + s_left * ((c - t0) / 2), atol) \
                and _close(h((c + t1) / 2), h1 - s_right * ((t1 - c) / 2), atol):
            return [c]
    left = edge_breakpoints(h, t0, tm, max_depth, atol, depth + 1)
    right = edge_breakpoints(h, tm, t1, max_depth, atol, depth + 1)
    return left + [tm] + right


def tree_laplacian(values: Values, tree: FiniteTree, max_depth: int = 12,
                   atol: Fraction = Fraction(0)) -> TreeMeasure:
    """
    Laplacian of h on tree, refined at the breakpoints of h.
    :param values: callable on type-II points, or a mapping vertex -> value
        taken as affine along each edge of tree; an edge midpoint present in
        the mapping must lie on the chord of its edge
    :param tree: finite tree
    :param max_depth: bisection depth per edge
    :param atol: slack when testing collinearity of approximate values
    :return: TreeMeasure of total 0 on the refined tree
    """
    atol = Fraction(atol)
    if isinstance(values, Mapping):
        missing = [v.format() for v in tree.ordered if v not in values]
        if missing:
            raise InsufficientResolution(f'no value at vertices {missing}')
        h, refined = (lambda S: Fraction(values[S])), tree
        for parent, child, _ in tree.edges:
            mid = tree.edge_point(child, (parent.m + child.m) / 2)
            if mid in values and not _close(h(mid), (h(parent) + h(child)) / 2, atol):
                raise InsufficientResolution(
                    f'value at {mid.format()} is off the chord from {parent.format()} '
                    f'to {child.format()}, refine the tree or pass a callable')
    else:
        cache: Dict[TypeIIPoint, Fraction] = {}

        def h(S: TypeIIPoint) -> Fraction:
            if S not in cache:
                cache[S] = Fraction(values(S))
            return cache[S]

        breaks = []
        for parent, child, _ in tree.edges:
            along = lambda t, c=child: h(tree.edge_point(c, t))  # noqa: E731
            for t in edge_breakpoints(along, parent.m, child.m, max_depth, atol):
                breaks.append(tree.edge_point(child, t))
        refined = tree.refine(breaks)
        if breaks:
            logging.debug(f'Laplacian refined {len(tree)} -> {len(refined)} vertices')

    masses: Dict[TypeIIPoint, Fraction] = defaultdict(Fraction)
    for parent, child, length in refined.edges:
        slope = (h(child) - h(parent)) / length
        masses[parent] += slope
        masses[child] -= slope
    return TreeMeasure(refined, dict(masses), Fraction(0))
