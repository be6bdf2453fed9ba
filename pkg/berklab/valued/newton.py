"""
Newton polygons and root localization.

Sign convention used throughout berklab: a segment of slope s and
horizontal length l stands for l roots (with multiplicity) of valuation
-s, so roots of large absolute value sit on the steep negative slopes.
"""
from collections import OrderedDict
from fractions import Fraction
from typing import Dict, List, Tuple

from berklab.errors import ZeroPolynomial
from berklab.valued.fields import INFINITY, Val
from berklab.valued.polynomials import Poly

__all__ = [
    "newton_polygon", "count_roots_by_valuation", "count_roots_in_disk",
    "distinct_root_count"
]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(P: Poly) -> List[Tuple[Fraction, int]]:
    """
    Lower convex hull of the points (i, v(c_i)) as (slope, length) pairs.
    :param P: nonzero polynomial
    :return: segments with strictly increasing slopes; their lengths sum
        to deg P minus the order of vanishing at 0
    """
    if P.is_zero:
        raise ZeroPolynomial('Newton polygon of the zero polynomial')
    field = P.field
    hull = []
    for i, c in enumerate(P.coeffs):
        if not c:
            continue
        pt = (i, field.valuation(c))
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return [
        (Fraction(b[1] - a[1]) / (b[0] - a[0]), b[0] - a[0])
        for a, b in zip(hull, hull[1:])
    ]


def count_roots_by_valuation(P: Poly) -> Dict[Val, int]:
    """
    Multiset of root valuations, INFINITY standing for the root 0.
    """
    profile = OrderedDict()
    ord0 = P.order_at_zero()
    for slope, length in reversed(newton_polygon(P)):
        profile[-slope] = length
    if ord0:
        profile[INFINITY] = ord0
    return dict(profile)


def count_roots_in_disk(P: Poly, a, m: Val) -> int:
    """
    Number of roots z of P, with multiplicity, such that v(z - a) >= m.
    m = -INFINITY counts every finite root.
    """
    if P.is_zero:
        raise ZeroPolynomial('root count of the zero polynomial')
    if m == -INFINITY:
        return P.degree
    Q = P.shift(a)
    count = Q.order_at_zero()
    if m == INFINITY:
        return count
    return count + sum(
        length for slope, length in newton_polygon(Q) if slope <= -m)


def distinct_root_count(P: Poly) -> int:
    """
    Number of distinct roots of P in an algebraic closure. In
    characteristic p a vanishing derivative means P(z) = Q(z^p) and the
    Frobenius map matches the roots of P with those of Q one to one.
    """
    if P.is_zero:
        raise ZeroPolynomial('distinct roots of the zero polynomial')
    if P.degree <= 0:
        return 0
    dP = P.derivative()
    if dP.is_zero:
        return distinct_root_count(P.deflate(P.field.p))
    G = P.gcd(dP)
    if G.degree == 0:
        return P.degree
    W = P // G
    # W is squarefree; roots of G already in W are counted once
    return W.degree + distinct_root_count(G) - W.gcd(G).degree
