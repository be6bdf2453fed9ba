"""
Action of a rational map on type-II points and the exceptional-set witness.
"""
from berklab.berkovich.points import (
    Chart, ClassicalPoint, TypeIIPoint, disk_seminorm
)
from berklab.dynamics.rational_map import RationalMap, iterate
from berklab.errors import DiskContainsZeroAndPole
from berklab.valued.newton import count_roots_in_disk, distinct_root_count

__all__ = ["map_typeII", "non_exceptional_witness"]


def map_typeII(f: RationalMap, S: TypeIIPoint) -> TypeIIPoint:
    """
    Image of a type-II point. With P = F0(z, 1), Q = F1(z, 1) and S = D(a; m):
    if Q has no zero in the disk the image is D(f(a); [P - f(a)Q]_S - [Q]_S);
    if P has no zero there the same is done for 1/f in the inverted chart.
    :raises DiskContainsZeroAndPole: the caller has to subdivide S
    """
    field = f.field
    P, Q = f.f0.affine(), f.f1.affine()
    a, m = S.center, S.m
    if count_roots_in_disk(Q, a, m) == 0:
        fa = P(a) / Q(a)
        t = disk_seminorm(P - Q.scale(fa), a, m) - disk_seminorm(Q, a, m)
        return TypeIIPoint(field, fa, t)
    if count_roots_in_disk(P, a, m) == 0:
        b = Q(a) / P(a)
        t = disk_seminorm(Q - P.scale(b), a, m) - disk_seminorm(P, a, m)
        return TypeIIPoint.disk(field, b, t, chart=Chart.INVERTED)
    raise DiskContainsZeroAndPole(
        f'{S.format()} contains both a zero and a pole of the map')


def non_exceptional_witness(f: RationalMap, a: ClassicalPoint) -> bool:
    """
    True when f^-2(a) has at least two distinct points, which certifies
    that a is not exceptional. False is inconclusive: deeper preimages
    are not examined.
    """
    if f.degree < 2:
        raise ValueError('the exceptional set is defined for degree > 1')
    f2 = iterate(f, 2)
    W = f2.f0.scale(a.z1) - f2.f1.scale(a.z0)
    affine = W.affine()
    count = distinct_root_count(affine) if affine.degree > 0 else 0
    if affine.degree < W.degree:
        count += 1  # infinity
    return count >= 2
