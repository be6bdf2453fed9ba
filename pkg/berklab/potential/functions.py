"""
Potentials of lifts at type-II points, in log_p units.

For a lift H of degree d, T_H = log||H(Z)|| - d log||Z|| descends to the
Berkovich line; at a disk it is evaluated with sup norms of the chart
sections. lambda(phi) denotes -gauss_seminorm(phi), that is log_p [phi]_S.
"""
from fractions import Fraction
from typing import Tuple, Union

from berklab.berkovich.points import (
    Chart, ClassicalPoint, TypeIIPoint, disk_seminorm
)
from berklab.dynamics.rational_map import RationalMap
from berklab.errors import IdenticallyEqual
from berklab.valued.fields import INFINITY
from berklab.valued.polynomials import HomogeneousForm, Poly

__all__ = [
    "Target", "target_lift", "target_degree", "log_norm", "t_h",
    "t_target", "chordal_can", "wedge"
]

Target = Union[RationalMap, ClassicalPoint]


def target_lift(g: Target) -> Tuple[HomogeneousForm, HomogeneousForm]:
    """
    Lift of a target: the forms of a map, or (a0, a1) of degree 0 for a
    constant target a = [a0 : a1].
    """
    if isinstance(g, ClassicalPoint):
        return (HomogeneousForm.constant(g.field, g.z0),
                HomogeneousForm.constant(g.field, g.z1))
    return g.f0, g.f1


def target_degree(g: Target) -> int:
    return 0 if isinstance(g, ClassicalPoint) else g.degree


def log_norm(phi: Poly, center, m) -> Fraction:
    """log_p of the sup norm of phi on D(center; m), -INFINITY for phi = 0."""
    return -disk_seminorm(phi, center, m)


def _sections(form: HomogeneousForm, chart: Chart) -> Poly:
    return form.affine() if chart is Chart.DIRECT else form.inverted()


def t_h(H: RationalMap, S: TypeIIPoint, chart: Chart = Chart.DIRECT) -> Fraction:
    """
    T_H(S) = max(lambda F0, lambda F1) - d max(lambda z, 0) - scalar, with
    the sections Z = (z, 1) in the direct chart or (1, w) in the inverted one.
    """
    chart = Chart(chart)
    field = H.field
    center, m = S.in_chart(chart)
    lam0 = log_norm(_sections(H.f0, chart), center, m)
    lam1 = log_norm(_sections(H.f1, chart), center, m)
    lam_coord = -min(field.valuation(center), m)
    return max(lam0, lam1) - H.degree * max(lam_coord, 0) - H.scalar_valuation


def t_target(g: Target, S: TypeIIPoint) -> Fraction:
    """T_G(S); constant for a constant target (a0, a1)."""
    if isinstance(g, ClassicalPoint):
        field = g.field
        return -min(field.valuation(g.z0), field.valuation(g.z1))
    return t_h(g, S)


def wedge(Fn: RationalMap, g: Target) -> HomogeneousForm:
    """
    F0 G1 - F1 G0, whose zeros form the divisor [f^n = g].
    :raises IdenticallyEqual: f^n and g are the same map
    """
    G0, G1 = target_lift(g)
    W = Fn.f0 * G1 - Fn.f1 * G0
    if W.is_zero:
        raise IdenticallyEqual('f^n = g, the divisor [f^n = g] is undefined')
    return W


def chordal_can(Fn: RationalMap, g: Target, S: TypeIIPoint) -> Fraction:
    """
    log_p [f^n, g]_can(S): lambda(F0 G1 - F1 G0) - max lambda F - max lambda G.
    Always <= 0 and independent of the scalars of both lifts. This is the
    continuous extension, not the chordal distance of f^n(S) and g(S).
    """
    W = wedge(Fn, g)
    G0, G1 = target_lift(g)
    c, m = S.center, S.m
    lam_w = log_norm(W.affine(), c, m)
    lam_f = max(log_norm(Fn.f0.affine(), c, m), log_norm(Fn.f1.affine(), c, m))
    lam_g = max(log_norm(G0.affine(), c, m), log_norm(G1.affine(), c, m))
    if lam_w == -INFINITY:
        raise IdenticallyEqual('wedge section vanishes identically')
    return lam_w - lam_f - lam_g
