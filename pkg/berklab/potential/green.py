"""
Dynamical Green function g_F = lim T_{F^n} / d^n with a certified
truncation bound.

For the normalized lift F~ one has -v(Res F~) <= T_F~ <= 0 on the whole
line, hence T_F lies in [-v(Res F~) - c, -c] where c is the scalar moved
out of the original lift, and the tail after n terms is bounded by
M / (d^n (d - 1)) with M the larger endpoint in absolute value.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from berklab.berkovich.points import TypeIIPoint
from berklab.dynamics.action import map_typeII
from berklab.dynamics.rational_map import RationalMap, iterate, normalize
from berklab.errors import (
    CertificationError, DiskContainsZeroAndPole, ToleranceUnreachable
)
from berklab.potential.functions import t_h
from berklab.valued.fields import format_val
from berklab.valued.resultant import form_resultant

__all__ = ["GreenApprox", "t_bounds", "iterations_for", "green"]

STRATEGIES = ("auto", "series", "direct")


@dataclass(frozen=True)
class GreenApprox:
    """|g_F(S) - value| <= bound."""
    value: Fraction
    n_used: int
    bound: Fraction
    strategy: str

    def to_dict(self):
        return {
            "value": format_val(self.value),
            "n_used": self.n_used,
            "bound": format_val(self.bound),
            "strategy": self.strategy,
        }


def t_bounds(f: RationalMap) -> Tuple[Fraction, Fraction]:
    """Interval [lower, upper] containing T_F everywhere."""
    fn = normalize(f)
    vres = fn.field.valuation(form_resultant(fn.f0, fn.f1))
    shift = fn.scalar_valuation
    return -vres - shift, -shift


def iterations_for(f: RationalMap, tolerance: Fraction,
                   max_iterations: int = 64) -> Tuple[int, Fraction]:
    """
    Smallest n >= 1 whose certified tail bound is <= tolerance.
    """
    d = f.degree
    lower, upper = t_bounds(f)
    M = max(abs(lower), abs(upper))
    n = 1
    while Fraction(M, d ** n * (d - 1)) > tolerance:
        n += 1
        if n > max_iterations:
            raise ToleranceUnreachable(
                f'tolerance {tolerance} needs more than {max_iterations} iterations')
    return n, Fraction(M, d ** n * (d - 1))


def _series(f: RationalMap, S: TypeIIPoint, n: int) -> Fraction:
    d = f.degree
    lower, upper = t_bounds(f)
    total, point = Fraction(0), S
    for k in range(n):
        term = t_h(f, point)
        if not lower <= term <= upper:
            raise CertificationError(
                f'T_F({point.format()}) = {term} escapes the resultant '
                f'interval [{lower}, {upper}]')
        total += term / d ** (k + 1)
        if k < n - 1:
            point = map_typeII(f, point)
    return total


def _direct(f: RationalMap, S: TypeIIPoint, n: int) -> Fraction:
    return t_h(iterate(f, n), S) / f.degree ** n


def green(f: RationalMap, S: TypeIIPoint, tolerance: Fraction,
          max_iterations: int = 64, strategy: str = "auto",
          cross_check: bool = False) -> GreenApprox:
    """
    Approximate g_F(S) within tolerance.
    :param f: map of degree > 1, its lift (with scalar) is F
    :param S: type-II point
    :param tolerance: epsilon > 0
    :param strategy: "series" telescopes T_F along the orbit of S,
        "direct" evaluates T_{F^n}; "auto" tries the series first
    :param cross_check: evaluate both strategies and require equality
    """
    if f.degree < 2:
        raise ValueError('the Green function needs a map of degree > 1')
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError('tolerance must be positive')
    if strategy not in STRATEGIES:
        raise ValueError(f'strategy {strategy} not in {STRATEGIES}')
    n, bound = iterations_for(f, tolerance, max_iterations)

    used = strategy
    value = None
    if strategy in ("auto", "series"):
        try:
            value, used = _series(f, S, n), "series"
        except DiskContainsZeroAndPole:
            if strategy == "series":
                raise
            logging.debug(f'Series blocked at {S.format()}, evaluating T_F^{n}')
    if value is None:
        value, used = _direct(f, S, n), "direct"
    elif cross_check:
        direct = _direct(f, S, n)
        if direct != value:
            raise CertificationError(
                f'series {value} and direct {direct} disagree at {S.format()}')
    logging.debug(f'g_F({S.format()}) ~ {value} with n={n}, bound {bound}')
    return GreenApprox(value, n, bound, used)
