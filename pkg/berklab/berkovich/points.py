"""
Classical and type-II points of the Berkovich projective line.

A type-II point is the closed disk D(a, p^-m), written D(a; m). Every
point is stored in the direct z-chart with a canonical center, so two
descriptions of the same disk compare and hash equal. The inverted chart
w = 1/z is available through ``TypeIIPoint.disk(..., chart=Chart.INVERTED)``
and ``TypeIIPoint.in_chart``.
"""
import re
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union

from berklab.errors import CoefficientParseError, InvalidProjectivePoint
from berklab.valued.fields import (
    INFINITY, Coeff, FieldSpec, Val, format_val, parse_val
)
from berklab.valued.polynomials import Poly

__all__ = [
    "Chart", "ClassicalPoint", "TypeIIPoint", "Direction", "disk_seminorm",
    "gauss_seminorm", "join", "hyperbolic_distance", "chordal"
]

_DISK_RE = re.compile(r'^\s*D\(\s*(?P<center>.+);\s*(?P<m>[^;()]+)\)\s*(?P<inv>@inv)?\s*$')


class Chart(str, Enum):
    DIRECT = "direct"
    INVERTED = "inv"


# -----------------------------------------------------------------------------
# Classical points
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class ClassicalPoint:
    """
    Point [z0 : z1] of P^1(K), stored as (a, 1) or (1, 0) for infinity.
    """
    field: FieldSpec
    z0: Coeff
    z1: Coeff

    @classmethod
    def projective(cls, field: FieldSpec, z0, z1) -> "ClassicalPoint":
        z0, z1 = field.element(z0), field.element(z1)
        if not z0 and not z1:
            raise InvalidProjectivePoint('[0 : 0] is not a point of P^1')
        if z1:
            return cls(field, z0 / z1, field.one)
        return cls(field, field.one, field.zero)

    @classmethod
    def affine(cls, field: FieldSpec, a) -> "ClassicalPoint":
        return cls(field, field.element(a), field.one)

    @classmethod
    def infinity(cls, field: FieldSpec) -> "ClassicalPoint":
        return cls(field, field.one, field.zero)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "ClassicalPoint":
        text = str(text).strip()
        if text in ('inf', 'oo', '∞'):
            return cls.infinity(field)
        if text.startswith('[') and text.endswith(']'):
            parts = text[1:-1].split(':')
            if len(parts) != 2:
                raise CoefficientParseError(f'invalid projective point {text!r}')
            return cls.projective(field, field.parse(parts[0]), field.parse(parts[1]))
        return cls.affine(field, field.parse(text))

    @property
    def is_infinity(self) -> bool:
        return not self.z1

    @property
    def value(self) -> Coeff:
        if self.is_infinity:
            raise ValueError('infinity has no affine coordinate')
        return self.z0

    def format(self) -> str:
        return 'inf' if self.is_infinity else self.field.format(self.z0)


def _pair(field: FieldSpec, point) -> Tuple[Coeff, Coeff]:
    if isinstance(point, ClassicalPoint):
        return point.z0, point.z1
    z0, z1 = point
    z0, z1 = field.element(z0), field.element(z1)
    if not z0 and not z1:
        raise InvalidProjectivePoint('[0 : 0] is not a point of P^1')
    return z0, z1


def chordal(field: FieldSpec, z, w) -> Val:
    """
    Chordal distance [z, w] = |Z ^ W| / (||Z|| ||W||) in valuation form.
    :param z: ClassicalPoint or projective pair (z0, z1)
    :param w: ClassicalPoint or projective pair (w0, w1)
    :return: v >= 0 with [z, w] = p^-v, INFINITY iff z = w
    """
    z0, z1 = _pair(field, z)
    w0, w1 = _pair(field, w)
    wedge = z0 * w1 - z1 * w0
    norm_z = min(field.valuation(z0), field.valuation(z1))
    norm_w = min(field.valuation(w0), field.valuation(w1))
    return field.valuation(wedge) - norm_z - norm_w


# -----------------------------------------------------------------------------
# Type-II points
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class TypeIIPoint:
    """
    Closed disk D(center, p^-m) in the direct chart.
    """
    field: FieldSpec
    center: Coeff
    m: Fraction

    def __post_init__(self):
        m = Fraction(self.m)
        object.__setattr__(self, 'm', m)
        object.__setattr__(
            self, 'center',
            self.field.canonical_center(self.field.element(self.center), m))

    @classmethod
    def disk(cls, field: FieldSpec, center, m,
             chart: Chart = Chart.DIRECT) -> "TypeIIPoint":
        center, m = field.element(center), Fraction(m)
        if Chart(chart) is Chart.DIRECT:
            return cls(field, center, m)
        v = field.valuation(center)
        if v < m:
            return cls(field, field.one / center, m - 2 * v)
        return cls(field, field.zero, -m)

    @classmethod
    def gauss(cls, field: FieldSpec) -> "TypeIIPoint":
        return cls(field, field.zero, Fraction(0))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "TypeIIPoint":
        match = _DISK_RE.match(str(text))
        if match is None:
            raise CoefficientParseError(f'invalid disk {text!r}, expected "D(a; m)"')
        m = parse_val(match.group('m'))
        if m in (INFINITY, -INFINITY):
            raise CoefficientParseError(f'disk {text!r} needs a finite radius exponent')
        chart = Chart.INVERTED if match.group('inv') else Chart.DIRECT
        return cls.disk(field, field.parse(match.group('center')), m, chart)

    def in_chart(self, chart: Chart) -> Tuple[Coeff, Fraction]:
        """
        (center, exponent) describing this point in the requested chart.
        """
        if Chart(chart) is Chart.DIRECT:
            return self.center, self.m
        v = self.field.valuation(self.center)
        if v < self.m:
            return self.field.one / self.center, self.m - 2 * v
        return self.field.zero, -self.m

    def format(self, chart: Chart = Chart.DIRECT) -> str:
        center, m = self.in_chart(chart)
        suffix = '@inv' if Chart(chart) is Chart.INVERTED else ''
        return f'D({self.field.format(center)}; {format_val(m)}){suffix}'

    def sort_key(self):
        return (self.m, self.field.sort_key(self.center))

    @property
    def is_gauss(self) -> bool:
        return self.m == 0 and not self.center

    def contains(self, other: Union["TypeIIPoint", ClassicalPoint]) -> bool:
        """
        True when other lies in the closed disk of self, i.e. other <= self
        in the order toward infinity.
        """
        if isinstance(other, ClassicalPoint):
            if other.is_infinity:
                return False
            return self.field.valuation(other.value - self.center) >= self.m
        return other.m >= self.m and \
            self.field.valuation(other.center - self.center) >= self.m

    def __le__(self, other: "TypeIIPoint") -> bool:
        return other.contains(self)

    def __lt__(self, other: "TypeIIPoint") -> bool:
        return self != other and other.contains(self)

    def __ge__(self, other: "TypeIIPoint") -> bool:
        return self.contains(other)

    def __gt__(self, other: "TypeIIPoint") -> bool:
        return self != other and self.contains(other)


def disk_seminorm(phi: Poly, center: Coeff, m: Val) -> Val:
    """
    Valuation form of the sup norm of phi on D(center, p^-m): the minimum
    of v(c_i) + i*m over phi(center + x) = sum c_i x^i.
    """
    if phi.is_zero:
        return INFINITY
    field = phi.field
    coeffs = phi.shift(center).coeffs if center else phi.coeffs
    return min(field.valuation(c) + i * m for i, c in enumerate(coeffs) if c)


def gauss_seminorm(phi: Poly, S: TypeIIPoint) -> Val:
    """
    [phi]_S = p^-v in the direct chart of S.
    """
    return disk_seminorm(phi, S.center, S.m)


def join(S: TypeIIPoint, T: TypeIIPoint) -> TypeIIPoint:
    """
    Smallest disk containing both, S ^ T toward infinity.
    """
    m = min(S.m, T.m, S.field.valuation(S.center - T.center))
    return TypeIIPoint(S.field, S.center, m)


def hyperbolic_distance(S: TypeIIPoint, T: TypeIIPoint) -> Fraction:
    return S.m + T.m - 2 * join(S, T).m


# -----------------------------------------------------------------------------
# Directions
# -----------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Direction:
    """
    Tangent direction at a type-II point, given by a representative.
    Two directions agree iff the paths to their representatives share
    a point other than the base.
    """
    base: TypeIIPoint
    toward: Union[TypeIIPoint, ClassicalPoint]

    def __post_init__(self):
        if self.toward == self.base:
            raise ValueError('a direction needs a representative other than its base')

    @property
    def key(self):
        base, toward = self.base, self.toward
        field = base.field
        if isinstance(toward, ClassicalPoint):
            inside = base.contains(toward)
            center = None if toward.is_infinity else toward.value
        else:
            inside = base.contains(toward)
            center = toward.center
        if not inside:
            return ('up',)
        return ('down', field.canonical_center(center, math.floor(base.m) + 1))

    def __eq__(self, other):
        if not isinstance(other, Direction):
            return NotImplemented
        return self.base == other.base and self.key == other.key

    def __hash__(self):
        return hash((self.base, self.key))
