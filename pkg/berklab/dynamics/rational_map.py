"""
Rational maps of P^1 through homogeneous lifts, Mobius transformations,
composition, iteration and conjugation.

A RationalMap keeps a lift (F0, F1) together with ``scalar_valuation``:
the lift the caller means is pi^scalar_valuation * (F0, F1). Normalizing
and composing move scalars into that counter, so potentials computed
from an iterate always refer to the n-fold composition of the original
lift.
"""
import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from berklab.berkovich.points import ClassicalPoint
from berklab.errors import DegenerateLift, SingularMatrix
from berklab.valued.fields import Coeff, FieldSpec
from berklab.valued.polynomials import HomogeneousForm, Poly
from berklab.valued.resultant import form_resultant

__all__ = [
    "RationalMap", "Mobius", "normalize", "compose", "iterate",
    "conjugate", "clear_iterate_cache"
]


@dataclass(frozen=True)
class RationalMap:
    """
    Map z -> F0(z, 1) / F1(z, 1) given by two forms of equal degree.
    """
    field: FieldSpec
    f0: HomogeneousForm
    f1: HomogeneousForm
    scalar_valuation: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'scalar_valuation', Fraction(self.scalar_valuation))
        if self.f0.degree != self.f1.degree:
            raise ValueError('lift components must share a degree')
        if self.f0.field != self.field or self.f1.field != self.field:
            raise ValueError('lift components live over another field')
        if self.f0.is_zero and self.f1.is_zero:
            raise DegenerateLift('both lift components vanish')

    @classmethod
    def from_lift(cls, field: FieldSpec, f0: Iterable, f1: Iterable) -> "RationalMap":
        """
        Build from two ascending slot lists and check coprimality.
        :param f0: coefficients of z^i w^(d-i) of the first component
        :param f1: coefficients of the second component, same length
        """
        f0, f1 = list(f0), list(f1)
        degree = max(len(f0), len(f1)) - 1
        rmap = cls(
            field,
            HomogeneousForm.from_coeffs(field, f0, degree),
            HomogeneousForm.from_coeffs(field, f1, degree))
        rmap.check_lift()
        return rmap

    @classmethod
    def from_fraction(cls, numerator: Poly, denominator: Poly) -> "RationalMap":
        """
        Homogenize numerator / denominator to d = max of the two degrees.
        """
        if denominator.is_zero:
            raise DegenerateLift('denominator is the zero polynomial')
        degree = max(numerator.degree, denominator.degree, 0)
        field = numerator.field
        rmap = cls(
            field,
            HomogeneousForm.from_poly(numerator, degree)
            if not numerator.is_zero else
            HomogeneousForm.from_coeffs(field, [], degree),
            HomogeneousForm.from_poly(denominator, degree))
        rmap.check_lift()
        return rmap

    @classmethod
    def identity(cls, field: FieldSpec) -> "RationalMap":
        return cls(field, HomogeneousForm.z(field), HomogeneousForm.w(field))

    @property
    def degree(self) -> int:
        return self.f0.degree

    @property
    def lift(self) -> Tuple[HomogeneousForm, HomogeneousForm]:
        return self.f0, self.f1

    @property
    def min_valuation(self):
        return min(self.f0.min_valuation(), self.f1.min_valuation())

    @property
    def normalized(self) -> bool:
        return self.min_valuation == 0

    def resultant(self) -> Coeff:
        return form_resultant(self.f0, self.f1)

    def check_lift(self):
        if self.degree >= 1 and not self.resultant():
            raise DegenerateLift(
                'lift components share a common factor (zero resultant)')

    def __call__(self, point: ClassicalPoint) -> ClassicalPoint:
        return ClassicalPoint.projective(
            self.field,
            self.f0.evaluate(point.z0, point.z1),
            self.f1.evaluate(point.z0, point.z1))

    def is_projectively_equal(self, other: "RationalMap") -> bool:
        """Same map of P^1, lifts possibly differing by a scalar."""
        if other.degree != self.degree:
            return False
        return (self.f0 * other.f1 - self.f1 * other.f0).is_zero

    def to_dict(self):
        return {
            "field": self.field.to_dict(),
            "lift": [self.f0.format(), self.f1.format()],
            "scalar_valuation": str(self.scalar_valuation),
            "degree": self.degree,
        }


@dataclass(frozen=True)
class Mobius:
    """
    Matrix [[a, b], [c, d]] acting as z -> (a z + b) / (c z + d).
    """
    field: FieldSpec
    a: Coeff
    b: Coeff
    c: Coeff
    d: Coeff

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            object.__setattr__(self, name, self.field.element(getattr(self, name)))
        if not self.det:
            raise SingularMatrix('Mobius matrix has zero determinant')

    @classmethod
    def identity(cls, field: FieldSpec) -> "Mobius":
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def affine(cls, field: FieldSpec, alpha, beta) -> "Mobius":
        """z -> alpha z + beta."""
        return cls(field, alpha, beta, 0, 1)

    @property
    def det(self) -> Coeff:
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> "Mobius":
        """Inverse up to the scalar det."""
        return Mobius(self.field, self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mobius":
        return self.adjugate()

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(
            self.field,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d)

    def __call__(self, point: ClassicalPoint) -> ClassicalPoint:
        return ClassicalPoint.projective(
            self.field,
            self.a * point.z0 + self.b * point.z1,
            self.c * point.z0 + self.d * point.z1)

    def to_dict(self):
        return {"matrix": [[self.field.format(self.a), self.field.format(self.b)],
                           [self.field.format(self.c), self.field.format(self.d)]]}


# -----------------------------------------------------------------------------
# Lift operations
# -----------------------------------------------------------------------------
def normalize(f: RationalMap) -> RationalMap:
    """
    Scale the lift so its minimum coefficient valuation is 0; the removed
    scalar moves into scalar_valuation.
    """
    mu = f.min_valuation
    if mu == 0:
        return f
    scale = f.field.uniformizer_power(-int(mu))
    return RationalMap(
        f.field, f.f0.scale(scale), f.f1.scale(scale),
        f.scalar_valuation + mu)


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """
    Normalized lift of f o g, F(G0, G1), with the scalar of the
    composed original lifts.
    """
    if f.field != g.field:
        raise ValueError('cannot compose maps over different fields')
    h = RationalMap(
        f.field,
        f.f0.substitute(g.f0, g.f1),
        f.f1.substitute(g.f0, g.f1),
        f.scalar_valuation + f.degree * g.scalar_valuation)
    return normalize(h)


# iterates of the most recently used maps, oldest map evicted first
ITERATE_CACHE_MAPS = 4
_ITERATE_CACHE: "OrderedDict[RationalMap, Dict[int, RationalMap]]" = OrderedDict()
_ITERATE_LOCK = threading.Lock()


def clear_iterate_cache():
    """Drop every cached iterate; iterate() recomputes on demand."""
    with _ITERATE_LOCK:
        _ITERATE_CACHE.clear()


def _cached_iterates(f: RationalMap) -> Dict[int, RationalMap]:
    # caller holds _ITERATE_LOCK
    if f in _ITERATE_CACHE:
        _ITERATE_CACHE.move_to_end(f)
        return _ITERATE_CACHE[f]
    _ITERATE_CACHE[f] = {}
    while len(_ITERATE_CACHE) > ITERATE_CACHE_MAPS:
        evicted, _ = _ITERATE_CACHE.popitem(last=False)
        logging.debug(f'Evicted iterates of a degree {evicted.degree} map')
    return _ITERATE_CACHE[f]


def iterate(f: RationalMap, n: int) -> RationalMap:
    """
    n-th iterate F^n = F(F^(n-1)); F^0 is the identity lift and F^1 = F.
    Results are memoized behind a lock for the ITERATE_CACHE_MAPS most
    recently iterated maps and do not depend on the cache.
    """
    if n < 0:
        raise ValueError(f'iterate needs n >= 0, got {n}')
    if n == 0:
        return RationalMap.identity(f.field)
    if n == 1:
        return f
    with _ITERATE_LOCK:
        known = _cached_iterates(f)
        k = max((k for k in known if k <= n), default=1)
        current = known.get(k, f)
    while k < n:
        current = compose(f, current)
        k += 1
        with _ITERATE_LOCK:
            _cached_iterates(f).setdefault(k, current)
        logging.debug(f'Computed iterate {k}, degree {current.degree}')
    return current


def conjugate(f: RationalMap, h: Mobius) -> RationalMap:
    """
    Lift of h o f o h^-1, namely M F(adj(M) Z) for the matrix M of h.
    """
    field = f.field
    inv = h.adjugate()
    # adj(M) Z as linear forms, slots (w, z)
    a0 = HomogeneousForm(field, 1, (inv.b, inv.a))
    a1 = HomogeneousForm(field, 1, (inv.d, inv.c))
    g0 = f.f0.substitute(a0, a1)
    g1 = f.f1.substitute(a0, a1)
    return RationalMap(
        field, g0.scale(h.a) + g1.scale(h.b), g0.scale(h.c) + g1.scale(h.d))
