"""
Univariate polynomials and homogeneous binary forms over a FieldSpec.

Coefficients are stored in ascending order of degree. A ``Poly`` never
carries trailing zeros; a ``HomogeneousForm`` of degree d always has
exactly d + 1 slots, slot i holding the coefficient of z^i w^(d-i).
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from berklab.errors import ZeroPolynomial
from berklab.valued.fields import INFINITY, Coeff, FieldSpec, Val

__all__ = ["Poly", "HomogeneousForm"]


def _strip(coeffs: Sequence[Coeff]) -> Tuple[Coeff, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Poly:
    """
    Univariate polynomial sum(coeffs[i] * z**i).
    """
    field: FieldSpec
    coeffs: Tuple[Coeff, ...]

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Iterable) -> "Poly":
        return cls(field, _strip([field.element(c) for c in coeffs]))

    @classmethod
    def _new(cls, field: FieldSpec, coeffs: Sequence[Coeff]) -> "Poly":
        return cls(field, _strip(coeffs))

    @classmethod
    def parse(cls, field: FieldSpec, texts: Sequence[str]) -> "Poly":
        return cls(field, _strip([field.parse(t) for t in texts]))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, c: Coeff = None) -> "Poly":
        c = field.one if c is None else field.element(c)
        return cls._new(field, [field.zero] * k + [c])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable) -> "Poly":
        result = cls._new(field, [field.one])
        for r in roots:
            result = result * cls._new(field, [-field.element(r), field.one])
        return result

    # -------------------------------------------------------------------------
    # Basic properties
    # -------------------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Coeff:
        if self.is_zero:
            raise ZeroPolynomial('zero polynomial has no leading coefficient')
        return self.coeffs[-1]

    def coefficient(self, i: int) -> Coeff:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def order_at_zero(self) -> int:
        if self.is_zero:
            raise ZeroPolynomial('order at 0 of the zero polynomial')
        for i, c in enumerate(self.coeffs):
            if c:
                return i

    def min_valuation(self) -> Val:
        return min((self.field.valuation(c) for c in self.coeffs if c),
                   default=INFINITY)

    def format(self) -> List[str]:
        return [self.field.format(c) for c in self.coeffs]

    def _check(self, other: "Poly"):
        if other.field != self.field:
            raise ValueError(f'field mismatch: {self.field} vs {other.field}')

    # -------------------------------------------------------------------------
    # Ring operations
    # -------------------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._new(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Coeff, int]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        return Poly._new(self.field, self.field.convolve(self.coeffs, other.coeffs))

    def scale(self, c) -> "Poly":
        c = self.field.element(c)
        if not c:
            return Poly(self.field, ())
        return Poly(self.field, tuple(x * c for x in self.coeffs))

    def __call__(self, a) -> Coeff:
        a = self.field.element(a)
        result = self.field.zero
        for c in reversed(self.coeffs):
            result = result * a + c
        return result

    def derivative(self) -> "Poly":
        return Poly._new(
            self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def shift(self, a) -> "Poly":
        """P(a + x) as a polynomial in x."""
        a = self.field.element(a)
        return Poly._new(self.field, self.field.taylor_shift(self.coeffs, a))

    def deflate(self, q: int) -> Optional["Poly"]:
        """
        Q with P(z) = Q(z^q), or None when some exponent is not a multiple of q.
        """
        if any(c and i % q for i, c in enumerate(self.coeffs)):
            return None
        return Poly._new(self.field, list(self.coeffs[::q]))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroPolynomial('division by the zero polynomial')
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(self.field, ()), self
        quo = [self.field.zero] * (dq + 1)
        inv = self.field.one / other.leading
        n = other.degree
        for k in range(dq, -1, -1):
            c = rem[k + n]
            if not c:
                continue
            c = c * inv
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k + j] = rem[k + j] - c * b
        return Poly._new(self.field, quo), Poly._new(self.field, rem[:n])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.field.one / self.leading)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()


@dataclass(frozen=True)
class HomogeneousForm:
    """
    Binary form sum(coeffs[i] * z**i * w**(degree - i)).
    """
    field: FieldSpec
    degree: int
    coeffs: Tuple[Coeff, ...]

    def __post_init__(self):
        if self.degree < 0 or len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f'a form of degree {self.degree} needs {self.degree + 1} '
                f'coefficients, got {len(self.coeffs)}')

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Iterable, degree: int = None):
        coeffs = [field.element(c) for c in coeffs]
        degree = len(coeffs) - 1 if degree is None else degree
        if len(coeffs) > degree + 1:
            if any(coeffs[degree + 1:]):
                raise ValueError(f'coefficients exceed degree {degree}')
            coeffs = coeffs[:degree + 1]
        coeffs += [field.zero] * (degree + 1 - len(coeffs))
        return cls(field, degree, tuple(coeffs))

    @classmethod
    def from_poly(cls, poly: Poly, degree: int) -> "HomogeneousForm":
        """Homogenize an affine polynomial to the given degree."""
        if poly.degree > degree:
            raise ValueError(f'degree {poly.degree} exceeds {degree}')
        field = poly.field
        return cls(field, degree, tuple(
            list(poly.coeffs) + [field.zero] * (degree - poly.degree)))

    @classmethod
    def z(cls, field: FieldSpec) -> "HomogeneousForm":
        return cls(field, 1, (field.zero, field.one))

    @classmethod
    def w(cls, field: FieldSpec) -> "HomogeneousForm":
        return cls(field, 1, (field.one, field.zero))

    @classmethod
    def constant(cls, field: FieldSpec, c) -> "HomogeneousForm":
        return cls(field, 0, (field.element(c),))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def affine(self) -> Poly:
        """The section F(z, 1) in the direct chart."""
        return Poly._new(self.field, self.coeffs)

    def inverted(self) -> Poly:
        """The section F(1, w) in the inverted chart."""
        return Poly._new(self.field, self.coeffs[::-1])

    def min_valuation(self) -> Val:
        return min((self.field.valuation(c) for c in self.coeffs if c),
                   default=INFINITY)

    def evaluate(self, z0: Coeff, z1: Coeff) -> Coeff:
        result = self.field.zero
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c:
                result = result + c * z0 ** i * z1 ** (d - i)
        return result

    def _check(self, other: "HomogeneousForm"):
        if other.field != self.field:
            raise ValueError(f'field mismatch: {self.field} vs {other.field}')

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError('cannot add forms of different degrees')
        return HomogeneousForm(self.field, self.degree, tuple(
            a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(
            self.field, self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def __mul__(self, other) -> "HomogeneousForm":
        if not isinstance(other, HomogeneousForm):
            return self.scale(other)
        self._check(other)
        return HomogeneousForm(
            self.field, self.degree + other.degree,
            tuple(self.field.convolve(self.coeffs, other.coeffs)))

    def scale(self, c) -> "HomogeneousForm":
        c = self.field.element(c)
        return HomogeneousForm(
            self.field, self.degree, tuple(x * c for x in self.coeffs))

    def substitute(self, a: "HomogeneousForm",
                   b: "HomogeneousForm") -> "HomogeneousForm":
        """
        F(A, B) for forms A, B of a common degree e; the result has
        degree d * e.
        """
        if a.degree != b.degree:
            raise ValueError('substituted forms must share a degree')
        d, field = self.degree, self.field
        powers_a, powers_b = [None] * (d + 1), [None] * (d + 1)
        powers_a[0] = powers_b[0] = HomogeneousForm.constant(field, 1)
        for k in range(1, d + 1):
            powers_a[k] = powers_a[k - 1] * a
            powers_b[k] = powers_b[k - 1] * b
        result = HomogeneousForm(
            field, d * a.degree, (field.zero,) * (d * a.degree + 1))
        for i, c in enumerate(self.coeffs):
            if c:
                result = result + (powers_a[i] * powers_b[d - i]).scale(c)
        return result

    def translate(self, beta) -> "HomogeneousForm":
        """F(z + beta w, w)."""
        beta = self.field.element(beta)
        return HomogeneousForm(self.field, self.degree, tuple(
            self.field.taylor_shift(self.coeffs, beta)))

    def format(self) -> List[str]:
        return [self.field.format(c) for c in self.coeffs]
