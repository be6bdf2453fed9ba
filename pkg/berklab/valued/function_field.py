"""
Rational functions over a prime field F_p.

Numerators and denominators are dense polynomials in the galoistools
layout of sympy (highest degree first, entries reduced to [0, p)), so
that gcd, division and modular inverses come straight from
``sympy.polys.galoistools``.
"""
from fractions import Fraction
from typing import Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add, gf_sub, gf_mul, gf_neg, gf_gcd, gf_quo, gf_monic,
    gf_quo_ground, gf_from_int_poly, gf_strip
)

__all__ = ["FpRational", "poly_order_at_zero"]

Dense = Tuple[int, ...]


def _dense(coeffs: Sequence[int], p: int) -> Dense:
    return tuple(int(c) for c in gf_strip(gf_from_int_poly(list(coeffs), p)))


def poly_order_at_zero(f: Sequence[int]) -> int:
    """
    Order of vanishing at t = 0 of a dense polynomial (highest first).
    """
    order = 0
    for c in reversed(f):
        if c:
            return order
        order += 1
    raise ValueError('zero polynomial has no finite order')


class FpRational:
    """
    Element num/den of F_p(t) in reduced form: gcd(num, den) = 1 and
    den monic. Zero is stored as num = () and den = (1,).
    """
    __slots__ = ("p", "num", "den")

    def __init__(
            self, p: int, num: Sequence[int] = (),
            den: Sequence[int] = (1,), reduced: bool = False):
        self.p = p
        num, den = _dense(num, p), _dense(den, p)
        if not den:
            raise ZeroDivisionError('denominator is the zero polynomial')
        if not reduced:
            num, den = self._reduce(num, den, p)
        self.num, self.den = num, den

    @staticmethod
    def _reduce(num: Dense, den: Dense, p: int) -> Tuple[Dense, Dense]:
        if not num:
            return (), (1,)
        if den != (1,):
            g = gf_gcd(list(num), list(den), p, ZZ)
            if g != [1]:
                num = gf_quo(list(num), g, p, ZZ)
                den = gf_quo(list(den), g, p, ZZ)
            lc, monic = gf_monic(list(den), p, ZZ)
            if lc != 1:
                num = gf_quo_ground(list(num), lc, p, ZZ)
            den = monic
        return tuple(int(c) for c in num), tuple(int(c) for c in den)

    @classmethod
    def _raw(cls, p: int, num: Sequence[int], den: Sequence[int]):
        obj = cls.__new__(cls)
        obj.p = p
        obj.num, obj.den = cls._reduce(
            tuple(int(c) for c in num), tuple(int(c) for c in den), p)
        return obj

    @classmethod
    def constant(cls, p: int, value: Union[int, Fraction]):
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f'{value} is not defined modulo {p}')
            value = value.numerator * pow(value.denominator, -1, p)
        return cls(p, (value % p,), reduced=True)

    @classmethod
    def monomial(cls, p: int, k: int):
        """t**k for any integer k."""
        if k >= 0:
            return cls(p, (1,) + (0,) * k, reduced=True)
        return cls(p, (1,), (1,) + (0,) * (-k), reduced=True)

    def _coerce(self, other):
        if isinstance(other, FpRational):
            if other.p != self.p:
                raise ValueError(
                    f'cannot mix F_{self.p}(t) and F_{other.p}(t)')
            return other
        if isinstance(other, (int, Fraction)):
            return FpRational.constant(self.p, other)
        return NotImplemented

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.den == other.den == (1,):
            return FpRational(p, gf_add(list(self.num), list(other.num), p, ZZ),
                              reduced=True)
        num = gf_add(
            gf_mul(list(self.num), list(other.den), p, ZZ),
            gf_mul(list(other.num), list(self.den), p, ZZ), p, ZZ)
        den = gf_mul(list(self.den), list(other.den), p, ZZ)
        return FpRational._raw(p, num, den)

    __radd__ = __add__

    def __neg__(self):
        return FpRational(
            self.p, gf_neg(list(self.num), self.p, ZZ), self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if not self.num or not other.num:
            return FpRational(p, reduced=True)
        num = gf_mul(list(self.num), list(other.num), p, ZZ)
        if self.den == other.den == (1,):
            return FpRational(p, num, reduced=True)
        den = gf_mul(list(self.den), list(other.den), p, ZZ)
        return FpRational._raw(p, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError('inverse of zero in F_p(t)')
        return FpRational._raw(self.p, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = FpRational(self.p, (1,), reduced=True), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -------------------------------------------------------------------------
    # Valuation and comparison
    # -------------------------------------------------------------------------
    def valuation(self) -> int:
        """Order at t = 0; callers handle zero separately."""
        return poly_order_at_zero(self.num) - poly_order_at_zero(self.den)

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = FpRational.constant(self.p, other)
            except ZeroDivisionError:
                return False
        if not isinstance(other, FpRational):
            return NotImplemented
        return (self.p, self.num, self.den) == (other.p, other.num, other.den)

    def __hash__(self):
        if self.den == (1,) and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        return f'FpRational(p={self.p}, num={self.num}, den={self.den})'
