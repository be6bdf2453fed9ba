"""
Exact coefficient fields with a discrete valuation.

Two kinds are supported: Q with the p-adic valuation (``PAdicField``) and
F_p(t) with the order of vanishing at t = 0 (``LaurentField``). Absolute
values are never materialized: a norm |x| = p^(-v(x)) is carried by its
valuation v(x), an exact Fraction, or INFINITY for x = 0.
"""
import math
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from tokenize import TokenError
from typing import Any, Dict, List, Sequence, Union

from sympy import Poly, Rational, Symbol, fraction, together
from sympy.core.sympify import SympifyError
from sympy.ntheory import isprime, multiplicity
from sympy.parsing.sympy_parser import (
    parse_expr, standard_transformations, convert_xor
)
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_mul, gf_rem
from sympy.polys.polyerrors import PolynomialError

from berklab.errors import CoefficientParseError, ConfigError
from berklab.valued.function_field import FpRational

__all__ = [
    "INFINITY", "Val", "Coeff", "FieldSpec", "PAdicField", "LaurentField",
    "field_from_dict", "format_val", "parse_val"
]

INFINITY = math.inf

Val = Union[Fraction, float]
Coeff = Union[Fraction, FpRational]

_TRANSFORMS = standard_transformations + (convert_xor,)


def format_val(v: Val) -> str:
    """
    Serialize a valuation: "num/den", "n" for integers and "inf" for +oo.
    """
    if v == INFINITY:
        return "inf"
    if v == -INFINITY:
        return "-inf"
    return str(Fraction(v))


def parse_val(text: Union[str, int, Fraction]) -> Val:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if text in ('inf', '+inf', 'oo'):
        return INFINITY
    if text in ('-inf', '-oo'):
        return -INFINITY
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise CoefficientParseError(f'invalid rational {text!r}: {err}')


@dataclass(frozen=True)
class FieldSpec(ABC):
    """
    Coefficient field with residue characteristic p.
    """
    p: int

    kind = None

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ValueError(f'p={self.p} is not a prime number')

    # -------------------------------------------------------------------------
    # Elements
    # -------------------------------------------------------------------------
    @property
    @abstractmethod
    def zero(self) -> Coeff:
        ...

    @property
    @abstractmethod
    def one(self) -> Coeff:
        ...

    @abstractmethod
    def element(self, value: Any) -> Coeff:
        """Coerce an int, Fraction, string or native element."""

    @abstractmethod
    def parse(self, text: str) -> Coeff:
        ...

    @abstractmethod
    def format(self, c: Coeff) -> str:
        ...

    @abstractmethod
    def sort_key(self, c: Coeff):
        """Total order on elements, used to list tree vertices deterministically."""

    # -------------------------------------------------------------------------
    # Valuation
    # -------------------------------------------------------------------------
    @abstractmethod
    def valuation(self, c: Coeff) -> Val:
        ...

    @abstractmethod
    def uniformizer_power(self, k: int) -> Coeff:
        ...

    @abstractmethod
    def residue(self, c: Coeff) -> int:
        """Image in F_p of an element of valuation >= 0."""

    @abstractmethod
    def truncate(self, u: Coeff, length: int) -> Coeff:
        """
        Canonical representative of a unit u modulo pi^length, a
        polynomial in the uniformizer with digits in [0, p).
        """

    def unit_part(self, c: Coeff) -> Coeff:
        return c / self.uniformizer_power(int(self.valuation(c)))

    def is_zero(self, c: Coeff) -> bool:
        return not c

    def residue_digits(self) -> List[Coeff]:
        """Digits 0, 1, ..., p-1 lifted to the field."""
        return [self.element(b) for b in range(self.p)]

    def residue_representatives(self, depth: int) -> List[Coeff]:
        """
        Representatives of O / pi^depth O as sums of digits times powers
        of the uniformizer, in increasing sort order.
        """
        reps = []
        powers = [self.uniformizer_power(j) for j in range(depth)]
        for digits in itertools.product(range(self.p), repeat=depth):
            c = self.zero
            for b, pw in zip(digits, powers):
                if b:
                    c = c + self.element(b) * pw
            reps.append(c)
        return sorted(reps, key=self.sort_key)

    def canonical_center(self, a: Coeff, m: Val) -> Coeff:
        """
        Canonical representative of the class of a modulo the closed
        disk {x : v(x) >= m}. Centers of equal disks map to the same
        element, which makes type-II points hashable.
        """
        if m == INFINITY:
            return a
        v = self.valuation(a)
        if v >= m:
            return self.zero
        e = int(v)
        length = math.ceil(m) - e
        return self.truncate(self.unit_part(a), length) * \
            self.uniformizer_power(e)

    # -------------------------------------------------------------------------
    # Polynomial kernels (ascending coefficient lists)
    # -------------------------------------------------------------------------
    def taylor_shift(self, coeffs: Sequence[Coeff], a: Coeff) -> List[Coeff]:
        """
        Coefficients of P(a + x) from those of P(z), both ascending.
        """
        b = list(coeffs)
        if not a or len(b) < 2:
            return b
        n = len(b) - 1
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                b[j] = b[j] + a * b[j + 1]
        return b

    def convolve(self, a: Sequence[Coeff], b: Sequence[Coeff]) -> List[Coeff]:
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "p": self.p}


@dataclass(frozen=True)
class PAdicField(FieldSpec):
    """
    Q with the p-adic valuation v_p.
    """
    kind = "Qp"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def element(self, value: Any) -> Fraction:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, FpRational):
            raise TypeError('F_p(t) element given to a p-adic field')
        if isinstance(value, Rational):
            return Fraction(int(value.p), int(value.q))
        return Fraction(value)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as err:
            raise CoefficientParseError(
                f'invalid rational coefficient {text!r}: {err}')

    def format(self, c: Fraction) -> str:
        return str(Fraction(c))

    def sort_key(self, c: Fraction):
        return (Fraction(c),)

    def valuation(self, c: Fraction) -> Val:
        if not c:
            return INFINITY
        c = Fraction(c)
        return Fraction(
            multiplicity(self.p, abs(c.numerator)) -
            multiplicity(self.p, c.denominator))

    def uniformizer_power(self, k: int) -> Fraction:
        return Fraction(self.p) ** k

    def residue(self, c: Fraction) -> int:
        if not c:
            return 0
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ValueError(f'{c} has negative valuation, no residue')
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def truncate(self, u: Fraction, length: int) -> Fraction:
        mod = self.p ** length
        return Fraction(u.numerator * pow(u.denominator, -1, mod) % mod)

    def taylor_shift(self, coeffs, a):
        """
        Integer kernel: clear denominators, shift by the numerator of a
        with exact big integers, then restore the scaling.
        """
        if not a or len(coeffs) < 2:
            return list(coeffs)
        a = Fraction(a)
        r, s = a.numerator, a.denominator
        n = len(coeffs) - 1
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        b = [(c.numerator * (lcm // c.denominator)) * s ** (n - i)
             for i, c in enumerate(coeffs)]
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                b[j] += r * b[j + 1]
        scale = lcm * s ** n
        return [Fraction(e * s ** j, scale) for j, e in enumerate(b)]

    def convolve(self, a, b):
        if not a or not b:
            return []
        la = _lcm_denominators(a)
        lb = _lcm_denominators(b)
        ia = [c.numerator * (la // c.denominator) for c in a]
        ib = [c.numerator * (lb // c.denominator) for c in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if not x:
                continue
            for j, y in enumerate(ib):
                out[i + j] += x * y
        scale = la * lb
        return [Fraction(e, scale) for e in out]


def _lcm_denominators(coeffs: Sequence[Fraction]) -> int:
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm


def _format_dense(f: Sequence[int], var: str) -> str:
    if not f:
        return "0"
    terms, n = [], len(f) - 1
    for i, c in enumerate(f):
        k = n - i
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        power = var if k == 1 else f'{var}^{k}'
        terms.append(power if c == 1 else f'{c}*{power}')
    return " + ".join(terms)


@dataclass(frozen=True)
class LaurentField(FieldSpec):
    """
    F_p(t) with the t-adic valuation (equal characteristic p).
    """
    variable: str = "t"

    kind = "Fpt"

    @property
    def zero(self) -> FpRational:
        return FpRational(self.p, reduced=True)

    @property
    def one(self) -> FpRational:
        return FpRational(self.p, (1,), reduced=True)

    def element(self, value: Any) -> FpRational:
        if isinstance(value, FpRational):
            if value.p != self.p:
                raise ValueError(f'element of F_{value.p}(t) given to F_{self.p}(t)')
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return FpRational.constant(self.p, value)
        raise TypeError(f'cannot coerce {value!r} into F_{self.p}(t)')

    def _int_mod_p(self, c) -> int:
        c = Rational(c)
        if int(c.q) % self.p == 0:
            raise CoefficientParseError(f'{c} is not defined modulo {self.p}')
        return int(c.p) * pow(int(c.q), -1, self.p) % self.p

    def parse(self, text: str) -> FpRational:
        sym = Symbol(self.variable)
        try:
            expr = parse_expr(
                str(text), local_dict={self.variable: sym},
                transformations=_TRANSFORMS)
            num, den = fraction(together(expr))
            num_coeffs = Poly(num, sym).all_coeffs()
            den_coeffs = Poly(den, sym).all_coeffs()
            num_dense = [self._int_mod_p(c) for c in num_coeffs]
            den_dense = [self._int_mod_p(c) for c in den_coeffs]
            return FpRational(self.p, num_dense, den_dense)
        except CoefficientParseError:
            raise
        except (SympifyError, SyntaxError, TypeError, ValueError,
                PolynomialError, ZeroDivisionError, TokenError) as err:
            raise CoefficientParseError(
                f'invalid F_{self.p}({self.variable}) coefficient '
                f'{text!r}: {err}')

    def format(self, c: FpRational) -> str:
        c = self.element(c)
        return (f'({_format_dense(c.num, self.variable)})/'
                f'({_format_dense(c.den, self.variable)})')

    def sort_key(self, c: FpRational):
        c = self.element(c)
        return (len(c.den), c.den, len(c.num), c.num)

    def valuation(self, c: FpRational) -> Val:
        if not c:
            return INFINITY
        return Fraction(c.valuation())

    def uniformizer_power(self, k: int) -> FpRational:
        return FpRational.monomial(self.p, k)

    def residue(self, c: FpRational) -> int:
        c = self.element(c)
        if not c:
            return 0
        v = c.valuation()
        if v < 0:
            raise ValueError(f'{self.format(c)} has negative valuation, no residue')
        if v > 0:
            return 0
        return c.num[-1] * pow(c.den[-1], -1, self.p) % self.p

    def truncate(self, u: FpRational, length: int) -> FpRational:
        modulus = [1] + [0] * length
        inv, _, _ = gf_gcdex(list(u.den), modulus, self.p, ZZ)
        series = gf_rem(gf_mul(list(u.num), inv, self.p, ZZ), modulus, self.p, ZZ)
        return FpRational(self.p, series, reduced=True)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "p": self.p, "variable": self.variable}


def field_from_dict(spec: Dict[str, Any]) -> FieldSpec:
    """
    Build a field from its map-spec description {"kind", "p"[, "variable"]}.
    """
    try:
        kind, p = spec["kind"], int(spec["p"])
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f'invalid field description {spec!r}: {err}')
    try:
        if kind == PAdicField.kind:
            return PAdicField(p)
        if kind == LaurentField.kind:
            return LaurentField(p, str(spec.get("variable", "t")))
    except ValueError as err:
        raise ConfigError(str(err))
    raise ConfigError(f'field kind {kind!r} not known, use Qp or Fpt')
