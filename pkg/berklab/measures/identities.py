"""
Exact identities tying tree Laplacians to divisors.

On a finite tree, the Laplacian of

    S -> log_p [f^n, g]_can(S) + T_{F^n}(S) + T_G(S)

equals the retracted divisor [f^n = g] minus (d^n + deg g) delta_Gauss, and
the Laplacian of log max(1, |z|) equals delta_Gauss minus the retraction
of delta_infinity.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from berklab.berkovich.points import ClassicalPoint, TypeIIPoint
from berklab.berkovich.tree import FiniteTree
from berklab.berkovich.tree_measure import TreeMeasure
from berklab.dynamics.rational_map import RationalMap, iterate
from berklab.measures.divisors import divisor_poly, retract_divisor
from berklab.potential.functions import (
    Target, chordal_can, t_h, t_target, target_degree
)
from berklab.potential.laplacian import tree_laplacian
from berklab.valued.fields import FieldSpec, format_val

__all__ = [
    "IdentityCheck", "divisor_potential", "check_divisor_identity",
    "check_affine_log"
]


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    laplacian: TreeMeasure
    expected: TreeMeasure
    n: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.laplacian == self.expected

    @property
    def max_deviation(self) -> Fraction:
        diff = self.laplacian - self.expected
        return max(abs(x) for x in diff.masses.values())

    def to_dict(self):
        return {
            "name": self.name,
            "n": self.n,
            "holds": self.holds,
            "max_deviation": format_val(self.max_deviation),
            "laplacian": self.laplacian.to_records(),
            "expected": self.expected.to_records(),
        }


def divisor_potential(f: RationalMap, g: Target, n: int) -> Callable[[TypeIIPoint], Fraction]:
    Fn = iterate(f, n)

    def h(S: TypeIIPoint) -> Fraction:
        return chordal_can(Fn, g, S) + t_h(Fn, S) + t_target(g, S)
    return h


def check_divisor_identity(f: RationalMap, g: Target, n: int, tree: FiniteTree,
                           max_depth: int = 12) -> IdentityCheck:
    laplacian = tree_laplacian(divisor_potential(f, g, n), tree, max_depth)
    expected = retract_divisor(divisor_poly(f, g, n), tree) - TreeMeasure.dirac(
        tree, TypeIIPoint.gauss(f.field), f.degree ** n + target_degree(g))
    return IdentityCheck("divisor", laplacian.pushforward(tree), expected, n)


def check_affine_log(field: FieldSpec, depth: int = 2) -> IdentityCheck:
    """log max(1, |z|) on the tree spanned by D(0; -1), Gauss and D(0; depth)."""
    tree = FiniteTree.from_points([
        TypeIIPoint(field, field.zero, -1), TypeIIPoint.gauss(field),
        TypeIIPoint(field, field.zero, depth)])

    def h(S: TypeIIPoint) -> Fraction:
        return max(-min(field.valuation(S.center), S.m), 0)

    laplacian = tree_laplacian(h, tree)
    expected = TreeMeasure.dirac(tree, TypeIIPoint.gauss(field)) \
        - TreeMeasure.dirac(tree, ClassicalPoint.infinity(field))
    return IdentityCheck("affine_log", laplacian.pushforward(tree), expected)
