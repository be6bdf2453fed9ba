"""
Root divisors [f^n = g] and their retraction to finite trees.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict

from berklab.berkovich.points import TypeIIPoint
from berklab.berkovich.tree import FiniteTree
from berklab.berkovich.tree_measure import TreeMeasure
from berklab.dynamics.rational_map import RationalMap, iterate
from berklab.errors import CertificationError
from berklab.potential.functions import Target, target_degree, wedge
from berklab.valued.newton import count_roots_by_valuation, count_roots_in_disk
from berklab.valued.polynomials import HomogeneousForm, Poly

__all__ = ["DivisorPoly", "divisor_poly", "retract_divisor"]


@dataclass(frozen=True)
class DivisorPoly:
    """
    Zeros of a nonzero form W of degree d^n + deg g, read in two charts.
    Roots with v(z) >= 0 are counted in the direct chart W(z, 1), the
    others (infinity included) in the inverted chart W(1, w) with v(w) > 0.
    """
    form: HomogeneousForm

    def __post_init__(self):
        if self.direct_count + self.inverted_count != self.degree:
            raise CertificationError(
                f'chart root counts {self.direct_count} + {self.inverted_count} '
                f'differ from the degree {self.degree}')

    @property
    def degree(self) -> int:
        return self.form.degree

    @cached_property
    def direct(self) -> Poly:
        return self.form.affine()

    @cached_property
    def inverted(self) -> Poly:
        return self.form.inverted()

    @cached_property
    def direct_count(self) -> int:
        return count_roots_in_disk(self.direct, self.form.field.zero, 0)

    @cached_property
    def inverted_count(self) -> int:
        profile = count_roots_by_valuation(self.inverted)
        return sum(k for v, k in profile.items() if v > 0)

    @property
    def infinity_multiplicity(self) -> int:
        return self.degree - self.direct.degree

    def roots_in_disk(self, S: TypeIIPoint) -> int:
        """Finite roots in the closed disk of S."""
        return count_roots_in_disk(self.direct, S.center, S.m)


def divisor_poly(f: RationalMap, g: Target, n: int) -> DivisorPoly:
    """
    Divisor [f^n = g] from the wedge F^n_0 G_1 - F^n_1 G_0.
    :raises IdenticallyEqual: f^n = g
    """
    Fn = iterate(f, n)
    P = DivisorPoly(wedge(Fn, g))
    expected = f.degree ** n + target_degree(g)
    if P.degree != expected:
        raise CertificationError(f'divisor degree {P.degree}, expected {expected}')
    logging.debug(
        f'[f^{n} = g]: degree {P.degree}, {P.direct_count} roots in the unit '
        f'disk, {P.infinity_multiplicity} at infinity')
    return P


def retract_divisor(P: DivisorPoly, tree: FiniteTree) -> TreeMeasure:
    """
    Vertex masses by inclusion-exclusion of disk counts down the tree:
    roots in a vertex disk but in no child disk belong to the vertex, the
    remaining roots (infinity included) to the tree root.
    """
    counts: Dict[TypeIIPoint, int] = {v: P.roots_in_disk(v) for v in tree.ordered}
    masses = {}
    for v in tree.ordered:
        masses[v] = Fraction(counts[v] - sum(counts[c] for c in tree.children[v]))
    masses[tree.root] += P.degree - counts[tree.root]
    return TreeMeasure(tree, masses, Fraction(P.degree))
