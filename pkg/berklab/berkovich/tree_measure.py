"""
Signed rational measures carried by the vertices of a FiniteTree.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Mapping, Union

from berklab.berkovich.points import ClassicalPoint, TypeIIPoint
from berklab.berkovich.tree import FiniteTree
from berklab.errors import TreeMismatch
from berklab.valued.fields import format_val

__all__ = ["TreeMeasure"]


@dataclass(frozen=True)
class TreeMeasure:
    """
    Mass assignment vertex -> Fraction with a declared total. Every vertex
    of the tree has an entry (possibly 0) and the entries sum to total.
    """
    tree: FiniteTree
    masses: Mapping[TypeIIPoint, Fraction] = dc_field(compare=False)
    total: Fraction = Fraction(0)

    def __post_init__(self):
        unknown = [v for v in self.masses if v not in self.tree.vertices]
        if unknown:
            raise ValueError(
                f'masses on non-vertices: {[v.format() for v in unknown]}')
        full = {v: Fraction(self.masses.get(v, 0)) for v in self.tree.ordered}
        object.__setattr__(self, 'masses', full)
        object.__setattr__(self, 'total', Fraction(self.total))
        if sum(full.values()) != self.total:
            raise ValueError(
                f'masses sum to {sum(full.values())}, declared total {self.total}')

    def __eq__(self, other):
        if not isinstance(other, TreeMeasure):
            return NotImplemented
        return self.tree == other.tree and self.masses == other.masses

    def __hash__(self):
        return hash((self.tree, tuple(self.masses.items())))

    @classmethod
    def zero(cls, tree: FiniteTree) -> "TreeMeasure":
        return cls(tree, {}, Fraction(0))

    @classmethod
    def dirac(cls, tree: FiniteTree,
              point: Union[TypeIIPoint, ClassicalPoint],
              mass: Fraction = Fraction(1)) -> "TreeMeasure":
        """Point mass at the vertex owning the retraction of point."""
        return cls(tree, {tree.retract_to_vertex(point): Fraction(mass)}, mass)

    def mass(self, vertex: TypeIIPoint) -> Fraction:
        return self.masses[vertex]

    def _same_tree(self, other: "TreeMeasure"):
        if other.tree != self.tree:
            raise TreeMismatch('measures live on different trees')

    def __add__(self, other: "TreeMeasure") -> "TreeMeasure":
        self._same_tree(other)
        return TreeMeasure(
            self.tree, {v: self.masses[v] + other.masses[v] for v in self.masses},
            self.total + other.total)

    def __neg__(self) -> "TreeMeasure":
        return self.scale(-1)

    def __sub__(self, other: "TreeMeasure") -> "TreeMeasure":
        return self + (-other)

    def scale(self, c) -> "TreeMeasure":
        c = Fraction(c)
        return TreeMeasure(
            self.tree, {v: c * x for v, x in self.masses.items()}, c * self.total)

    def pushforward(self, coarse: FiniteTree) -> "TreeMeasure":
        """
        Push onto a subtree: every vertex sends its mass to the coarse
        vertex owning its retraction.
        """
        if not coarse.is_subtree_of(self.tree):
            raise TreeMismatch('pushforward target is not a subtree')
        pushed: Dict[TypeIIPoint, Fraction] = {}
        for v, x in self.masses.items():
            if x:
                target = coarse.retract_to_vertex(v)
                pushed[target] = pushed.get(target, Fraction(0)) + x
        return TreeMeasure(coarse, pushed, self.total)

    @property
    def is_probability(self) -> bool:
        return self.total == 1 and all(x >= 0 for x in self.masses.values())

    def max_atom(self):
        """(vertex, mass) of the largest vertex mass."""
        best = max(self.masses.values())
        vertex = next(v for v in self.tree.ordered if self.masses[v] == best)
        return vertex, best

    def to_records(self) -> List[Dict[str, str]]:
        return [{"vertex": v.format(), "mass": format_val(x)}
                for v, x in self.masses.items()]
