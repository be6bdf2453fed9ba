"""
Finite subtrees of the Berkovich line spanned by type-II points.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from berklab.berkovich.points import ClassicalPoint, TypeIIPoint, join
from berklab.valued.fields import INFINITY, FieldSpec

__all__ = ["FiniteTree", "unit_tree"]

Point = Union[TypeIIPoint, ClassicalPoint]


@dataclass(frozen=True)
class FiniteTree:
    """
    Join-closed finite set of type-II points. The root is the vertex
    closest to infinity; each other vertex hangs below its parent, the
    smallest vertex strictly containing it.
    """
    field: FieldSpec
    vertices: FrozenSet[TypeIIPoint]

    def __post_init__(self):
        vertices = frozenset(self.vertices)
        object.__setattr__(self, 'vertices', vertices)
        if not vertices:
            raise ValueError('a finite tree needs at least one vertex')
        ordered = sorted(vertices, key=TypeIIPoint.sort_key)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                if join(u, v) not in vertices:
                    raise ValueError(
                        f'vertex set is not join-closed: {u.format()} ^ '
                        f'{v.format()} missing')

    @classmethod
    def from_points(cls, points: Iterable[TypeIIPoint]) -> "FiniteTree":
        """
        Tree spanned by the points: their closure under pairwise joins.
        """
        vertices = set(points)
        if not vertices:
            raise ValueError('a finite tree needs at least one point')
        field = next(iter(vertices)).field
        frontier = list(vertices)
        while frontier:
            fresh = []
            for u in frontier:
                for v in list(vertices):
                    j = join(u, v)
                    if j not in vertices:
                        vertices.add(j)
                        fresh.append(j)
            frontier = fresh
        return cls(field, frozenset(vertices))

    # -------------------------------------------------------------------------
    # Structure
    # -------------------------------------------------------------------------
    @cached_property
    def ordered(self) -> List[TypeIIPoint]:
        """Vertices sorted root first, deterministic across runs."""
        return sorted(self.vertices, key=TypeIIPoint.sort_key)

    @cached_property
    def root(self) -> TypeIIPoint:
        return self.ordered[0]

    @cached_property
    def parent(self) -> Dict[TypeIIPoint, TypeIIPoint]:
        parents = {}
        for v in self.ordered[1:]:
            above = [u for u in self.ordered if u != v and u.contains(v)]
            parents[v] = max(above, key=lambda u: u.m)
        return parents

    @cached_property
    def children(self) -> Dict[TypeIIPoint, List[TypeIIPoint]]:
        kids = {v: [] for v in self.ordered}
        for v in self.ordered[1:]:
            kids[self.parent[v]].append(v)
        return kids

    @cached_property
    def edges(self) -> List[Tuple[TypeIIPoint, TypeIIPoint, Fraction]]:
        """(parent, child, hyperbolic length) for every edge."""
        return [(self.parent[v], v, v.m - self.parent[v].m)
                for v in self.ordered[1:]]

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, point) -> bool:
        return point in self.vertices

    def edge_point(self, child: TypeIIPoint, t: Fraction) -> TypeIIPoint:
        """Point at exponent t on the edge from parent(child) down to child."""
        parent = self.parent[child]
        if not parent.m <= t <= child.m:
            raise ValueError(
                f'exponent {t} outside edge [{parent.m}, {child.m}]')
        return TypeIIPoint(self.field, child.center, t)

    # -------------------------------------------------------------------------
    # Retraction
    # -------------------------------------------------------------------------
    def _locate(self, point: Point) -> Tuple[Optional[TypeIIPoint], Fraction]:
        """
        (child, t) such that the retraction of point is D(child.center; t)
        on the edge above child; child is None for the root.
        """
        field, root = self.field, self.root
        if isinstance(point, ClassicalPoint):
            if point.is_infinity:
                return None, root.m
            a, m = point.value, INFINITY
        else:
            a, m = point.center, point.m
        if min(m, field.valuation(a - root.center)) < root.m:
            return None, root.m
        best_child, best_t = None, root.m
        for child, parent in self.parent.items():
            t = min(m, child.m, field.valuation(a - child.center))
            if t >= parent.m and t > best_t:
                best_child, best_t = child, t
        return best_child, best_t

    def retract(self, point: Point) -> TypeIIPoint:
        """
        First point of the tree met on the path from point toward the root;
        a vertex or an interior edge point.
        """
        child, t = self._locate(point)
        if child is None:
            return self.root
        return TypeIIPoint(self.field, child.center, t)

    def retract_to_vertex(self, point: Point) -> TypeIIPoint:
        """
        Vertex owning the retraction; interior edge points go to the upper
        endpoint of their edge.
        """
        child, t = self._locate(point)
        if child is None:
            return self.root
        return child if t == child.m else self.parent[child]

    def refine(self, points: Iterable[TypeIIPoint]) -> "FiniteTree":
        """
        Insert points lying on the tree as new vertices.
        """
        extra = set()
        for point in points:
            if self.retract(point) != point:
                raise ValueError(f'{point.format()} does not lie on the tree')
            extra.add(point)
        if extra <= self.vertices:
            return self
        logging.debug(f'Refining tree with {len(extra - self.vertices)} points')
        return FiniteTree(self.field, self.vertices | frozenset(extra))

    def is_subtree_of(self, other: "FiniteTree") -> bool:
        return self.vertices <= other.vertices

    def format(self) -> List[str]:
        return [v.format() for v in self.ordered]


def unit_tree(field: FieldSpec, depth: int,
              infinity_side: bool = False) -> FiniteTree:
    """
    Gauss point and every residue disk D(b; k) for 1 <= k <= depth.
    :param field: coefficient field
    :param depth: deepest radius exponent
    :param infinity_side: also add D(0; -1), the vertex on the side of infinity
    :return: FiniteTree with 1 + p + ... + p^depth (+1) vertices
    """
    vertices = {TypeIIPoint.gauss(field)}
    for k in range(1, depth + 1):
        for b in field.residue_representatives(k):
            vertices.add(TypeIIPoint(field, b, k))
    if infinity_side:
        vertices.add(TypeIIPoint(field, field.zero, -1))
    return FiniteTree(field, frozenset(vertices))
