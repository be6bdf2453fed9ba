from berklab.berkovich.points import (
    Chart, ClassicalPoint, TypeIIPoint, Direction, disk_seminorm,
    gauss_seminorm, join, hyperbolic_distance, chordal
)
from berklab.berkovich.tree import FiniteTree, unit_tree
from berklab.berkovich.tree_measure import TreeMeasure


def retract(tree: FiniteTree, point) -> TypeIIPoint:
    """Retraction of a type-II or classical point onto the tree."""
    return tree.retract(point)


__all__ = [
    "Chart", "ClassicalPoint", "TypeIIPoint", "Direction", "disk_seminorm",
    "gauss_seminorm", "join", "hyperbolic_distance", "chordal", "retract",
    "FiniteTree", "unit_tree", "TreeMeasure"
]
