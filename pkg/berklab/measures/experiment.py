"""
Equidistribution experiment: retracted [f^n = g] / (d^n + deg g) against a
reference measure, with the potentially good reduction verdict attached.
"""
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd
from dask import delayed

from berklab import engine
from berklab.berkovich.tree import FiniteTree
from berklab.berkovich.tree_measure import TreeMeasure
from berklab.dynamics.rational_map import RationalMap, iterate
from berklab.dynamics.reduction import NoneFoundUpTo, Verdict, pgr_search
from berklab.errors import TreeMismatch
from berklab.measures.divisors import divisor_poly, retract_divisor
from berklab.measures.equilibrium import reference_measure
from berklab.potential.functions import Target
from berklab.utils import decimal6
from berklab.valued.fields import format_val

__all__ = ["tv_distance", "EquidistRow", "EquidistReport", "equidist_experiment"]


def tv_distance(mu: TreeMeasure, nu: TreeMeasure) -> Fraction:
    """
    Half the l1 distance of the vertex masses. Both measures must have
    total 1; signed masses within a Green tolerance are accepted.
    """
    if mu.tree != nu.tree:
        raise TreeMismatch('tv_distance needs measures on the same tree')
    if mu.total != 1 or nu.total != 1:
        raise ValueError(f'tv_distance needs total mass 1, got {mu.total} and {nu.total}')
    return sum(abs(mu.masses[v] - nu.masses[v]) for v in mu.tree.ordered) / 2


@dataclass(frozen=True)
class EquidistRow:
    n: int
    degree: int
    tv: Fraction

    def to_dict(self):
        return {"n": self.n, "degree": self.degree, "tv": format_val(self.tv)}


@dataclass(frozen=True)
class EquidistReport:
    """
    Distance table with the verdict of the search for potentially good
    reduction. Convergence is only claimed when none was found; the
    largest atom of mu_ref is a diagnostic.
    """
    rows: List[EquidistRow]
    verdict: Verdict
    reference: TreeMeasure
    reference_info: Dict[str, Any] = dc_field(default_factory=dict)

    @property
    def hypothesis_holds(self) -> bool:
        return isinstance(self.verdict, NoneFoundUpTo)

    @property
    def claim(self) -> str:
        if self.hypothesis_holds:
            return "convergence expected (no potentially good reduction found)"
        return "no claim (potentially good reduction found)"

    def to_frame(self) -> pd.DataFrame:
        verdict = type(self.verdict).__name__
        return pd.DataFrame(
            [{"n": r.n, "degree": r.degree, "tv": format_val(r.tv),
              "tv_decimal": decimal6(r.tv), "verdict": verdict,
              "hypothesis_holds": self.hypothesis_holds} for r in self.rows],
            columns=["n", "degree", "tv", "tv_decimal", "verdict", "hypothesis_holds"])

    def to_dict(self):
        vertex, atom = self.reference.max_atom()
        return {
            "rows": [r.to_dict() for r in self.rows],
            "verdict": self.verdict.to_dict(),
            "claim": self.claim,
            "reference": {
                **self.reference_info,
                "masses": self.reference.to_records(),
                "max_atom": {"vertex": vertex.format(), "mass": format_val(atom)},
            },
        }


def _row(f: RationalMap, g: Target, tree: FiniteTree, n: int,
         reference: TreeMeasure) -> EquidistRow:
    P = divisor_poly(f, g, n)
    mu_n = retract_divisor(P, tree).scale(Fraction(1, P.degree))
    return EquidistRow(n, P.degree, tv_distance(mu_n, reference))


def equidist_experiment(f: RationalMap, g: Target, tree: FiniteTree,
                        n_values: Iterable[int],
                        reference: Optional[TreeMeasure] = None,
                        verdict: Optional[Verdict] = None,
                        reference_info: Optional[Dict[str, Any]] = None,
                        n_workers: Optional[int] = None) -> EquidistReport:
    """
    Distances tv([f^n = g] / (d^n + deg g), mu_ref) on tree.
    :param f: map of degree > 1
    :param g: target map or constant
    :param tree: finite tree the measures are retracted to
    :param n_values: iteration counts, may be empty
    :param reference: mu_ref, computed by reference_measure when omitted
    :param verdict: pgr_search result, searched with defaults when omitted
    :return: EquidistReport with rows in increasing n
    """
    n_values = sorted(set(n_values))
    if verdict is None:
        verdict = pgr_search(f)
    if reference is None:
        reference, reference_info = reference_measure(f, tree, verdict)
    if reference.tree != tree:
        raise TreeMismatch('reference measure lives on another tree')

    if n_values:
        iterate(f, n_values[-1])
    tasks = [delayed(_row)(f, g, tree, n, reference) for n in n_values]
    rows = engine.compute(tasks, n_workers)
    for row in rows:
        logging.info(f'n={row.n}: degree {row.degree}, tv {row.tv}')
    return EquidistReport(rows, verdict, reference, dict(reference_info or {}))
