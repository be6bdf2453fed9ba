"""
Reduction modulo the maximal ideal, good reduction and a bounded search
for potentially good reduction.
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd, gf_quo, gf_strip

from berklab.berkovich.points import TypeIIPoint
from berklab.dynamics.rational_map import (
    Mobius, RationalMap, conjugate, normalize
)
from berklab.errors import CertificationError, NotNormalized
from berklab.valued.fields import INFINITY
from berklab.valued.resultant import form_resultant

__all__ = [
    "ReductionReport", "reduce", "good_reduction", "resultant_objective",
    "PGRStats", "GoodReductionFound", "NoneFoundUpTo", "pgr_search"
]


@dataclass(frozen=True)
class ReductionReport:
    """
    Reduction of a normalized lift over F_p. The reduced forms are given
    by their ascending slots; ``cancelled_degree`` is the degree of the
    finite common factor and ``infinity_drop`` the common power of w.
    """
    p: int
    degree: int
    reduced_numerator: Tuple[int, ...]
    reduced_denominator: Tuple[int, ...]
    reduced_degree: int
    cancelled_degree: int
    infinity_drop: int

    def to_dict(self):
        return {
            "p": self.p,
            "degree": self.degree,
            "reduced_numerator": list(self.reduced_numerator),
            "reduced_denominator": list(self.reduced_denominator),
            "reduced_degree": self.reduced_degree,
            "cancelled_degree": self.cancelled_degree,
            "infinity_drop": self.infinity_drop,
            "good_reduction": self.reduced_degree == self.degree,
        }


def _split_form(slots: Sequence[int], d: int):
    """(dense affine part highest first, power of w) of a residue form."""
    dense = gf_strip(list(reversed(slots)))
    if not dense:
        return None, None
    return dense, d - (len(dense) - 1)


def _slots(dense: List[int], degree: int) -> Tuple[int, ...]:
    ascending = [int(c) for c in reversed(dense)]
    return tuple(ascending + [0] * (degree + 1 - len(ascending)))


def reduce_residue_forms(
        r0: Sequence[int], r1: Sequence[int], d: int, p: int) -> ReductionReport:
    """
    Cancel the common factor of two residue forms of degree d over F_p.
    """
    a0, j0 = _split_form(r0, d)
    a1, j1 = _split_form(r1, d)
    if a0 is None and a1 is None:
        raise NotNormalized('both reduced forms vanish, lift is not normalized')
    if a0 is None or a1 is None:
        # gcd(0, F) = F, the reduction is constant
        dense, j = (a1, j1) if a0 is None else (a0, j0)
        num, den = ((0,), (1,)) if a0 is None else ((1,), (0,))
        return ReductionReport(p, d, num, den, 0, len(dense) - 1, j)
    g = gf_gcd(a0, a1, p, ZZ)
    q0, q1 = gf_quo(a0, g, p, ZZ), gf_quo(a1, g, p, ZZ)
    jmin = min(j0, j1)
    cancelled = len(g) - 1
    reduced = d - cancelled - jmin
    return ReductionReport(
        p, d, _slots(q0, reduced), _slots(q1, reduced),
        reduced, cancelled, jmin)


def reduce(f: RationalMap) -> ReductionReport:
    """
    Map the coefficients of a normalized lift to F_p and cancel the
    common factor of the reduced forms.
    """
    if not f.normalized:
        raise NotNormalized(
            f'lift has minimum coefficient valuation {f.min_valuation}, '
            'normalize it first')
    field = f.field
    r0 = [field.residue(c) for c in f.f0.coeffs]
    r1 = [field.residue(c) for c in f.f1.coeffs]
    return reduce_residue_forms(r0, r1, f.degree, field.p)


def resultant_objective(f: RationalMap) -> Fraction:
    """Valuation of the resultant of the normalized lift."""
    fn = normalize(f)
    return fn.field.valuation(form_resultant(fn.f0, fn.f1))


def good_reduction(f: RationalMap) -> bool:
    """
    Reduced degree equals deg f; checked against v(Res) = 0 of the
    normalized lift.
    """
    fn = normalize(f)
    report = reduce(fn)
    by_degree = report.reduced_degree == fn.degree
    by_resultant = resultant_objective(fn) == 0
    if by_degree != by_resultant:
        raise CertificationError(
            f'reduced degree {report.reduced_degree} of a degree {fn.degree} '
            f'map disagrees with resultant valuation {resultant_objective(fn)}')
    return by_degree


# -----------------------------------------------------------------------------
# Potentially good reduction search
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class PGRStats:
    visited: int
    pruned: int
    best_objective: Fraction
    best_point: TypeIIPoint

    def to_dict(self):
        return {
            "visited": self.visited,
            "pruned": self.pruned,
            "best_objective": str(self.best_objective),
            "best_point": self.best_point.format(),
        }


@dataclass(frozen=True)
class GoodReductionFound:
    """
    Conjugating by h_S(z) = (z - beta) / alpha, v(alpha) = m, moves S to
    the Gauss point and gives good reduction. ``conjugacy`` is None when
    alpha needs the ramified symbol u with v(u) = 1/N.
    """
    point: TypeIIPoint
    conjugacy: Optional[Mobius]
    radius_denominator: int
    stats: PGRStats

    def to_dict(self):
        return {
            "verdict": "GoodReductionFound",
            "point": self.point.format(),
            "conjugacy": None if self.conjugacy is None else self.conjugacy.to_dict(),
            "alpha": f'u^{int(self.point.m * self.radius_denominator)}',
            "radius_denominator": self.radius_denominator,
            "stats": self.stats.to_dict(),
        }


@dataclass(frozen=True)
class NoneFoundUpTo:
    """Heuristic evidence only: nothing found in the explored window."""
    max_depth: int
    radius_denominator: int
    stats: PGRStats

    def to_dict(self):
        return {
            "verdict": "NoneFoundUpTo",
            "max_depth": self.max_depth,
            "radius_denominator": self.radius_denominator,
            "stats": self.stats.to_dict(),
        }


Verdict = Union[GoodReductionFound, NoneFoundUpTo]


def _conjugate_profile(fn: RationalMap, S: TypeIIPoint):
    """
    Valuations and residues of M_S F(adj(M_S) Z), M_S = [[1, -beta], [0, alpha]].

    Coefficient j of the first component is (A_j - beta B_j) alpha^j and
    of the second B_j alpha^(j+1), where (A, B) = F(z + beta w, w). Only
    v(alpha) = m enters, so alpha may be a formal power of u.
    """
    field, d = fn.field, fn.degree
    beta, m = S.center, S.m
    A, B = fn.f0.translate(beta), fn.f1.translate(beta)
    entries = [(a - beta * b, j * m) for j, (a, b) in enumerate(zip(A.coeffs, B.coeffs))]
    entries += [(b, (j + 1) * m) for j, b in enumerate(B.coeffs)]
    vals = [field.valuation(c) + shift if c else INFINITY for c, shift in entries]
    mu = min(vals)
    residues = [
        field.residue(field.unit_part(c)) if c and v == mu else 0
        for (c, _), v in zip(entries, vals)
    ]
    return mu, residues[:d + 1], residues[d + 1:]


def _objective(fn: RationalMap, vres: Fraction, S: TypeIIPoint):
    d = fn.degree
    mu, r0, r1 = _conjugate_profile(fn, S)
    objective = vres + (d * d + d) * S.m - 2 * d * mu
    report = reduce_residue_forms(r0, r1, d, fn.field.p)
    if (objective == 0) != (report.reduced_degree == d):
        raise CertificationError(
            f'at {S.format()} objective {objective} disagrees with reduced '
            f'degree {report.reduced_degree}')
    return objective


def _neighbors(S: TypeIIPoint, step: Fraction, max_depth: int) -> List[TypeIIPoint]:
    field = S.field
    out = []
    if S.m - step >= -max_depth:
        out.append(TypeIIPoint(field, S.center, S.m - step))
    if S.m + step <= max_depth:
        if S.m.denominator == 1:
            pw = field.uniformizer_power(int(S.m))
            for b in field.residue_digits():
                out.append(TypeIIPoint(field, S.center + b * pw, S.m + step))
        else:
            out.append(TypeIIPoint(field, S.center, S.m + step))
    return out


def pgr_search(f: RationalMap, max_depth: int = 3,
               radius_denominator: int = 2) -> Verdict:
    """
    Breadth-first search over disks S = D(beta; m), |m| <= max_depth,
    m in (1/N)Z, for a conjugacy moving S to the Gauss point with good
    reduction. The objective v(Res) of the normalized conjugated lift is
    minimized; moves that strictly increase it are pruned.
    :param f: map of degree > 1
    :param max_depth: bound on |m| and on the depth of centers
    :param radius_denominator: N, step of the radius exponents
    :return: GoodReductionFound or NoneFoundUpTo, both with statistics
    """
    if f.degree < 2:
        raise ValueError('pgr_search needs a map of degree > 1')
    fn = normalize(f)
    field = fn.field
    vres = field.valuation(form_resultant(fn.f0, fn.f1))
    step = Fraction(1, radius_denominator)

    start = TypeIIPoint.gauss(field)
    objectives = {start: _objective(fn, vres, start)}
    queue, seen = deque([start]), {start}
    visited = pruned = 0
    best_point, best = start, objectives[start]

    while queue:
        S = queue.popleft()
        visited += 1
        current = objectives[S]
        if current < best:
            best_point, best = S, current
        if current == 0:
            stats = PGRStats(visited, pruned, current, S)
            logging.info(f'Good reduction found at {S.format()} after {visited} disks')
            return GoodReductionFound(
                S, _certify(fn, S), radius_denominator, stats)
        for nb in _neighbors(S, step, max_depth):
            if nb in seen:
                continue
            seen.add(nb)
            objectives[nb] = _objective(fn, vres, nb)
            if objectives[nb] > current:
                pruned += 1
                continue
            queue.append(nb)

    logging.info(
        f'No good reduction up to depth {max_depth}, N={radius_denominator}: '
        f'visited {visited}, pruned {pruned}, best {best} at {best_point.format()}')
    return NoneFoundUpTo(
        max_depth, radius_denominator, PGRStats(visited, pruned, best, best_point))


def _certify(fn: RationalMap, S: TypeIIPoint) -> Optional[Mobius]:
    """Conjugacy over K for integral m, checked with good_reduction."""
    if S.m.denominator != 1:
        return None
    field = fn.field
    h = Mobius(field, 1, -S.center, 0, field.uniformizer_power(int(S.m)))
    if not good_reduction(conjugate(fn, h)):
        raise CertificationError(
            f'conjugate at {S.format()} does not have good reduction')
    return h
