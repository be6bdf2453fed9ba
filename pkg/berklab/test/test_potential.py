from fractions import Fraction

import pytest

from berklab.berkovich import (
    Chart, ClassicalPoint, FiniteTree, TypeIIPoint, unit_tree
)
from berklab.dynamics import RationalMap, iterate, normalize
from berklab.errors import (
    DiskContainsZeroAndPole, ExceptionalBasePoint, IdenticallyEqual,
    InsufficientResolution, ToleranceUnreachable
)
from berklab.potential import (
    apriori_sequence, apriori_term, chordal_can, edge_breakpoints, green,
    iterations_for, t_bounds, t_h, t_target, tree_laplacian, wedge
)
from berklab.valued import PAdicField, Poly

__status__ = "Test"

Q3 = PAdicField(3)
GAUSS = TypeIIPoint.gauss(Q3)


def qmap(numerator, denominator):
    return RationalMap.from_fraction(
        Poly.parse(Q3, [str(c) for c in numerator]),
        Poly.parse(Q3, [str(c) for c in denominator]))


def disk(center, m):
    return TypeIIPoint(Q3, Fraction(center), Fraction(m))


@pytest.fixture
def z2_plus_third():
    return qmap(["1/3", 0, 1], [1])


@pytest.fixture
def cubic():
    return qmap([0, "-1/3", 0, "1/3"], [1])


# -------------------------------------------------------------------------------
# Potentials of lifts
# -------------------------------------------------------------------------------
def test_t_h_values(z2_plus_third):
    assert t_h(z2_plus_third, GAUSS) == 1
    assert t_h(z2_plus_third, disk(0, 1)) == 1
    assert t_h(z2_plus_third, disk(0, -1)) == 0


def test_t_h_ignores_normalization(z2_plus_third, cubic):
    for f in (z2_plus_third, cubic):
        fn = normalize(f)
        assert fn.scalar_valuation == -1
        for S in unit_tree(Q3, 1, infinity_side=True).ordered:
            assert t_h(fn, S) == t_h(f, S)


@pytest.mark.parametrize('point', ["D(0; 0)", "D(0; -1)", "D(2; 1)", "D(1/3; 1)"])
def test_t_h_charts_agree(z2_plus_third, point):
    S = TypeIIPoint.parse(Q3, point)
    assert t_h(z2_plus_third, S, Chart.INVERTED) == t_h(z2_plus_third, S)


def test_t_target_of_constant():
    assert t_target(ClassicalPoint.affine(Q3, Fraction(1, 3)), GAUSS) == 1
    assert t_target(ClassicalPoint.infinity(Q3), GAUSS) == 0
    assert t_target(RationalMap.identity(Q3), disk(0, -2)) == 0


def test_chordal_can(z2_plus_third):
    identity = RationalMap.identity(Q3)
    assert chordal_can(z2_plus_third, identity, GAUSS) == 0
    for S in unit_tree(Q3, 2).ordered:
        value = chordal_can(z2_plus_third, identity, S)
        assert value <= 0
        assert chordal_can(normalize(z2_plus_third), identity, S) == value


def test_wedge_of_identical_maps(z2_plus_third):
    with pytest.raises(IdenticallyEqual):
        wedge(z2_plus_third, z2_plus_third)
    W = wedge(z2_plus_third, RationalMap.identity(Q3))
    assert W.affine() == Poly.parse(Q3, ["1/3", "-1", "1"])


# -------------------------------------------------------------------------------
# Green function
# -------------------------------------------------------------------------------
def test_t_bounds_and_iterations(z2_plus_third, cubic):
    assert t_bounds(z2_plus_third) == (-3, 1)
    assert t_bounds(cubic) == (-2, 1)
    assert iterations_for(z2_plus_third, Fraction(1, 1000)) == (12, Fraction(3, 4096))
    assert iterations_for(cubic, Fraction(1, 100)) == (5, Fraction(1, 243))
    with pytest.raises(ToleranceUnreachable):
        iterations_for(cubic, Fraction(1, 10 ** 30), max_iterations=5)


def test_green_constant_on_unit_tree(z2_plus_third):
    for S in unit_tree(Q3, 2).ordered:
        approx = green(z2_plus_third, S, Fraction(1, 1000))
        assert approx.value == Fraction(1, 2)
        assert approx.strategy == "series"
        assert approx.n_used == 12


def test_green_strategies_agree(z2_plus_third):
    series = green(z2_plus_third, GAUSS, Fraction(1, 4), strategy="series",
                   cross_check=True)
    direct = green(z2_plus_third, GAUSS, Fraction(1, 4), strategy="direct")
    assert series.value == direct.value == Fraction(1, 2)
    assert direct.n_used == 4
    assert direct.to_dict()["strategy"] == "direct"


def test_green_auto_switches_to_direct():
    # z^2 / (3z - 3) has a zero and a pole in the unit disk
    f = qmap([0, 0, 1], [-3, 3])
    with pytest.raises(DiskContainsZeroAndPole):
        green(f, GAUSS, Fraction(1, 10), strategy="series")
    approx = green(f, GAUSS, Fraction(1, 10))
    assert approx.strategy == "direct"
    assert approx.n_used > 1
    assert approx.value == green(f, GAUSS, Fraction(1, 10), strategy="direct").value


@pytest.mark.parametrize('point, expected', [
    ("D(0; 0)", Fraction(1, 2)),
    ("D(0; 1)", Fraction(1, 6)),
    ("D(2; 1)", Fraction(1, 6)),
    ("D(4; 2)", Fraction(1, 18)),
])
def test_green_within_bound(cubic, point, expected):
    approx = green(cubic, TypeIIPoint.parse(Q3, point), Fraction(1, 100))
    assert abs(approx.value - expected) <= approx.bound


def test_green_argument_checks(z2_plus_third):
    with pytest.raises(ValueError):
        green(RationalMap.identity(Q3), GAUSS, Fraction(1, 10))
    with pytest.raises(ValueError):
        green(z2_plus_third, GAUSS, 0)
    with pytest.raises(ValueError):
        green(z2_plus_third, GAUSS, Fraction(1, 10), strategy="fastest")


# -------------------------------------------------------------------------------
# Laplacian
# -------------------------------------------------------------------------------
def _log_plus(S):
    return max(Fraction(0), -S.m)


def test_edge_breakpoints():
    assert edge_breakpoints(lambda t: 2 * t + 1, Fraction(0), Fraction(3)) == []
    kink = Fraction(1, 3)
    assert edge_breakpoints(lambda t: abs(t - kink), Fraction(0), Fraction(1)) == [kink]
    with pytest.raises(InsufficientResolution):
        edge_breakpoints(lambda t: t * t, Fraction(0), Fraction(1), max_depth=2)


def test_laplacian_of_log_plus_from_values():
    tree = FiniteTree.from_points([disk(0, -1), GAUSS, disk(0, 2)])
    values = {S: _log_plus(S) for S in tree.ordered}
    mu = tree_laplacian(values, tree)
    assert mu.total == 0
    assert mu.mass(GAUSS) == 1
    assert mu.mass(disk(0, -1)) == -1
    assert mu.mass(disk(0, 2)) == 0


def test_laplacian_refines_at_breakpoints():
    tree = FiniteTree.from_points([disk(0, -1), disk(0, 2)])
    assert GAUSS not in tree
    mu = tree_laplacian(_log_plus, tree)
    assert GAUSS in mu.tree
    assert tree.is_subtree_of(mu.tree)
    assert mu.mass(GAUSS) == 1
    assert mu.mass(disk(0, -1)) == -1


def test_laplacian_missing_value():
    tree = unit_tree(Q3, 1)
    with pytest.raises(InsufficientResolution):
        tree_laplacian({GAUSS: Fraction(0)}, tree)


def test_laplacian_checks_supplied_midpoints():
    bent = FiniteTree.from_points([disk(0, -1), disk(0, 2)])
    values = {S: _log_plus(S) for S in bent.ordered}
    values[disk(0, Fraction(1, 2))] = _log_plus(disk(0, Fraction(1, 2)))
    with pytest.raises(InsufficientResolution):
        tree_laplacian(values, bent)
    # within atol the kink is accepted and the mapping taken as affine
    relaxed = tree_laplacian(values, bent, atol=Fraction(1, 2))
    assert relaxed.mass(disk(0, -1)) == Fraction(-1, 3)

    straight = FiniteTree.from_points([disk(0, -1), GAUSS])
    values = {S: _log_plus(S) for S in straight.ordered}
    values[disk(0, Fraction(-1, 2))] = Fraction(1, 2)
    assert tree_laplacian(values, straight).mass(GAUSS) == 1


def test_laplacian_of_green_is_exact(cubic):
    # the truncation shifts g by a constant on this tree
    tree = unit_tree(Q3, 1)
    values = {S: green(cubic, S, Fraction(1, 1000)).value for S in tree.ordered}
    mu = tree_laplacian(values, tree)
    assert mu.mass(GAUSS) == -1
    for b in range(3):
        assert mu.mass(disk(b, 1)) == Fraction(1, 3)


# -------------------------------------------------------------------------------
# A priori sequence
# -------------------------------------------------------------------------------
def test_apriori_vanishes_on_unit_tree(z2_plus_third):
    samples = unit_tree(Q3, 1).ordered
    terms = apriori_sequence(z2_plus_third, RationalMap.identity(Q3), samples, 4,
                             n_workers=2)
    assert [t.n for t in terms] == [1, 2, 3, 4]
    assert all(t.value == 0 for t in terms)
    assert all(t.argmax == GAUSS for t in terms)
    assert [t.normalizer for t in terms] == [3, 5, 9, 17]


def test_apriori_terms_are_nonpositive(cubic):
    samples = unit_tree(Q3, 2).ordered
    for n in (1, 2):
        term = apriori_term(cubic, RationalMap.identity(Q3), samples, n)
        assert term.value <= 0
        assert term.normalizer == 3 ** n + 1


def test_apriori_validation(z2_plus_third):
    identity = RationalMap.identity(Q3)
    with pytest.raises(ValueError):
        apriori_sequence(identity, identity, [GAUSS], 2)
    with pytest.raises(ValueError):
        apriori_sequence(z2_plus_third, identity, [], 2)
    with pytest.raises(ValueError):
        apriori_sequence(z2_plus_third, identity, [disk(0, -1)], 2, region=GAUSS)
    square = qmap([0, 0, 1], [1])
    with pytest.raises(ExceptionalBasePoint):
        apriori_sequence(square, ClassicalPoint.affine(Q3, 0), [GAUSS], 2)


def test_apriori_skips_identical_iterate():
    square = qmap([0, 0, 1], [1])
    with pytest.raises(IdenticallyEqual):
        apriori_sequence(square, square, [GAUSS], 2, n_workers=1)
    terms = apriori_sequence(square, square, [GAUSS], 2, skip_identical=True,
                             n_workers=1)
    assert [t.n for t in terms] == [2]
    assert iterate(square, 2).degree == 4


@pytest.mark.slow
def test_green_iterates_are_cauchy(z2_plus_third):
    points = [TypeIIPoint.parse(Q3, t) for t in
              ("D(0; 0)", "D(1; 1)", "D(2; 2)", "D(0; 3/2)", "D(5; 2)")]
    lower, upper = t_bounds(z2_plus_third)
    M = max(abs(lower), abs(upper))
    for S in points:
        values = [t_h(iterate(z2_plus_third, n), S) / 2 ** n for n in range(1, 9)]
        for n, (a, b) in enumerate(zip(values, values[1:]), start=1):
            assert abs(a - b) <= Fraction(M, 2 ** n)
        for tolerance in (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)):
            green(z2_plus_third, S, tolerance, cross_check=True)


@pytest.mark.slow
def test_apriori_desk_check(z2_plus_third):
    samples = unit_tree(Q3, 2).ordered
    terms = apriori_sequence(z2_plus_third, RationalMap.identity(Q3), samples, 8)
    assert all(t.value <= 0 for t in terms)
    assert abs(terms[-1].value) <= Fraction(1, 20)
