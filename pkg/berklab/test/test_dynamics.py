import random
from fractions import Fraction

import pytest

from berklab.berkovich import ClassicalPoint, TypeIIPoint, gauss_seminorm
from berklab.dynamics import (
    GoodReductionFound, Mobius, NoneFoundUpTo, RationalMap, clear_iterate_cache,
    compose, conjugate, good_reduction, iterate, map_typeII,
    non_exceptional_witness, normalize, pgr_search, reduce, resultant_objective
)
from berklab.dynamics import rational_map
from berklab.dynamics.rational_map import ITERATE_CACHE_MAPS
from berklab.errors import (
    DegenerateLift, DiskContainsZeroAndPole, NotNormalized, SingularMatrix
)
from berklab.valued import LaurentField, PAdicField, Poly

__status__ = "Test"

Q3 = PAdicField(3)
F2T = LaurentField(2)


def qmap(numerator, denominator, field=Q3):
    return RationalMap.from_fraction(
        Poly.parse(field, [str(c) for c in numerator]),
        Poly.parse(field, [str(c) for c in denominator]))


@pytest.fixture
def z2_plus_third():
    return qmap(["1/3", 0, 1], [1])


@pytest.fixture
def cubic():
    return qmap([0, "-1/3", 0, "1/3"], [1])


@pytest.fixture
def additive():
    return qmap(["0", "1", "1"], ["1"], field=F2T)


# -------------------------------------------------------------------------------
# Lifts, composition, iteration
# -------------------------------------------------------------------------------
def test_from_fraction_homogenizes(z2_plus_third):
    assert z2_plus_third.degree == 2
    assert z2_plus_third.f0.coeffs == (Fraction(1, 3), 0, 1)
    assert z2_plus_third.f1.coeffs == (1, 0, 0)
    assert z2_plus_third(ClassicalPoint.affine(Q3, 1)) == \
        ClassicalPoint.affine(Q3, Fraction(4, 3))
    assert z2_plus_third(ClassicalPoint.infinity(Q3)).is_infinity


def test_common_factor_is_rejected():
    with pytest.raises(DegenerateLift):
        qmap([0, 1], [0, 1])
    with pytest.raises(DegenerateLift):
        qmap([0], [0])


def test_normalize_tracks_scalar(z2_plus_third):
    fn = normalize(z2_plus_third)
    assert fn.normalized
    assert fn.scalar_valuation == -1
    assert fn.f0.coeffs == (1, 0, 3)
    assert fn.f1.coeffs == (3, 0, 0)
    assert normalize(fn) is fn


def test_iterate_of_power_map():
    clear_iterate_cache()
    square = qmap([0, 0, 1], [1])
    f3 = iterate(square, 3)
    assert f3.degree == 8
    assert f3.is_projectively_equal(qmap([0] * 8 + [1], [1]))
    assert iterate(square, 0).is_projectively_equal(RationalMap.identity(Q3))
    assert iterate(square, 1) is square
    with pytest.raises(ValueError):
        iterate(square, -1)


def test_iterate_matches_compose(cubic):
    clear_iterate_cache()
    f2 = iterate(cubic, 2)
    assert f2 == compose(cubic, cubic)
    # lift scalars of the original map accumulate as s_n = s (d^n - 1)/(d - 1)
    assert f2.scalar_valuation == 4 * normalize(cubic).scalar_valuation
    assert iterate(cubic, 3) == compose(cubic, f2)


def test_iterate_is_cache_independent(z2_plus_third):
    clear_iterate_cache()
    warm = iterate(z2_plus_third, 4)
    clear_iterate_cache()
    assert iterate(z2_plus_third, 4) == warm


def test_iterate_cache_is_bounded():
    clear_iterate_cache()
    maps = [qmap([c, 0, 1], [1]) for c in range(1, ITERATE_CACHE_MAPS + 3)]
    for f in maps:
        iterate(f, 3)
    assert len(rational_map._ITERATE_CACHE) == ITERATE_CACHE_MAPS
    assert maps[0] not in rational_map._ITERATE_CACHE
    assert maps[-1] in rational_map._ITERATE_CACHE
    assert sorted(rational_map._ITERATE_CACHE[maps[-1]]) == [2, 3]
    # a hit moves the map to the recent end
    iterate(maps[-ITERATE_CACHE_MAPS], 2)
    iterate(maps[0], 2)
    assert maps[-ITERATE_CACHE_MAPS] in rational_map._ITERATE_CACHE
    assert maps[-ITERATE_CACHE_MAPS + 1] not in rational_map._ITERATE_CACHE
    assert iterate(maps[0], 2) == compose(maps[0], maps[0])
    clear_iterate_cache()
    assert not rational_map._ITERATE_CACHE


def test_conjugate_by_translation():
    square = qmap([0, 0, 1], [1])
    h = Mobius.affine(Q3, 1, 1)  # z -> z + 1
    conj = conjugate(square, h)
    assert conj.is_projectively_equal(qmap([2, -2, 1], [1]))


def test_mobius():
    with pytest.raises(SingularMatrix):
        Mobius(Q3, 1, 2, 2, 4)
    h = Mobius(Q3, 2, 1, 1, 1)
    both = h @ h.inverse()
    assert both.b == 0 and both.c == 0 and both.a == both.d
    assert h(ClassicalPoint.infinity(Q3)) == ClassicalPoint.affine(Q3, 2)


# -------------------------------------------------------------------------------
# Reduction
# -------------------------------------------------------------------------------
def test_reduction_of_constant_type(z2_plus_third):
    with pytest.raises(NotNormalized):
        reduce(z2_plus_third)
    report = reduce(normalize(z2_plus_third))
    assert report.reduced_degree == 0
    assert report.infinity_drop == 2
    assert report.to_dict()["good_reduction"] is False
    assert resultant_objective(z2_plus_third) == 4
    assert not good_reduction(z2_plus_third)


def test_resultant_objective_cubic(cubic):
    assert resultant_objective(cubic) == 3
    assert not good_reduction(cubic)


def test_good_reduction_in_characteristic_p(additive):
    report = reduce(normalize(additive))
    assert report.reduced_degree == 2
    assert good_reduction(additive)
    assert resultant_objective(additive) == 0


# -------------------------------------------------------------------------------
# Search for potentially good reduction
# -------------------------------------------------------------------------------
def test_pgr_finds_scaled_power_map():
    verdict = pgr_search(qmap([0, 0, "1/3"], [1]))
    assert isinstance(verdict, GoodReductionFound)
    assert verdict.point == TypeIIPoint(Q3, 0, 1)
    assert verdict.conjugacy is not None
    assert good_reduction(conjugate(normalize(qmap([0, 0, "1/3"], [1])),
                                    verdict.conjugacy))
    assert verdict.to_dict()["alpha"] == "u^2"


def test_pgr_good_reduction_at_gauss(additive):
    verdict = pgr_search(additive)
    assert isinstance(verdict, GoodReductionFound)
    assert verdict.point.is_gauss
    assert verdict.stats.visited == 1


def test_pgr_none_found(z2_plus_third):
    verdict = pgr_search(z2_plus_third, max_depth=3, radius_denominator=2)
    assert isinstance(verdict, NoneFoundUpTo)
    assert verdict.stats.best_objective == 1
    assert verdict.stats.best_point == TypeIIPoint(Q3, 0, Fraction(-1, 2))
    assert verdict.to_dict()["verdict"] == "NoneFoundUpTo"


def test_pgr_rejects_degree_one():
    with pytest.raises(ValueError):
        pgr_search(qmap([1, 1], [1]))


# -------------------------------------------------------------------------------
# Action on type-II points and exceptional points
# -------------------------------------------------------------------------------
def test_map_typeII():
    square = qmap([0, 0, 1], [1])
    assert map_typeII(square, TypeIIPoint(Q3, 0, 1)) == TypeIIPoint(Q3, 0, 2)
    assert map_typeII(square, TypeIIPoint.gauss(Q3)).is_gauss
    inversion = qmap([1], [0, 1])
    assert map_typeII(inversion, TypeIIPoint(Q3, 0, 1)) == TypeIIPoint(Q3, 0, -1)


def test_map_typeII_translates_gauss(z2_plus_third):
    image = map_typeII(z2_plus_third, TypeIIPoint.gauss(Q3))
    assert image == TypeIIPoint(Q3, Fraction(1, 3), 0)


def test_map_typeII_needs_subdivision():
    with pytest.raises(DiskContainsZeroAndPole):
        map_typeII(qmap([0, 1], [-1, 1]), TypeIIPoint.gauss(Q3))


@pytest.mark.parametrize('point, expected', [
    ("1", True),
    ("0", False),
    ("inf", False),
])
def test_witness_for_power_map(point, expected):
    square = qmap([0, 0, 1], [1])
    assert non_exceptional_witness(square, ClassicalPoint.parse(Q3, point)) is expected


def test_witness_needs_degree_two():
    with pytest.raises(ValueError):
        non_exceptional_witness(RationalMap.identity(Q3), ClassicalPoint.affine(Q3, 1))


# -------------------------------------------------------------------------------
# Randomized identities, seeded
# -------------------------------------------------------------------------------
F2T_COEFFS = ["0", "1", "t", "1/t", "t+1", "(t+1)/t", "t^2", "1/t^2"]


def _random_coeff(rng, field, nonzero=False):
    while True:
        if field == F2T:
            text = rng.choice(F2T_COEFFS)
        else:
            num = rng.randint(-9, 9) * 3 ** rng.randint(0, 2)
            text = str(Fraction(num, rng.randint(1, 4) * 3 ** rng.randint(0, 2)))
        if text != "0" or not nonzero:
            return text


def _random_map(rng, field=Q3, degree=2):
    while True:
        numerator = [_random_coeff(rng, field) for _ in range(degree)]
        numerator.append(_random_coeff(rng, field, nonzero=True))
        denominator = [_random_coeff(rng, field) for _ in range(rng.randint(1, degree + 1))]
        if all(c == "0" for c in denominator):
            continue
        try:
            return qmap(numerator, denominator, field=field)
        except DegenerateLift:
            continue


def _cleared_pullback(phi, f):
    # phi(P/Q) Q^k for k = deg phi
    P, Q = f.f0.affine(), f.f1.affine()
    k = phi.degree
    one = Poly.monomial(phi.field, 0)
    p_pow, q_pow = [one], [one]
    for _ in range(k):
        p_pow.append(p_pow[-1] * P)
        q_pow.append(q_pow[-1] * Q)
    total = None
    for i, c in enumerate(phi.coeffs):
        if c:
            term = (p_pow[i] * q_pow[k - i]).scale(c)
            total = term if total is None else total + term
    return total


@pytest.mark.parametrize('field', [Q3, F2T])
def test_good_reduction_criteria_agree_random(field):
    rng = random.Random(2024)
    seen = set()
    for _ in range(60):
        f = _random_map(rng, field, rng.randint(2, 3))
        by_degree = reduce(normalize(f)).reduced_degree == f.degree
        by_resultant = resultant_objective(f) == 0
        assert good_reduction(f) == by_degree == by_resultant
        seen.add(by_degree)
    assert seen == {True, False}


def test_unit_conjugation_keeps_reduced_degree_random():
    rng = random.Random(99)
    for _ in range(60):
        f = _random_map(rng, Q3, rng.randint(2, 3))
        while True:
            a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
            if (a * d - b * c) % 3:
                break
        h = Mobius(Q3, a, b, c, d)
        before = reduce(normalize(f)).reduced_degree
        assert reduce(normalize(conjugate(f, h))).reduced_degree == before


@pytest.mark.parametrize('field', [Q3, F2T])
def test_iterate_is_additive_random(field):
    rng = random.Random(4)
    for m, n in [(2, 1), (1, 2), (2, 2), (3, 1)]:
        f = _random_map(rng, field, 2)
        clear_iterate_cache()
        combined = compose(iterate(f, m), iterate(f, n))
        whole = iterate(f, m + n)
        assert combined.degree == 2 ** (m + n)
        assert combined.is_projectively_equal(whole)
        assert combined.scalar_valuation == whole.scalar_valuation


def test_map_typeII_matches_seminorms_random():
    rng = random.Random(8)
    checked = 0
    while checked < 40:
        f = _random_map(rng, Q3, rng.randint(2, 3))
        S = TypeIIPoint(Q3, Fraction(rng.randint(-4, 4), rng.choice([1, 3])),
                        rng.randint(-1, 2))
        try:
            image = map_typeII(f, S)
        except DiskContainsZeroAndPole:
            continue
        Q = f.f1.affine()
        for _ in range(3):
            phi = Poly.from_coeffs(
                Q3, [Fraction(rng.randint(-9, 9), rng.choice([1, 3, 9]))
                     for _ in range(rng.randint(1, 3))] + [Fraction(1, rng.choice([1, 3]))])
            expected = gauss_seminorm(_cleared_pullback(phi, f), S) \
                - phi.degree * gauss_seminorm(Q, S)
            assert gauss_seminorm(phi, image) == expected
        checked += 1
