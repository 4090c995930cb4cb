import random
from fractions import Fraction as F
from itertools import product

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from support import small_corpus

from capkit.capacity import ProbabilityMeasure, dominates, is_two_alternating
from capkit.choquet import (
    MeasurableFunction,
    choquet_integral,
    comonotone_permutation,
    dominated_extreme_points,
    indicator_counterexample,
    permutation_measure,
    random_function,
    subadditivity_search,
)
from capkit.errors import BudgetExceeded, InputError
from capkit.generators import random_probability, random_two_alternating
from capkit.setalg import AtomPermutation, GroundSet, all_permutations

CORPUS = small_corpus(count=12, seed=3)
TWO_ALT = [c for c in CORPUS if is_two_alternating(c)]

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_integral_examples(g2, seventenths):
    x = MeasurableFunction(g2, [2, 1])
    assert choquet_integral(seventenths, x) == F(17, 10)
    assert oracles.layer_cake(seventenths, x.values) == F(17, 10)
    for a in g2.subsets():
        assert choquet_integral(seventenths, MeasurableFunction.indicator(g2, a)) == seventenths[a]
    assert choquet_integral(seventenths, MeasurableFunction(g2, [F(-3, 4)] * 2)) == F(-3, 4)


def test_integral_rejects_foreign_function(seventenths):
    with pytest.raises(InputError):
        choquet_integral(seventenths, MeasurableFunction(GroundSet.of_size(3), [0, 0, 0]))
    with pytest.raises(InputError):
        MeasurableFunction(GroundSet.of_size(2), [1])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, len(CORPUS) - 1), st.lists(rationals, min_size=4, max_size=4))
def test_integral_matches_layer_cake(i, raw):
    c = CORPUS[i]
    x = MeasurableFunction(c.ground, raw[: c.n])
    assert choquet_integral(c, x) == oracles.layer_cake(c, x.values)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, len(CORPUS) - 1),
    st.lists(rationals, min_size=4, max_size=4),
    st.fractions(min_value=0, max_value=5, max_denominator=7),
    rationals,
)
def test_positive_homogeneity_and_translation(i, raw, lam, k):
    c = CORPUS[i]
    x = MeasurableFunction(c.ground, raw[: c.n])
    assert choquet_integral(c, x.affine(lam, k)) == lam * choquet_integral(c, x) + k


def test_probability_integral_is_expectation(g3):
    p = random_probability(g3, seed=11)
    x = MeasurableFunction(g3, [F(1, 3), -2, F(5, 2)])
    assert choquet_integral(p, x) == sum(w * v for w, v in zip(p.weights, x.values))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_indicator_identity_exhaustive(n):
    g = GroundSet.of_size(n)
    for c in (c for c in CORPUS if c.n == n):
        for a, b in product(g.subsets(), repeat=2):
            s = MeasurableFunction.indicator(g, a) + MeasurableFunction.indicator(g, b)
            assert choquet_integral(c, s) == c[a | b] + c[a & b]


def test_integral_monotone_in_capacity():
    rng = random.Random(5)
    for c in TWO_ALT:
        p = permutation_measure(c, AtomPermutation(range(c.n)))
        assert dominates(c, p)
        for _ in range(10):
            x = MeasurableFunction(c.ground, [abs(v) for v in random_function(c.ground, rng).values])
            assert choquet_integral(p, x) <= choquet_integral(c, x)


# ---------------------------------------------------------------- permutation measures


def test_permutation_measure_examples(seventenths, g3):
    p = permutation_measure(seventenths, AtomPermutation([0, 1]))
    assert p.weights == (F(7, 10), F(3, 10))
    p = permutation_measure(seventenths, AtomPermutation([1, 0]))
    assert p.weights == (F(3, 10), F(7, 10))
    q = random_probability(g3, seed=2)
    for pi in all_permutations(3):
        assert permutation_measure(q, pi) == q


def test_comonotone_permutation_examples(g2, g3):
    assert comonotone_permutation(MeasurableFunction(g2, [2, 1])).order == (0, 1)
    assert comonotone_permutation(MeasurableFunction(g2, [1, 2])).order == (1, 0)
    assert comonotone_permutation(MeasurableFunction(g3, [1, 1, 0])).order == (0, 1, 2)


def test_extreme_points_examples(seventenths, g3):
    pts = dominated_extreme_points(seventenths)
    assert len(pts) == 2
    assert {p.weights for p in pts.measures} == {(F(7, 10), F(3, 10)), (F(3, 10), F(7, 10))}
    q = random_probability(g3, seed=1)
    pts = dominated_extreme_points(q)
    assert len(pts) == 1 and pts.measures[0] == q and len(pts.permutations[0]) == 6
    one = GroundSet.of_size(1)
    pts = dominated_extreme_points(ProbabilityMeasure.from_weights(one, [1]))
    assert len(pts) == 1 and pts.measures[0].weights == (1,)


def test_extreme_points_tags_and_dedup():
    for c in TWO_ALT:
        pts = dominated_extreme_points(c)
        assert len({p.values for p in pts.measures}) == len(pts)
        assert sum(len(perms) for perms in pts.permutations) == len(list(all_permutations(c.n)))
        for p, perms in pts:
            for pi in perms:
                assert permutation_measure(c, pi) == p


def test_extreme_points_budget():
    g = GroundSet.of_size(9)
    p = ProbabilityMeasure.from_weights(g, [F(1, 9)] * 9)
    with pytest.raises(BudgetExceeded):
        dominated_extreme_points(p)


@pytest.mark.parametrize("c", TWO_ALT, ids=lambda c: f"n{c.n}")
def test_permutation_dominance_and_equality(c):
    rng = random.Random(c.n)
    xs = [random_function(c.ground, rng) for _ in range(8)]
    for pi in all_permutations(c.n):
        p = permutation_measure(c, pi)
        assert dominates(c, p)
        for x in xs:
            assert choquet_integral(c, x) >= choquet_integral(p, x)
    for x in xs:
        assert choquet_integral(c, x) == choquet_integral(permutation_measure(c, comonotone_permutation(x)), x)


# ---------------------------------------------------------------- subadditivity


def test_subadditivity_examples(seventenths, unanimity2, uniform2, g2):
    assert subadditivity_search(seventenths, 1000, seed=1) is None
    assert subadditivity_search(uniform2, 200, seed=1) is None
    found = subadditivity_search(unanimity2, 10, seed=0)
    assert found.from_indicators
    assert found.x.values == (1, 0) and found.y.values == (0, 1)
    assert (found.integral_of_sum, found.sum_of_integrals) == (1, 0)


def test_indicator_counterexample_requires_violation(seventenths):
    assert indicator_counterexample(seventenths, 1, 2) is None


def test_random_function_grid():
    rng = random.Random(0)
    g = GroundSet.of_size(5)
    for _ in range(200):
        for v in random_function(g, rng).values:
            assert -2 <= v <= 2 and v.denominator <= 8


def test_search_is_seeded():
    c = random_two_alternating(GroundSet.of_size(3), seed=9)
    assert subadditivity_search(c, 50, seed=2) == subadditivity_search(c, 50, seed=2)
