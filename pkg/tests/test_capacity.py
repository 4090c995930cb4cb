from fractions import Fraction as F

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from support import small_corpus, unanimity

from capkit.capacity import (
    BUDGET_ENV,
    Capacity,
    ProbabilityMeasure,
    as_probability,
    classify,
    conjugate,
    dominates,
    from_mobius,
    is_additive,
    is_infinity_alternating,
    is_infinity_monotone,
    is_k_alternating,
    is_k_monotone,
    is_two_alternating,
    is_two_monotone,
    mobius,
    validate,
)
from capkit.errors import BudgetExceeded, InputError, ValidationError
from capkit.generators import random_plausibility
from capkit.setalg import GroundSet

CORPUS = small_corpus(count=12)


# ---------------------------------------------------------------- validate


def test_validate_examples(g2, uniform2):
    assert validate(g2, [0, F(1, 2), F(1, 2), 1]) == uniform2
    with pytest.raises(ValidationError) as err:
        validate(g2, [0, F(1, 2), F(1, 2), F(9, 10)])
    assert err.value.axiom == "C1"
    with pytest.raises(ValidationError) as err:
        validate(g2, [0, F(3, 4), F(1, 4), F(1, 2)])
    assert err.value.axiom == "C1" and err.value.witness == (0b11,)


def test_validate_monotonicity_and_range(g3):
    with pytest.raises(ValidationError) as err:
        validate(g3, [0, F(1, 2), 0, F(1, 4), 0, 0, 0, 1])
    assert err.value.axiom == "C2"
    a, b = err.value.witness
    assert a & b == a and a != b
    with pytest.raises(ValidationError) as err:
        validate(g3, [0, F(3, 2), 0, 1, 0, 1, 1, 1])
    assert err.value.axiom == "range"
    with pytest.raises(InputError):
        validate(g3, [0, 1])
    with pytest.raises(InputError):
        validate(GroundSet.of_size(1), [0, 1.0])


def test_probability_certificate(g3):
    p = ProbabilityMeasure.from_weights(g3, [F(1, 2), F(1, 3), F(1, 6)])
    assert p[0b101] == F(2, 3)
    with pytest.raises(ValidationError):
        ProbabilityMeasure(g3, [0, F(1, 2), F(1, 2), 1, 0, 1, 1, 1])
    assert as_probability(Capacity(g3, p.values)) == p


# ---------------------------------------------------------------- 2-orders


def test_two_alternating_examples(seventenths, unanimity2, uniform2):
    assert is_two_alternating(uniform2)
    assert is_two_alternating(seventenths)
    result = is_two_alternating(unanimity2)
    assert not result
    assert result.witness.sets == (0b01, 0b10)
    assert (result.witness.lhs, result.witness.rhs) == (1, 0)


def test_two_monotone_examples(seventenths, unanimity2, uniform2):
    assert is_two_monotone(uniform2)
    assert is_two_monotone(unanimity2)
    result = is_two_monotone(seventenths)
    assert not result
    assert result.witness.sets == (0b01, 0b10)
    assert (result.witness.lhs, result.witness.rhs) == (1, F(7, 5))


@pytest.mark.parametrize("c", CORPUS, ids=lambda c: f"n{c.n}")
def test_two_order_checkers_match_oracle(c):
    assert bool(is_two_alternating(c)) == oracles.two_alternating(c)
    assert bool(is_two_monotone(c)) == oracles.two_monotone(c)
    assert is_additive(c) == oracles.additive(c)


# ---------------------------------------------------------------- k-orders


def test_k_order_examples(g3, uniform2, seventenths):
    p3 = ProbabilityMeasure.from_weights(g3, [F(1, 5), F(3, 10), F(1, 2)])
    assert is_k_alternating(p3, 3)
    assert is_k_monotone(p3, 4)
    assert is_k_alternating(random_plausibility(g3, seed=4), 3)
    assert is_k_monotone(unanimity(g3, 0b111), 3)
    assert not is_k_monotone(seventenths, 2)


def test_dual_unanimity_is_two_alternating(g3):
    # 1 on every non-empty set: a plausibility, so the pair scan must pass
    dual = conjugate(unanimity(g3, 0b111))
    assert dual.values == tuple([F(0)] + [F(1)] * 7)
    assert is_k_alternating(dual, 2)
    assert is_infinity_alternating(dual)


def test_k_two_agrees_with_pair_checker():
    for c in CORPUS:
        assert bool(is_k_alternating(c, 2)) == bool(is_two_alternating(c))
        assert bool(is_k_monotone(c, 2)) == bool(is_two_monotone(c))


@pytest.mark.parametrize("c", [c for c in CORPUS if c.n <= 3], ids=lambda c: f"n{c.n}")
def test_k_order_multiset_reduction_matches_ordered_tuples(c):
    for k in (2, 3):
        assert bool(is_k_alternating(c, k)) == oracles.k_alternating(c, k)
        assert bool(is_k_monotone(c, k)) == oracles.k_monotone(c, k)


def test_budget_guard(monkeypatch, g3):
    c = unanimity(g3, 0b111)
    monkeypatch.setenv(BUDGET_ENV, "100")
    with pytest.raises(BudgetExceeded) as err:
        is_k_alternating(c, 3)
    assert err.value.count == 512
    assert "512" in str(err.value)
    with pytest.raises(InputError):
        is_k_monotone(c, 1)


# ---------------------------------------------------------------- Moebius


def test_mobius_examples(g2, g3, seventenths, uniform2):
    assert mobius(uniform2).mass == (0, F(1, 2), F(1, 2), 0)
    m = mobius(unanimity(g3, 0b110))
    assert m.support() == [0b110] and m[0b110] == 1
    # direct inversion: m{1} = 7/10, m{2} = 7/10, m{1,2} = 1 - 7/10 - 7/10 + 0
    assert mobius(seventenths).mass == (0, F(7, 10), F(7, 10), F(-2, 5))


@pytest.mark.parametrize("c", CORPUS, ids=lambda c: f"n{c.n}")
def test_mobius_matches_direct_formula_and_roundtrips(c):
    m = mobius(c)
    direct = oracles.mobius_direct(c)
    for a, v in oracles.as_dict(c).items():
        mask = sum(1 << i for i in a)
        assert m[mask] == direct[a]
    assert m.zeta() == c.values
    assert sum(m.mass) == 1 and m[0] == 0
    assert from_mobius(c.ground, m.mass) == c


def test_infinity_examples(seventenths, unanimity2, uniform2):
    assert is_infinity_monotone(uniform2) and is_infinity_alternating(uniform2)
    assert is_infinity_monotone(unanimity2)
    assert not is_infinity_monotone(seventenths)
    assert is_infinity_alternating(seventenths)
    assert mobius(conjugate(seventenths)).mass == (0, F(3, 10), F(3, 10), F(2, 5))
    assert not is_infinity_alternating(unanimity2)


# ---------------------------------------------------------------- duality, order


def test_conjugate_examples(seventenths, uniform2):
    assert conjugate(uniform2) == uniform2
    assert conjugate(seventenths).values == (0, F(3, 10), F(3, 10), 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(CORPUS) - 1))
def test_conjugate_is_involution(i):
    c = CORPUS[i]
    assert conjugate(conjugate(c)) == c


def test_dominates_examples(seventenths, g2):
    assert dominates(seventenths, seventenths)
    assert dominates(seventenths, conjugate(seventenths))
    assert not dominates(conjugate(seventenths), seventenths)
    with pytest.raises(InputError):
        dominates(seventenths, unanimity(GroundSet.of_size(3), 1))


def test_dominance_antisymmetry():
    for a in CORPUS[:20]:
        for b in CORPUS[:20]:
            if a.ground == b.ground and dominates(a, b) and dominates(b, a):
                assert a == b


def test_complement_bounds():
    for c in CORPUS:
        full = c.ground.full
        sums = [c[a] + c[full ^ a] for a in c.ground.subsets()]
        if is_two_alternating(c):
            assert min(sums) >= 1
        if is_two_monotone(c):
            assert max(sums) <= 1


# ---------------------------------------------------------------- classify


def test_classify_examples(uniform2, seventenths, unanimity2):
    r = classify(uniform2, 4)
    assert r.is_probability and r.alternating_infinite and r.monotone_infinite
    assert r.alternating_order == 4 and r.monotone_order == 4

    r = classify(seventenths, 3)
    assert r.alternating_infinite and r.alternating_order == 3
    assert r.monotone[2] is False and r.monotone_order is None
    assert not r.is_probability
    assert r.witnesses["monotone:2"].sets == (1, 2)

    r = classify(unanimity2, 3)
    assert r.monotone_infinite and r.monotone_order == 3
    assert r.alternating[2] is False and not r.is_probability
    assert r.witnesses["alternating:2"].sets == (1, 2)


def test_classify_marks_unchecked_orders(monkeypatch):
    c = small_corpus(sizes=(4,), count=6)[1]
    monkeypatch.setenv(BUDGET_ENV, str(16**3))
    r = classify(c, 4)
    if not r.alternating_infinite and r.alternating[3]:
        assert r.alternating[4] is None
        assert any("unchecked" in note for note in r.notes)
    assert all(v is not None for k, v in r.alternating.items() if k <= 3)


@pytest.mark.parametrize("c", CORPUS, ids=lambda c: f"n{c.n}")
def test_classification_invariants(c):
    r = classify(c, 3)
    for verdicts in (r.alternating, r.monotone):
        ks = sorted(verdicts)
        for k0, k1 in zip(ks, ks[1:]):
            if verdicts[k0] is False:
                assert verdicts[k1] is False
    assert r.is_probability == (r.alternating[2] and r.monotone[2])
    singleton_only = all(x == 0 for a, x in enumerate(mobius(c).mass) if a & (a - 1))
    assert r.is_probability == singleton_only


def test_classify_rejects_low_order(uniform2):
    with pytest.raises(InputError):
        classify(uniform2, 1)
