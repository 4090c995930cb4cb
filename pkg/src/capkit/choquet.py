"""Choquet integration and the permutation (marginal) measures of a capacity."""

from __future__ import annotations

import math
import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .capacity import Capacity, ProbabilityMeasure, _scale, to_fraction
from .errors import BudgetExceeded, InputError, PreconditionError, TheoremViolation
from .setalg import AtomPermutation, GroundSet, all_permutations, prefix_chain

DEFAULT_PERMUTATION_LIMIT = 8


@dataclass(frozen=True)
class MeasurableFunction:
    """A real function on the atoms, one exact value per atom."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __init__(self, ground: GroundSet, values: Iterable):
        vals = tuple(to_fraction(v) for v in values)
        if len(vals) != ground.n:
            raise InputError(f"function needs {ground.n} values, got {len(vals)}")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_scaled", None)

    def scaled(self) -> tuple[list[int], int]:
        """``(ints, d)`` with ``values[i] == ints[i] / d``."""
        if self._scaled is None:
            object.__setattr__(self, "_scaled", _scale(self.values))
        return self._scaled

    @classmethod
    def indicator(cls, ground: GroundSet, a: int) -> "MeasurableFunction":
        return cls(ground, [1 if a >> i & 1 else 0 for i in range(ground.n)])

    def __add__(self, other: "MeasurableFunction") -> "MeasurableFunction":
        if other.ground != self.ground:
            raise InputError("functions live on different ground sets")
        return MeasurableFunction(self.ground, [x + y for x, y in zip(self.values, other.values)])

    def affine(self, scale, shift=0) -> "MeasurableFunction":
        scale, shift = to_fraction(scale), to_fraction(shift)
        return MeasurableFunction(self.ground, [scale * x + shift for x in self.values])


def choquet_integral(c: Capacity, x: MeasurableFunction) -> Fraction:
    """Asymmetric Choquet integral of ``x`` with respect to ``c``.

    With distinct values ``v_1 > ... > v_m`` and upper level sets
    ``L_j = {x >= v_j}`` this is ``v_m + sum_{j<m} (v_j - v_{j+1}) c(L_j)``.
    """
    if x.ground != c.ground:
        raise InputError("function and capacity live on different ground sets")
    s, dc = c.scaled()
    xs, dx = x.scaled()
    order = sorted(range(len(xs)), key=xs.__getitem__, reverse=True)
    total = 0
    level = 0
    for atom, nxt in zip(order, order[1:]):
        level |= 1 << atom
        step = xs[atom] - xs[nxt]
        if step:
            total += step * s[level]
    total += xs[order[-1]] * dc
    return Fraction(total, dx * dc)


def comonotone_permutation(x: MeasurableFunction) -> AtomPermutation:
    """Atoms sorted by non-increasing value; ties by ascending atom index."""
    return AtomPermutation(sorted(range(len(x.values)), key=lambda i: (-x.values[i], i)))


def permutation_measure(c: Capacity, pi: AtomPermutation) -> ProbabilityMeasure:
    """Probability whose atom weights are the increments of ``c`` along ``pi``'s prefix chain."""
    if len(pi) != c.n:
        raise InputError(f"permutation of {len(pi)} atoms for a {c.n}-atom capacity")
    chain = prefix_chain(pi)
    weights = [Fraction(0)] * c.n
    for i, atom in enumerate(pi.order):
        weights[atom] = c.values[chain[i + 1]] - c.values[chain[i]]
    if any(w < 0 for w in weights):
        raise PreconditionError("negative increment; input is not monotone")
    return ProbabilityMeasure.from_weights(c.ground, weights)


@dataclass(frozen=True)
class PermutationMeasureSet:
    """Distinct permutation measures, each with the permutations producing it."""

    measures: tuple[ProbabilityMeasure, ...]
    permutations: tuple[tuple[AtomPermutation, ...], ...]

    def __len__(self):
        return len(self.measures)

    def __iter__(self):
        return iter(zip(self.measures, self.permutations))


def dominated_extreme_points(c: Capacity, max_atoms: int = DEFAULT_PERMUTATION_LIMIT) -> PermutationMeasureSet:
    if c.n > max_atoms:
        raise BudgetExceeded(
            f"{c.n}! = {math.factorial(c.n)} permutations exceeds the {max_atoms}-atom limit",
            math.factorial(c.n),
            math.factorial(max_atoms),
        )
    found: dict[tuple, list[AtomPermutation]] = {}
    measures: dict[tuple, ProbabilityMeasure] = {}
    for pi in all_permutations(c.n):
        p = permutation_measure(c, pi)
        key = p.values
        if key not in found:
            found[key] = []
            measures[key] = p
        found[key].append(pi)
    keys = list(found)
    return PermutationMeasureSet(
        tuple(measures[k] for k in keys), tuple(tuple(found[k]) for k in keys)
    )


# ------------------------------------------------------- subadditivity


@dataclass(frozen=True)
class SubadditivityCounterexample:
    x: MeasurableFunction
    y: MeasurableFunction
    integral_of_sum: Fraction
    sum_of_integrals: Fraction
    from_indicators: bool


@lru_cache(maxsize=None)
def _grid(max_denominator: int, bound: int, q: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(p, q) for p in range(-bound * q, bound * q + 1))


def random_function(
    ground: GroundSet, rng: random.Random, max_denominator: int = 8, bound: int = 2
) -> MeasurableFunction:
    """Values in ``[-bound, bound]`` with a uniform denominator ``<= max_denominator``
    and a uniform numerator."""
    vals = []
    for _ in range(ground.n):
        q = rng.randint(1, max_denominator)
        vals.append(rng.choice(_grid(max_denominator, bound, q)))
    return MeasurableFunction(ground, vals)


def subadditivity_search(c: Capacity, budget: int = 1000, seed: int = 0) -> SubadditivityCounterexample | None:
    """Look for ``X, Y`` with ``int(X+Y) dc > int X dc + int Y dc``.

    All indicator pairs are tried first, then ``budget`` random pairs.
    ``None`` means nothing was found, which is not a proof.
    """
    ground = c.ground
    v = c.values
    for a in ground.subsets():
        for b in ground.subsets():
            lhs = v[a | b] + v[a & b]
            rhs = v[a] + v[b]
            if lhs > rhs:
                found = indicator_counterexample(c, a, b)
                if found is None:
                    raise TheoremViolation(
                        "indicator identity failed: integral of 1_A + 1_B is not c(A|B) + c(A&B)"
                    )
                return found
    rng = random.Random(seed)
    for _ in range(budget):
        x = random_function(ground, rng)
        y = random_function(ground, rng)
        lhs = choquet_integral(c, x + y)
        rhs = choquet_integral(c, x) + choquet_integral(c, y)
        if lhs > rhs:
            return SubadditivityCounterexample(x, y, lhs, rhs, False)
    return None


def indicator_counterexample(c: Capacity, a: int, b: int) -> SubadditivityCounterexample | None:
    """The indicator pair ``(1_A, 1_B)`` evaluated through the integral."""
    x = MeasurableFunction.indicator(c.ground, a)
    y = MeasurableFunction.indicator(c.ground, b)
    lhs = choquet_integral(c, x + y)
    rhs = choquet_integral(c, x) + choquet_integral(c, y)
    if lhs > rhs:
        return SubadditivityCounterexample(x, y, lhs, rhs, True)
    return None
