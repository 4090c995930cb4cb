"""Shared builders for the test modules."""

from fractions import Fraction as F

from capkit.capacity import Capacity
from capkit.generators import corpus
from capkit.setalg import GroundSet

# acceptance outcome lines, printed by the terminal summary hook
RESULTS: list[str] = []

# n=3 sandwich pair on which every pivot candidate undercuts the lower
# capacity, although (1/5, 1/2, 3/10) fits between the two
STALL_MU = [0, F(1, 3), F(2, 3), F(5, 6), 1, 1, 1, 1]
STALL_NU = [0, F(1, 5), 0, F(1, 5), 0, F(1, 5), F(4, 5), 1]


def unanimity(ground, s):
    return Capacity(ground, [1 if a & s == s else 0 for a in ground.subsets()])


def small_corpus(sizes=(2, 3, 4), count=18, seed=0):
    out = []
    for n in sizes:
        out.extend(c for _, c in corpus(GroundSet.of_size(n), count, seed=f"{seed}:{n}"))
    return out
