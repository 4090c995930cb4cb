"""Brute-force reference implementations.

These deliberately avoid the library's bitmask tricks and integer scaling:
sets are frozensets of atom indices, values are looked up through a dict,
and every quantifier is enumerated over ordered tuples.
"""

from fractions import Fraction
from itertools import chain, combinations, product


def powerset(n):
    atoms = range(n)
    return [frozenset(s) for s in chain.from_iterable(combinations(atoms, r) for r in range(n + 1))]


def as_dict(c):
    """frozenset -> value, reading the table through explicit atom lists."""
    out = {}
    for mask, v in enumerate(c.values):
        out[frozenset(i for i in range(c.n) if mask >> i & 1)] = v
    return out


def two_alternating(c):
    d = as_dict(c)
    return all(d[a | b] + d[a & b] <= d[a] + d[b] for a in d for b in d)


def two_monotone(c):
    d = as_dict(c)
    return all(d[a | b] + d[a & b] >= d[a] + d[b] for a in d for b in d)


def _alt_sum(d, sets, combine):
    total = Fraction(0)
    for r in range(1, len(sets) + 1):
        for idx in combinations(range(len(sets)), r):
            acc = sets[idx[0]]
            for i in idx[1:]:
                acc = combine(acc, sets[i])
            total += (-1) ** (r + 1) * d[acc]
    return total


def k_alternating(c, k):
    d = as_dict(c)
    for sets in product(list(d), repeat=k):
        inter = frozenset.intersection(*sets)
        if d[inter] > _alt_sum(d, sets, frozenset.union):
            return False
    return True


def k_monotone(c, k):
    d = as_dict(c)
    for sets in product(list(d), repeat=k):
        uni = frozenset.union(*sets)
        if d[uni] < _alt_sum(d, sets, frozenset.intersection):
            return False
    return True


def mobius_direct(c):
    """m(A) = sum over B subset of A of (-1)^|A - B| c(B)."""
    d = as_dict(c)
    return {a: sum((-1) ** len(a - b) * d[b] for b in d if b <= a) for a in d}


def additive(c):
    d = as_dict(c)
    return all(d[a] == sum(d[frozenset([i])] for i in a) for a in d)


def layer_cake(c, x):
    """Choquet integral from the strict upper level sets {x > t}.

    Integrates c({x > t}) over t >= 0 and c({x > t}) - 1 over t < 0,
    exactly, as a sum over the intervals between breakpoints.
    """
    d = as_dict(c)
    n = len(x)
    points = sorted(set(x) | {Fraction(0)})
    total = Fraction(0)
    for lo, hi in zip(points, points[1:]):
        mid = (lo + hi) / 2
        level = frozenset(i for i in range(n) if x[i] > mid)
        if mid > 0:
            total += (hi - lo) * d[level]
        else:
            total += (hi - lo) * (d[level] - 1)
    return total


def pointwise_le(c1, c2):
    return all(a <= b for a, b in zip(c1.values, c2.values))
