"""Finite ground sets and subsets encoded as characteristic integers.

Bit ``i`` of a subset mask is set iff atom ``i`` belongs to the subset.
Subsets are plain ``int``; the ground set carries ``n`` and the atom names.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterable, Iterator, Sequence

from .errors import InputError

MAX_ATOMS = 16


@dataclass(frozen=True)
class GroundSet:
    atom_names: tuple[str, ...]

    def __init__(self, atom_names: Iterable[str]):
        names = tuple(atom_names)
        if not 1 <= len(names) <= MAX_ATOMS:
            raise InputError(f"ground set needs 1..{MAX_ATOMS} atoms, got {len(names)}")
        for name in names:
            if not isinstance(name, str) or not name:
                raise InputError(f"atom names must be non-empty strings, got {name!r}")
            if "," in name or "|" in name:
                raise InputError(f"atom name {name!r} contains a reserved character")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate atom names in {names}")
        object.__setattr__(self, "atom_names", names)

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        """Ground set with atoms named ``"1"``, ..., ``"n"``."""
        return cls(str(i + 1) for i in range(n))

    @property
    def n(self) -> int:
        return len(self.atom_names)

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a <= self.full:
            raise InputError(f"subset {a!r} is not a subset of a {self.n}-atom ground set")
        return a

    def subsets(self) -> range:
        return range(self.size)

    def atoms(self, a: int) -> list[int]:
        return [i for i in range(self.n) if a >> i & 1]

    def mask(self, names: Iterable[str]) -> int:
        """Bitmask of the named atoms."""
        index = {name: i for i, name in enumerate(self.atom_names)}
        bits = 0
        for name in names:
            try:
                bits |= 1 << index[name]
            except KeyError:
                raise InputError(f"unknown atom {name!r}") from None
        return bits

    def parse_set(self, text: str) -> int:
        """Parse a comma-joined atom list; the empty string is the empty set."""
        text = text.strip()
        if not text:
            return 0
        return self.mask(part.strip() for part in text.split(","))

    def key(self, a: int) -> str:
        """Comma-joined atom names in ground-set order (``""`` for the empty set)."""
        return ",".join(self.atom_names[i] for i in self.atoms(self.check(a)))

    def format(self, a: int) -> str:
        return "{" + self.key(a) + "}"


def union(a: int, b: int) -> int:
    return a | b


def intersection(a: int, b: int) -> int:
    return a & b


def difference(a: int, b: int) -> int:
    return a & ~b


def complement(a: int, ground: GroundSet) -> int:
    return ground.full & ~ground.check(a)


def is_subset(a: int, b: int) -> bool:
    return a & b == a


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & b == a


def popcount(a: int) -> int:
    return bin(a).count("1")


def submasks(a: int) -> Iterator[int]:
    """All subsets of ``a``, from ``a`` itself down to the empty set."""
    sub = a
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & a


class GroundSetOps:
    """Boolean operations bound to one ground set, with membership checks."""

    def __init__(self, ground: GroundSet):
        self.ground = ground

    def union(self, a: int, b: int) -> int:
        return self.ground.check(a) | self.ground.check(b)

    def intersection(self, a: int, b: int) -> int:
        return self.ground.check(a) & self.ground.check(b)

    def complement(self, a: int) -> int:
        return complement(a, self.ground)

    def is_subset(self, a: int, b: int) -> bool:
        return is_subset(self.ground.check(a), self.ground.check(b))


@dataclass(frozen=True)
class Chain:
    """Strictly increasing (under inclusion) sequence of subsets."""

    sets: tuple[int, ...]

    def __init__(self, sets: Iterable[int]):
        sets = tuple(sets)
        for a, b in zip(sets, sets[1:]):
            if not is_proper_subset(a, b):
                raise InputError(f"chain is not strictly increasing at {a:#b} -> {b:#b}")
        object.__setattr__(self, "sets", sets)

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)


@dataclass(frozen=True)
class AtomPermutation:
    """An ordering of the atoms; ``order[k]`` is the atom placed k-th (0-based)."""

    order: tuple[int, ...]

    def __init__(self, order: Sequence[int]):
        order = tuple(order)
        if sorted(order) != list(range(len(order))):
            raise InputError(f"{order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, "order", order)

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)


def prefix_sets(pi: AtomPermutation, i: int) -> int:
    """Union of the first ``i`` atoms in permutation order; ``i = 0`` gives the empty set."""
    if not 0 <= i <= len(pi):
        raise InputError(f"prefix length {i} outside 0..{len(pi)}")
    bits = 0
    for atom in pi.order[:i]:
        bits |= 1 << atom
    return bits


def prefix_chain(pi: AtomPermutation) -> list[int]:
    """The maximal chain ``S_0 = {} , S_1, ..., S_n = Omega`` of ``pi``."""
    out = [0]
    for atom in pi.order:
        out.append(out[-1] | 1 << atom)
    return out


def all_permutations(n: int) -> Iterator[AtomPermutation]:
    for order in _permutations(range(n)):
        yield AtomPermutation(order)
