"""Seeded constructors for test capacities of each class.

Every emitted capacity is re-checked with the exhaustive checkers of
:mod:`capkit.capacity`; a rejection is a bug here and raises
:class:`~capkit.errors.GeneratorError`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .capacity import (
    Capacity,
    ProbabilityMeasure,
    conjugate,
    dominates,
    from_mobius,
    is_infinity_alternating,
    is_infinity_monotone,
    is_two_alternating,
    is_two_monotone,
    to_fraction,
)
from .errors import GeneratorError, InputError, PropertyViolation
from .setalg import GroundSet, popcount

CLASSES = ("2-alt", "2-mon", "2-alt-not-inf")


def make_rng(seed, *salt) -> random.Random:
    """Deterministic stream for ``(seed, salt...)``; independent across salts."""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(":".join(str(part) for part in (seed, *salt)))


def _random_weights(rng: random.Random, k: int, max_denominator: int) -> list[Fraction]:
    while True:
        raw = []
        for _ in range(k):
            q = rng.randint(1, max_denominator)
            raw.append(Fraction(rng.randint(0, q), q))
        total = sum(raw)
        if total:
            return [w / total for w in raw]


def random_probability(ground: GroundSet, seed=0, max_denominator: int = 64) -> ProbabilityMeasure:
    rng = make_rng(seed, "prob")
    return ProbabilityMeasure.from_weights(ground, _random_weights(rng, ground.n, max_denominator))


# ---------------------------------------------------------------- distortions


@dataclass(frozen=True)
class DistortionFunction:
    """Piecewise-linear ``f: [0, 1] -> [0, 1]`` through rational breakpoints."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, breakpoints):
        pts = tuple((to_fraction(t), to_fraction(v)) for t, v in breakpoints)
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise InputError("a distortion must run from (0, 0) to (1, 1)")
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t1 <= t0:
                raise InputError("breakpoints must have strictly increasing t")
            if v1 < v0:
                raise InputError("a distortion must be non-decreasing")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def identity(cls) -> "DistortionFunction":
        return cls([(0, 0), (1, 1)])

    def slopes(self) -> list[Fraction]:
        pts = self.breakpoints
        return [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(pts, pts[1:])]

    @property
    def is_concave(self) -> bool:
        s = self.slopes()
        return all(a >= b for a, b in zip(s, s[1:]))

    def __call__(self, t) -> Fraction:
        t = to_fraction(t)
        if not 0 <= t <= 1:
            raise InputError(f"distortion argument {t} outside [0, 1]")
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return pts[-1][1]


def random_concave_distortion(seed=0, pieces: int = 3, max_denominator: int = 10) -> DistortionFunction:
    rng = make_rng(seed, "distortion")
    cuts = sorted(rng.sample(range(1, max_denominator), min(pieces - 1, max_denominator - 1)))
    ts = [Fraction(0)] + [Fraction(k, max_denominator) for k in cuts] + [Fraction(1)]
    slopes = sorted((Fraction(rng.randint(0, max_denominator)) for _ in range(len(ts) - 1)), reverse=True)
    if not any(slopes):
        slopes = [Fraction(1)] * len(slopes)
    rises = [s * (t1 - t0) for s, t0, t1 in zip(slopes, ts, ts[1:])]
    total = sum(rises)
    vals = [Fraction(0)]
    for r in rises:
        vals.append(vals[-1] + r / total)
    return DistortionFunction(zip(ts, vals))


def distorted_probability(p: ProbabilityMeasure, f: DistortionFunction) -> Capacity:
    """``A -> f(P(A))`` for a concave distortion ``f``."""
    if not f.is_concave:
        raise InputError("distortion is not concave")
    c = Capacity(p.ground, [f(v) for v in p.values])
    if not is_two_alternating(c):
        raise GeneratorError("concave distortion of a probability failed the 2-alternating check")
    return c


# ---------------------------------------------------------------- Moebius families


def random_belief(
    ground: GroundSet, seed=0, support_size: int | None = None, max_denominator: int = 10
) -> Capacity:
    """Belief function with random non-negative masses on random non-empty sets."""
    rng = make_rng(seed, "belief")
    nonempty = ground.size - 1
    if support_size is None:
        support_size = rng.randint(1, min(nonempty, 2 * ground.n))
    if not 1 <= support_size <= nonempty:
        raise InputError(f"support size must be in 1..{nonempty}")
    support = rng.sample(range(1, ground.size), support_size)
    weights = _random_weights(rng, support_size, max_denominator)
    return belief_from_masses(ground, dict(zip(support, weights)))


def belief_from_masses(ground: GroundSet, masses: dict[int, Fraction]) -> Capacity:
    table = [Fraction(0)] * ground.size
    for a, m in masses.items():
        table[ground.check(a)] += to_fraction(m)
    c = from_mobius(ground, table)
    if not is_infinity_monotone(c):
        raise GeneratorError("belief function with non-negative masses is not infinitely monotone")
    return c


def random_plausibility(
    ground: GroundSet, seed=0, support_size: int | None = None, max_denominator: int = 10
) -> Capacity:
    c = conjugate(random_belief(ground, seed, support_size, max_denominator))
    if not is_infinity_alternating(c):
        raise GeneratorError("conjugate of a belief function is not infinitely alternating")
    return c


# ---------------------------------------------------------------- rejection


def _draw_table(ground: GroundSet, rng: random.Random, den: int) -> list[Fraction] | None:
    """Monotone grid table, sampled set by set in order of size.

    Each value is drawn at most at the local submodular bound implied by its
    already-drawn subsets, so the 2-alternating checker is hit far more often
    than with a blind draw.  Supermodular tables are the conjugates of these:
    a direct bottom-up supermodular draw almost never reaches 1 at the full
    set without overshooting.
    """
    order = sorted(range(1, ground.size), key=lambda a: (popcount(a), a))
    table = [0] * ground.size
    full = ground.full
    for a in order:
        atoms = ground.atoms(a)
        lo = max((table[a ^ 1 << i] for i in atoms), default=0)
        hi = den
        pair = [
            table[a ^ 1 << i] + table[a ^ 1 << j] - table[a ^ 1 << i ^ 1 << j]
            for x, i in enumerate(atoms)
            for j in atoms[x + 1 :]
        ]
        if pair:
            hi = min(hi, min(pair))
        if a == full:
            if not lo <= den <= hi:
                return None
            table[a] = den
        else:
            if lo > hi:
                return None
            table[a] = rng.randint(lo, hi)
    return [Fraction(v, den) for v in table]


def _accepts(c: Capacity, kind: str) -> bool:
    if kind == "2-alt":
        return bool(is_two_alternating(c))
    if kind == "2-mon":
        return bool(is_two_monotone(c))
    return bool(is_two_alternating(c)) and not is_infinity_alternating(c)


def rejection_sample_class(
    ground: GroundSet, seed=0, kind: str = "2-alt", denominator_bound: int = 10, max_tries: int = 10_000
) -> tuple[Capacity, int]:
    """First drawn grid table in class ``kind``, with the number of rejected draws."""
    if kind not in CLASSES:
        raise InputError(f"class must be one of {CLASSES}, got {kind!r}")
    if kind == "2-alt-not-inf" and ground.n < 3:
        raise InputError("2-alternating but not infinitely alternating needs at least 3 atoms")
    if denominator_bound < 2:
        raise InputError("denominator bound must be at least 2")
    rng = make_rng(seed, "reject", kind)
    for tries in range(max_tries):
        den = rng.randint(2, denominator_bound)
        table = _draw_table(ground, rng, den)
        if table is None:
            continue
        c = Capacity(ground, table)
        if kind == "2-mon":
            c = conjugate(c)
        if _accepts(c, kind):
            return c, tries
    raise PropertyViolation(f"no {kind} capacity found in {max_tries} draws")


# ---------------------------------------------------------------- families


def random_two_alternating(ground: GroundSet, seed=0) -> Capacity:
    """A 2-alternating capacity from one of the generating families, chosen by seed."""
    rng = make_rng(seed, "family")
    family = rng.choice(("distortion", "plausibility", "reject", "reject-not-inf"))
    sub = rng.randrange(1 << 30)
    if family == "distortion":
        return distorted_probability(
            random_probability(ground, sub, max_denominator=10),
            random_concave_distortion(sub, pieces=rng.randint(2, 4)),
        )
    if family == "plausibility":
        return random_plausibility(ground, sub)
    if family == "reject-not-inf" and ground.n >= 3:
        return rejection_sample_class(ground, sub, "2-alt-not-inf")[0]
    return rejection_sample_class(ground, sub, "2-alt")[0]


def sandwich_pair(
    ground: GroundSet, seed=0, independent: bool = False, max_tries: int = 1000
) -> tuple[Capacity, Capacity]:
    """``(mu, nu)`` with ``mu`` 2-alternating, ``nu`` 2-monotone and ``nu <= mu``.

    By default ``nu`` is the conjugate of ``mu``.  With ``independent`` it is a
    random belief function kept only when ``mu`` dominates it.
    """
    mu = random_two_alternating(ground, seed)
    if not independent:
        nu = conjugate(mu)
        if not dominates(mu, nu):
            raise GeneratorError("conjugate of a 2-alternating capacity is not below it")
        return mu, nu
    for attempt in range(max_tries):
        nu = random_belief(ground, make_rng(seed, "lower", attempt).randrange(1 << 30))
        if dominates(mu, nu):
            return mu, nu
    raise PropertyViolation(f"no dominated belief function found in {max_tries} draws")


def corpus(ground: GroundSet, count: int, seed=0, kinds: Sequence[str] | None = None) -> Iterator[tuple[str, Capacity]]:
    """``count`` labelled capacities cycling through ``kinds``."""
    kinds = tuple(kinds or ("prob", "2alt", "belief", "plaus", "2mon", "2alt-not-inf"))
    for i in range(count):
        kind = kinds[i % len(kinds)]
        case_seed = make_rng(seed, "case", i).randrange(1 << 30)
        yield kind, generate(kind, ground, case_seed)


def generate(kind: str, ground: GroundSet, seed=0) -> Capacity:
    if kind == "prob":
        return random_probability(ground, seed)
    if kind == "2alt":
        return random_two_alternating(ground, seed)
    if kind == "belief":
        return random_belief(ground, seed)
    if kind == "plaus":
        return random_plausibility(ground, seed)
    if kind == "2mon":
        return rejection_sample_class(ground, seed, "2-mon")[0]
    if kind == "2alt-not-inf":
        if ground.n < 3:
            # on at most two atoms every 2-alternating capacity is infinitely alternating
            return random_two_alternating(ground, seed)
        return rejection_sample_class(ground, seed, "2-alt-not-inf")[0]
    raise InputError(f"unknown capacity kind {kind!r}")
