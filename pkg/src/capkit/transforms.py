"""Pivot transforms of 2-alternating capacities and the probability extractions built on them.

``transform(c, F)`` maps ``B`` to ``c(F|B) + c(F&B) - c(F)``.  It never
increases ``c``, keeps ``c`` on sets nested with ``F`` and on the invariant
subfield, and adds ``F`` to the invariant subfield.  Repeating it until the
subfield is everything yields a dominated probability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .capacity import (
    Capacity,
    ProbabilityMeasure,
    as_probability,
    dominates,
    first_exceeding,
    is_two_alternating,
    is_two_monotone,
    same_ground,
)
from .errors import (
    IncomparableError,
    InputError,
    NoValidPivot,
    PreconditionError,
    TheoremViolation,
)
from .lp import sandwiched_probability
from .setalg import Chain

PIVOT_ORDERS = ("lowest", "highest", "random")


def _require_two_alternating(c: Capacity, what: str = "capacity") -> None:
    result = is_two_alternating(c)
    if not result:
        raise PreconditionError(f"{what} is not 2-alternating", result.witness)


def transform(c: Capacity, f: int, *, check: bool = True) -> Capacity:
    """The capacity ``B -> c(F|B) + c(F&B) - c(F)``.

    The result is a capacity for any input; the 2-alternating precondition
    is what makes it lie below ``c``.  With ``check=False`` that check is
    the caller's responsibility.
    """
    c.ground.check(f)
    if check:
        _require_two_alternating(c)
    s, d = c.scaled()
    base = s[f]
    return Capacity(c.ground, [Fraction(s[f | b] + s[f & b] - base, d) for b in range(len(s))], _trusted=True)


@dataclass(frozen=True)
class InvariantSubfield:
    """Sets that satisfy the modular equality against every set."""

    member_sets: tuple[int, ...]
    is_closed_algebra: bool

    def __contains__(self, a: int) -> bool:
        return a in self._members

    def __len__(self) -> int:
        return len(self.member_sets)

    def __iter__(self):
        return iter(self.member_sets)

    @property
    def _members(self) -> frozenset[int]:
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.member_sets)
            object.__setattr__(self, "_set", cached)
        return cached


def _is_member(s: list[int], a: int) -> bool:
    sa = s[a]
    return all(s[a | b] + s[a & b] == sa + s[b] for b in range(len(s)))


def invariant_subfield(c: Capacity) -> InvariantSubfield:
    s, _ = c.scaled()
    members = tuple(a for a in range(len(s)) if _is_member(s, a))
    mset = frozenset(members)
    full = c.ground.full
    closed = all(full ^ a in mset for a in members) and all(
        a | b in mset for a in members for b in members
    )
    return InvariantSubfield(members, closed)


@dataclass(frozen=True)
class Reduction:
    pivot: int
    capacity: Capacity


def find_strict_reduction(c: Capacity, *, check: bool = True) -> Reduction | None:
    """Lowest-index pivot whose transform strictly lowers ``c``.

    ``None`` exactly when ``c`` is a probability measure.
    """
    if check:
        _require_two_alternating(c)
    s, _ = c.scaled()
    for f in range(len(s)):
        if not _is_member(s, f):
            return Reduction(f, transform(c, f, check=False))
    return None


# ---------------------------------------------------------------- extraction


@dataclass(frozen=True)
class Step:
    phase: str
    pivot: int
    before: Capacity
    after: Capacity
    subfield_before: int
    subfield_after: int
    rejected: tuple[int, ...] = ()


@dataclass
class ExtractionTrace:
    steps: list[Step] = field(default_factory=list)
    final: ProbabilityMeasure | None = None
    # set when the sandwich pivot search got stuck and the LP fallback finished the job
    stall: NoValidPivot | None = None

    @property
    def backtracks(self) -> int:
        """Pivot candidates rejected by the sandwich lower-bound guard."""
        return sum(len(step.rejected) for step in self.steps)

    def __len__(self):
        return len(self.steps)


def _commit(trace, phase, pivot, mu, sub, new, new_sub, rejected=()):
    if not (set(sub) < set(new_sub)):
        raise TheoremViolation(
            f"pivot {mu.ground.format(pivot)} did not strictly enlarge the invariant subfield",
            trace,
        )
    if pivot not in new_sub:
        raise TheoremViolation(f"pivot {mu.ground.format(pivot)} is not invariant after its transform", trace)
    trace.steps.append(Step(phase, pivot, mu, new, len(sub), len(new_sub), tuple(rejected)))
    if len(trace.steps) > mu.ground.size:
        raise TheoremViolation("more steps than subsets", trace)


def _finish(mu: Capacity, trace: ExtractionTrace) -> ProbabilityMeasure:
    p = as_probability(mu)
    if p is None:
        raise TheoremViolation("full invariant subfield but the result is not additive", trace)
    trace.final = p
    return p


def _pick(outside: Sequence[int], order: str, rng: random.Random | None) -> int:
    if order == "lowest":
        return outside[0]
    if order == "highest":
        return outside[-1]
    return rng.choice(outside)


def extract_chain_probability(
    c: Capacity,
    chain: Chain | Sequence[int],
    *,
    pivot_order: str = "lowest",
    seed: int | None = None,
    check: bool = True,
    verify_steps: bool = True,
) -> tuple[ProbabilityMeasure, ExtractionTrace]:
    """A probability ``P <= c`` agreeing with ``c`` on every set of ``chain``.

    First every chain set is made invariant (chain order), then the remaining
    non-invariant sets are used as pivots in ``pivot_order`` until the
    invariant subfield is the whole power set.
    """
    if pivot_order not in PIVOT_ORDERS:
        raise InputError(f"pivot order must be one of {PIVOT_ORDERS}, got {pivot_order!r}")
    if not isinstance(chain, Chain):
        chain = Chain(chain)
    for f in chain:
        c.ground.check(f)
    if check:
        _require_two_alternating(c)
    rng = random.Random(seed) if pivot_order == "random" else None
    trace = ExtractionTrace()
    mu, sub = c, invariant_subfield(c)

    while True:
        pending = [f for f in chain if f not in sub]
        if not pending:
            break
        f = pending[0]
        new = transform(mu, f, check=False)
        new_sub = invariant_subfield(new)
        _commit(trace, "chain", f, mu, sub, new, new_sub)
        mu, sub = new, new_sub

    while len(sub) < c.ground.size:
        outside = [a for a in c.ground.subsets() if a not in sub]
        a = _pick(outside, pivot_order, rng)
        new = transform(mu, a, check=False)
        new_sub = invariant_subfield(new)
        _commit(trace, "fill", a, mu, sub, new, new_sub)
        mu, sub = new, new_sub

    p = _finish(mu, trace)
    if verify_steps:
        for step in trace.steps:
            if not is_two_alternating(step.after) or not dominates(step.before, step.after):
                raise TheoremViolation("intermediate capacity left the 2-alternating class or grew", trace)
    if not dominates(c, p):
        raise TheoremViolation("extracted probability is not dominated by the input", trace)
    for f in chain:
        if p[f] != c[f]:
            raise TheoremViolation(f"extracted probability differs on chain set {c.ground.format(f)}", trace)
    return p, trace


def sandwich_probability(
    mu: Capacity, nu: Capacity, *, check: bool = True, fallback: bool = False
) -> tuple[ProbabilityMeasure, ExtractionTrace]:
    """A probability ``P`` with ``nu <= P <= mu``.

    Pivots are taken outside the invariant subfield of the running upper
    capacity, smallest gap ``mu(A) - nu(A)`` first (ties: lowest index).
    A candidate whose transform would dip below ``nu`` is skipped and
    counted in ``trace.backtracks``.  If every candidate is rejected,
    :class:`NoValidPivot` is raised, unless ``fallback`` is set: then the
    stall is recorded in ``trace.stall`` and ``P`` is computed between the
    current upper capacity and ``nu`` by an exact LP.
    """
    same_ground(mu, nu)
    if check:
        _require_two_alternating(mu, "upper capacity")
        result = is_two_monotone(nu)
        if not result:
            raise PreconditionError("lower capacity is not 2-monotone", result.witness)
        bad = first_exceeding(mu, nu)
        if bad is not None:
            raise PreconditionError(
                f"lower capacity exceeds the upper one on {mu.ground.format(bad)}", bad
            )
    trace = ExtractionTrace()
    cur, sub = mu, invariant_subfield(mu)
    while len(sub) < mu.ground.size:
        candidates = sorted(
            (cur[a] - nu[a], a) for a in mu.ground.subsets() if a not in sub
        )
        rejected = []
        for _, a in candidates:
            new = transform(cur, a, check=False)
            if dominates(new, nu):
                break
            rejected.append(a)
        else:
            stall = NoValidPivot(
                "every pivot candidate pushes the upper capacity below the lower one",
                cur,
                nu,
                rejected,
                trace,
            )
            if not fallback:
                raise stall
            trace.stall = stall
            p = sandwiched_probability(cur, nu)
            if p is None:
                raise TheoremViolation("no probability lies between the capacities", trace)
            cur = p
            break
        new_sub = invariant_subfield(new)
        _commit(trace, "sandwich", a, cur, sub, new, new_sub, rejected)
        cur, sub = new, new_sub

    p = _finish(cur, trace)
    if not dominates(mu, p) or not dominates(p, nu):
        raise TheoremViolation("sandwich result escapes the bounds", trace)
    return p, trace


def chain_infimum(capacities: Sequence[Capacity], *, check: bool = True) -> Capacity:
    """Pointwise minimum of a totally ordered family of 2-alternating capacities."""
    caps = list(capacities)
    if not caps:
        raise InputError("chain infimum of an empty family")
    same_ground(*caps)
    if check:
        for i, c in enumerate(caps):
            _require_two_alternating(c, f"capacity #{i}")
        for i in range(len(caps)):
            for j in range(i + 1, len(caps)):
                up = first_exceeding(caps[i], caps[j])
                down = first_exceeding(caps[j], caps[i])
                if up is not None and down is not None:
                    raise IncomparableError(
                        f"capacities #{i} and #{j} are not comparable", (i, j, up, down)
                    )
    table = [min(c.values[a] for c in caps) for a in caps[0].ground.subsets()]
    out = Capacity(caps[0].ground, table)
    if check and not is_two_alternating(out):
        raise TheoremViolation("infimum of a chain of 2-alternating capacities is not 2-alternating")
    return out
