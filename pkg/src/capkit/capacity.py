"""Capacities, their axioms, duality, Moebius masses and the class ladder.

All values are :class:`fractions.Fraction`.  Exhaustive checkers work on an
integer rescaling of the table (every value multiplied by the lcm of the
denominators), which keeps comparisons exact and fast.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Rational
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InputError, TheoremViolation, ValidationError
from .setalg import GroundSet, popcount

DEFAULT_TUPLE_BUDGET = 1 << 22
BUDGET_ENV = "CAPKIT_TUPLE_BUDGET"


def tuple_budget() -> int:
    """Ceiling on enumerated tuples for order-k checks (env override allowed)."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_TUPLE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{BUDGET_ENV} must be positive")
    return value


def to_fraction(value) -> Fraction:
    """Exact conversion; floats are refused because they are rarely what was meant."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational value: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational literal: {value!r}") from None
    raise InputError(f"not an exact rational: {value!r} ({type(value).__name__})")


def _scale(values: Sequence[Fraction]) -> tuple[list[int], int]:
    denom = 1
    for v in values:
        denom = math.lcm(denom, v.denominator)
    return [v.numerator * (denom // v.denominator) for v in values], denom


class Capacity:
    """A normalized monotone set function on the power set of ``ground``.

    ``values[A]`` is the value on the subset with bitmask ``A``.  The
    constructor validates the axioms; instances are immutable.
    """

    __slots__ = ("ground", "values", "_scaled")

    def __init__(self, ground: GroundSet, values: Iterable, *, _trusted: bool = False):
        table = tuple(to_fraction(v) for v in values)
        if not _trusted:
            _check_axioms(ground, table)
        self.ground = ground
        self.values = table
        self._scaled = None

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, a: int) -> Fraction:
        return self.values[a]

    def __getitem__(self, a: int) -> Fraction:
        return self.values[a]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, Capacity):
            return NotImplemented
        return self.ground == other.ground and self.values == other.values

    def __hash__(self):
        return hash((self.ground, self.values))

    def __repr__(self):
        body = ", ".join(str(v) for v in self.values)
        return f"{type(self).__name__}({list(self.ground.atom_names)}, [{body}])"

    def scaled(self) -> tuple[list[int], int]:
        """``(ints, d)`` with ``values[A] == ints[A] / d``."""
        if self._scaled is None:
            self._scaled = _scale(self.values)
        return self._scaled

    def as_capacity(self) -> "Capacity":
        return Capacity(self.ground, self.values, _trusted=True)


def _check_axioms(ground: GroundSet, table: tuple[Fraction, ...]) -> None:
    if len(table) != ground.size:
        raise InputError(
            f"a {ground.n}-atom ground set needs {ground.size} values, got {len(table)}"
        )
    if table[0] != 0:
        raise ValidationError(f"C1 violated: value on the empty set is {table[0]}, not 0", "C1", (0,))
    if table[ground.full] != 1:
        raise ValidationError(
            f"C1 violated: value on the full set is {table[ground.full]}, not 1",
            "C1",
            (ground.full,),
        )
    for a, v in enumerate(table):
        if not 0 <= v <= 1:
            raise ValidationError(f"value {v} on {ground.format(a)} is outside [0, 1]", "range", (a,))
    for a in range(ground.size):
        for i in range(ground.n):
            b = a | 1 << i
            if b != a and table[a] > table[b]:
                raise ValidationError(
                    f"C2 violated: c({ground.format(a)}) = {table[a]} > "
                    f"c({ground.format(b)}) = {table[b]}",
                    "C2",
                    (a, b),
                )


def validate(ground: GroundSet, values: Iterable) -> Capacity:
    """Certify a value table as a capacity or raise :class:`ValidationError`."""
    return Capacity(ground, values)


def additivity_witness(c: Capacity):
    """First subset whose value differs from the sum over its atoms, else ``None``."""
    s, _ = c.scaled()
    for a in range(1, len(s)):
        low = a & -a
        if s[a] != s[a ^ low] + s[low]:
            return a
    return None


def is_additive(c: Capacity) -> bool:
    return additivity_witness(c) is None


class ProbabilityMeasure(Capacity):
    """A capacity certified additive."""

    __slots__ = ()

    def __init__(self, ground: GroundSet, values: Iterable, *, _trusted: bool = False):
        super().__init__(ground, values, _trusted=_trusted)
        if not _trusted:
            bad = additivity_witness(self)
            if bad is not None:
                raise ValidationError(
                    f"not additive: value on {ground.format(bad)} is not the sum of its atoms",
                    "additivity",
                    (bad,),
                )

    @classmethod
    def from_weights(cls, ground: GroundSet, weights: Sequence) -> "ProbabilityMeasure":
        w = [to_fraction(x) for x in weights]
        if len(w) != ground.n:
            raise InputError(f"need {ground.n} atom weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise ValidationError("negative atom weight", "range")
        if sum(w) != 1:
            raise ValidationError(f"atom weights sum to {sum(w)}, not 1", "C1")
        table = [Fraction(0)] * ground.size
        for a in range(1, ground.size):
            low = a & -a
            table[a] = table[a ^ low] + w[low.bit_length() - 1]
        return cls(ground, table, _trusted=True)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(self.values[1 << i] for i in range(self.n))


def as_probability(c: Capacity) -> ProbabilityMeasure | None:
    if isinstance(c, ProbabilityMeasure):
        return c
    if not is_additive(c):
        return None
    return ProbabilityMeasure(c.ground, c.values, _trusted=True)


def same_ground(*caps: Capacity) -> GroundSet:
    ground = caps[0].ground
    for c in caps[1:]:
        if c.ground != ground:
            raise InputError("capacities live on different ground sets")
    return ground


# ---------------------------------------------------------------- checkers


@dataclass(frozen=True)
class Witness:
    """Sets at which an inequality failed, with its two sides."""

    sets: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.holds


_HOLDS = CheckResult(True)


def is_two_alternating(c: Capacity) -> CheckResult:
    """``c(A|B) + c(A&B) <= c(A) + c(B)`` for all pairs; first failing pair in (A, B) order."""
    s, d = c.scaled()
    size = len(s)
    for a in range(size):
        sa = s[a]
        for b in range(size):
            if s[a | b] + s[a & b] > sa + s[b]:
                return CheckResult(
                    False,
                    Witness((a, b), Fraction(s[a | b] + s[a & b], d), Fraction(sa + s[b], d)),
                )
    return _HOLDS


def is_two_monotone(c: Capacity) -> CheckResult:
    """``c(A|B) + c(A&B) >= c(A) + c(B)`` for all pairs."""
    s, d = c.scaled()
    size = len(s)
    for a in range(size):
        sa = s[a]
        for b in range(size):
            if s[a | b] + s[a & b] < sa + s[b]:
                return CheckResult(
                    False,
                    Witness((a, b), Fraction(s[a | b] + s[a & b], d), Fraction(sa + s[b], d)),
                )
    return _HOLDS


def _check_budget(c: Capacity, k: int) -> None:
    if k < 2:
        raise InputError(f"order must be at least 2, got {k}")
    count = c.ground.size**k
    budget = tuple_budget()
    if count > budget:
        raise BudgetExceeded(
            f"bound too large: order {k} on {c.n} atoms needs {count} tuples (budget {budget})",
            count,
            budget,
        )


def _order_k(c: Capacity, k: int, alternating: bool) -> CheckResult:
    _check_budget(c, k)
    s, d = c.scaled()
    full = c.ground.full
    nmasks = 1 << k
    lowidx = [0] * nmasks
    positive = [False] * nmasks
    for m in range(1, nmasks):
        lowidx[m] = (m & -m).bit_length() - 1
        positive[m] = popcount(m) % 2 == 1
    combo = [0] * nmasks
    for tup in combinations_with_replacement(range(len(s)), k):
        # alternating: intersection on the left, unions in the sum; monotone: the reverse
        if alternating:
            combo[0] = 0
            left = full
            for a in tup:
                left &= a
        else:
            combo[0] = full
            left = 0
            for a in tup:
                left |= a
        total = 0
        for m in range(1, nmasks):
            i = lowidx[m]
            prev = combo[m & (m - 1)]
            cur = (prev | tup[i]) if alternating else (prev & tup[i])
            combo[m] = cur
            if positive[m]:
                total += s[cur]
            else:
                total -= s[cur]
        lhs = s[left]
        if (lhs > total) if alternating else (lhs < total):
            return CheckResult(False, Witness(tuple(tup), Fraction(lhs, d), Fraction(total, d)))
    return _HOLDS


def is_k_alternating(c: Capacity, k: int) -> CheckResult:
    """Order-k alternating inequality over all k-multisets of subsets."""
    return _order_k(c, k, alternating=True)


def is_k_monotone(c: Capacity, k: int) -> CheckResult:
    """Order-k monotone inequality over all k-multisets of subsets."""
    return _order_k(c, k, alternating=False)


# ---------------------------------------------------------------- Moebius


@dataclass(frozen=True)
class MobiusRepresentation:
    ground: GroundSet
    mass: tuple[Fraction, ...]

    def __getitem__(self, a: int) -> Fraction:
        return self.mass[a]

    def zeta(self) -> tuple[Fraction, ...]:
        """``A -> sum of mass over subsets of A``."""
        s, d = _scale(self.mass)
        _zeta_inplace(s, self.ground.n)
        return tuple(Fraction(v, d) for v in s)

    def to_capacity(self) -> Capacity:
        return Capacity(self.ground, self.zeta())

    def support(self) -> list[int]:
        return [a for a, m in enumerate(self.mass) if m != 0]


def _zeta_inplace(s: list[int], n: int) -> None:
    size = len(s)
    for i in range(n):
        bit = 1 << i
        for a in range(size):
            if a & bit:
                s[a] += s[a ^ bit]


def _mobius_inplace(s: list[int], n: int) -> None:
    size = len(s)
    for i in range(n):
        bit = 1 << i
        for a in range(size):
            if a & bit:
                s[a] -= s[a ^ bit]


def mobius(c: Capacity) -> MobiusRepresentation:
    s, d = c.scaled()
    s = list(s)
    _mobius_inplace(s, c.n)
    return MobiusRepresentation(c.ground, tuple(Fraction(v, d) for v in s))


def from_mobius(ground: GroundSet, mass: Sequence) -> Capacity:
    """Capacity with the given Moebius masses (validated)."""
    m = [to_fraction(v) for v in mass]
    if len(m) != ground.size:
        raise InputError(f"need {ground.size} masses, got {len(m)}")
    return MobiusRepresentation(ground, tuple(m)).to_capacity()


def conjugate(c: Capacity) -> Capacity:
    """Dual capacity ``A -> 1 - c(complement of A)``."""
    full = c.ground.full
    table = [1 - c.values[full ^ a] for a in range(c.ground.size)]
    if isinstance(c, ProbabilityMeasure):
        return ProbabilityMeasure(c.ground, table, _trusted=True)
    return Capacity(c.ground, table, _trusted=True)


def is_infinity_monotone(c: Capacity) -> bool:
    """All Moebius masses are non-negative."""
    s, _ = c.scaled()
    s = list(s)
    _mobius_inplace(s, c.n)
    return all(v >= 0 for v in s)


def is_infinity_alternating(c: Capacity) -> bool:
    return is_infinity_monotone(conjugate(c))


def dominates(c1: Capacity, c2: Capacity) -> bool:
    """``c2 <= c1`` pointwise."""
    same_ground(c1, c2)
    return all(x >= y for x, y in zip(c1.values, c2.values))


def first_exceeding(c1: Capacity, c2: Capacity) -> int | None:
    """First subset where ``c2`` exceeds ``c1`` (``None`` if ``c1`` dominates)."""
    same_ground(c1, c2)
    for a, (x, y) in enumerate(zip(c1.values, c2.values)):
        if y > x:
            return a
    return None


# ---------------------------------------------------------------- classify


@dataclass
class ClassificationReport:
    """Per-order verdicts.  ``None`` in a verdict map means unchecked (budget)."""

    is_capacity: bool
    max_order: int
    alternating: dict[int, bool | None] = field(default_factory=dict)
    monotone: dict[int, bool | None] = field(default_factory=dict)
    alternating_infinite: bool = False
    monotone_infinite: bool = False
    is_probability: bool = False
    witnesses: dict[str, Witness] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @staticmethod
    def _highest(verdicts: dict[int, bool | None]) -> int | None:
        best = None
        for k in sorted(verdicts):
            if verdicts[k] is not True:
                break
            best = k
        return best

    @property
    def alternating_order(self) -> int | None:
        """Highest k up to ``max_order`` with k-alternating verified."""
        return self._highest(self.alternating)

    @property
    def monotone_order(self) -> int | None:
        return self._highest(self.monotone)


def _ladder(c, max_order, infinite, pair_checker, checker, label, report):
    verdicts: dict[int, bool | None] = {}
    failed = False
    for k in range(2, max_order + 1):
        if failed:
            verdicts[k] = False
            continue
        try:
            result = pair_checker(c) if k == 2 else checker(c, k)
        except BudgetExceeded as exc:
            verdicts[k] = True if infinite else None
            report.notes.append(f"{label} order {k} unchecked: {exc}")
            continue
        if infinite and not result:
            raise TheoremViolation(
                f"{label}: Moebius criterion says infinite order but order {k} fails"
            )
        verdicts[k] = result.holds
        if not result:
            failed = True
            report.witnesses[f"{label}:{k}"] = result.witness
    return verdicts


def classify(c: Capacity, max_order: int = 4) -> ClassificationReport:
    if max_order < 2:
        raise InputError("max_order must be at least 2")
    report = ClassificationReport(is_capacity=True, max_order=max_order)
    report.alternating_infinite = is_infinity_alternating(c)
    report.monotone_infinite = is_infinity_monotone(c)
    report.alternating = _ladder(
        c, max_order, report.alternating_infinite, is_two_alternating, is_k_alternating, "alternating", report
    )
    report.monotone = _ladder(
        c, max_order, report.monotone_infinite, is_two_monotone, is_k_monotone, "monotone", report
    )
    report.is_probability = is_additive(c)
    if report.is_probability != (report.alternating[2] is True and report.monotone[2] is True):
        raise TheoremViolation("additivity disagrees with 2-alternating and 2-monotone")
    return report
