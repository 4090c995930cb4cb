"""Seeded property campaigns over generated capacities.

Each family replays one group of properties on ``cases`` generated inputs.
A *violation* is a property that failed on concrete data; a *finding* is a
counted event that the properties allow (sandwich backtracks, pivot stalls,
invariant subfields that are not algebras).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .capacity import (
    Capacity,
    classify,
    conjugate,
    dominates,
    is_additive,
    is_infinity_alternating,
    is_infinity_monotone,
    is_k_alternating,
    is_k_monotone,
    is_two_alternating,
    mobius,
)
from .choquet import (
    choquet_integral,
    comonotone_permutation,
    indicator_counterexample,
    permutation_measure,
    random_function,
    subadditivity_search,
)
from .errors import CapkitError, InputError, TheoremViolation
from .fileio import save_capacity
from .generators import (
    corpus,
    generate,
    make_rng,
    random_probability,
    random_two_alternating,
    sandwich_pair,
)
from .setalg import AtomPermutation, Chain, GroundSet, all_permutations
from .transforms import (
    chain_infimum,
    extract_chain_probability,
    find_strict_reduction,
    invariant_subfield,
    sandwich_probability,
    transform,
)

CHECKS = ("lemma2", "lemma1", "props", "main", "exist", "sandwich", "inf", "classify")
MAX_FUZZ_ATOMS = 5


@dataclass
class FuzzConfig:
    atoms: int
    cases: int
    seed: int = 0
    check: str = "all"
    out_dir: Path | None = None
    samples: int = 20
    pairs: int = 1000
    max_order: int = 4

    def families(self) -> tuple[str, ...]:
        if self.check == "all":
            return CHECKS
        if self.check not in CHECKS:
            raise InputError(f"unknown check {self.check!r}; choose from all, {', '.join(CHECKS)}")
        return (self.check,)


@dataclass
class Violation:
    family: str
    case: int
    message: str
    capacities: dict[str, Capacity] = field(default_factory=dict)
    files: list[str] = field(default_factory=list)


@dataclass
class FuzzReport:
    config: FuzzConfig
    cases: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    findings: dict[str, int] = field(default_factory=dict)
    runtime: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def note(self, key: str, amount: int = 1) -> None:
        self.findings[key] = self.findings.get(key, 0) + amount


class _Case:
    def __init__(self, report: FuzzReport, family: str, index: int):
        self.report, self.family, self.index = report, family, index

    def fail(self, message: str, **caps: Capacity) -> None:
        self.report.violations.append(Violation(self.family, self.index, message, dict(caps)))


def _dominance(ground, cfg, case, rng):
    c = random_two_alternating(ground, rng.randrange(1 << 30))
    xs = [random_function(ground, rng) for _ in range(cfg.samples)]
    for pi in all_permutations(ground.n):
        p = permutation_measure(c, pi)
        if not dominates(c, p):
            case.fail(f"permutation measure {pi.order} not below the capacity", capacity=c)
            return
        for x in xs:
            if choquet_integral(c, x) < choquet_integral(p, x):
                case.fail(f"integral below permutation measure {pi.order} for {x.values}", capacity=c)
                return
    for x in xs:
        p = permutation_measure(c, comonotone_permutation(x))
        if choquet_integral(c, x) != choquet_integral(p, x):
            case.fail(f"no equality for the comonotone permutation of {x.values}", capacity=c)
            return


def _subadditivity(ground, cfg, case, rng):
    kind = "2alt" if case.index % 2 == 0 else rng.choice(("2mon", "belief"))
    c = generate(kind, ground, rng.randrange(1 << 30))
    verdict = is_two_alternating(c)
    if verdict:
        found = subadditivity_search(c, cfg.pairs, rng.randrange(1 << 30))
        if found is not None:
            case.fail("integral of a 2-alternating capacity is not subadditive", capacity=c)
    else:
        case.report.note("lemma1_non_2alt")
        a, b = verdict.witness.sets
        if indicator_counterexample(c, a, b) is None:
            case.fail("indicator pair from the 2-alternating witness is not a counterexample", capacity=c)


def _props(ground, cfg, case, rng):
    c = random_two_alternating(ground, rng.randrange(1 << 30))
    sub = invariant_subfield(c)
    if not sub.is_closed_algebra:
        case.report.note("subfield_not_algebra")
    for f in ground.subsets():
        t = transform(c, f, check=False)
        tsub = invariant_subfield(t)
        checks = [
            ("transform below input", dominates(c, t)),
            (
                "agreement on nested sets",
                all(t[a] == c[a] for a in ground.subsets() if a & f in (a, f)),
            ),
            ("agreement on the invariant subfield", all(t[a] == c[a] for a in sub)),
            ("pivot becomes invariant", f in tsub),
            ("invariant subfield grows", all(a in tsub for a in sub)),
            ("identity on invariant pivots", f not in sub or t == c),
            ("closure in the 2-alternating class", bool(is_two_alternating(t))),
            ("idempotence", transform(t, f, check=False) == t),
        ]
        for name, ok in checks:
            if not ok:
                case.fail(f"{name} fails for pivot {ground.format(f)}", capacity=c)
                return


def _main(ground, cfg, case, rng):
    kind = rng.choice(("prob", "2alt"))
    c = generate(kind, ground, rng.randrange(1 << 30))
    red = find_strict_reduction(c)
    if (red is None) != is_additive(c):
        case.fail("strict reduction exists iff not additive: failed", capacity=c)
        return
    if red is not None and not (dominates(c, red.capacity) and red.capacity != c):
        case.fail("reduction is not strictly below", capacity=c)
        return
    p = random_probability(ground, rng.randrange(1 << 30))
    other = random_two_alternating(ground, rng.randrange(1 << 30))
    if dominates(p, other) and other != p:
        case.fail("2-alternating capacity strictly below a probability", capacity=other, probability=p)


def random_chain(ground: GroundSet, rng) -> Chain:
    """Random strictly increasing chain (possibly empty) of subsets."""
    length = rng.randint(0, ground.n)
    order = list(range(ground.n))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(ground.n + 1), length))
    sets = []
    for k in cuts:
        bits = 0
        for atom in order[:k]:
            bits |= 1 << atom
        sets.append(bits)
    return Chain(sets)


def _exist(ground, cfg, case, rng):
    c = random_two_alternating(ground, rng.randrange(1 << 30))
    chain = random_chain(ground, rng)
    p, trace = extract_chain_probability(c, chain)
    if not (is_additive(p) and dominates(c, p) and all(p[f] == c[f] for f in chain)):
        case.fail("extracted probability misses a postcondition", capacity=c)
    sizes = [s.subfield_before for s in trace.steps] + [ground.size]
    if any(a >= b for a, b in zip(sizes, sizes[1:])) or len(trace) > ground.size:
        case.fail("trace does not strictly enlarge the invariant subfield", capacity=c)


def _sandwich(ground, cfg, case, rng):
    independent = case.index % 2 == 1
    mu, nu = sandwich_pair(ground, rng.randrange(1 << 30), independent=independent)
    p, trace = sandwich_probability(mu, nu, fallback=True)
    case.report.note("sandwich_backtracks", trace.backtracks)
    if trace.stall is not None:
        case.report.note("sandwich_stalls")
        _write(case, "stall", {"upper": mu, "lower": nu})
    if not (is_additive(p) and dominates(mu, p) and dominates(p, nu)):
        case.fail("sandwich result escapes the bounds", upper=mu, lower=nu)


def ordered_family(ground: GroundSet, rng, size: int) -> list[Capacity]:
    """Totally ordered family of 2-alternating capacities, shuffled."""
    c = random_two_alternating(ground, rng.randrange(1 << 30))
    style = rng.choice(("pivots", "mixture"))
    family = [c]
    if style == "pivots":
        while len(family) < size:
            family.append(transform(family[-1], rng.randrange(ground.size), check=False))
    else:
        p = permutation_measure(c, AtomPermutation(rng.sample(range(ground.n), ground.n)))
        weights = sorted((Fraction(rng.randint(0, 8), 8) for _ in range(size - 1)), reverse=True)
        for w in weights:
            family.append(Capacity(ground, [w * x + (1 - w) * y for x, y in zip(c.values, p.values)]))
    rng.shuffle(family)
    return family


def _inf(ground, cfg, case, rng):
    family = ordered_family(ground, rng, rng.randint(2, 4))
    low = chain_infimum(family)
    if not is_two_alternating(low) or not all(dominates(c, low) for c in family):
        case.fail("chain infimum is not a dominated 2-alternating capacity", **{f"member{i}": c for i, c in enumerate(family)})


def _classify(ground, cfg, case, rng):
    kind, c = next(corpus(ground, 1, rng.randrange(1 << 30), kinds=[rng.choice(("prob", "2alt", "belief", "plaus", "2mon", "2alt-not-inf"))]))
    report = classify(c, cfg.max_order)
    m = mobius(c)
    if m.zeta() != c.values:
        case.fail("Moebius roundtrip is not exact", capacity=c)
    dual = conjugate(c)
    for k in range(2, cfg.max_order + 1):
        alt, mon = is_k_alternating(c, k), is_k_monotone(c, k)
        if bool(alt) != bool(is_k_monotone(dual, k)):
            case.fail(f"duality fails at order {k}", capacity=c)
        if k > 2 and (alt and not is_k_alternating(c, k - 1) or mon and not is_k_monotone(c, k - 1)):
            case.fail(f"nesting fails at order {k}", capacity=c)
        if is_infinity_alternating(c) and not alt or is_infinity_monotone(c) and not mon:
            case.fail(f"infinite-order criterion disagrees with order {k}", capacity=c)
    if report.is_probability != (all(x == 0 for a, x in enumerate(m.mass) if a & (a - 1))):
        case.fail("additivity disagrees with singleton-supported Moebius mass", capacity=c)
    case.report.note(f"class_{kind}")


_FAMILIES = {
    "lemma2": _dominance,
    "lemma1": _subadditivity,
    "props": _props,
    "main": _main,
    "exist": _exist,
    "sandwich": _sandwich,
    "inf": _inf,
    "classify": _classify,
}


def _write(case: _Case, tag: str, caps: dict[str, Capacity]) -> list[str]:
    out = case.report.config.out_dir
    if out is None:
        return []
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, c in caps.items():
        path = out / f"{case.family}-{case.index:05d}-{tag}-{name}.json"
        save_capacity(c, path)
        paths.append(str(path))
    return paths


def fuzz_campaign(cfg: FuzzConfig) -> FuzzReport:
    if not 1 <= cfg.atoms <= MAX_FUZZ_ATOMS:
        raise InputError(f"fuzzing supports 1..{MAX_FUZZ_ATOMS} atoms")
    if cfg.cases < 0:
        raise InputError("case count must be non-negative")
    ground = GroundSet.of_size(cfg.atoms)
    report = FuzzReport(cfg)
    for family in cfg.families():
        start = time.perf_counter()
        run = _FAMILIES[family]
        for i in range(cfg.cases):
            case = _Case(report, family, i)
            before = len(report.violations)
            try:
                run(ground, cfg, case, make_rng(cfg.seed, family, i))
            except TheoremViolation:
                raise
            except CapkitError as exc:
                case.fail(f"{type(exc).__name__}: {exc}")
            for v in report.violations[before:]:
                v.files = _write(case, "violation", v.capacities)
        report.cases[family] = cfg.cases
        report.runtime[family] = time.perf_counter() - start
    return report
