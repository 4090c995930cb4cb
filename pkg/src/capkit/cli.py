"""``capkit`` command line.

Exit codes: 0 success, 1 property violated / counterexample found,
2 invalid input or usage, 3 a verified theorem postcondition failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .capacity import Capacity, classify, is_additive
from .choquet import choquet_integral, dominated_extreme_points
from .errors import InputError, NoValidPivot, PreconditionError, PropertyViolation, TheoremViolation, ValidationError
from .fileio import dump_capacity, fraction_str, parse_function, parse_table, read_json, save_capacity
from .fuzz import CHECKS, FuzzConfig, fuzz_campaign
from .generators import generate, sandwich_pair
from .setalg import Chain, GroundSet
from .transforms import (
    PIVOT_ORDERS,
    chain_infimum,
    extract_chain_probability,
    find_strict_reduction,
    invariant_subfield,
    sandwich_probability,
    transform,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_THEOREM = 0, 1, 2, 3


class Session:
    """Collects human lines, JSON payload and provenance for one command."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []
        self.payload: dict = {}
        self.inputs: dict[str, str] = {}

    def load(self, path) -> Capacity:
        doc, digest = read_json(path)
        self.inputs[str(path)] = digest
        ground, table = parse_table(doc)
        return Capacity(ground, table)

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self, code: int) -> int:
        if self.args.json:
            out = {
                "command": self.args.command,
                "exit_code": code,
                "provenance": {
                    "tool": "capkit",
                    "version": __version__,
                    "inputs": self.inputs,
                    "seed": getattr(self.args, "seed", None),
                },
                **self.payload,
            }
            print(json.dumps(out, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)
        return code


def _table(c: Capacity) -> list[str]:
    return [f"  {c.ground.format(a):<24} {fraction_str(v)}" for a, v in enumerate(c.values)]


def _sets(ground: GroundSet, sets) -> list[str]:
    return [ground.format(a) for a in sets]


def _witness(ground, w) -> dict:
    return {"sets": _sets(ground, w.sets), "lhs": fraction_str(w.lhs), "rhs": fraction_str(w.rhs)}


def _maybe_save(s: Session, c: Capacity) -> None:
    if getattr(s.args, "output", None):
        save_capacity(c, s.args.output)
        s.say(f"written to {s.args.output}")


def _trace_payload(ground, trace) -> list[dict]:
    return [
        {
            "phase": st.phase,
            "pivot": ground.format(st.pivot),
            "subfield_before": st.subfield_before,
            "subfield_after": st.subfield_after,
            "rejected": _sets(ground, st.rejected),
            "after": dump_capacity(st.after)["values"],
        }
        for st in trace.steps
    ]


# ---------------------------------------------------------------- commands


def cmd_validate(s: Session) -> int:
    doc, digest = read_json(s.args.capacity)
    s.inputs[s.args.capacity] = digest
    ground, table = parse_table(doc)
    try:
        c = Capacity(ground, table)
    except ValidationError as exc:
        s.payload = {"valid": False, "axiom": exc.axiom, "witness": _sets(ground, exc.witness), "message": str(exc)}
        s.say(f"invalid: {exc}")
        return s.emit(EXIT_INPUT)
    additive = is_additive(c)
    s.payload = {"valid": True, "atoms": ground.n, "additive": additive}
    s.say(f"valid capacity on {ground.n} atoms" + (" (a probability measure)" if additive else ""))
    return s.emit(EXIT_OK)


def cmd_classify(s: Session) -> int:
    c = s.load(s.args.capacity)
    r = classify(c, s.args.max_order)
    g = c.ground

    def verdict(v):
        return "unchecked" if v is None else str(v).lower()

    s.payload = {
        "is_capacity": r.is_capacity,
        "is_probability": r.is_probability,
        "alternating": {str(k): v for k, v in r.alternating.items()},
        "monotone": {str(k): v for k, v in r.monotone.items()},
        "alternating_order": r.alternating_order,
        "monotone_order": r.monotone_order,
        "alternating_infinite": r.alternating_infinite,
        "monotone_infinite": r.monotone_infinite,
        "witnesses": {k: _witness(g, w) for k, w in r.witnesses.items()},
        "notes": r.notes,
    }
    s.say(f"probability measure: {str(r.is_probability).lower()}")
    for k in sorted(r.alternating):
        s.say(f"{k}-alternating: {verdict(r.alternating[k])}")
    s.say(f"infinitely alternating: {str(r.alternating_infinite).lower()}")
    for k in sorted(r.monotone):
        s.say(f"{k}-monotone: {verdict(r.monotone[k])}")
    s.say(f"infinitely monotone: {str(r.monotone_infinite).lower()}")
    for key, w in r.witnesses.items():
        s.say(f"witness {key}: sets {' '.join(_sets(g, w.sets))}  lhs {fraction_str(w.lhs)}  rhs {fraction_str(w.rhs)}")
    for note in r.notes:
        s.say(f"note: {note}")
    return s.emit(EXIT_OK)


def cmd_integrate(s: Session) -> int:
    c = s.load(s.args.capacity)
    doc, digest = read_json(s.args.function)
    s.inputs[s.args.function] = digest
    x = parse_function(doc, c.ground)
    value = choquet_integral(c, x)
    s.payload = {"integral": fraction_str(value)}
    s.say(fraction_str(value))
    return s.emit(EXIT_OK)


def cmd_transform(s: Session) -> int:
    c = s.load(s.args.capacity)
    f = c.ground.parse_set(s.args.set)
    t = transform(c, f)
    s.payload = {"pivot": c.ground.format(f), "capacity": dump_capacity(t)}
    s.say(f"transform by {c.ground.format(f)}:")
    s.lines += _table(t)
    _maybe_save(s, t)
    return s.emit(EXIT_OK)


def cmd_subfield(s: Session) -> int:
    c = s.load(s.args.capacity)
    sub = invariant_subfield(c)
    s.payload = {
        "members": _sets(c.ground, sub.member_sets),
        "size": len(sub),
        "is_closed_algebra": sub.is_closed_algebra,
        "is_whole_algebra": len(sub) == c.ground.size,
    }
    s.say(f"invariant subfield ({len(sub)} of {c.ground.size} sets): {' '.join(_sets(c.ground, sub))}")
    s.say(f"closed under complement and union: {str(sub.is_closed_algebra).lower()}")
    return s.emit(EXIT_OK)


def cmd_reduce(s: Session) -> int:
    c = s.load(s.args.capacity)
    red = find_strict_reduction(c)
    if red is None:
        s.payload = {"minimal": True}
        s.say("minimal: capacity is a probability measure")
        return s.emit(EXIT_OK)
    s.payload = {"minimal": False, "pivot": c.ground.format(red.pivot), "capacity": dump_capacity(red.capacity)}
    s.say(f"not minimal: transform by {c.ground.format(red.pivot)} gives a strictly smaller 2-alternating capacity")
    s.lines += _table(red.capacity)
    _maybe_save(s, red.capacity)
    return s.emit(EXIT_OK)


def parse_chain(ground: GroundSet, text: str) -> Chain:
    text = text.strip()
    if not text:
        return Chain([])
    return Chain(ground.parse_set(part) for part in text.split("|"))


def cmd_extract(s: Session) -> int:
    c = s.load(s.args.capacity)
    chain = parse_chain(c.ground, s.args.chain)
    p, trace = extract_chain_probability(c, chain, pivot_order=s.args.pivot_order, seed=s.args.seed)
    g = c.ground
    s.payload = {
        "chain": _sets(g, chain),
        "probability": dump_capacity(p),
        "weights": {g.atom_names[i]: fraction_str(w) for i, w in enumerate(p.weights)},
        "trace": _trace_payload(g, trace),
    }
    s.say(f"probability after {len(trace)} steps (pivot order {s.args.pivot_order}):")
    for i, w in enumerate(p.weights):
        s.say(f"  P({g.atom_names[i]}) = {fraction_str(w)}")
    for st in trace.steps:
        s.say(f"  step {st.phase:<5} pivot {g.format(st.pivot):<16} subfield {st.subfield_before} -> {st.subfield_after}")
    _maybe_save(s, p)
    return s.emit(EXIT_OK)


def cmd_sandwich(s: Session) -> int:
    mu = s.load(s.args.upper)
    nu = s.load(s.args.lower)
    g = mu.ground
    try:
        p, trace = sandwich_probability(mu, nu, fallback=s.args.fallback)
    except NoValidPivot as exc:
        s.payload = {
            "found": False,
            "reason": str(exc),
            "upper_at_stall": dump_capacity(exc.mu),
            "lower": dump_capacity(exc.nu),
            "rejected_candidates": _sets(g, exc.candidates),
        }
        s.say(f"counterexample: {exc}")
        s.say(f"rejected candidates: {' '.join(_sets(g, exc.candidates))}")
        s.say("upper capacity at the stall:")
        s.lines += _table(exc.mu)
        return s.emit(EXIT_VIOLATION)
    s.payload = {
        "found": True,
        "probability": dump_capacity(p),
        "weights": {g.atom_names[i]: fraction_str(w) for i, w in enumerate(p.weights)},
        "backtracks": trace.backtracks,
        "stalled": trace.stall is not None,
        "trace": _trace_payload(g, trace),
    }
    for i, w in enumerate(p.weights):
        s.say(f"  P({g.atom_names[i]}) = {fraction_str(w)}")
    s.say(f"steps {len(trace)}, backtracks {trace.backtracks}")
    if trace.stall is not None:
        s.say("pivot search stalled; finished with the exact LP fallback")
    _maybe_save(s, p)
    return s.emit(EXIT_OK)


def cmd_extreme(s: Session) -> int:
    c = s.load(s.args.capacity)
    pts = dominated_extreme_points(c)
    g = c.ground
    s.payload = {
        "measures": [
            {
                "weights": [fraction_str(w) for w in p.weights],
                "permutations": [[g.atom_names[i] for i in pi.order] for pi in perms],
            }
            for p, perms in pts
        ]
    }
    s.say(f"{len(pts)} distinct permutation measures")
    for p, perms in pts:
        weights = " ".join(fraction_str(w) for w in p.weights)
        orders = ", ".join("(" + " ".join(g.atom_names[i] for i in pi.order) + ")" for pi in perms)
        s.say(f"  [{weights}] from {orders}")
    return s.emit(EXIT_OK)


def cmd_inf(s: Session) -> int:
    caps = [s.load(p) for p in s.args.capacities]
    low = chain_infimum(caps)
    minimum = [i for i, c in enumerate(caps) if c == low]
    s.payload = {"capacity": dump_capacity(low), "minimum_of": [s.args.capacities[i] for i in minimum]}
    s.say("pointwise infimum (2-alternating):")
    s.lines += _table(low)
    s.say(f"equals input(s): {', '.join(s.args.capacities[i] for i in minimum)}")
    _maybe_save(s, low)
    return s.emit(EXIT_OK)


def cmd_fuzz(s: Session) -> int:
    cfg = FuzzConfig(
        atoms=s.args.atoms,
        cases=s.args.cases,
        seed=s.args.seed,
        check=s.args.check,
        out_dir=Path(s.args.out) if s.args.out else None,
    )
    report = fuzz_campaign(cfg)
    s.payload = {
        "cases": report.cases,
        "violations": [
            {"family": v.family, "case": v.case, "message": v.message, "files": v.files}
            for v in report.violations
        ],
        "findings": report.findings,
        "runtime_seconds": {k: round(v, 3) for k, v in report.runtime.items()},
    }
    for family, n in report.cases.items():
        bad = sum(1 for v in report.violations if v.family == family)
        s.say(f"{family:<9} cases {n:<6} violations {bad:<4} {report.runtime[family]:.2f}s")
    for key, n in sorted(report.findings.items()):
        s.say(f"finding {key}: {n}")
    for v in report.violations:
        s.say(f"VIOLATION {v.family}#{v.case}: {v.message} {' '.join(v.files)}")
    return s.emit(EXIT_OK if report.ok else EXIT_VIOLATION)


def cmd_gen(s: Session) -> int:
    ground = GroundSet.of_size(s.args.atoms)
    kind = s.args.cls
    if kind == "pair":
        mu, nu = sandwich_pair(ground, s.args.seed, independent=s.args.independent)
        docs = {"upper": dump_capacity(mu), "lower": dump_capacity(nu)}
        if s.args.output:
            out = Path(s.args.output)
            for name, doc in docs.items():
                path = out.with_name(f"{out.stem}_{name}{out.suffix or '.json'}")
                path.write_text(json.dumps(doc, indent=2) + "\n")
                s.say(f"wrote {path}")
        else:
            s.say(json.dumps(docs, indent=2))
        s.payload = docs
        return s.emit(EXIT_OK)
    c = generate(kind, ground, s.args.seed)
    doc = dump_capacity(c)
    s.payload = {"capacity": doc}
    if s.args.output:
        Path(s.args.output).write_text(json.dumps(doc, indent=2) + "\n")
        s.say(f"wrote {s.args.output}")
    else:
        s.say(json.dumps(doc, indent=2))
    return s.emit(EXIT_OK)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps the subparser from resetting it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    parser = argparse.ArgumentParser(prog="capkit", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--version", action="version", version=f"capkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the capacity axioms")
    p.add_argument("capacity")
    p = add("classify", cmd_classify, "alternating/monotone orders and additivity")
    p.add_argument("capacity")
    p.add_argument("--max-order", type=int, default=4)
    p = add("integrate", cmd_integrate, "Choquet integral of a function")
    p.add_argument("capacity")
    p.add_argument("--function", required=True)
    p = add("transform", cmd_transform, "pivot transform by a set")
    p.add_argument("capacity")
    p.add_argument("--set", required=True, help="comma-separated atoms; empty for the empty set")
    p.add_argument("-o", "--output")
    p = add("subfield", cmd_subfield, "invariant subfield")
    p.add_argument("capacity")
    p = add("reduce", cmd_reduce, "find a strictly smaller 2-alternating capacity")
    p.add_argument("capacity")
    p.add_argument("-o", "--output")
    p = add("extract", cmd_extract, "probability below the capacity matching it on a chain")
    p.add_argument("capacity")
    p.add_argument("--chain", default="", help='nested sets separated by "|", e.g. "a|a,b"')
    p.add_argument("--pivot-order", choices=PIVOT_ORDERS, default="lowest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p = add("sandwich", cmd_sandwich, "probability between an upper and a lower capacity")
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("--fallback", action="store_true", help="finish with an exact LP if the pivot search stalls")
    p.add_argument("-o", "--output")
    p = add("extreme", cmd_extreme, "distinct permutation measures")
    p.add_argument("capacity")
    p = add("inf", cmd_inf, "pointwise infimum of a totally ordered family")
    p.add_argument("capacities", nargs="+")
    p.add_argument("-o", "--output")
    p = add("fuzz", cmd_fuzz, "seeded property campaign")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", choices=("all",) + CHECKS, default="all")
    p.add_argument("--out", help="directory for witness capacity files")
    p = add("gen", cmd_gen, "generate a capacity file")
    p.add_argument("--class", dest="cls", required=True, choices=("prob", "2alt", "belief", "plaus", "2mon", "pair"))
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--independent", action="store_true", help="pair: draw the lower capacity as a belief function")
    p.add_argument("-o", "--output")
    return parser


def _witness_text(w) -> str | None:
    if w is None:
        return None
    if hasattr(w, "sets"):
        return f"sets {w.sets} lhs {fraction_str(w.lhs)} rhs {fraction_str(w.rhs)}"
    return str(w)


def _fail(s: Session, code: int, kind: str, exc: Exception, detail: list[str]) -> int:
    if not s.args.json:
        print(f"{kind}: {exc}", file=sys.stderr)
        for line in detail:
            print(f"  {line}", file=sys.stderr)
        return code
    s.payload = {"error": {"kind": kind, "message": str(exc), "detail": detail}}
    return s.emit(code)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    s = Session(args)
    try:
        return args.func(s)
    except TheoremViolation as exc:
        trace = getattr(exc, "trace", None)
        detail = []
        if trace is not None:
            detail = [f"{st.phase} pivot {st.before.ground.format(st.pivot)}: {st.after!r}" for st in trace.steps]
        return _fail(s, EXIT_THEOREM, "theorem violation", exc, detail)
    except PreconditionError as exc:
        w = _witness_text(exc.witness)
        return _fail(s, EXIT_INPUT, "precondition failed", exc, [f"witness {w}"] if w else [])
    except ValidationError as exc:
        return _fail(s, EXIT_INPUT, "invalid capacity", exc, [f"axiom {exc.axiom} at {exc.witness}"])
    except InputError as exc:
        return _fail(s, EXIT_INPUT, "invalid input", exc, [])
    except PropertyViolation as exc:
        return _fail(s, EXIT_VIOLATION, "violation", exc, [])


if __name__ == "__main__":
    sys.exit(main())
