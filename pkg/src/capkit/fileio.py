"""JSON file formats for capacities and functions.

Capacity file::

    {"ground_set": ["a", "b"], "values": ["0", "7/10", "7/10", "1"]}
    {"ground_set": ["a", "b"], "values": {"": "0", "a": "0.7", "b": "7/10", "a,b": "1"}}

The dense form lists ``2**n`` values in binary-counting order (bit i is
atom i); the map form is keyed by comma-joined atom names in ground-set
order and must cover every subset.  Values are ``"p/q"`` strings, decimal
literals or JSON integers.  Function files hold ``n`` values in atom order.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .capacity import Capacity, to_fraction
from .choquet import MeasurableFunction
from .errors import InputError
from .setalg import GroundSet


def fraction_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _loads(text: str):
    try:
        # decimals stay exact: the literal text goes straight into Fraction
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _value(raw) -> Fraction:
    if isinstance(raw, float):
        raise InputError(f"inexact value {raw!r}")
    return to_fraction(raw)


def _ground(obj) -> GroundSet:
    if not isinstance(obj, dict) or "ground_set" not in obj:
        raise InputError("expected an object with a 'ground_set' field")
    names = obj["ground_set"]
    if not isinstance(names, list):
        raise InputError("'ground_set' must be a list of atom names")
    return GroundSet(names)


def parse_table(obj) -> tuple[GroundSet, list[Fraction]]:
    """Ground set and raw value table of a capacity file, without axiom checks."""
    ground = _ground(obj)
    values = obj.get("values")
    if isinstance(values, list):
        if len(values) != ground.size:
            raise InputError(f"dense form needs {ground.size} values, got {len(values)}")
        return ground, [_value(v) for v in values]
    if isinstance(values, dict):
        table: list[Fraction | None] = [None] * ground.size
        for key, raw in values.items():
            a = ground.parse_set(key)
            if table[a] is not None:
                raise InputError(f"subset {ground.format(a)} listed twice")
            table[a] = _value(raw)
        missing = [ground.format(a) for a, v in enumerate(table) if v is None]
        if missing:
            raise InputError(f"map form is missing subsets: {', '.join(missing[:5])}")
        return ground, table
    raise InputError("'values' must be a list (dense form) or an object (map form)")


def parse_capacity(obj) -> Capacity:
    ground, table = parse_table(obj)
    return Capacity(ground, table)


def dump_capacity(c: Capacity, form: str = "dense") -> dict:
    if form == "dense":
        values = [fraction_str(v) for v in c.values]
    elif form == "map":
        values = {c.ground.key(a): fraction_str(v) for a, v in enumerate(c.values)}
    else:
        raise InputError(f"unknown form {form!r}")
    return {"ground_set": list(c.ground.atom_names), "values": values}


def parse_function(obj, ground: GroundSet | None = None) -> MeasurableFunction:
    g = _ground(obj)
    if ground is not None and g != ground:
        raise InputError("function file ground set does not match the capacity")
    values = obj.get("values")
    if not isinstance(values, list):
        raise InputError("function 'values' must be a list")
    return MeasurableFunction(g, [_value(v) for v in values])


def dump_function(x: MeasurableFunction) -> dict:
    return {"ground_set": list(x.ground.atom_names), "values": [fraction_str(v) for v in x.values]}


def read_json(path) -> tuple[object, str]:
    """Parsed document and sha256 of the raw bytes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return _loads(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()


def load_capacity(path) -> Capacity:
    return parse_capacity(read_json(path)[0])


def load_function(path, ground: GroundSet | None = None) -> MeasurableFunction:
    return parse_function(read_json(path)[0], ground)


def save_capacity(c: Capacity, path, form: str = "dense") -> None:
    Path(path).write_text(json.dumps(dump_capacity(c, form), indent=2) + "\n")


def loads_capacity(text: str) -> Capacity:
    return parse_capacity(_loads(text))


def dumps_capacity(c: Capacity, form: str = "dense") -> str:
    return json.dumps(dump_capacity(c, form), indent=2)
