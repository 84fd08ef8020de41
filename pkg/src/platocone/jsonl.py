"""JSONL persistence for configurations, pinpointing configurations and measures.

One object per file.  The first line is a header ``{"d": <int>, "kind":
<kind>}`` with kind one of ``configuration``, ``plato`` or ``measure``;
every following line is one point ``{"s": <mark>, "x": [<coords>]}`` or
one atom ``{"w": <weight>, "x": [<coords>]}``.

Files written here are canonical: records appear in canonical storage
order and floats are rendered with the shortest decimal representation
that round-trips (Python's ``repr``).  Parsing a canonical file and
serializing the result reproduces the input byte for byte, and every
finite double survives the round trip bit for bit.

Loading a ``plato`` file re-validates the pinpointing property and fails
loudly if it does not hold.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .configuration import Configuration, make_configuration
from .cone import DiscreteMeasure, make_measure
from .errors import JsonlFormatError
from .plato import PlatoConfiguration, to_plato
from .sampling import SampleReport

KIND_CONFIGURATION = "configuration"
KIND_PLATO = "plato"
KIND_MEASURE = "measure"
_KINDS = (KIND_CONFIGURATION, KIND_PLATO, KIND_MEASURE)


def _dump_line(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def serialize(obj) -> str:
    """Render a configuration, plato configuration or measure as JSONL text."""
    if isinstance(obj, PlatoConfiguration):
        kind = KIND_PLATO
        d = obj.dimension
        lines = [_dump_line({"s": p.mark, "x": list(p.position)}) for p in obj.configuration.points]
    elif isinstance(obj, Configuration):
        kind = KIND_CONFIGURATION
        d = obj.dimension
        lines = [_dump_line({"s": p.mark, "x": list(p.position)}) for p in obj.points]
    elif isinstance(obj, DiscreteMeasure):
        kind = KIND_MEASURE
        d = obj.dimension
        lines = [_dump_line({"w": w, "x": list(pos)}) for pos, w in obj.atoms]
    else:
        raise JsonlFormatError(f"cannot serialize object of type {type(obj).__name__}")
    header = _dump_line({"d": d, "kind": kind})
    return "\n".join([header] + lines) + "\n"


def _parse_number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise JsonlFormatError(f"{what} must be a JSON number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise JsonlFormatError(f"{what} must be finite, got {v}")
    return v


def _parse_record(line: str, lineno: int, value_key: str, d: int):
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise JsonlFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(rec, dict) or set(rec) != {value_key, "x"}:
        raise JsonlFormatError(f"line {lineno}: expected keys {{{value_key!r}, 'x'}}")
    value = _parse_number(rec[value_key], f"line {lineno}: {value_key!r}")
    x = rec["x"]
    if not isinstance(x, list) or len(x) != d:
        raise JsonlFormatError(f"line {lineno}: 'x' must be a list of {d} coordinates")
    position = tuple(_parse_number(c, f"line {lineno}: coordinate") for c in x)
    return value, position


def parse(text: str):
    """Parse JSONL text into the object its header declares.

    Returns a :class:`Configuration`, :class:`PlatoConfiguration` or
    :class:`DiscreteMeasure`.  Raises :class:`JsonlFormatError` on schema
    violations and :class:`NotPinpointing` when a ``plato`` file carries a
    duplicated position.
    """
    lines = text.splitlines()
    if not lines:
        raise JsonlFormatError("empty input: missing header line")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise JsonlFormatError(f"invalid JSON header ({exc.msg})") from exc
    if not isinstance(header, dict) or set(header) != {"d", "kind"}:
        raise JsonlFormatError("header must be exactly {\"d\": <int>, \"kind\": <kind>}")
    d = header["d"]
    kind = header["kind"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise JsonlFormatError(f"header 'd' must be a positive integer, got {d!r}")
    if kind not in _KINDS:
        raise JsonlFormatError(f"header 'kind' must be one of {_KINDS}, got {kind!r}")

    value_key = "w" if kind == KIND_MEASURE else "s"
    records = [
        _parse_record(line, i + 2, value_key, d)
        for i, line in enumerate(lines[1:])
        if line
    ]
    if kind == KIND_MEASURE:
        return make_measure([(w, pos) for w, pos in records], d)
    gamma = make_configuration([(s, pos) for s, pos in records], d)
    if kind == KIND_PLATO:
        return to_plato(gamma)
    return gamma


def write(path, obj) -> None:
    """Serialize ``obj`` to ``path`` with exact canonical bytes."""
    Path(path).write_text(serialize(obj), encoding="utf-8")


def read(path):
    """Parse the JSONL file at ``path``; see :func:`parse`."""
    return parse(Path(path).read_text(encoding="utf-8"))


def serialize_report(report: SampleReport) -> str:
    """Render a sampler report as a single JSON object plus newline."""
    payload = {
        "seed": report.seed,
        "epsilon": report.epsilon,
        "expected_discarded_mass": report.expected_discarded_mass,
        "atom_count": report.atom_count,
    }
    return json.dumps(payload, separators=(",", ":"), allow_nan=False) + "\n"


def write_report(path, report: SampleReport) -> None:
    Path(path).write_text(serialize_report(report), encoding="utf-8")
