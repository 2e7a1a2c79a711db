"""Canonical JSON formats for instances, arrangements and reduction sources.

Rationals are ``[numerator, denominator]`` pairs with a positive denominator.
:func:`dumps` is canonical (sorted keys, no whitespace, trailing newline), so
writing a document that was just read reproduces the file byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .gen import BinPackingInstance, GeneratedInstance, PitInstance
from .model import Arrangement, Instance, Positions, SeatGraph, Utility, ValuationMatrix, validate_instance

FORMAT_VERSION = 1


class MalformedInputError(ValueError):
    """The input document does not follow the expected format."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def digest(obj) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid JSON: {e}") from None


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInputError(f"{what} must be an integer, got {x!r}")
    return x


def encode_rational(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def decode_rational(obj, what: str = "rational") -> Fraction:
    if not isinstance(obj, list) or len(obj) != 2:
        raise MalformedInputError(f"{what} must be a [numerator, denominator] pair, got {obj!r}")
    num, den = _int(obj[0], what), _int(obj[1], what)
    if den <= 0:
        raise MalformedInputError(f"{what} has non-positive denominator {den}")
    return Fraction(num, den)


def _field(d: dict, key: str, kind):
    if not isinstance(d, dict):
        raise MalformedInputError("expected a JSON object")
    if key not in d:
        raise MalformedInputError(f"missing field {key!r}")
    if not isinstance(d[key], kind):
        raise MalformedInputError(f"field {key!r} has the wrong type")
    return d[key]


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class InstanceDocument:
    """An instance plus the optional reduction metadata stored with it."""

    instance: Instance
    family: str | None = None
    roles: tuple[str, ...] | None = None
    anchors: tuple[int | None, ...] | None = None
    source: PitInstance | BinPackingInstance | None = None

    @classmethod
    def from_generated(cls, gi: GeneratedInstance) -> "InstanceDocument":
        return cls(gi.instance, gi.family, gi.roles, gi.anchors, gi.source)


def source_to_dict(src) -> dict:
    if isinstance(src, PitInstance):
        return {"kind": "pit", "vertices": src.n_vertices, "edges": [list(e) for e in src.edges]}
    if isinstance(src, BinPackingInstance):
        return {"kind": "binpacking", "sizes": list(src.sizes), "capacity": src.capacity, "bins": src.bins}
    raise TypeError(f"unknown source {src!r}")


def pit_from_dict(d) -> PitInstance:
    n = _int(_field(d, "vertices", int), "vertices")
    edges = _field(d, "edges", list)
    try:
        return PitInstance(n, [[_int(u, "vertex"), _int(v, "vertex")] for u, v in edges])
    except (TypeError, ValueError) as e:
        raise MalformedInputError(f"bad PIT graph: {e}") from None


def binpacking_from_dict(d) -> BinPackingInstance:
    sizes = [_int(s, "size") for s in _field(d, "sizes", list)]
    try:
        return BinPackingInstance(sizes, _int(d.get("capacity"), "capacity"), _int(d.get("bins"), "bins"))
    except ValueError as e:
        raise MalformedInputError(str(e)) from None


def source_from_dict(d):
    kind = _field(d, "kind", str)
    if kind == "pit":
        return pit_from_dict(d)
    if kind == "binpacking":
        return binpacking_from_dict(d)
    raise MalformedInputError(f"unknown source kind {kind!r}")


def instance_to_dict(doc: InstanceDocument | Instance) -> dict:
    if isinstance(doc, Instance):
        doc = InstanceDocument(doc)
    inst = doc.instance
    n = inst.n
    flat = []
    for p in range(n):
        for q in range(n):
            v = inst.valuations.rows[p][q]
            flat.append(None if v is None else encode_rational(v))
    d = {
        "version": FORMAT_VERSION,
        "utility": inst.utility.value,
        "agents": list(inst.agents),
        "valuations": flat,
        "graph": {"n": inst.seats.n, "edges": [list(e) for e in inst.seats.edges]},
    }
    if inst.positions is not None:
        d["positions"] = [encode_rational(x) for x in inst.positions.values]
    if doc.family is not None:
        d["family"] = doc.family
    if doc.roles is not None:
        d["roles"] = list(doc.roles)
    if doc.anchors is not None:
        d["anchors"] = list(doc.anchors)
    if doc.source is not None:
        d["source"] = source_to_dict(doc.source)
    return d


def instance_from_dict(d) -> InstanceDocument:
    version = _field(d, "version", int)
    if version != FORMAT_VERSION:
        raise MalformedInputError(f"unsupported format version {version}")
    utility = _field(d, "utility", str)
    if utility not in ("B", "S", "W"):
        raise MalformedInputError(f"unknown utility type {utility!r}")
    agents = _field(d, "agents", list)
    if not all(isinstance(a, str) for a in agents):
        raise MalformedInputError("agent names must be strings")
    n = len(agents)
    flat = _field(d, "valuations", list)
    if len(flat) != n * n:
        raise MalformedInputError(f"expected {n * n} valuation entries, got {len(flat)}")
    rows = []
    for p in range(n):
        row = []
        for q in range(n):
            cell = flat[p * n + q]
            if p == q:
                if cell is not None:
                    raise MalformedInputError("diagonal valuations must be null")
                row.append(None)
            elif cell is None:
                raise MalformedInputError(f"missing valuation for agents {p}, {q}")
            else:
                row.append(decode_rational(cell, f"valuation[{p}][{q}]"))
        rows.append(row)
    g = _field(d, "graph", dict)
    gn = _int(_field(g, "n", int), "graph.n")
    try:
        seats = SeatGraph(gn, [[_int(u, "vertex"), _int(v, "vertex")] for u, v in _field(g, "edges", list)])
    except (TypeError, ValueError) as e:
        raise MalformedInputError(f"bad seat graph: {e}") from None
    positions = None
    if "positions" in d:
        positions = Positions(decode_rational(x, "position") for x in _field(d, "positions", list))
    inst = Instance(tuple(agents), ValuationMatrix(rows), seats, Utility(utility), positions)
    problems = validate_instance(inst)
    if problems:
        raise MalformedInputError("; ".join(problems))

    roles = anchors = source = None
    family = d.get("family")
    if family is not None and not isinstance(family, str):
        raise MalformedInputError("family must be a string")
    if "roles" in d:
        roles = tuple(_field(d, "roles", list))
        if len(roles) != n or not all(isinstance(r, str) for r in roles):
            raise MalformedInputError("roles must be one string per agent")
    if "anchors" in d:
        anchors = tuple(_field(d, "anchors", list))
        if len(anchors) != n or not all(a is None or (isinstance(a, int) and not isinstance(a, bool)) for a in anchors):
            raise MalformedInputError("anchors must be one integer or null per agent")
    if "source" in d:
        source = source_from_dict(d["source"])
    return InstanceDocument(inst, family, roles, anchors, source)


def read_instance(text: str) -> InstanceDocument:
    return instance_from_dict(_loads(text))


def write_instance(doc: InstanceDocument | Instance) -> str:
    return dumps(instance_to_dict(doc))


# ---------------------------------------------------------------------------
# arrangements


def arrangement_to_dict(arr: Arrangement) -> dict:
    return {"seat_of": list(arr.seat_of)}


def arrangement_from_dict(d) -> Arrangement:
    seat_of = [_int(v, "seat") for v in _field(d, "seat_of", list)]
    try:
        return Arrangement(seat_of)
    except ValueError as e:
        raise MalformedInputError(str(e)) from None


def read_arrangement(text: str) -> Arrangement:
    return arrangement_from_dict(_loads(text))


def write_arrangement(arr: Arrangement) -> str:
    return dumps(arrangement_to_dict(arr))


def read_source(text: str, kind: str):
    d = _loads(text)
    return pit_from_dict(d) if kind == "pit" else binpacking_from_dict(d)
