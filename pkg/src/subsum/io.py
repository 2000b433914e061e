"""JSON instance and result files."""

from __future__ import annotations

import json
from typing import Any

from .instance import (BicardinalitySpec, CardinalitySpec, GeneralSpec, Instance, InstanceError,
                       PairwiseSpec, TermSpec, apply_unary_deltas, fold_singleton)
from .solver import SolveResult

FORMAT_VERSION = 1

_TOP_FIELDS = {"version", "nodes", "unary", "terms", "offset"}
_TERM_FIELDS = {"type", "members", "payload"}
_PAYLOAD_FIELDS = {
    "pairwise": {"a", "b"},
    "cardinality": {"g"},
    "bicardinality": {"qprime", "qsecond", "g"},
    "general": {"table"},
}


class FormatError(InstanceError):
    """The file is well-formed JSON but does not follow the instance schema."""


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def _ints(value: Any, what: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be a list")
    return tuple(_int(v, what) for v in value)


def _check_fields(obj: Any, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise FormatError(f"{what}: unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise FormatError(f"{what}: missing fields {sorted(missing)}")


def _singleton_values(kind: str, payload: dict) -> tuple[int, int]:
    """(f(empty), f({v})) of a one-member term."""
    if kind == "cardinality":
        g = _ints(payload["g"], "g")
        if len(g) != 2:
            raise FormatError("one-member cardinality term needs g of length 2")
        return g[0], g[1]
    if kind == "general":
        table = _ints(payload["table"], "table")
        if len(table) != 2:
            raise FormatError("one-member general term needs a table of length 2")
        return table[0], table[1]
    raise FormatError(f"{kind} term cannot have a single member")


def _term_from_dict(obj: Any, t: int) -> TermSpec | tuple[int, int, int]:
    what = f"term {t}"
    _check_fields(obj, _TERM_FIELDS, _TERM_FIELDS, what)
    kind = obj["type"]
    if kind not in _PAYLOAD_FIELDS:
        raise FormatError(f"{what}: unknown type {kind!r}")
    fields = _PAYLOAD_FIELDS[kind]
    payload = obj["payload"]
    _check_fields(payload, fields, fields, f"{what} payload")
    members = _ints(obj["members"], f"{what} members")
    if len(members) == 1:
        empty, full = _singleton_values(kind, payload)
        return (members[0], empty, full)
    if kind == "pairwise":
        return PairwiseSpec(members, _int(payload["a"], "a"), _int(payload["b"], "b"))
    if kind == "cardinality":
        return CardinalitySpec(members, _ints(payload["g"], "g"))
    if kind == "general":
        return GeneralSpec(members, _ints(payload["table"], "table"))
    qprime = _ints(payload["qprime"], "qprime")
    qsecond = _ints(payload["qsecond"], "qsecond")
    if tuple(sorted(qprime + qsecond)) != members:
        raise FormatError(f"{what}: members must be the sorted union of qprime and qsecond")
    grid = payload["g"]
    if not isinstance(grid, list):
        raise FormatError(f"{what}: g must be a 2-D list")
    return BicardinalitySpec(qprime, qsecond, tuple(_ints(row, "g") for row in grid))


def instance_from_dict(obj: Any) -> Instance:
    """Build an instance; one-member terms are folded into the unaries."""
    _check_fields(obj, _TOP_FIELDS, {"version", "nodes", "unary", "terms"}, "instance")
    if obj["version"] != FORMAT_VERSION:
        raise FormatError(f"unsupported version {obj['version']!r}")
    n = _int(obj["nodes"], "nodes")
    unary = obj["unary"]
    if not isinstance(unary, list) or len(unary) != n:
        raise FormatError(f"unary must list {n} [c_si, c_it] pairs")
    c_si, c_it = [], []
    for pair in unary:
        pair = _ints(pair, "unary entry")
        if len(pair) != 2:
            raise FormatError("unary entries must be [c_si, c_it] pairs")
        c_si.append(pair[0])
        c_it.append(pair[1])
    offset = _int(obj.get("offset", 0), "offset")
    if not isinstance(obj["terms"], list):
        raise FormatError("terms must be a list")
    terms: list[TermSpec] = []
    for t, raw in enumerate(obj["terms"]):
        term = _term_from_dict(raw, t)
        if isinstance(term, tuple):
            node, empty, full = term
            if not 0 <= node < n:
                raise FormatError(f"term {t}: member {node} out of range")
            delta, off = fold_singleton(node, empty, full)
            apply_unary_deltas(c_si, c_it, [delta])
            offset += off
        else:
            terms.append(term)
    return Instance(n, tuple(c_si), tuple(c_it), tuple(terms), offset)


def term_to_dict(term: TermSpec) -> dict:
    if isinstance(term, PairwiseSpec):
        payload: dict = {"a": term.a, "b": term.b}
    elif isinstance(term, CardinalitySpec):
        payload = {"g": list(term.g)}
    elif isinstance(term, BicardinalitySpec):
        payload = {"qprime": list(term.qprime), "qsecond": list(term.qsecond),
                   "g": [list(row) for row in term.g]}
        return {"type": term.kind, "members": sorted(term.members), "payload": payload}
    else:
        payload = {"table": list(term.table)}
    return {"type": term.kind, "members": list(term.members), "payload": payload}


def instance_to_dict(instance: Instance) -> dict:
    return {
        "version": FORMAT_VERSION,
        "nodes": instance.n,
        "unary": [[a, b] for a, b in zip(instance.c_si, instance.c_it)],
        "terms": [term_to_dict(t) for t in instance.terms],
        "offset": instance.offset,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_instance(path: str) -> Instance:
    """Raises OSError or json.JSONDecodeError on I/O problems, FormatError or
    InstanceError on schema problems."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return instance_from_dict(data)


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def result_to_dict(result: SolveResult, wall_time: float | None = None) -> dict:
    out = {
        "minimum": result.minimum,
        "minimizer": list(result.minimizer),
        "flow_value": result.flow_value,
        "offset": result.offset,
        "phases": [{"twoDelta": p.two_delta, "augmentations": p.augmentations,
                    "bfs_count": p.bfs_count} for p in result.phases],
        "counters": result.counters,
    }
    if wall_time is not None:
        out["wall_time"] = round(wall_time, 6)
    return out
