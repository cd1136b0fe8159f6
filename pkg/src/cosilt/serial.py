"""JSON file formats and a small shorthand for standard objects.

Formats (UTF-8 JSON, rationals as strings):

    quiver          {"name", "vertices": [...], "arrows": [{"name", "from", "to"}]}
    field           {"kind": "Q"} or {"kind": "Fp", "p": 7}
    representation  {"quiver": name, "dims": {v: int}, "maps": {arrow: [[...]]}}
    complex         {"algebra": {"quiver", "field"}, "terms": {deg: rep}, "differentials": {deg: {v: [[...]]}}}
    ladder          {"algebra": quiver, "cut": [...], "field": field}

Shorthand: sums like ``I_1 + I_2[-1] + S_3`` or ``DA`` (dual of the regular
module), ``A`` (regular module); ``X[k]`` is the shift.
"""
from __future__ import annotations

import json
import re
from typing import Any

from .derived import Complex, direct_sum_complexes, shift, stalk
from .linalg import Field, QQ
from .quiver import Quiver, QuiverError
from .rep import (dual_regular, morphism_from_json, morphism_to_json, regular, standard_module)
from .rep import from_json as rep_from_json, to_json as rep_to_json


class FormatError(ValueError):
    """Malformed input; the message names the offending location."""


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def field_from_name(name: str) -> Field:
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"F_?(\d+)", name)
    if not m:
        raise FormatError("unknown field %r (use Q or F_p)" % name)
    return Field.prime(int(m.group(1)))


def quiver_from_name(name: str) -> Quiver:
    m = re.fullmatch(r"A(\d+)", name.strip())
    if not m or int(m.group(1)) < 1:
        raise FormatError("unknown quiver %r (use A<n> or a JSON file)" % name)
    return Quiver.linear(int(m.group(1)))


def algebra_to_json(q: Quiver, f: Field) -> dict:
    return {"quiver": q.to_json(), "field": f.to_json()}


def algebra_from_json(data: dict, where: str = "algebra") -> tuple[Quiver, Field]:
    try:
        return Quiver.from_json(data["quiver"]), Field.from_json(data.get("field", {"kind": "Q"}))
    except (KeyError, TypeError, QuiverError, ValueError) as exc:
        raise FormatError("%s: %s" % (where, exc)) from exc


def complex_to_json(X: Complex) -> dict:
    return {
        "algebra": algebra_to_json(X.quiver, X.field),
        "terms": {str(n): rep_to_json(t) for n, t in sorted(X.terms.items())},
        "differentials": {str(n): morphism_to_json(d) for n, d in sorted(X.diffs.items())},
    }


def complex_from_json(data: dict, where: str = "complex") -> Complex:
    if not isinstance(data, dict):
        raise FormatError("%s: expected an object" % where)
    q, f = algebra_from_json(data.get("algebra", {}), where + ".algebra")
    terms = {}
    for key, raw in data.get("terms", {}).items():
        try:
            terms[int(key)] = rep_from_json(raw, q, f)
        except Exception as exc:
            raise FormatError("%s.terms[%s]: %s" % (where, key, exc)) from exc
    diffs = {}
    for key, raw in data.get("differentials", {}).items():
        n = int(key)
        if n not in terms or n + 1 not in terms:
            raise FormatError("%s.differentials[%s]: missing term" % (where, key))
        try:
            diffs[n] = morphism_from_json(raw, terms[n], terms[n + 1])
        except Exception as exc:
            raise FormatError("%s.differentials[%s]: %s" % (where, key, exc)) from exc
    try:
        return Complex(q, terms, diffs, f)
    except Exception as exc:
        raise FormatError("%s: %s" % (where, exc)) from exc


def ladder_to_json(q: Quiver, cut, f: Field) -> dict:
    return {"algebra": q.to_json(), "cut": list(cut), "field": f.to_json()}


def ladder_from_json(data: dict) -> tuple[Quiver, list[str], Field]:
    try:
        return Quiver.from_json(data["algebra"]), [str(v) for v in data["cut"]], Field.from_json(
            data.get("field", {"kind": "Q"}))
    except (KeyError, TypeError, QuiverError, ValueError) as exc:
        raise FormatError("ladder: %s" % exc) from exc


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z]+)(?:_([^\[\s]+))?\s*(?:\[\s*(-?\d+)\s*\])?$")


def parse_object(text: str, q: Quiver, f: Field = QQ) -> Complex:
    """Shorthand like ``I_1 + 2*S_2 + P_3[1]``, ``DA``, ``A`` or ``k`` over the given algebra."""
    parts = []
    for raw in text.split("+"):
        item = raw.strip()
        m = _TERM.match(item)
        if not m:
            raise FormatError("cannot parse %r in %r" % (item, text))
        mult, kind, vertex, sh = m.groups()
        if kind in ("DA", "DB", "D"):
            M = dual_regular(q, f)
        elif kind in ("A", "B", "Lambda"):
            M = regular(q, f)
        elif kind == "k":
            if len(q.vertices) != 1:
                raise FormatError("'k' needs a one-vertex algebra")
            M = regular(q, f)
        elif kind in ("P", "I", "S"):
            if vertex not in q.vertices:
                raise FormatError("unknown vertex %r in %r" % (vertex, item))
            M = standard_module(q, vertex, kind, f)
        else:
            raise FormatError("unknown object %r" % kind)
        X = shift(stalk(M), int(sh)) if sh else stalk(M)
        parts.extend([X] * int(mult or 1))
    return direct_sum_complexes(parts, q, f)


def load_object(source: str, q: Quiver, f: Field) -> Complex:
    """A file path holding a complex or representation, or a shorthand expression."""
    if source.endswith(".json"):
        try:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise FormatError("%s: %s" % (source, exc.strerror)) from exc
        except json.JSONDecodeError as exc:
            raise FormatError("%s:%d:%d: %s" % (source, exc.lineno, exc.colno, exc.msg)) from exc
        if "terms" in data:
            X = complex_from_json(data, source)
        else:
            try:
                X = stalk(rep_from_json(data, q, f))
            except Exception as exc:
                raise FormatError("%s: %s" % (source, exc)) from exc
        if X.quiver != q:
            raise FormatError("%s: complex lives over %s, expected %s" % (source, X.quiver.name, q.name))
        return X
    return parse_object(source, q, f)


def load_quiver(source: str) -> Quiver:
    if source.endswith(".json"):
        try:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise FormatError("%s: %s" % (source, exc.strerror)) from exc
        except json.JSONDecodeError as exc:
            raise FormatError("%s:%d:%d: %s" % (source, exc.lineno, exc.colno, exc.msg)) from exc
        try:
            return Quiver.from_json(data if "vertices" in data else data.get("quiver", {}))
        except QuiverError as exc:
            raise FormatError("%s: %s" % (source, exc)) from exc
    return quiver_from_name(source)
