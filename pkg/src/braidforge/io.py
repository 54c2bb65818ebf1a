"""JSON schemas for groups, forms, rings, data, and cyclotomic numbers.

Field names are part of the wire format:

    group:     {"orders": [2, 4]}
    element:   [1, 3]
    qform:     {"group": {...}, "values": ["0/1", "1/8", ...]}   (lex order)
    ring:      {"labels": [...], "unit": 0, "dual": [...], "N": [[[...]]]}
    datum:     {"ring": {...}, "twists": ["a/b", ...],
                "dims": [{"conductor": n, "coeffs": ["p/q", ...]}, ...]}
    character: {"chi": [1, -1, ...]}                             (lex order)

Fractions may arrive unreduced; they are normalized on ingestion.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .abelian import FinAbGroup, TRIVIAL_GROUP
from .config import DEFAULT, Config
from .cyclotomic import CycloNum
from .errors import SchemaError
from .fusion import FusionRing, validate_ring
from .premodular import PreModularDatum, build
from .qform import PreMetricGroup, validate


def parse_fraction(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad fraction {s!r}") from exc


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def group_to_json(G: FinAbGroup) -> dict:
    return {"orders": list(G.orders)}


def group_from_json(obj) -> FinAbGroup:
    if not isinstance(obj, dict) or "orders" not in obj:
        raise SchemaError('group must be {"orders": [...]}')
    orders = obj["orders"]
    if not isinstance(orders, list) or not all(isinstance(m, int) for m in orders):
        raise SchemaError("orders must be a list of integers")
    if not orders:
        return TRIVIAL_GROUP
    try:
        return FinAbGroup(tuple(orders))
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def cyclo_to_json(c: CycloNum) -> dict:
    return {"conductor": c.conductor, "coeffs": [fraction_str(x) for x in c.coeffs]}


def cyclo_from_json(obj) -> CycloNum:
    if not isinstance(obj, dict) or set(obj) != {"conductor", "coeffs"}:
        raise SchemaError('cyclotomic number must be {"conductor": n, "coeffs": [...]}')
    try:
        return CycloNum.from_coeffs(int(obj["conductor"]),
                                    [parse_fraction(s) for s in obj["coeffs"]])
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def qform_to_json(M: PreMetricGroup) -> dict:
    return {
        "group": group_to_json(M.group),
        "values": [fraction_str(v) for v in M.values],
    }


def qform_from_json(obj) -> PreMetricGroup:
    if not isinstance(obj, dict) or "group" not in obj or "values" not in obj:
        raise SchemaError('form must be {"group": {...}, "values": [...]}')
    G = group_from_json(obj["group"])
    vals = obj["values"]
    if not isinstance(vals, list) or len(vals) != G.order:
        raise SchemaError(
            f"values must list exactly {G.order} fractions in element order"
        )
    return validate(G, tuple(parse_fraction(v) for v in vals))


def ring_to_json(R: FusionRing) -> dict:
    return {
        "labels": list(R.labels),
        "unit": R.unit,
        "dual": list(R.dual),
        "N": [[list(row) for row in plane] for plane in R.N],
    }


def ring_from_json(obj) -> FusionRing:
    need = {"labels", "unit", "dual", "N"}
    if not isinstance(obj, dict) or not need <= set(obj):
        raise SchemaError(f"ring must carry fields {sorted(need)}")
    try:
        return validate_ring(obj["labels"], int(obj["unit"]), obj["dual"], obj["N"])
    except (TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed ring table: {exc}") from exc


def datum_to_json(D: PreModularDatum) -> dict:
    return {
        "ring": ring_to_json(D.ring),
        "twists": [fraction_str(t) for t in D.theta],
        "dims": [cyclo_to_json(d) for d in D.dim],
    }


def datum_from_json(obj, config: Config = DEFAULT) -> PreModularDatum:
    need = {"ring", "twists", "dims"}
    if not isinstance(obj, dict) or not need <= set(obj):
        raise SchemaError(f"datum must carry fields {sorted(need)}")
    R = ring_from_json(obj["ring"])
    twists = obj["twists"]
    dims = obj["dims"]
    if len(twists) != R.rank or len(dims) != R.rank:
        raise SchemaError("twists and dims must cover the basis")
    return build(
        R,
        tuple(parse_fraction(t) for t in twists),
        tuple(cyclo_from_json(d) for d in dims),
        config,
    )


def character_from_json(obj, G: FinAbGroup) -> tuple:
    if not isinstance(obj, dict) or "chi" not in obj:
        raise SchemaError('character must be {"chi": [...]}')
    chi = obj["chi"]
    if not isinstance(chi, list) or len(chi) != G.order:
        raise SchemaError(f"chi must list {G.order} signs in element order")
    return tuple(int(c) for c in chi)


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc


def ingest(path: str, config: Config = DEFAULT):
    """Load any braidforge object, typed by its fields."""
    obj = load_json(path)
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON must be an object")
    if "values" in obj:
        return qform_from_json(obj)
    if "twists" in obj:
        return datum_from_json(obj, config)
    if "N" in obj:
        return ring_from_json(obj)
    if "orders" in obj:
        return group_from_json(obj)
    if "chi" in obj:
        raise SchemaError("a character file needs its form for context")
    raise SchemaError(f"unrecognized object in {path}")
