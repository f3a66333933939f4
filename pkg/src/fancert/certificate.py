"""Certificate assembly and serialization.

A certificate is a JSON document (UTF-8, lexicographic key order, schema
version "1") collecting every check result plus the topological invariant
claims they support. Claims that follow from theorems rather than computation
are marked "by-theorem" and are gated on their hypothesis detectors: the
second-cohomology dimension and the vanishing algebraic dimension are only
asserted when some generator is non-reciprocal AND no index pair carries a
group-invariant alternating form. Uncertified values are explicit strings so
the schema never loses fields.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from dataclasses import asdict, is_dataclass

import numpy as np

from .errors import IncompletePipeline, NotAdmissible

SCHEMA_VERSION = "1"

CONSTRUCTION_REQUIRED = ("field", "embeddings", "units", "subgroups",
                         "ambient", "fan", "domain", "checks")


def jsonable(obj):
    """Recursively coerce report objects into JSON-serializable data."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        items = sorted(obj) if isinstance(obj, set) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and (math.isnan(obj) or math.isinf(obj)):
        return str(obj)
    return obj


class Certificate:
    def __init__(self, payload: dict):
        self.payload = jsonable(payload)

    @property
    def passed(self) -> bool:
        return bool(self.payload.get("passed", False))

    def to_json(self) -> str:
        return json.dumps(self.payload, sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls(json.loads(text))

    def __getitem__(self, key):
        return self.payload[key]


def binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def gated_invariants(block: dict, b: int) -> dict:
    """Second-cohomology / algebraic-dimension claims for one subgroup,
    emitted only when the hypothesis detectors passed."""
    certified = (block["contains_nonreciprocal"]
                 and not block["invariant_pairs"])
    return {
        "h2_U0modW": binomial(b, 2) if certified else "uncertified",
        "algebraic_dimension": 0 if certified else "unknown",
    }


def assemble(reports: dict) -> Certificate:
    """Construction-mode certificate from the pipeline's module reports."""
    missing = [k for k in CONSTRUCTION_REQUIRED if reports.get(k) is None]
    if missing:
        raise IncompletePipeline(f"missing reports: {', '.join(missing)}")

    s = reports["field"]["signature"]["s"]
    t = reports["field"]["signature"]["t"]
    selected = reports["selected_subgroup"]
    block = reports["subgroups"][selected]
    b = block["b"]

    checks = dict(reports["checks"])
    mandatory_ok = all(c.get("passed") for c in checks.values()
                       if c.get("mandatory", True))

    invariants = {
        "dim_Y": s + t,
        "b1": b,
        "h1_lower_bound": b,
        "fundamental_group_rank": b,
        "kodaira": "-infinity",
        "kodaira_basis": "by-theorem",
        "non_kahler": True if b >= 1 else "uncertified",
        "non_kahler_basis": "by-theorem" if b >= 1 else "not-applicable",
        **gated_invariants(block, b),
        "order_maximality": "not-certified",
    }

    payload = {
        "schema_version": SCHEMA_VERSION,
        "mode": reports.get("mode", "construction"),
        "field": reports["field"],
        "embeddings": reports["embeddings"],
        "units": reports["units"],
        "subgroups": reports["subgroups"],
        "selected_subgroup": selected,
        "ambient": reports["ambient"],
        "fan": reports["fan"],
        "domain": reports["domain"],
        "divisors": reports.get("divisors", []),
        "invariants": invariants,
        "checks": checks,
        "warnings": reports.get("warnings", []),
        "passed": mandatory_ok,
    }
    return Certificate(payload)


def ot_certificate(reports: dict) -> Certificate:
    """Full-rank (b = s) admissible-lattice certificate. With s odd the
    second Betti number claim is unconditional (reciprocal units cannot exist
    in odd degree); with s even it is gated like the construction mode."""
    for key in ("field", "embeddings", "units", "subgroups", "checks"):
        if reports.get(key) is None:
            raise IncompletePipeline(f"missing report: {key}")
    block = reports["subgroups"][reports["selected_subgroup"]]
    s = reports["field"]["signature"]["s"]
    t = reports["field"]["signature"]["t"]
    if not block.get("admissible"):
        raise NotAdmissible("projected unit logs do not span R^s")

    if s % 2 == 1:
        b2 = binomial(s, 2)
        basis = "s odd: no reciprocal units can exist"
    else:
        certified = (block["contains_nonreciprocal"]
                     and not block["invariant_pairs"])
        b2 = binomial(s, 2) if certified else "uncertified"
        basis = "detector-gated"

    checks = dict(reports["checks"])
    mandatory_ok = all(c.get("passed") for c in checks.values()
                       if c.get("mandatory", True))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "mode": "ot",
        "field": reports["field"],
        "embeddings": reports["embeddings"],
        "units": reports["units"],
        "subgroups": reports["subgroups"],
        "selected_subgroup": reports["selected_subgroup"],
        "invariants": {
            "dim_X": s + t,
            "b2": b2,
            "b2_basis": basis,
            "kodaira": "-infinity",
            "kodaira_basis": "by-theorem",
            "order_maximality": "not-certified",
            **gated_invariants(block, s),
        },
        "checks": checks,
        "warnings": reports.get("warnings", []),
        "passed": mandatory_ok,
    }
    return Certificate(payload)


def lvmb_certificate(reports: dict) -> Certificate:
    """Degenerate b = 0 mode: trivial group, no quotient dynamics. Only the
    field and embedding layers carry content."""
    for key in ("field", "embeddings", "checks"):
        if reports.get(key) is None:
            raise IncompletePipeline(f"missing report: {key}")
    s = reports["field"]["signature"]["s"]
    t = reports["field"]["signature"]["t"]
    checks = dict(reports["checks"])
    mandatory_ok = all(c.get("passed") for c in checks.values()
                       if c.get("mandatory", True))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "mode": "lvmb",
        "field": reports["field"],
        "embeddings": reports["embeddings"],
        "units": reports.get("units", []),
        "invariants": {
            "dim_Y": s + t,
            "b1": 0,
            "kodaira": "-infinity",
            "kodaira_basis": "by-theorem",
            "non_kahler": "uncertified",
            "non_kahler_basis": "not-applicable",
            "h2_U0modW": "uncertified",
            "algebraic_dimension": "unknown",
            "order_maximality": "not-certified",
        },
        "checks": checks,
        "warnings": reports.get("warnings", []),
        "passed": mandatory_ok,
    }
    return Certificate(payload)
