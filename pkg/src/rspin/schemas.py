"""JSON schemas for every file format read or written by the ``spin`` CLI."""
from __future__ import annotations

import jsonschema

_SCALAR = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}

FIELD = {"oneOf": [
    {"const": "Q"},
    {"type": "object", "required": ["Fp"], "additionalProperties": False,
     "properties": {"Fp": {"type": "integer", "minimum": 2}}},
]}

RING = {
    "type": "object",
    "required": ["vars", "ideal"],
    "additionalProperties": False,
    "properties": {
        "field": FIELD,
        "vars": {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_]\w*$"}},
        "ideal": {"type": "array", "items": {"type": "array",
                                             "items": {"type": "integer", "minimum": 0}}},
    },
}

# {"i,j": coefficient}, a scalar, or a polynomial expression in the ring variables
ELEMENT = {"oneOf": [
    {"type": "object", "propertyNames": {"pattern": r"^(\d+(,\d+)*)?$"},
     "additionalProperties": _SCALAR},
    {"type": "integer"},
    {"type": "string"},
]}

NODAL = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "const": ELEMENT,
        "x": {"type": "object", "propertyNames": {"pattern": r"^[1-9]\d*$"},
              "additionalProperties": ELEMENT},
        "y": {"type": "object", "propertyNames": {"pattern": r"^[1-9]\d*$"},
              "additionalProperties": ELEMENT},
    },
}

SPIN_MAP = {
    "type": "object",
    "required": ["ring", "p", "q", "r", "components"],
    "additionalProperties": False,
    "properties": {
        "ring": RING, "p": ELEMENT, "q": ELEMENT,
        "r": {"type": "integer", "minimum": 1},
        "degree_cap": {"type": ["integer", "null"], "minimum": 0},
        "components": {"type": "array", "items": NODAL, "minItems": 2},
    },
}

_PQ = {"type": "object", "required": ["p", "q"], "additionalProperties": False,
       "properties": {"p": ELEMENT, "q": ELEMENT}}

ISOM_INPUT = {
    "type": "object",
    "required": ["ring", "first", "second"],
    "additionalProperties": False,
    "properties": {"ring": RING, "first": _PQ, "second": _PQ},
}

GRAPH = {
    "type": "object",
    "required": ["r", "vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "r": {"type": "integer", "minimum": 1},
        "vertices": {"type": "array", "items": {
            "type": "object", "required": ["id", "genus"], "additionalProperties": False,
            "properties": {"id": {"type": "integer"}, "genus": {"type": "integer"}}}},
        "edges": {"type": "array", "items": {
            "type": "object", "required": ["id", "v"], "additionalProperties": False,
            "properties": {"id": {"type": "integer"},
                           "v": {"type": "array", "items": {"type": "integer"},
                                 "minItems": 2, "maxItems": 2}}}},
    },
}

SPIN_TYPE = {
    "type": "object",
    "required": ["nonfree"],
    "additionalProperties": False,
    "properties": {
        "nonfree": {"type": "array", "items": {
            "type": "object", "required": ["edge", "u"], "additionalProperties": False,
            "properties": {"edge": {"type": "integer"}, "u": {"type": "integer", "minimum": 1},
                           "v": {"type": "integer", "minimum": 1}}}},
        "degrees": {"type": "object", "propertyNames": {"pattern": r"^-?\d+$"},
                    "additionalProperties": {"type": "integer"}},
    },
}

FAMILY = {
    "type": "object",
    "required": ["graph", "nodes"],
    "additionalProperties": False,
    "properties": {
        "r": {"type": "integer", "minimum": 1},
        "graph": GRAPH,
        "nodes": {"type": "array", "items": {
            "type": "object", "required": ["edge", "residue"], "additionalProperties": False,
            "properties": {"edge": {"type": "integer"},
                           "order": {"type": "integer", "minimum": 1},
                           "residue": {"type": "integer"},
                           "start": {"type": ["integer", "null"]}}}},
    },
}

# -- outputs -----------------------------------------------------------------

CHAIN = {
    "type": "object",
    "required": ["coeffs", "m", "degrees"],
    "additionalProperties": False,
    "properties": {"coeffs": {"type": "array", "items": {"type": "integer", "maximum": 0}},
                   "m": {"type": ["integer", "null"], "minimum": 1},
                   "degrees": {"type": "array", "items": {"type": "integer"}}},
}

VALIDATION = {
    "type": "object",
    "required": ["valid", "genus", "diagnostics"],
    "additionalProperties": False,
    "properties": {"valid": {"type": "boolean"}, "genus": {"type": "integer"},
                   "diagnostics": {"type": "array", "items": {"type": "string"}}},
}

SPIN_TYPES = {"type": "array", "items": SPIN_TYPE}

AUT_REPORT = {"type": "array", "items": {
    "type": "object", "required": ["type", "aut_order", "components"],
    "additionalProperties": False,
    "properties": {"type": SPIN_TYPE, "aut_order": {"type": "integer", "minimum": 1},
                   "components": {"type": "integer", "minimum": 1},
                   "rational_order": {"type": "integer", "minimum": 1}}}}

COUNT_REPORT = {"type": "array", "items": {
    "type": "object", "required": ["type", "count"], "additionalProperties": False,
    "properties": {"type": SPIN_TYPE, "count": {"type": "integer", "minimum": 1}}}}

PRESENTATION = {
    "type": "object",
    "required": ["genus", "n", "generators", "relations", "nodes", "pure_cover"],
    "additionalProperties": False,
    "properties": {
        "genus": {"type": "integer", "minimum": 2},
        "n": {"type": "integer"},
        "generators": {"type": "array", "items": {"type": "string"}},
        "relations": {"type": "array", "items": {"type": "string"}},
        "nodes": {"type": "array", "items": {"type": "object"}},
        "pure_cover": {"type": "object", "required": ["generators", "relations", "substitution"]},
    },
}

DEFORM_REPORT = {"type": "array", "items": {
    "type": "object", "required": ["type", "presentation"], "additionalProperties": False,
    "properties": {"type": SPIN_TYPE, "presentation": PRESENTATION}}}

CLASSIFY_REPORT = {
    "type": "object",
    "required": ["relations_hold", "failing_indices"],
    "properties": {
        "relations_hold": {"type": "boolean"},
        "failing_indices": {"type": "array", "items": {"type": "integer"}},
        "u": {"type": "integer"}, "v": {"type": "integer"},
        "w": ELEMENT,
        "cokernel_length": {"type": "integer"},
        "good_cokernel": {"type": "boolean"},
        "sigma": {"type": "array", "items": ELEMENT},
        "classification": {"enum": ["spin", "quasi-spin", "not-quasi-spin"]},
        "automorphisms": {"type": "object"},
    },
}

ISOM_REPORT = {
    "type": "object",
    "required": ["isomorphic", "mu"],
    "additionalProperties": False,
    "properties": {"isomorphic": {"type": "boolean"},
                   "mu": {"oneOf": [{"type": "null"}, ELEMENT]}},
}

ERROR = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {"error": {"enum": ["domain", "input"]}, "message": {"type": "string"},
                   "diagnostics": {"type": "array", "items": {"type": "string"}}},
}

SCHEMAS = {
    "ring": RING, "element": ELEMENT, "nodal": NODAL, "spin-map": SPIN_MAP,
    "isom-input": ISOM_INPUT, "graph": GRAPH, "spin-type": SPIN_TYPE, "family": FAMILY,
    "chain": CHAIN, "validation": VALIDATION, "spin-types": SPIN_TYPES,
    "aut-report": AUT_REPORT, "count-report": COUNT_REPORT, "presentation": PRESENTATION,
    "deform-report": DEFORM_REPORT, "classify-report": CLASSIFY_REPORT,
    "isom-report": ISOM_REPORT, "error": ERROR,
}


def validate(instance, name: str) -> None:
    """Raise :class:`jsonschema.ValidationError` unless ``instance`` fits ``name``."""
    jsonschema.validate(instance, SCHEMAS[name])
