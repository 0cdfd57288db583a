"""JSON schemas for CLI inputs and outputs."""
from __future__ import annotations

import jsonschema

RATIONAL = {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}
POINT = {"anyOf": [RATIONAL, {"type": "string", "enum": ["infinity", "inf", "oo", "∞"]}, {"type": "integer"}]}
FLOAT = {"type": ["number", "null"]}
COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

CONFIG = {
    "type": "object",
    "properties": {
        name: {"type": "number", "exclusiveMinimum": 0} for name in (
            "step_min", "step_max", "step_init", "corrector_tol", "max_newton", "endgame_radius",
            "endgame_tol", "refine_tol", "dedup", "tau_j", "tau_r", "membership_tol",
            "loose_membership_tol", "divergence", "escape_norm", "max_steps", "max_paths", "denominator_bound",
            "workers")
    } | {"seed": {"type": "integer"}},
    "additionalProperties": False,
}

CONDITION = {
    "type": "object",
    "required": ["point", "shape"],
    "properties": {"point": POINT, "shape": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    "additionalProperties": False,
}

PROBLEM = {
    "type": "object",
    "required": ["space", "conditions"],
    "properties": {
        "space": {"enum": ["Gr", "OG"]},
        "d": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 2},
        "n": {"type": "integer", "minimum": 1},
        "conditions": {"type": "array", "items": CONDITION},
        "config": CONFIG,
        "seed": {"type": "integer"},
    },
    "allOf": [
        {"if": {"properties": {"space": {"const": "Gr"}}}, "then": {"required": ["d", "m"]}},
        {"if": {"properties": {"space": {"const": "OG"}}}, "then": {"required": ["n"]}},
    ],
    "additionalProperties": False,
}

SUBSPACE = {
    "type": "object",
    "required": ["d", "m", "rows"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
    "additionalProperties": False,
}

MEMBERSHIP = {
    "type": "object",
    "required": ["point", "shape", "worst_sine", "passed"],
    "properties": {"point": {"type": "string"}, "shape": {"type": "array"},
                   "worst_sine": {"type": "number"}, "passed": {"type": "boolean"}},
}

CERTIFICATE = {
    "type": "object",
    "required": ["coordinates", "rows", "residual", "sigma_min", "transverse", "multiplicity",
                 "suspect_multiple", "imag_norm", "real", "membership", "rational"],
    "properties": {
        "coordinates": {"type": "array", "items": COMPLEX},
        "rows": {"type": "array", "items": {"type": "array", "items": COMPLEX}},
        "residual": {"type": "number"},
        "sigma_min": FLOAT,
        "sigma_min_relative": FLOAT,
        "transverse": {"type": "boolean"},
        "multiplicity": {"type": "integer", "minimum": 1},
        "suspect_multiple": {"type": "boolean"},
        "imag_norm": FLOAT,
        "real": {"type": "boolean"},
        "real_residual": FLOAT,
        "membership": {"type": "array", "items": MEMBERSHIP},
        "isotropy_residual": FLOAT,
        "rational": {"anyOf": [{"type": "null"}, {
            "type": "object",
            "required": ["coordinates", "rows", "exact_residual", "pivot_condition"],
            "properties": {"coordinates": {"type": "array", "items": RATIONAL},
                           "rows": {"type": "array", "items": {"type": "array", "items": RATIONAL}}},
        }]},
    },
}

SOLVE_OUTPUT = {
    "type": "object",
    "required": ["problem", "count", "expected_count", "complete", "certified", "solutions"],
    "properties": {
        "problem": {"type": "object", "required": ["space", "conditions"],
                    "properties": {"conditions": {"type": "array", "items": CONDITION}}},
        "count": {"type": "integer", "minimum": 0},
        "expected_count": {"type": ["integer", "null"]},
        "complete": {"type": "boolean"},
        "certified": {"type": "boolean"},
        "solutions": {"type": "array", "items": CERTIFICATE},
    },
}

FIBER_OUTPUT = {
    "type": "object",
    "required": ["space", "target", "roots", "count", "complete", "points"],
    "properties": {
        "target": {"type": "array", "items": RATIONAL},
        "count": {"type": "integer", "minimum": 0},
        "complete": {"type": "boolean"},
        "points": {"type": "array", "items": {
            "type": "object", "required": ["conditions", "target_distance", "certificate"],
            "properties": {"certificate": CERTIFICATE, "target_distance": {"type": "number"}}}},
    },
}

VERIFY_OUTPUT = {
    "type": "object",
    "required": ["n", "passed", "flags", "identities"],
    "properties": {"passed": {"type": "boolean"}, "flags": {"type": "array"}, "identities": {"type": "array"}},
}

PMAP_OUTPUT = {
    "type": "object",
    "required": ["subspace", "isotropic", "wronskian", "p", "cells"],
    "properties": {
        "subspace": SUBSPACE,
        "isotropic": {"type": "boolean"},
        "wronskian": {"type": "array", "items": RATIONAL},
        "p": {"type": "array", "items": RATIONAL},
        "cells": {"type": "array"},
    },
}

WRONSKI_OUTPUT = {
    "type": "object",
    "required": ["subspace", "wronskian", "degree_bound", "cells"],
    "properties": {"subspace": SUBSPACE, "wronskian": {"type": "array", "items": RATIONAL}},
}

SAMPLE_OUTPUT = {"type": "object", "required": ["n", "seed", "points"],
                 "properties": {"points": {"type": "array", "items": SUBSPACE}}}

PARTITIONS_OUTPUT = {"type": "object", "required": ["entries"], "properties": {"entries": {"type": "array"}}}

ERROR_OUTPUT = {"type": "object", "required": ["error", "message"],
                "properties": {"error": {"type": "string"}, "message": {"type": "string"}}}

OUTPUTS = {
    "verify-flags": VERIFY_OUTPUT,
    "partitions": PARTITIONS_OUTPUT,
    "wronski": WRONSKI_OUTPUT,
    "pmap": PMAP_OUTPUT,
    "sample-isotropic": SAMPLE_OUTPUT,
    "solve": SOLVE_OUTPUT,
    "fiber": FIBER_OUTPUT,
}


def validate(document, schema) -> None:
    """Raise ``jsonschema.ValidationError`` on mismatch."""
    jsonschema.validate(document, schema)
