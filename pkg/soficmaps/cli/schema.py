"""Versioned JSON schema of the command-line reports."""

SCHEMA_VERSION = "1"

_WORD = {"type": "string"}

_BLOCK_MAP = {
    "type": "object",
    "required": ["L", "table"],
    "properties": {
        "L": {"type": "integer", "minimum": 0},
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["block", "image"],
                "properties": {
                    "block": {"type": "array", "items": {"type": "string"}},
                    "image": {"type": "string"},
                },
            },
        },
    },
}

SCHEMA = {
    "schema_version": SCHEMA_VERSION,
    "definitions": {
        "error": {
            "type": "object",
            "required": ["error", "message"],
            "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
        },
        "triple": {
            "type": "object",
            "required": ["a_minus", "c", "a_plus"],
            "properties": {"a_minus": _WORD, "c": _WORD, "a_plus": _WORD},
        },
        "block_map": _BLOCK_MAP,
        "verdict": {
            "type": "object",
            "required": ["answer", "constants", "caps_used", "truncation_warnings"],
            "properties": {
                "answer": {"enum": ["yes", "no", "resource_exceeded"]},
                "constants": {"type": ["object", "null"]},
                "caps_used": {"type": "object"},
                "witness": {"type": "object"},
                "certificate": {"type": "string"},
                "truncation_warnings": {"type": "array", "items": {"type": "string"}},
                "exact": {"type": "boolean"},
            },
        },
        "oracle_result": {
            "type": "object",
            "required": ["window", "want", "exhausted", "nodes", "found"],
            "properties": {
                "window": {"type": "integer"},
                "want": {"enum": ["any", "infinite_image", "surjective", "meets_nonderived"]},
                "exhausted": {"type": "boolean"},
                "nodes": {"type": "integer"},
                "found": {"type": "array", "items": _BLOCK_MAP},
            },
        },
        "entropy": {
            "type": "object",
            "required": ["entropy_nats"],
            "properties": {"entropy_nats": {"type": "number"}},
        },
    },
    "verbs": {
        "info": "object",
        "entropy": "#/definitions/entropy",
        "semigroup": "object",
        "periodic": "object",
        "sync": "object",
        "derived": "object",
        "psi": "object",
        "decompose": "object",
        "triples": "object",
        "constants": "object",
        "decide-hom": "#/definitions/verdict",
        "decide-factor": "#/definitions/verdict",
        "oracle": "#/definitions/oracle_result",
    },
}
