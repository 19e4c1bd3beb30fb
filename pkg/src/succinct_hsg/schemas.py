"""JSON Schemas for every document the CLI writes."""

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

POLY = {
    "type": "object",
    "required": ["vars", "terms"],
    "properties": {
        "vars": {"type": "array", "items": {"type": "string"}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["exp", "coeff"],
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "coeff": RATIONAL,
                },
            },
        },
    },
}

DESIGN = {
    "type": "object",
    "required": ["ell", "m", "n", "sets"],
    "properties": {
        "ell": {"type": "integer"},
        "m": {"type": "integer"},
        "n": {"type": "integer"},
        "sets": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

CIRCUIT = {
    "type": "object",
    "required": ["gates", "outputs"],
    "properties": {
        "gates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op"],
                "properties": {
                    "op": {"enum": ["input", "const", "add", "mul"]},
                    "label": {"type": "string"},
                    "value": RATIONAL,
                    "args": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "outputs": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
    },
}

_Y_TERM = {
    "type": "object",
    "required": ["y_exp", "z_poly"],
    "properties": {
        "y_exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "z_poly": POLY,
    },
}

SUCCINCT_F = {
    "type": "object",
    "required": ["n", "a", "p", "terms"],
    "properties": {
        "n": {"type": "integer"},
        "a": {"type": "integer"},
        "p": {"type": "integer"},
        "terms": {"type": "array", "items": _Y_TERM},
    },
}

COEFF_VECTOR = {
    "type": "object",
    "required": ["n", "d", "entries"],
    "properties": {
        "n": {"type": "integer"},
        "d": {"type": "integer"},
        "entries": {"type": "array", "items": _Y_TERM},
    },
}

DESIGN_REPORT = {
    "type": "object",
    "required": ["design", "report"],
    "properties": {
        "design": DESIGN,
        "report": {
            "type": "object",
            "required": ["valid", "violations"],
            "properties": {"valid": {"type": "boolean"}, "violations": {"type": "array"}},
        },
    },
}

_HOLDS = {"type": "object", "required": ["holds"], "properties": {"holds": {"type": "boolean"}}}

GADGETS_REPORT = {
    "type": "object",
    "required": ["p", "a", "n", "r", "mon", "sel", "rs_design", "holds"],
    "properties": {
        "mon": _HOLDS,
        "sel": _HOLDS,
        "rs_design": _HOLDS,
        "holds": {"type": "boolean"},
    },
}

BUILD_F = {
    "type": "object",
    "required": ["F"],
    "properties": {"F": SUCCINCT_F, "coeff_vector": COEFF_VECTOR},
}

SUCCINCT_REPORT = {
    "type": "object",
    "required": ["n", "d", "p", "N", "holds", "mismatches"],
    "properties": {"holds": {"type": "boolean"}, "mismatches": {"type": "array"}},
}

EQUATION_REPORT = {
    "type": "object",
    "required": ["N", "D", "samples", "rows", "columns", "rank", "sound", "equations"],
    "properties": {
        "rank": {"type": "integer"},
        "columns": {"type": "integer"},
        "sound": {"type": "boolean"},
        "equations": {"type": "array", "items": POLY},
    },
}

PIT_REPORT = {
    "type": "object",
    "required": ["circuits", "hit_exact", "hit_random", "missed_exact", "inconclusive",
                 "failures", "holds"],
    "properties": {
        "failures": {"type": "array", "items": CIRCUIT},
        "holds": {"type": "boolean"},
    },
}

BY_COMMAND = {
    "design": DESIGN_REPORT,
    "gadgets": GADGETS_REPORT,
    "build-f": BUILD_F,
    "check-succinct": SUCCINCT_REPORT,
    "find-equations": EQUATION_REPORT,
    "pit": PIT_REPORT,
}
