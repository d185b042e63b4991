"""JSON schema every ``--json`` report is validated against before printing."""

import json
from typing import Any

from jsonschema import Draft202012Validator
from jsonschema.exceptions import ValidationError

from glmn_norm.reports.models import Report
from glmn_norm.utils.exceptions import InternalError

SCALAR_SCHEMA: dict[str, Any] = {
    "oneOf": [
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "glmn-norm report",
    "type": "object",
    "required": ["command", "passed", "checks", "data"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string", "minLength": 1},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": ["boolean", "null"]},
                    "lhs": SCALAR_SCHEMA,
                    "rhs": SCALAR_SCHEMA,
                    "value": SCALAR_SCHEMA,
                    "detail": {"type": "string"},
                },
            },
        },
        "data": {"type": "object"},
    },
}

_VALIDATOR = Draft202012Validator(REPORT_SCHEMA)


def validate_report(document: dict) -> None:
    """Raise InternalError when ``document`` does not match REPORT_SCHEMA."""
    try:
        _VALIDATOR.validate(document)
    except ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InternalError(f"report does not match its schema at {path}: {e.message}") from e


def report_to_json(report: Report) -> str:
    """Deterministic JSON text: sorted keys, no timestamps."""
    document = report.to_dict()
    validate_report(document)
    return json.dumps(document, sort_keys=True, indent=2)
