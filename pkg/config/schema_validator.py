"""
Experiment spec validation using JSON Schema.
"""
from typing import Dict, Any, Optional
import jsonschema
from jsonschema.exceptions import best_match
from utils.logger import get_logger
from utils.exceptions import ValidationError

logger = get_logger(__name__)

_NUMBER_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

_METHOD_SCHEMA = {
    "type": "object",
    "required": ["name"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "enum": ["dnwr", "nnwr", "csw", "osw"]},
        "theta": {"type": "number"},
        "thetas": _NUMBER_LIST,
        "robin_p": {"type": "number", "exclusiveMinimum": 0},
        "robin_ps": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
        "overlap_cells": {"type": "integer", "minimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "max_iters": {"type": "integer", "minimum": 1},
        "norm": {"type": "string", "enum": ["sup", "l2"]},
        "flux": {"type": "string", "enum": ["conservative", "one_sided"]},
    },
}


class SchemaValidator:
    """
    Validates experiment spec documents against a JSON schema.
    """

    SPEC_SCHEMA = {
        "type": "object",
        "required": ["name", "problem", "grid", "method"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string", "pattern": "^[a-z0-9_]+$"},
            "description": {"type": "string"},
            "problem": {
                "type": "object",
                "required": ["family", "coefficients", "tau", "T", "domain"],
                "additionalProperties": False,
                "properties": {
                    "family": {"type": "string", "enum": ["parabolic", "wave", "neutral"]},
                    "coefficients": {"type": "object", "additionalProperties": {"type": "number"}},
                    "tau": {"type": "number", "exclusiveMinimum": 0},
                    "T": {"type": "number", "exclusiveMinimum": 0},
                    "domain": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                },
            },
            "grid": {
                "type": "object",
                "required": ["dt"],
                "additionalProperties": False,
                "properties": {
                    "dx": {"type": "number", "exclusiveMinimum": 0},
                    "nx": {"type": "integer", "minimum": 3},
                    "dt": {"type": "number", "exclusiveMinimum": 0},
                },
            },
            "method": {
                "oneOf": [
                    _METHOD_SCHEMA,
                    {"type": "array", "items": _METHOD_SCHEMA, "minItems": 1},
                ]
            },
            "partition": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "subdomains": {
                        "oneOf": [
                            {"type": "integer", "minimum": 2},
                            {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
                        ]
                    },
                    "boundaries": {
                        "oneOf": [
                            {"type": "string", "enum": ["equal"]},
                            {"type": "array", "items": {"type": "number"}, "minItems": 3},
                        ]
                    },
                    "split": {"type": "number"},
                    "points_per_subdomain": {"type": "integer", "minimum": 3},
                },
            },
            "guess": {"type": "string", "enum": ["t^2", "zero", "ones"]},
            "output": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "directory": {"type": "string"},
                    "plot_script": {"type": "boolean"},
                },
            },
        },
    }

    @staticmethod
    def validate_spec(config: Dict[str, Any]) -> tuple[bool, Optional[str], Optional[str]]:
        """
        Validate a spec document against the schema.

        Returns:
            (is_valid, error_message, dotted_field_path)
        """
        try:
            jsonschema.validate(instance=config, schema=SchemaValidator.SPEC_SCHEMA)
            return True, None, None
        except jsonschema.ValidationError as e:
            error = best_match([e]) or e
            field = '.'.join(str(p) for p in error.absolute_path) or None
            error_msg = f"Validation error at {field or '<root>'}: {error.message}"
            logger.warning("spec_validation_failed", error=error_msg)
            return False, error_msg, field

    @staticmethod
    def validate_and_raise(config: Dict[str, Any], schema_type: str = "spec"):
        """
        Validate a document and raise if invalid.

        Args:
            config: Parsed document
            schema_type: "spec" (only supported type)

        Raises:
            ValidationError: If validation fails
        """
        if schema_type != "spec":
            raise ValueError(f"Unknown schema type: {schema_type}")

        is_valid, error_msg, field = SchemaValidator.validate_spec(config)
        if not is_valid:
            raise ValidationError(error_msg or "Spec validation failed", field)
