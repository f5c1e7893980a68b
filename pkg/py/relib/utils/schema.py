#  Copyright (C) 2024 LambdaScorpii
#
#  This program is free software;
#  you can redistribute it and/or modify it under the terms of the
#  Creative Commons Attribution-NonCommercial-ShareAlike License;
#  either version 3.0 of the License, or (at your option) any later version.
#
#  This program is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.
#  See https://creativecommons.org/licenses/by-nc-sa/3.0/ for more License Details.
"""Cerberus helpers shared by the configuration loaders"""
import logging
from typing import Any, Mapping

from cerberus import Validator

from relib.utils.errors import ConfigSchemaError

UNKNOWN_FIELD = "unknown field"


def flatten_errors(errors: Mapping, prefix: str = "") -> list[str]:
    """
    Turn the nested error tree of a cerberus Validator into "field.path: message" lines.
    List items appear as "[index]".
    """
    lines = []
    for key, value in errors.items():
        if isinstance(key, int):
            path = f"{prefix}[{key}]"
        else:
            path = f"{prefix}.{key}" if prefix else str(key)

        items = value if isinstance(value, list) else [value]
        for item in items:
            if isinstance(item, Mapping):
                lines.extend(flatten_errors(item, path))
            else:
                lines.append(f"{path}: {item}")
    return lines


def check_document(
    document: Any, schema: dict, strict: bool = True, prefix: str = ""
) -> dict:
    """
    Validate a parsed document against a cerberus schema.

    In strict mode unknown keys are errors. In lenient mode they are logged and
    purged from the returned document; every other violation still raises
    ConfigSchemaError.
    """
    if not isinstance(document, Mapping):
        raise ConfigSchemaError(
            "Configuration document must be a mapping",
            [f"{prefix or '<root>'}: got {type(document).__name__}"],
        )

    validator = Validator(schema)
    if validator.validate(dict(document)):
        return validator.document

    lines = flatten_errors(validator.errors, prefix)
    unknown = [line for line in lines if line.endswith(UNKNOWN_FIELD)]
    others = [line for line in lines if not line.endswith(UNKNOWN_FIELD)]

    if strict or others:
        raise ConfigSchemaError("Schema violation", lines if strict else others)

    for line in unknown:
        logging.warning("Ignoring %s (lenient mode)", line)

    lenient = Validator(schema, purge_unknown=True)
    lenient.validate(dict(document))
    return lenient.document
