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
"""
Exceptions raised by the RAN energy library. Every error carries the exit code the
command line frontend reports for it (schema = 2, I/O = 3, domain = 4).
"""


class RanEnergyError(Exception):
    """Base class for all library errors"""

    exit_code = 1


class ConfigSchemaError(RanEnergyError):
    """A configuration document does not match the documented schema."""

    exit_code = 2

    def __init__(self, message: str, fields: list[str] | None = None):
        self.fields = list(fields or [])
        if self.fields:
            message = f"{message}: " + "; ".join(self.fields)
        super().__init__(message)


class CatalogValidationError(ConfigSchemaError):
    """Equipment or server entries are physically implausible or ambiguous."""


class MisconfigurationError(ConfigSchemaError):
    """The model configuration is inconsistent, e.g. BBP placed at a unit without a server."""


class DomainError(RanEnergyError, ValueError):
    """A numeric argument lies outside the domain of the model."""

    exit_code = 4


class DegenerateFitError(DomainError):
    """Not enough distinct abscissae to fit a trend."""


def with_context(excep: RanEnergyError, context: str) -> RanEnergyError:
    """Copy of excep with its message prefixed by context, keeping class and fields."""
    wrapped = type(excep)(f"{context}: {excep}")
    if isinstance(excep, ConfigSchemaError):
        wrapped.fields = excep.fields
    return wrapped
