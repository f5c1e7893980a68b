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
Exponential technology-improvement model of network equipment efficiency,

    E(t) = E0 * (1 - mu) ** (t - t0)

where mu is the annual improvement rate and E0 the value in year t0, together with
its least-squares fit in the log domain. A linear regression of ln(value) on
(year - t0) gives slope s and intercept b; mu = 1 - exp(s) and E0 = exp(b), which
makes project() the exact inverse of fit() on noiseless data.

Years are real numbers; datasheet release dates need not fall on integer years.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas

from relib.utils.errors import ConfigSchemaError, DegenerateFitError, DomainError


@dataclass(frozen=True)
class TrendParams:
    e0: float
    mu: float
    t0: float

    def __post_init__(self):
        if not self.e0 > 0:
            raise DomainError(f"e0 must be > 0, got {self.e0}")
        if not 0 <= self.mu < 1:
            raise DomainError(f"mu must lie in [0, 1), got {self.mu}")


@dataclass(frozen=True)
class TrendSample:
    year: float
    value: float


@dataclass(frozen=True)
class FitResult:
    params: TrendParams
    r_squared: float
    n_samples: int
    residuals: tuple[float, ...]


def project(params: TrendParams, t: float) -> float:
    """Value of the trend in year t. Years before t0 back-project."""
    return params.e0 * (1 - params.mu) ** (t - params.t0)


def project_range(
    params: TrendParams, start: float, stop: float, step: float = 1.0
) -> pandas.DataFrame:
    """Rows (year, value) from start to stop inclusive"""
    if step <= 0:
        raise DomainError(f"step must be > 0, got {step}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    years = start + step * np.arange(max(count, 0))
    return pandas.DataFrame(
        {"year": years, "value": [project(params, year) for year in years]}
    )


def fit(samples: Sequence[TrendSample], t0: float) -> FitResult:
    """
    Ordinary least squares of ln(value) on (year - t0).

    Raises DomainError for a non-positive value and DegenerateFitError when fewer
    than two distinct years are given.
    """
    years = np.array([sample.year for sample in samples], dtype=float)
    values = np.array([sample.value for sample in samples], dtype=float)

    if np.any(~(values > 0)):
        bad = [float(v) for v in values if not v > 0]
        raise DomainError(f"trend values must be > 0 for a log-domain fit, got {bad}")
    if np.unique(years).size < 2:
        raise DegenerateFitError("at least two distinct years are required for a fit")

    x = years - t0
    y = np.log(values)
    slope, intercept = np.polyfit(x, y, 1)

    residuals = y - (intercept + slope * x)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)

    mu = 1.0 - float(np.exp(slope))
    if mu < 0:
        raise DomainError(
            f"fitted trend increases over time (slope {slope:.6g}); mu would be negative"
        )

    params = TrendParams(e0=float(np.exp(intercept)), mu=mu, t0=float(t0))
    logging.info(
        "Trend fit on %d samples: e0=%.6g mu=%.6g r2=%.6g",
        len(samples),
        params.e0,
        params.mu,
        r_squared,
    )
    return FitResult(
        params=params,
        r_squared=r_squared,
        n_samples=len(samples),
        residuals=tuple(float(r) for r in residuals),
    )


def samples_from_rows(rows: Iterable[tuple[float, float]]) -> list[TrendSample]:
    return [TrendSample(year=float(year), value=float(value)) for year, value in rows]


def read_samples(path: str | Path) -> list[TrendSample]:
    """Two-column CSV with header year,value"""
    try:
        frame = pandas.read_csv(path)
    except (pandas.errors.EmptyDataError, pandas.errors.ParserError) as excep:
        raise ConfigSchemaError(
            "Cannot read trend samples", [f"{path}: {excep}"]
        ) from excep

    missing = {"year", "value"} - set(frame.columns)
    if missing:
        raise ConfigSchemaError(
            "Trend sample file lacks columns", [f"{path}: {name}" for name in sorted(missing)]
        )
    try:
        years = pandas.to_numeric(frame["year"], errors="raise")
        values = pandas.to_numeric(frame["value"], errors="raise")
    except (ValueError, TypeError) as excep:
        raise ConfigSchemaError(
            "Trend samples must be numeric", [f"{path}: {excep}"]
        ) from excep
    return samples_from_rows(zip(years, values))
