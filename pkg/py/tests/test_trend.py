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

import math

import numpy as np
import pytest

from relib.trend.trend_model import (
    TrendParams,
    TrendSample,
    fit,
    project,
    project_range,
    read_samples,
    samples_from_rows,
)
from relib.utils.errors import ConfigSchemaError, DegenerateFitError, DomainError


def exponential_samples(e0=50.0, mu=0.2, t0=2008, years=range(2008, 2024)):
    return [TrendSample(year, e0 * (1 - mu) ** (year - t0)) for year in years]


def ols_oracle(samples, t0):
    """Textbook simple linear regression of ln(value) on (year - t0)"""
    x = [s.year - t0 for s in samples]
    y = [math.log(s.value) for s in samples]
    n = len(x)
    x_bar = sum(x) / n
    y_bar = sum(y) / n
    s_xy = sum((xi - x_bar) * (yi - y_bar) for xi, yi in zip(x, y))
    s_xx = sum((xi - x_bar) ** 2 for xi in x)
    s_yy = sum((yi - y_bar) ** 2 for yi in y)
    slope = s_xy / s_xx
    intercept = y_bar - slope * x_bar
    return 1 - math.exp(slope), math.exp(intercept), s_xy**2 / (s_xx * s_yy)


@pytest.mark.parametrize(
    "e0, mu, t0, t, expected",
    [
        (100, 0.2, 2008, 2009, 80),
        (100, 0.0, 2008, 2030, 100),
        (100, 0.2, 2008, 2018, 100 * 0.8**10),
        (100, 0.2, 2008, 2007, 125),
    ],
)
def test_project(e0, mu, t0, t, expected):
    assert project(TrendParams(e0, mu, t0), t) == pytest.approx(expected, rel=1e-12)


def test_project_range():
    frame = project_range(TrendParams(100, 0.2, 2008), 2008, 2012)
    assert list(frame.columns) == ["year", "value"]
    assert list(frame["year"]) == [2008, 2009, 2010, 2011, 2012]
    assert frame["value"].iloc[-1] == pytest.approx(100 * 0.8**4)


@pytest.mark.parametrize("e0, mu", [(0, 0.2), (-1, 0.2), (10, 1.0), (10, -0.1)])
def test_invalid_params(e0, mu):
    with pytest.raises(DomainError):
        TrendParams(e0, mu, 2008)


def test_fit_noiseless_recovery():
    result = fit(exponential_samples(), t0=2008)

    assert result.params.mu == pytest.approx(0.2, rel=1e-9)
    assert result.params.e0 == pytest.approx(50.0, rel=1e-9)
    assert result.r_squared == pytest.approx(1.0, rel=1e-9)
    assert result.n_samples == 16
    assert max(abs(r) for r in result.residuals) < 1e-9


def test_fit_then_project_reproduces_inputs():
    samples = exponential_samples(e0=7.5, mu=0.13, t0=2010, years=[2010, 2012.5, 2019])
    params = fit(samples, t0=2010).params
    for sample in samples:
        assert project(params, sample.year) == pytest.approx(sample.value, rel=1e-9)


def test_fit_matches_ols_oracle_on_noisy_data():
    rng = np.random.default_rng(7)
    years = np.arange(2008, 2024)
    noise = rng.lognormal(sigma=0.3, size=years.size)
    samples = [
        TrendSample(float(y), 50 * 0.8 ** (y - 2008) * n) for y, n in zip(years, noise)
    ]

    result = fit(samples, t0=2008)
    mu, e0, r_squared = ols_oracle(samples, 2008)

    assert result.params.mu == pytest.approx(mu, rel=1e-9)
    assert result.params.e0 == pytest.approx(e0, rel=1e-9)
    assert result.r_squared == pytest.approx(r_squared, rel=1e-9)
    assert 0 <= result.r_squared <= 1


def test_scaling_values_scales_e0_only():
    rng = np.random.default_rng(11)
    samples = [
        TrendSample(2008 + i, 20 * 0.85**i * rng.lognormal(sigma=0.2)) for i in range(12)
    ]
    scaled = [TrendSample(s.year, 3.5 * s.value) for s in samples]

    base, other = fit(samples, 2008), fit(scaled, 2008)
    assert other.params.e0 == pytest.approx(3.5 * base.params.e0, rel=1e-10)
    assert other.params.mu == pytest.approx(base.params.mu, rel=1e-10)
    assert other.r_squared == pytest.approx(base.r_squared, rel=1e-10)


def test_shifting_t0():
    samples = exponential_samples(e0=50.0, mu=0.2)
    base, shifted = fit(samples, 2008), fit(samples, 2011)

    assert shifted.params.mu == pytest.approx(base.params.mu, rel=1e-9)
    assert shifted.params.e0 == pytest.approx(
        base.params.e0 * (1 - base.params.mu) ** 3, rel=1e-9
    )


def test_non_positive_value():
    samples = exponential_samples()[:3] + [TrendSample(2020, 0.0)]
    with pytest.raises(DomainError, match="must be > 0"):
        fit(samples, 2008)


@pytest.mark.parametrize(
    "rows", [[], [(2010, 5.0)], [(2010, 5.0), (2010, 4.0), (2010, 3.0)]]
)
def test_degenerate_fit(rows):
    with pytest.raises(DegenerateFitError):
        fit(samples_from_rows(rows), 2010)


def test_increasing_trend_rejected():
    samples = samples_from_rows([(2008, 1.0), (2009, 2.0), (2010, 4.0)])
    with pytest.raises(DomainError, match="increases"):
        fit(samples, 2008)


def test_read_samples(tmp_path):
    path = tmp_path / "samples.csv"
    path.write_text("year,value\n2008,10\n2009,8\n", encoding="utf-8")
    assert read_samples(path) == [TrendSample(2008.0, 10.0), TrendSample(2009.0, 8.0)]

    path.write_text("when,value\n2008,10\n", encoding="utf-8")
    with pytest.raises(ConfigSchemaError, match="when|year"):
        read_samples(path)


@pytest.mark.parametrize(
    "content, message",
    [
        ("year,value\n2008,abc\n2009,5\n", "must be numeric"),
        ("", "Cannot read trend samples"),
    ],
)
def test_read_samples_rejects_malformed_files(tmp_path, content, message):
    path = tmp_path / "samples.csv"
    path.write_text(content, encoding="utf-8")

    with pytest.raises(ConfigSchemaError, match=message) as info:
        read_samples(path)
    assert info.value.fields[0].startswith(str(path))
