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
Command line frontend of the RAN energy library.

    python ran_energy.py sweep --config my.yaml --chart --summary
    python ran_energy.py access compare --rates 1M:1G:log
    python ran_energy.py trend fit samples.csv
    python ran_energy.py trend project --e0 100 --mu 0.2 --t0 2008 --from 2008 --to 2030
    python ran_energy.py validate --config my.yaml

Exit codes: 0 ok, 2 invalid configuration, 3 I/O failure, 4 value outside the model domain.
"""
import functools
import logging
from pathlib import Path

import click
import pandas

from relib import VERSION
from relib.access.access_model import compare_technologies, profiles_from_config, rate_grid
from relib.scenario import deployment
from relib.scenario.deployment import DeploymentScenario, ScenarioId
from relib.trend import trend_model
from relib.utils import logger
from relib.utils.config import load_run_config, read_profiles
from relib.utils.errors import ConfigSchemaError, RanEnergyError
from relib.utils.report import (
    access_chart,
    frame_to_csv,
    sweep_charts,
    trend_chart,
    write_csv,
)

EXIT_IO = 3
NJ = 1e-9

config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="YAML run configuration merged over the built-in defaults",
)
lenient_option = click.option(
    "--lenient", is_flag=True, help="Ignore unknown configuration keys with a warning"
)


def _fail(excep: Exception, exit_code: int) -> None:
    logging.debug("Command failed", exc_info=excep)
    click.echo(f"error: {excep}", err=True)
    click.get_current_context().exit(exit_code)


def handle_errors(func):
    """Map library and I/O errors onto one-line messages and exit codes"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RanEnergyError as excep:
            _fail(excep, excep.exit_code)
        except OSError as excep:
            _fail(excep, EXIT_IO)

    return wrapper


@click.group()
@click.version_option(VERSION)
@click.option("--verbose", is_flag=True, help="Debug logging, tracebacks on errors")
@click.option("--log-file", is_flag=True, help="Log to ran_energy.log instead of stderr")
def cli(verbose: bool, log_file: bool) -> None:
    """Energy per user bit of radio access network deployments."""
    logger.logging_setup(
        logging_to_file=log_file,
        logging_level=logging.DEBUG if verbose else logging.WARNING,
    )


def _parse_scenarios(text: str) -> list[ScenarioId]:
    return [
        DeploymentScenario.parse(item.strip()).id for item in text.split(",") if item.strip()
    ]


def _summary(points: list, last_n_ru: int) -> None:
    present = set(points[0].breakdowns) if points else set()
    if {ScenarioId.S2, ScenarioId.S3} <= present:
        n_star = deployment.crossover(points, ScenarioId.S2, ScenarioId.S3)
        click.echo(
            "processing crossover S2/S3: "
            + (f"n_ru={n_star}" if n_star is not None else "none")
        )
    if ScenarioId.S1 in present and len(present) > 1:
        savings = deployment.savings_vs(points, ScenarioId.S1, last_n_ru)
        for sid, saving in savings.items():
            click.echo(f"{sid.value} total vs S1 @ n_ru={last_n_ru}: {saving:.1%} lower")


@cli.command()
@config_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Sweep CSV")
@click.option("--scenarios", help="Comma separated scenario ids, e.g. S1,S3")
@click.option("--chart", is_flag=True, help="Write SVG charts to the chart directory")
@click.option(
    "--chart-dir", type=click.Path(file_okay=False, path_type=Path), help="Chart directory"
)
@click.option("--log-y", is_flag=True, help="Logarithmic energy axis on charts")
@click.option("--summary", is_flag=True, help="Print crossover and savings")
@lenient_option
@handle_errors
def sweep(config_path, out, scenarios, chart, chart_dir, log_y, summary, lenient):
    """Densification sweep over the number of radio units."""
    config = load_run_config(config_path, strict=not lenient)
    selected = _parse_scenarios(scenarios) if scenarios else config.scenarios

    points = deployment.sweep(selected, config.n_ru_range, config.model)
    frame = deployment.sweep_frame(points)
    write_csv(frame, out or config.output.sweep_csv)

    if chart:
        sweep_charts(frame, chart_dir or config.output.chart_dir, log_y=log_y)
    if summary:
        _summary(points, config.n_ru_range[-1])


@cli.group()
def access():
    """Access network technologies."""


@access.command()
@config_option
@click.option("--rates", help="Rate grid lo:hi:log|lin[:points], e.g. 1M:1G:log")
@click.option(
    "--profiles",
    "profiles_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="YAML file with access profiles",
)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Access CSV")
@click.option("--chart", is_flag=True, help="Write access.svg next to the CSV")
@lenient_option
@handle_errors
def compare(config_path, rates, profiles_path, out, chart, lenient):
    """Energy per bit of every profile over a grid of access rates."""
    config = load_run_config(config_path, strict=not lenient)
    entries = (
        read_profiles(profiles_path, strict=not lenient)
        if profiles_path
        else config.access_entries
    )
    profiles = profiles_from_config(entries, config.catalog)
    table = compare_technologies(profiles, rate_grid(rates or config.access_rates))

    frame = pandas.DataFrame(
        {
            "tech": table["tech"],
            "r_u_bps": table["r_u_bps"],
            "e_u_nj_per_bit": table["e_u"] / NJ,
        }
    )
    path = write_csv(frame, out or config.output.access_csv)
    if chart:
        access_chart(frame, path.with_name("access.svg"))


@cli.group()
def trend():
    """Technology improvement trend."""


@trend.command()
@click.argument("samples_path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--t0", type=float, help="Reference year, default earliest sample")
@click.option("--chart", type=click.Path(dir_okay=False, path_type=Path), help="SVG path")
@handle_errors
def fit(samples_path, t0, chart):
    """Fit E(t) = e0 (1 - mu)^(t - t0) to a year,value CSV."""
    samples = trend_model.read_samples(samples_path)
    if t0 is None and samples:
        t0 = min(sample.year for sample in samples)
    result = trend_model.fit(samples, t0 if t0 is not None else 0.0)

    row = pandas.DataFrame(
        [{"e0": result.params.e0, "mu": result.params.mu, "r_squared": result.r_squared}]
    )
    click.echo(frame_to_csv(row), nl=False)
    if chart:
        trend_chart(samples, result, chart)


@trend.command()
@click.option("--e0", type=float, required=True)
@click.option("--mu", type=float, required=True)
@click.option("--t0", type=float, required=True)
@click.option("--from", "start", type=float, required=True)
@click.option("--to", "stop", type=float, required=True)
@click.option("--step", type=float, default=1.0, show_default=True)
@handle_errors
def project(e0, mu, t0, start, stop, step):
    """Project the trend year by year."""
    params = trend_model.TrendParams(e0=e0, mu=mu, t0=t0)
    click.echo(frame_to_csv(trend_model.project_range(params, start, stop, step)), nl=False)


@cli.command()
@config_option
@lenient_option
@handle_errors
def validate(config_path, lenient):
    """Check a configuration and list every default and override."""
    try:
        config = load_run_config(config_path, strict=not lenient)
        config.check_access()
    except ConfigSchemaError as excep:
        for line in excep.fields or [str(excep)]:
            click.echo(f"error: {line}", err=True)
        click.echo(f"{len(excep.fields) or 1} errors", err=True)
        click.get_current_context().exit(excep.exit_code)

    overrides = 0
    for entry in config.entries:
        if entry.source == "override":
            overrides += 1
            click.echo(f"{entry.path}: {entry.value!r} (override, default {entry.default!r})")
        else:
            click.echo(f"{entry.path}: {entry.value!r} (default)")
    click.echo(
        f"{len(config.entries) - overrides} defaults, {overrides} overrides, 0 errors"
    )


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
