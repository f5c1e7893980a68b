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
Output writers: CSV tables with a fixed numeric format and SVG line charts.

CSV is the contract. Numbers carry 6 significant digits, rows end with LF and files
are UTF-8. Charts are a convenience rendering of the same frames.
"""
import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plot  # noqa: E402
import numpy as np  # noqa: E402
import pandas  # noqa: E402

from relib.trend.trend_model import FitResult, TrendSample, project  # noqa: E402

FLOAT_FORMAT = "%.6g"
STYLE = "seaborn-v0_8-darkgrid"

plot.rcParams["svg.hashsalt"] = "relib"


def frame_to_csv(frame: pandas.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_csv(frame: pandas.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8", newline="") as stream:
        stream.write(frame_to_csv(frame))
    logging.info("Wrote %d rows to %s", len(frame), path)
    return path


def _figure(title: str):
    plot.style.use(STYLE)
    figure = plot.figure(figsize=(7.5, 5))
    figure.suptitle(title)
    return figure, figure.add_subplot()


def _save(figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    figure.savefig(path, format="svg", metadata={"Date": None})
    plot.close(figure)
    logging.info("Wrote chart %s", path)
    return path


def sweep_charts(
    frame: pandas.DataFrame, chart_dir: str | Path, log_y: bool = False
) -> list[Path]:
    """processing.svg, radio_transport.svg and total.svg from a sweep frame"""
    chart_dir = Path(chart_dir)
    written = []
    panels = [
        ("processing.svg", "Processing energy", [("e_pr", "-")]),
        (
            "radio_transport.svg",
            "Radio (dashed) and transport (solid) energy",
            [("e_ra", "--"), ("e_tr", "-")],
        ),
        ("total.svg", "Total energy", [("e_total", "-")]),
    ]
    frame = frame.assign(e_ra=frame["e_w"] + frame["e_e"])

    for file_name, title, columns in panels:
        figure, axes = _figure(title)
        for scenario, group in frame.groupby("scenario", sort=True):
            color = None
            for column, style in columns:
                (line,) = axes.plot(
                    group["n_ru"],
                    group[column],
                    style,
                    color=color,
                    label=f"{scenario} {column}" if len(columns) > 1 else scenario,
                )
                color = line.get_color()
        axes.set_xlabel("Number of RUs")
        axes.set_ylabel("Energy per bit (nJ/bit)")
        if log_y:
            axes.set_yscale("log")
        axes.legend()
        written.append(_save(figure, chart_dir / file_name))
    return written


def access_chart(frame: pandas.DataFrame, path: str | Path) -> Path:
    """Log-log energy per bit over access rate, one line per technology"""
    figure, axes = _figure("Access network energy per bit")
    for tech, group in frame.groupby("tech", sort=False):
        axes.plot(group["r_u_bps"], group["e_u_nj_per_bit"], label=tech)
    axes.set_xscale("log")
    axes.set_yscale("log")
    axes.set_xlabel("Access rate (bit/s)")
    axes.set_ylabel("Energy per bit (nJ/bit)")
    axes.legend()
    return _save(figure, Path(path))


def trend_chart(
    samples: Sequence[TrendSample], result: FitResult, path: str | Path
) -> Path:
    figure, axes = _figure(
        f"Fitted improvement rate {result.params.mu:.1%} per year "
        f"(R^2 = {result.r_squared:.3f})"
    )
    years = np.array([sample.year for sample in samples], dtype=float)
    axes.scatter(years, [sample.value for sample in samples], label="samples")
    grid = np.linspace(years.min(), years.max(), 100)
    axes.plot(grid, [project(result.params, year) for year in grid], label="fit")
    axes.set_yscale("log")
    axes.set_xlabel("Year")
    axes.set_ylabel("Value")
    axes.legend()
    return _save(figure, Path(path))
