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

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.resolve()))

from relib.catalog.equipment import default_catalog  # noqa: E402
from relib.scenario.deployment import ScenarioId, sweep  # noqa: E402
from relib.utils.config import load_run_config  # noqa: E402

GOLDEN_PATH = Path(__file__).parent.resolve() / "golden"


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def run_config():
    return load_run_config()


@pytest.fixture(scope="session")
def model(run_config):
    return run_config.model


@pytest.fixture(scope="session")
def points(model):
    return sweep(list(ScenarioId), range(1, 101), model)
