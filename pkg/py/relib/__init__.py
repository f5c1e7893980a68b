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
RAN energy library. Transaction-based accounting of the energy a radio access network
spends per user bit: radio, baseband processing and x-haul transport, as a function of
where the baseband processing (BBP) sits and how densely radio units are deployed.
"""

from pathlib import Path

VERSION = "v2024.03.04"
DATA_PATH = Path(__file__).parent.resolve() / "data"
DEFAULT_CONFIG_PATH = DATA_PATH / "default_config.yaml"
