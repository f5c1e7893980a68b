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
Access-network energy per user bit for wired and wireless access technologies,

    E_U = (2 / R_U) * (P_TU / N_TU + P_RN / N_RN + P_CPE / 2)

with R_U the user access rate, P_TU / N_TU the terminal unit in the local exchange
shared by N_TU users, P_RN / N_RN the remote node shared by N_RN users and P_CPE the
customer premises equipment. A technology without a remote node uses P_RN = 0, N_RN = 1.

Legacy technology profiles (PON, PtP, FTTN, WiMAX) are configuration data. The O-RAN
Split 8 and LTE profiles are derived from the equipment catalog.
"""
import logging
import re
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np
import pandas

from relib.catalog.equipment import Catalog, DeviceRole
from relib.utils.errors import ConfigSchemaError, DomainError

SI_PREFIX = {"": 1.0, "k": 1e3, "K": 1e3, "M": 1e6, "G": 1e9, "T": 1e12}
RATE_PATTERN = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([kKMGT]?)\s*$")


@dataclass(frozen=True)
class AccessTechProfile:
    name: str
    p_tu: float
    n_tu: float
    p_rn: float
    n_rn: float
    p_cpe: float
    calibration: bool = False

    def __post_init__(self):
        for key in ("p_tu", "p_rn", "p_cpe"):
            if getattr(self, key) < 0:
                raise DomainError(f"{self.name}: {key} must be >= 0")
        for key in ("n_tu", "n_rn"):
            if getattr(self, key) < 1:
                raise DomainError(f"{self.name}: {key} must be >= 1")


def access_energy_per_bit(profile: AccessTechProfile, r_u: float) -> float:
    """Energy per user bit (J/bit) at access rate r_u (bit/s)"""
    if not r_u > 0:
        raise DomainError(f"access rate must be > 0, got {r_u}")
    shared = profile.p_tu / profile.n_tu + profile.p_rn / profile.n_rn
    return (2.0 / r_u) * (shared + profile.p_cpe / 2.0)


def compare_technologies(
    profiles: Sequence[AccessTechProfile], r_u_grid: Sequence[float]
) -> pandas.DataFrame:
    """
    Cross product of profiles and access rates. Rows follow the profile order, rates
    ascending within a profile. Columns: tech, r_u_bps, e_u (J/bit).
    """
    if len(profiles) == 0:
        raise ConfigSchemaError("No access profiles given", ["access.profiles: empty"])
    if len(r_u_grid) == 0:
        raise ConfigSchemaError("No access rates given", ["access.rates: empty"])

    rates = sorted(float(rate) for rate in r_u_grid)
    rows = []
    for profile in profiles:
        for rate in rates:
            try:
                energy = access_energy_per_bit(profile, rate)
            except DomainError as excep:
                raise DomainError(f"{profile.name} @ r_u={rate:.6g}: {excep}") from excep
            rows.append((profile.name, rate, energy))

    return pandas.DataFrame(rows, columns=["tech", "r_u_bps", "e_u"])


def oran_split8_profile(
    catalog: Catalog,
    users_per_ru: int,
    switch_ports: int,
    p_cpe: float,
    name: str = "O-RAN Split 8",
) -> AccessTechProfile:
    """
    O-RAN Split 8 access: the radio unit is the remote node shared by its users, an
    access switch port per radio is the terminal unit.
    """
    switch = catalog.device(DeviceRole.ACCESS_SWITCH)
    radio = catalog.device(DeviceRole.RADIO)
    return AccessTechProfile(
        name=name,
        p_tu=switch.rated_power,
        n_tu=switch_ports * users_per_ru,
        p_rn=radio.rated_power,
        n_rn=users_per_ru,
        p_cpe=p_cpe,
    )


def lte_profile(
    catalog: Catalog,
    users_per_ru: int,
    switch_ports: int,
    p_cpe: float,
    name: str = "LTE",
) -> AccessTechProfile:
    """LTE cell site: radio plus an edge server doing BBP on site form the remote node."""
    switch = catalog.device(DeviceRole.ACCESS_SWITCH)
    radio = catalog.device(DeviceRole.RADIO)
    return AccessTechProfile(
        name=name,
        p_tu=switch.rated_power,
        n_tu=switch_ports * users_per_ru,
        p_rn=radio.rated_power + catalog.edge_server.total_power,
        n_rn=users_per_ru,
        p_cpe=p_cpe,
    )


DERIVED_PROFILES = {"oran_split8": oran_split8_profile, "lte": lte_profile}

ACCESS_PROFILE_SCHEMA = {
    "name": {"type": "string", "required": True, "empty": False},
    "derive": {"type": "string", "allowed": list(DERIVED_PROFILES)},
    "p_tu_w": {"type": "number", "min": 0, "excludes": "derive"},
    "n_tu": {"type": "number", "min": 1, "excludes": "derive"},
    "p_rn_w": {"type": "number", "min": 0, "excludes": "derive"},
    "n_rn": {"type": "number", "min": 1, "excludes": "derive"},
    "p_cpe_w": {"type": "number", "min": 0, "required": True},
    "users_per_ru": {"type": "integer", "min": 1, "dependencies": "derive"},
    "switch_ports": {"type": "integer", "min": 1, "dependencies": "derive"},
    "calibration": {"type": "boolean"},
}


def profiles_from_config(
    entries: Sequence[Mapping[str, Any]], catalog: Catalog
) -> list[AccessTechProfile]:
    """Profiles in configuration order. Entries with derive are built from the catalog."""
    profiles = []
    for index, entry in enumerate(entries):
        if "derive" in entry:
            profile = DERIVED_PROFILES[entry["derive"]](
                catalog,
                users_per_ru=entry.get("users_per_ru", 32),
                switch_ports=entry.get("switch_ports", 48),
                p_cpe=float(entry["p_cpe_w"]),
                name=entry["name"],
            )
        else:
            missing = [
                key for key in ("p_tu_w", "n_tu", "p_rn_w", "n_rn") if key not in entry
            ]
            if missing:
                raise ConfigSchemaError(
                    "Access profile incomplete",
                    [f"access.profiles[{index}].{key}: required field" for key in missing],
                )
            profile = AccessTechProfile(
                name=entry["name"],
                p_tu=float(entry["p_tu_w"]),
                n_tu=float(entry["n_tu"]),
                p_rn=float(entry["p_rn_w"]),
                n_rn=float(entry["n_rn"]),
                p_cpe=float(entry["p_cpe_w"]),
                calibration=bool(entry.get("calibration", False)),
            )
        if profile.calibration:
            logging.warning("Access profile %s uses placeholder parameters", profile.name)
        profiles.append(profile)
    return profiles


def parse_rate(text: str) -> float:
    """'100M' -> 1e8; plain numbers are bit/s"""
    match = RATE_PATTERN.match(str(text))
    if match is None:
        raise ConfigSchemaError("Cannot parse rate", [f"rates: {text!r}"])
    return float(match.group(1)) * SI_PREFIX[match.group(2)]


def rate_grid(spec: str, default_points: int = 25) -> np.ndarray:
    """
    Access rate grid from 'lo:hi:log|lin[:points]', e.g. '1M:1G:log' gives 25
    logarithmically spaced rates from 1 Mbps to 1 Gbps.
    """
    parts = str(spec).split(":")
    if len(parts) not in (3, 4) or parts[2] not in ("log", "lin"):
        raise ConfigSchemaError("Rates must read lo:hi:log|lin[:points]", [f"rates: {spec!r}"])

    low, high = parse_rate(parts[0]), parse_rate(parts[1])
    try:
        points = int(parts[3]) if len(parts) == 4 else default_points
    except ValueError as excep:
        raise ConfigSchemaError("Invalid point count", [f"rates: {spec!r}"]) from excep

    if points < 1 or not 0 < low <= high:
        raise ConfigSchemaError("Rates need 0 < lo <= hi and points >= 1", [f"rates: {spec!r}"])
    if points == 1:
        return np.array([low])
    if parts[2] == "log":
        return np.geomspace(low, high, points)
    return np.linspace(low, high, points)
