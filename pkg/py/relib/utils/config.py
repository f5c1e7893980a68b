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
Run configuration. The shipped default document is loaded first, a user document is
merged over it (mappings key by key, lists and scalars replace), and the result is
validated and resolved into the SI-unit model inputs.
"""
import copy
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import yaml

from relib import DEFAULT_CONFIG_PATH
from relib.access.access_model import (
    ACCESS_PROFILE_SCHEMA,
    AccessTechProfile,
    compare_technologies,
    profiles_from_config,
    rate_grid,
)
from relib.catalog.equipment import CATALOG_SCHEMA, GBPS, Catalog, load_catalog
from relib.scenario.deployment import (
    COVERAGE_HOOKS,
    ModelConfig,
    Provisioning,
    ScenarioId,
)
from relib.utils.errors import (
    ConfigSchemaError,
    DomainError,
    MisconfigurationError,
    with_context,
)
from relib.utils.schema import check_document
from relib.xhaul.energy_model import (
    REQUIRED_ROLES,
    HaulParams,
    NodalUnit,
    Segment,
    TrafficModel,
    UnitParams,
)

NJ = 1e-9

UNIT_SCHEMA = {
    "server": {"type": "string", "allowed": ["edge", "dc"], "nullable": True},
    "alpha": {"type": "number", "min": 1},
    "sigma": {"type": "number", "min": 1},
    "rho": {"type": "number", "min": 1},
    "nic": {"type": "string", "nullable": True},
    "fanout": {"type": "integer", "min": 1, "nullable": True},
    "count": {"type": "integer", "min": 1, "nullable": True},
    "oversubscription": {"type": "number", "min": 1},
    "base_servers": {"type": "integer", "min": 0},
}

HAUL_SCHEMA = {
    "alpha": {"type": "number", "min": 1},
    "sigma": {"type": "number", "min": 1},
    "rho": {"type": "number", "min": 1},
    "hops_switch": {"type": "integer", "min": 0},
    "hops_link": {"type": "integer", "min": 0},
    "hops_router": {"type": "integer", "min": 0},
}

RUN_SCHEMA = {
    "catalog": {"type": "dict", "required": True, "schema": CATALOG_SCHEMA},
    "traffic": {
        "type": "dict",
        "required": True,
        "schema": {
            "users": {"type": "integer", "min": 1},
            "monthly_gb_per_user": {"type": "number", "min": 0},
            "ecpri_gbps_per_ru": {"type": "number", "min": 0},
            "e_w_nj_per_bit": {"type": "number", "min": 0},
        },
    },
    "units": {
        "type": "dict",
        "required": True,
        "schema": {
            unit.value: {"type": "dict", "required": True, "schema": UNIT_SCHEMA}
            for unit in NodalUnit
        },
    },
    "hauls": {
        "type": "dict",
        "required": True,
        "schema": {
            seg.value: {"type": "dict", "required": True, "schema": HAUL_SCHEMA}
            for seg in Segment
        },
    },
    "sweep": {
        "type": "dict",
        "required": True,
        "schema": {
            "n_ru_min": {"type": "integer", "min": 1},
            "n_ru_max": {"type": "integer", "min": 1},
            "scenarios": {
                "type": "list",
                "minlength": 1,
                "schema": {"type": "string", "allowed": [sid.value for sid in ScenarioId]},
            },
            "coverage_hook": {"type": "string", "allowed": list(COVERAGE_HOOKS)},
        },
    },
    "access": {
        "type": "dict",
        "required": True,
        "schema": {
            "rates": {"type": "string"},
            "profiles": {
                "type": "list",
                "schema": {"type": "dict", "schema": ACCESS_PROFILE_SCHEMA},
            },
        },
    },
    "output": {
        "type": "dict",
        "required": True,
        "schema": {
            "sweep_csv": {"type": "string"},
            "access_csv": {"type": "string"},
            "chart_dir": {"type": "string"},
        },
    },
}


@dataclass(frozen=True)
class OutputPaths:
    sweep_csv: Path
    access_csv: Path
    chart_dir: Path


@dataclass(frozen=True)
class ConfigEntry:
    """One leaf of the resolved document and where its value came from"""

    path: str
    value: Any
    source: str  # "default" or "override"
    default: Any = None


@dataclass(frozen=True)
class RunConfig:
    document: dict
    model: ModelConfig
    scenarios: tuple[ScenarioId, ...]
    n_ru_range: range
    access_rates: str
    access_entries: tuple[dict, ...]
    output: OutputPaths
    entries: tuple[ConfigEntry, ...] = ()

    @property
    def catalog(self) -> Catalog:
        return self.model.catalog

    def access_profiles(self) -> list[AccessTechProfile]:
        return profiles_from_config(self.access_entries, self.model.catalog)

    def check_access(self) -> None:
        """Build the configured access profiles and evaluate them over the rate grid."""
        compare_technologies(self.access_profiles(), rate_grid(self.access_rates))


def read_document(path: str | Path) -> dict:
    """Parse a YAML document. An empty file is an empty mapping."""
    with open(path, mode="r", encoding="utf-8") as stream:
        try:
            document = yaml.safe_load(stream)
        except yaml.YAMLError as excep:
            raise ConfigSchemaError(
                "Cannot parse configuration", [f"{path}: {excep}"]
            ) from excep
    if document is None:
        return {}
    if not isinstance(document, Mapping):
        raise ConfigSchemaError(
            "Configuration document must be a mapping",
            [f"{path}: got {type(document).__name__}"],
        )
    return dict(document)


def deep_merge(base: Mapping, override: Mapping) -> dict:
    merged = copy.deepcopy(dict(base))
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _leaves(document: Mapping, prefix: str = ""):
    for key, value in document.items():
        path = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, Mapping) and value:
            yield from _leaves(value, path)
        else:
            yield path, value


def describe_sources(
    defaults: Mapping, user: Mapping, document: Mapping | None = None
) -> list[ConfigEntry]:
    """
    Every leaf of the applied document, marked as default or override. document is
    the validated result; keys dropped in lenient mode are not part of it.
    """
    default_leaves = dict(_leaves(defaults))
    user_leaves = dict(_leaves(user))
    merged = deep_merge(defaults, user) if document is None else document
    return [
        ConfigEntry(
            path=path,
            value=value,
            source="override" if path in user_leaves else "default",
            default=default_leaves.get(path),
        )
        for path, value in _leaves(merged)
    ]


def _check_consistency(document: Mapping) -> list[str]:
    problems = []
    for name, unit in document["units"].items():
        if (unit.get("fanout") is None) == (unit.get("count") is None):
            problems.append(f"units.{name}: exactly one of fanout and count required")
    for name, haul in document["hauls"].items():
        if name != Segment.BACKHAUL.value and haul.get("hops_router", 0):
            problems.append(f"hauls.{name}.hops_router: only valid on the backhaul")
    sweep = document["sweep"]
    if sweep["n_ru_min"] > sweep["n_ru_max"]:
        problems.append("sweep.n_ru_min: must not exceed sweep.n_ru_max")
    return problems


def _build_model(document: Mapping, catalog: Catalog) -> ModelConfig:
    traffic_doc = document["traffic"]
    traffic = TrafficModel(
        users=int(traffic_doc["users"]),
        monthly_gb_per_user=float(traffic_doc["monthly_gb_per_user"]),
        ecpri_rate_per_ru=float(traffic_doc["ecpri_gbps_per_ru"]) * GBPS,
    )
    servers = {"edge": catalog.edge_server, "dc": catalog.dc_server, None: None}

    units, provisioning = {}, {}
    for unit in NodalUnit:
        entry = document["units"][unit.value]
        units[unit] = UnitParams(
            alpha=float(entry["alpha"]),
            sigma=float(entry["sigma"]),
            rho=float(entry["rho"]),
            nic=catalog.nic(entry.get("nic")),
            server=servers[entry.get("server")],
        )
        provisioning[unit] = Provisioning(
            fanout=entry.get("fanout"),
            count=entry.get("count"),
            oversubscription=float(entry["oversubscription"]),
            base_servers=int(entry["base_servers"]),
        )

    hauls = {
        seg: HaulParams(
            segment=seg,
            alpha=float(entry["alpha"]),
            sigma=float(entry["sigma"]),
            rho=float(entry["rho"]),
            hops_switch=int(entry["hops_switch"]),
            hops_link=int(entry["hops_link"]),
            hops_router=int(entry.get("hops_router", 0)),
        )
        for seg in Segment
        for entry in [document["hauls"][seg.value]]
    }

    return ModelConfig(
        catalog=catalog,
        traffic=traffic,
        e_w=float(traffic_doc["e_w_nj_per_bit"]) * NJ,
        units=units,
        provisioning=provisioning,
        hauls=hauls,
        coverage_hook=COVERAGE_HOOKS[document["sweep"]["coverage_hook"]],
    )


def resolve(user: Mapping | None = None, strict: bool = True) -> RunConfig:
    """Merge a parsed user document over the defaults and resolve it"""
    defaults = read_document(DEFAULT_CONFIG_PATH)
    user = dict(user or {})
    document = check_document(deep_merge(defaults, user), RUN_SCHEMA, strict)

    problems = _check_consistency(document)
    if problems:
        raise MisconfigurationError("Inconsistent configuration", problems)

    catalog = load_catalog(document["catalog"], strict=strict)
    catalog.require_roles(REQUIRED_ROLES)
    sweep = document["sweep"]
    output = document["output"]
    model = _build_model(document, catalog)
    try:
        model.traffic.with_n_ru(sweep["n_ru_min"]).check()
    except DomainError as excep:
        raise with_context(excep, "traffic") from excep

    return RunConfig(
        document=document,
        model=model,
        scenarios=tuple(
            sid for sid in ScenarioId if sid.value in set(sweep["scenarios"])
        ),
        n_ru_range=range(sweep["n_ru_min"], sweep["n_ru_max"] + 1),
        access_rates=document["access"]["rates"],
        access_entries=tuple(document["access"]["profiles"]),
        output=OutputPaths(
            sweep_csv=Path(output["sweep_csv"]),
            access_csv=Path(output["access_csv"]),
            chart_dir=Path(output["chart_dir"]),
        ),
        entries=tuple(describe_sources(defaults, user, document)),
    )


def load_run_config(path: str | Path | None = None, strict: bool = True) -> RunConfig:
    """Resolve the run configuration at path, or the defaults when path is None."""
    user = read_document(path) if path is not None else {}
    config = resolve(user, strict)
    logging.info(
        "Configuration resolved from %s", path if path is not None else "defaults"
    )
    return config


def read_profiles(path: str | Path, strict: bool = True) -> list[dict]:
    """
    Access profiles from a YAML file holding a list of profiles, a mapping with a
    profiles key or a full run configuration.
    """
    with open(path, mode="r", encoding="utf-8") as stream:
        try:
            document = yaml.safe_load(stream)
        except yaml.YAMLError as excep:
            raise ConfigSchemaError(
                "Cannot parse profile file", [f"{path}: {excep}"]
            ) from excep

    if isinstance(document, Mapping):
        document = document.get("access", document).get("profiles")
    if not isinstance(document, list):
        raise ConfigSchemaError(
            "Profile file must hold a list of profiles", [f"{path}: no profiles list"]
        )
    return [
        check_document(entry, ACCESS_PROFILE_SCHEMA, strict, prefix=f"profiles[{index}]")
        for index, entry in enumerate(document)
    ]
