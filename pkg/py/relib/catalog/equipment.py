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
Equipment catalog. Holds the rated power and capacity of the network devices a bit
traverses (routers, switches, WDM line systems, radios, NICs) and the BBP servers at
edge sites and in the data center.

All values are kept in SI units: watts, bits per second and joules per bit. The
configuration document uses W and Gbps, as datasheets do, and is converted on load.

Example:
*Python*

catalog = load_catalog(DEFAULT_CONFIG_PATH)
router = catalog.device(DeviceRole.ROUTER)
energy_per_bit(router)   # 5.375e-11 J/bit
"""
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping

import yaml

from relib import DEFAULT_CONFIG_PATH
from relib.utils.errors import CatalogValidationError, ConfigSchemaError
from relib.utils.schema import check_document

GBPS = 1e9


class DeviceRole(str, Enum):
    """Role a device plays in the energy model"""

    ROUTER = "router"
    CORE_SWITCH = "core_switch"
    ACCESS_SWITCH = "access_switch"
    FIBER_LINK = "fiber_link"
    RADIO = "radio"
    NIC = "nic"


@dataclass(frozen=True)
class EquipmentSpec:
    """A named device with rated power (W) and capacity (bit/s)."""

    name: str
    rated_power: float
    capacity: float
    role: DeviceRole


@dataclass(frozen=True)
class ServerSpec:
    """
    BBP server. total_bbp_capacity is the eCPRI volume (bit/s) the whole server
    processes, so a fully loaded server spends cores * power_per_core / total_bbp_capacity
    joules per bit.
    """

    cores: int
    power_per_core: float
    total_bbp_capacity: float

    @property
    def total_power(self) -> float:
        return self.cores * self.power_per_core


@dataclass(frozen=True)
class Catalog:
    devices: tuple[EquipmentSpec, ...]
    edge_server: ServerSpec
    dc_server: ServerSpec

    def device(self, role: DeviceRole) -> EquipmentSpec:
        """First device of the given role"""
        for spec in self.devices:
            if spec.role == role:
                return spec
        raise CatalogValidationError(
            "Catalog has no device for a required role", [f"role: {role.value}"]
        )

    def by_name(self, name: str) -> EquipmentSpec:
        for spec in self.devices:
            if spec.name == name:
                return spec
        raise CatalogValidationError("Unknown device", [f"name: {name}"])

    def nic(self, name: str | None = None) -> EquipmentSpec:
        """
        Device used as the NIC / line-system chassis of a nodal unit. A name picks a
        device explicitly; otherwise a catalog entry with role nic is used, falling back
        to the access switch.
        """
        if name:
            return self.by_name(name)
        for spec in self.devices:
            if spec.role == DeviceRole.NIC:
                return spec
        return self.device(DeviceRole.ACCESS_SWITCH)

    def require_roles(self, roles: Iterable[DeviceRole]) -> None:
        present = {spec.role for spec in self.devices}
        missing = [role.value for role in roles if role not in present]
        if missing:
            raise CatalogValidationError(
                "Catalog lacks devices for required roles",
                [f"catalog.devices: no {role}" for role in missing],
            )

    def to_document(self) -> dict[str, Any]:
        """Serialize back into the configuration schema (W, Gbps)."""
        return {
            "devices": [
                {
                    "name": spec.name,
                    "role": spec.role.value,
                    "power_w": spec.rated_power,
                    "capacity_gbps": spec.capacity / GBPS,
                }
                for spec in self.devices
            ],
            "servers": {
                "edge": _server_document(self.edge_server),
                "dc": _server_document(self.dc_server),
            },
        }


DEVICE_SCHEMA = {
    "name": {"type": "string", "required": True, "empty": False},
    "role": {
        "type": "string",
        "required": True,
        "allowed": [role.value for role in DeviceRole],
    },
    "power_w": {"type": "number", "required": True},
    "capacity_gbps": {"type": "number", "required": True},
}

SERVER_SCHEMA = {
    "cores": {"type": "integer", "required": True},
    "power_per_core_w": {"type": "number", "required": True},
    "bbp_capacity_gbps": {"type": "number", "required": True},
}

CATALOG_SCHEMA = {
    "devices": {
        "type": "list",
        "required": True,
        "minlength": 1,
        "schema": {"type": "dict", "schema": DEVICE_SCHEMA},
    },
    "servers": {
        "type": "dict",
        "required": True,
        "schema": {
            "edge": {"type": "dict", "required": True, "schema": SERVER_SCHEMA},
            "dc": {"type": "dict", "required": True, "schema": SERVER_SCHEMA},
        },
    },
}


def _server_document(server: ServerSpec) -> dict[str, Any]:
    return {
        "cores": server.cores,
        "power_per_core_w": server.power_per_core,
        "bbp_capacity_gbps": server.total_bbp_capacity / GBPS,
    }


def _read_source(source: Mapping | str | Path) -> Mapping:
    if isinstance(source, Mapping):
        document = source
    else:
        with open(source, mode="r", encoding="utf-8") as stream:
            try:
                document = yaml.safe_load(stream)
            except yaml.YAMLError as excep:
                raise ConfigSchemaError(
                    "Cannot parse catalog document", [f"{source}: {excep}"]
                ) from excep

    # a full run configuration carries the catalog as one section
    if isinstance(document, Mapping) and "catalog" in document:
        return document["catalog"]
    return document


def _check_plausibility(document: Mapping, prefix: str) -> list[str]:
    problems = []
    seen: dict[str, int] = {}

    for index, device in enumerate(document["devices"]):
        path = f"{prefix}.devices[{index}]"
        for key in ("power_w", "capacity_gbps"):
            if not device[key] > 0:
                problems.append(f"{path}.{key}: must be > 0 ({device['name']})")
        if device["name"] in seen:
            problems.append(
                f"{path}.name: duplicate of devices[{seen[device['name']]}] ({device['name']})"
            )
        else:
            seen[device["name"]] = index

    for kind, server in document["servers"].items():
        path = f"{prefix}.servers.{kind}"
        if server["cores"] < 1:
            problems.append(f"{path}.cores: must be >= 1")
        for key in ("power_per_core_w", "bbp_capacity_gbps"):
            if not server[key] > 0:
                problems.append(f"{path}.{key}: must be > 0")

    return problems


def load_catalog(
    source: Mapping | str | Path, strict: bool = True, prefix: str = "catalog"
) -> Catalog:
    """
    Build a validated Catalog from a configuration document, a parsed mapping or a
    path to a YAML file. Raises ConfigSchemaError for schema violations and
    CatalogValidationError listing every implausible or duplicate entry.
    """
    document = check_document(_read_source(source), CATALOG_SCHEMA, strict, prefix)

    problems = _check_plausibility(document, prefix)
    if problems:
        raise CatalogValidationError("Invalid catalog entries", problems)

    devices = tuple(
        EquipmentSpec(
            name=device["name"],
            rated_power=float(device["power_w"]),
            capacity=float(device["capacity_gbps"]) * GBPS,
            role=DeviceRole(device["role"]),
        )
        for device in document["devices"]
    )
    servers = {
        kind: ServerSpec(
            cores=int(server["cores"]),
            power_per_core=float(server["power_per_core_w"]),
            total_bbp_capacity=float(server["bbp_capacity_gbps"]) * GBPS,
        )
        for kind, server in document["servers"].items()
    }

    catalog = Catalog(
        devices=devices, edge_server=servers["edge"], dc_server=servers["dc"]
    )
    logging.info("Catalog loaded with %d devices", len(devices))
    return catalog


def default_catalog() -> Catalog:
    """Catalog shipped with the default run configuration"""
    return load_catalog(DEFAULT_CONFIG_PATH)


def energy_per_bit(spec: EquipmentSpec) -> float:
    """Rated power over capacity, J/bit"""
    return spec.rated_power / spec.capacity


__all__ = [
    "Catalog",
    "DeviceRole",
    "EquipmentSpec",
    "GBPS",
    "ServerSpec",
    "default_catalog",
    "energy_per_bit",
    "load_catalog",
]
