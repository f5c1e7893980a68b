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

import copy

import pytest
import yaml

from relib import DEFAULT_CONFIG_PATH
from relib.catalog.equipment import (
    DeviceRole,
    energy_per_bit,
    load_catalog,
)
from relib.utils.errors import CatalogValidationError, ConfigSchemaError


@pytest.fixture
def catalog_document():
    with open(DEFAULT_CONFIG_PATH, encoding="utf-8") as stream:
        return copy.deepcopy(yaml.safe_load(stream)["catalog"])


def test_default_catalog_energy_per_bit(catalog):
    assert energy_per_bit(catalog.device(DeviceRole.ROUTER)) == pytest.approx(5.375e-11)
    assert energy_per_bit(catalog.device(DeviceRole.ACCESS_SWITCH)) == pytest.approx(
        1.80625e-10
    )
    assert energy_per_bit(catalog.device(DeviceRole.CORE_SWITCH)) == pytest.approx(
        1.171875e-10
    )
    assert energy_per_bit(catalog.device(DeviceRole.FIBER_LINK)) == pytest.approx(
        4.4427083333e-10
    )


def test_servers(catalog):
    assert catalog.edge_server.total_power == 24
    assert catalog.edge_server.total_bbp_capacity == 1e9
    assert catalog.dc_server.total_power == pytest.approx(110)
    assert catalog.dc_server.total_bbp_capacity == 5e9


def test_nic_falls_back_to_access_switch(catalog):
    assert catalog.nic().role == DeviceRole.ACCESS_SWITCH
    assert catalog.nic("Cisco 9600").role == DeviceRole.CORE_SWITCH


def test_unknown_device_name(catalog):
    with pytest.raises(CatalogValidationError, match="Unknown device"):
        catalog.nic("no such box")


def test_load_from_mapping_and_full_config(catalog_document):
    direct = load_catalog(catalog_document)
    wrapped = load_catalog({"catalog": catalog_document})
    assert direct == wrapped
    assert len(direct.devices) == 5


def test_to_document_reloads(catalog):
    assert load_catalog(catalog.to_document()) == catalog


def test_non_positive_values_are_listed(catalog_document):
    catalog_document["devices"][0]["power_w"] = -1
    catalog_document["devices"][2]["capacity_gbps"] = 0
    catalog_document["servers"]["edge"]["cores"] = 0

    with pytest.raises(CatalogValidationError) as info:
        load_catalog(catalog_document)

    assert info.value.fields == [
        "catalog.devices[0].power_w: must be > 0 (Cisco 8000)",
        "catalog.devices[2].capacity_gbps: must be > 0 (Cisco Catalyst 1300)",
        "catalog.servers.edge.cores: must be >= 1",
    ]
    assert info.value.exit_code == 2


def test_duplicate_names(catalog_document):
    catalog_document["devices"].append(dict(catalog_document["devices"][0]))

    with pytest.raises(CatalogValidationError, match=r"devices\[5\].name: duplicate"):
        load_catalog(catalog_document)


def test_unknown_key_strict_and_lenient(catalog_document, caplog):
    catalog_document["devices"][1]["colour"] = "blue"

    with pytest.raises(ConfigSchemaError, match=r"catalog.devices\[1\].colour"):
        load_catalog(catalog_document)

    with caplog.at_level("WARNING"):
        loaded = load_catalog(catalog_document, strict=False)
    assert len(loaded.devices) == 5
    assert "colour" in caplog.text


def test_unknown_role(catalog_document):
    catalog_document["devices"][0]["role"] = "toaster"

    with pytest.raises(ConfigSchemaError, match="role"):
        load_catalog(catalog_document)


def test_require_roles(catalog_document):
    catalog_document["devices"] = [
        d for d in catalog_document["devices"] if d["role"] != "router"
    ]
    catalog = load_catalog(catalog_document)

    with pytest.raises(CatalogValidationError, match="no router"):
        catalog.require_roles([DeviceRole.ROUTER, DeviceRole.RADIO])
    with pytest.raises(CatalogValidationError):
        catalog.device(DeviceRole.ROUTER)


def test_load_from_yaml_file(tmp_path, catalog_document):
    path = tmp_path / "catalog.yaml"
    path.write_text(yaml.safe_dump({"catalog": catalog_document}), encoding="utf-8")
    assert len(load_catalog(path).devices) == 5


def test_broken_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("devices: [", encoding="utf-8")
    with pytest.raises(ConfigSchemaError, match="Cannot parse"):
        load_catalog(path)
