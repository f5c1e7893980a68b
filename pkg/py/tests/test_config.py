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

import pytest
import yaml

from relib import DEFAULT_CONFIG_PATH
from relib.scenario.deployment import (
    ScenarioId,
    densification_hook,
    du_count,
    identity_hook,
    sweep,
)
from relib.utils.config import (
    deep_merge,
    describe_sources,
    load_run_config,
    read_document,
    read_profiles,
    resolve,
)
from relib.utils.errors import (
    CatalogValidationError,
    ConfigSchemaError,
    DomainError,
    MisconfigurationError,
)
from relib.xhaul.energy_model import NodalUnit, Segment


@pytest.fixture
def defaults():
    return read_document(DEFAULT_CONFIG_PATH)


def test_defaults_resolve(run_config):
    model = run_config.model
    assert run_config.scenarios == tuple(ScenarioId)
    assert run_config.n_ru_range == range(1, 101)
    assert model.e_w == pytest.approx(25e-9)
    assert model.traffic.ecpri_rate_per_ru == 11e9
    assert model.coverage_hook is densification_hook
    assert model.units[NodalUnit.DC].server == model.catalog.dc_server
    assert model.units[NodalUnit.CU].alpha == 2
    assert model.provisioning[NodalUnit.DU].fanout == 4
    assert model.hauls[Segment.BACKHAUL].hops_router == 2
    assert run_config.output.sweep_csv.name == "sweep.csv"


def test_deep_merge_replaces_lists():
    base = {"a": {"b": 1, "c": [1, 2]}, "d": 4}
    merged = deep_merge(base, {"a": {"c": [9]}, "e": 5})
    assert merged == {"a": {"b": 1, "c": [9]}, "d": 4, "e": 5}
    assert base["a"]["c"] == [1, 2]


def test_override():
    config = resolve(
        {"traffic": {"users": 200}, "sweep": {"coverage_hook": "identity", "n_ru_max": 10}}
    )
    assert config.model.traffic.users == 200
    assert config.model.traffic.monthly_gb_per_user == 10
    assert config.model.coverage_hook is identity_hook
    assert config.n_ru_range == range(1, 11)


def test_describe_sources(defaults):
    entries = {
        entry.path: entry for entry in describe_sources(defaults, {"traffic": {"users": 200}})
    }
    assert entries["traffic.users"].source == "override"
    assert entries["traffic.users"].value == 200
    assert entries["traffic.users"].default == 100
    assert entries["traffic.monthly_gb_per_user"].source == "default"
    assert entries["access.profiles"].source == "default"


def test_unknown_key_strict_and_lenient(caplog):
    with pytest.raises(ConfigSchemaError, match="traffic.bogus: unknown field"):
        resolve({"traffic": {"bogus": 1}})

    with caplog.at_level("WARNING"):
        config = resolve({"traffic": {"bogus": 1}}, strict=False)
    assert config.model.traffic.users == 100
    assert "traffic.bogus" in caplog.text


def test_lenient_still_rejects_bad_values():
    with pytest.raises(ConfigSchemaError, match="hauls.midhaul.hops_link"):
        resolve({"hauls": {"midhaul": {"hops_link": -1}}, "extra": 1}, strict=False)


def test_negative_power_names_field(defaults):
    devices = defaults["catalog"]["devices"]
    devices[0]["power_w"] = -5

    with pytest.raises(CatalogValidationError) as info:
        resolve({"catalog": {"devices": devices}})
    assert info.value.fields == ["catalog.devices[0].power_w: must be > 0 (Cisco 8000)"]


@pytest.mark.parametrize(
    "user, field",
    [
        ({"hauls": {"fronthaul": {"hops_router": 1}}}, "hauls.fronthaul.hops_router"),
        ({"sweep": {"n_ru_min": 20, "n_ru_max": 10}}, "sweep.n_ru_min"),
        ({"units": {"DU": {"count": 3}}}, "units.DU"),
    ],
)
def test_inconsistent_configuration(user, field):
    with pytest.raises(MisconfigurationError, match=field):
        resolve(user)


@pytest.mark.parametrize(
    "user",
    [
        {"sweep": {"scenarios": ["S5"]}},
        {"sweep": {"coverage_hook": "magic"}},
        {"units": {"RU": {"alpha": 0.5}}},
        {"units": {"RU": {"server": "cloud"}}},
        {"traffic": {"users": "many"}},
    ],
)
def test_schema_violations(user):
    with pytest.raises(ConfigSchemaError):
        resolve(user)


def test_unit_without_server_fails_at_sweep():
    config = resolve({"units": {"CU": {"server": None}}})
    sweep([ScenarioId.S2], range(1, 3), config.model)
    with pytest.raises(MisconfigurationError, match="S3 @ n_ru=1"):
        sweep([ScenarioId.S3], range(1, 3), config.model)


def test_named_nic():
    config = resolve({"units": {"DC": {"nic": "Cisco 9600"}}})
    assert config.model.units[NodalUnit.DC].nic.name == "Cisco 9600"

    with pytest.raises(CatalogValidationError):
        resolve({"units": {"DC": {"nic": "Nowhere 1"}}})


def test_load_from_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump({"sweep": {"scenarios": ["S1", "S4"]}}), encoding="utf-8")
    assert load_run_config(path).scenarios == (ScenarioId.S1, ScenarioId.S4)

    path.write_text("", encoding="utf-8")
    assert load_run_config(path).scenarios == tuple(ScenarioId)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_run_config(tmp_path / "absent.yaml")


def test_document_must_be_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigSchemaError, match="mapping"):
        load_run_config(path)


def test_read_profiles(tmp_path):
    path = tmp_path / "profiles.yaml"
    entry = {"name": "PtP", "p_tu_w": 220, "n_tu": 48, "p_rn_w": 0, "n_rn": 1, "p_cpe_w": 5}

    path.write_text(yaml.safe_dump([entry]), encoding="utf-8")
    assert read_profiles(path) == [entry]

    path.write_text(yaml.safe_dump({"profiles": [entry]}), encoding="utf-8")
    assert read_profiles(path) == [entry]

    path.write_text(yaml.safe_dump([dict(entry, derive="lte")]), encoding="utf-8")
    with pytest.raises(ConfigSchemaError, match=r"profiles\[0\]"):
        read_profiles(path)


def test_lenient_entries_leave_out_dropped_keys():
    config = resolve({"traffic": {"bogus": 1}, "output": {"format": "xlsx"}}, strict=False)
    paths = {entry.path for entry in config.entries}

    assert "traffic.bogus" not in paths
    assert "output.format" not in paths
    assert "format" not in config.document["output"]
    assert all(entry.source == "default" for entry in config.entries)


def test_catalog_must_cover_required_roles(defaults):
    devices = [d for d in defaults["catalog"]["devices"] if d["role"] != "router"]

    with pytest.raises(CatalogValidationError, match="catalog.devices: no router"):
        resolve({"catalog": {"devices": devices}})


@pytest.mark.parametrize(
    "traffic, message",
    [
        ({"monthly_gb_per_user": 0}, "traffic: user traffic must be > 0"),
        ({"ecpri_gbps_per_ru": 1e-6}, "traffic: eCPRI traffic"),
    ],
)
def test_traffic_domain_checked_on_resolve(traffic, message):
    with pytest.raises(DomainError, match=message):
        resolve({"traffic": traffic})


def test_check_access_builds_profiles():
    resolve().check_access()

    config = resolve({"access": {"profiles": [{"name": "X", "p_cpe_w": 1}]}})
    with pytest.raises(ConfigSchemaError, match=r"access.profiles\[0\].p_tu_w"):
        config.check_access()

    config = resolve({"access": {"profiles": []}})
    with pytest.raises(ConfigSchemaError, match="access.profiles: empty"):
        config.check_access()

    config = resolve({"access": {"rates": "1G:1M:log"}})
    with pytest.raises(ConfigSchemaError, match="rates"):
        config.check_access()


def test_sweep_du_count_follows_configured_fanout():
    config = resolve({"units": {"DU": {"fanout": 8}}, "sweep": {"n_ru_max": 20}})
    points = sweep([ScenarioId.S2], config.n_ru_range, config.model)

    assert [p.n_du for p in points] == [du_count(p.n_ru, 8) for p in points]
    assert points[8].n_du == 2
