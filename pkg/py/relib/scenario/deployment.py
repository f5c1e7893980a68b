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
Deployment scenarios and the densification sweep.

A scenario fixes where baseband processing (BBP) happens:

    S1  D-RAN, BBP at every radio unit
    S2  BBP at the distributed units
    S3  BBP centralized at the central units
    S4  BBP in the regional data center

Units upstream of the BBP unit forward eCPRI. The sweep keeps the served users fixed
and increases the number of radio units; distributed units follow with one per
fan-out group of RUs, central units and the data center are fixed counts.

Example:
*Python*

model = load_run_config().model
points = sweep(list(ScenarioId), range(1, 101), model)
crossover(points, ScenarioId.S2, ScenarioId.S3)   # 33
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

import pandas

from relib.catalog.equipment import Catalog, DeviceRole
from relib.utils.errors import (
    DomainError,
    MisconfigurationError,
    RanEnergyError,
    with_context,
)
from relib.xhaul.energy_model import (
    SEGMENT_SOURCE,
    EnergyBreakdown,
    HaulParams,
    NodalUnit,
    Segment,
    TrafficModel,
    UnitParams,
    equipment_energy,
    gamma_equipment,
    gamma_haul,
    haul_energy,
    processing_energy,
    radio_energy,
    total_energy,
)

NJ = 1e-9
DU_FANOUT = 4

SWEEP_COLUMNS = [
    "scenario",
    "n_ru",
    "n_du",
    "n_cu",
    "e_w",
    "e_e",
    "e_pr",
    "e_eq",
    "e_fh",
    "e_mh",
    "e_bh",
    "e_tr",
    "e_total",
]


class ScenarioId(str, Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"


_BBP_LOCATION = {
    ScenarioId.S1: NodalUnit.RU,
    ScenarioId.S2: NodalUnit.DU,
    ScenarioId.S3: NodalUnit.CU,
    ScenarioId.S4: NodalUnit.DC,
}


@dataclass(frozen=True)
class DeploymentScenario:
    id: ScenarioId

    @property
    def bbp_location(self) -> NodalUnit:
        return _BBP_LOCATION[self.id]

    @classmethod
    def parse(cls, value: "str | ScenarioId | DeploymentScenario") -> "DeploymentScenario":
        if isinstance(value, DeploymentScenario):
            return value
        try:
            return cls(ScenarioId(value))
        except ValueError as excep:
            raise MisconfigurationError(
                "Unknown scenario id", [f"scenarios: {value}"]
            ) from excep


@dataclass(frozen=True)
class Provisioning:
    """
    How many instances of a nodal unit exist and how many servers each holds.

    A fan-out unit has one instance per group of fanout RUs, each dimensioned for a
    full group. A counted unit has a fixed number of instances with the RUs spread
    round-robin over them. Each instance holds base_servers plus enough servers to
    process the eCPRI of its RUs at the given oversubscription.
    """

    fanout: int | None = None
    count: int | None = None
    oversubscription: float = 1.0
    base_servers: int = 0

    def __post_init__(self):
        if (self.fanout is None) == (self.count is None):
            raise MisconfigurationError(
                "Provisioning needs exactly one of fanout and count",
                [f"fanout: {self.fanout}, count: {self.count}"],
            )
        size = self.fanout if self.fanout is not None else self.count
        if size < 1 or self.oversubscription <= 0:
            raise MisconfigurationError(
                "Provisioning values out of range",
                [
                    f"fanout: {self.fanout}, count: {self.count}, "
                    f"oversubscription: {self.oversubscription}"
                ],
            )
        if self.base_servers < 0:
            raise MisconfigurationError(
                "base_servers must be >= 0", [f"base_servers: {self.base_servers}"]
            )

    def instances(self, n_ru: int) -> int:
        if self.fanout is not None:
            return math.ceil(n_ru / self.fanout)
        return self.count

    def attached(self, n_ru: int) -> list[int]:
        """RUs each instance is dimensioned for"""
        if self.fanout is not None:
            return [self.fanout] * self.instances(n_ru)
        share, rest = divmod(n_ru, self.count)
        return [share + (1 if index < rest else 0) for index in range(self.count)]

    def servers(self, n_ru: int, server_capacity: float, ecpri_rate: float) -> int:
        return sum(
            self.base_servers
            + math.ceil(rus * ecpri_rate / (server_capacity * self.oversubscription))
            for rus in self.attached(n_ru)
        )


CoverageHook = Callable[[NodalUnit, int, "ModelConfig"], float]


def identity_hook(unit: NodalUnit, n_ru: int, model: "ModelConfig") -> float:
    return 1.0


def densification_hook(unit: NodalUnit, n_ru: int, model: "ModelConfig") -> float:
    """
    Deployed instances of the unit relative to a deployment with one RU per user.
    Equals 1 once every user has its own radio unit.
    """
    provisioning = model.provisioning[unit]
    return provisioning.instances(n_ru) / provisioning.instances(model.traffic.users)


COVERAGE_HOOKS: dict[str, CoverageHook] = {
    "identity": identity_hook,
    "densification": densification_hook,
}


@dataclass(frozen=True)
class ModelConfig:
    """Fully resolved model inputs, SI units throughout"""

    catalog: Catalog
    traffic: TrafficModel
    e_w: float
    units: Mapping[NodalUnit, UnitParams]
    provisioning: Mapping[NodalUnit, Provisioning]
    hauls: Mapping[Segment, HaulParams]
    coverage_hook: CoverageHook = densification_hook


@dataclass(frozen=True)
class EvaluationPlan:
    scenario: DeploymentScenario
    n_ru: int
    traffic: TrafficModel
    instances: Mapping[NodalUnit, int]
    servers: Mapping[NodalUnit, int]
    pre_bbp: Mapping[NodalUnit, bool]
    unit_rho: Mapping[NodalUnit, float]
    segment_rho: Mapping[Segment, float]
    segment_gamma: Mapping[Segment, float]


@dataclass(frozen=True)
class SweepPoint:
    n_ru: int
    n_du: int
    n_cu: int
    n_dc: int
    users: int
    breakdowns: Mapping[ScenarioId, EnergyBreakdown] = field(default_factory=dict)


def du_count(n_ru: int, fanout: int = DU_FANOUT) -> int:
    """One distributed unit per started group of fanout radio units, DU_FANOUT by default"""
    if n_ru < 1:
        raise DomainError(f"number of radio units must be >= 1, got {n_ru}")
    return math.ceil(n_ru / fanout)


def _server_capacity(model: ModelConfig, unit: NodalUnit) -> float:
    server = model.units[unit].server
    if server is None:
        raise MisconfigurationError(
            "BBP placed at a unit without a server", [f"units.{unit.value}.server"]
        )
    return server.total_bbp_capacity


def build(
    scenario: DeploymentScenario | ScenarioId | str, n_ru: int, model: ModelConfig
) -> EvaluationPlan:
    """Resolve server counts, BBP marks, coverage factors and haul gammas of one point."""
    scenario = DeploymentScenario.parse(scenario)
    if n_ru < 1:
        raise DomainError(f"number of radio units must be >= 1, got {n_ru}")
    missing = [unit.value for unit in NodalUnit if unit not in model.units]
    missing += [seg.value for seg in Segment if seg not in model.hauls]
    if missing:
        raise MisconfigurationError("Incomplete model configuration", missing)

    traffic = model.traffic.with_n_ru(n_ru)
    traffic.check()

    bbp = scenario.bbp_location
    capacity = _server_capacity(model, bbp)

    instances = {unit: model.provisioning[unit].instances(n_ru) for unit in NodalUnit}
    servers = {unit: 0 for unit in NodalUnit}
    servers[bbp] = model.provisioning[bbp].servers(
        n_ru, capacity, traffic.ecpri_rate_per_ru
    )

    pre_bbp = {unit: unit.order < bbp.order for unit in NodalUnit}

    def coverage(unit: NodalUnit, rho: float) -> float:
        if pre_bbp[unit]:
            return rho * model.coverage_hook(unit, n_ru, model)
        return rho

    unit_rho = {unit: coverage(unit, model.units[unit].rho) for unit in NodalUnit}
    segment_rho = {
        seg: coverage(SEGMENT_SOURCE[seg], model.hauls[seg].rho) for seg in Segment
    }
    segment_gamma = {
        seg: gamma_haul(seg, bbp, segment_rho[seg], traffic) for seg in Segment
    }

    return EvaluationPlan(
        scenario=scenario,
        n_ru=n_ru,
        traffic=traffic,
        instances=instances,
        servers=servers,
        pre_bbp=pre_bbp,
        unit_rho=unit_rho,
        segment_rho=segment_rho,
        segment_gamma=segment_gamma,
    )


def evaluate(plan: EvaluationPlan, model: ModelConfig) -> EnergyBreakdown:
    traffic = plan.traffic
    bbp = plan.scenario.bbp_location
    radio = model.catalog.device(DeviceRole.RADIO)

    e_w, e_e, _ = radio_energy(model.e_w, plan.n_ru, radio.rated_power, traffic)

    carried = plan.servers[bbp] * _server_capacity(model, bbp)
    e_b = {bbp: processing_energy(model.units[bbp], traffic, carried)}

    e_eq = {
        unit: equipment_energy(
            model.units[unit],
            gamma_equipment(plan.pre_bbp[unit], plan.unit_rho[unit], traffic),
        )
        for unit in NodalUnit
    }
    e_xh = {
        seg: haul_energy(model.hauls[seg], plan.segment_gamma[seg], model.catalog)
        for seg in Segment
    }

    return total_energy(
        e_w,
        e_e,
        e_b,
        e_eq,
        e_xh[Segment.FRONTHAUL],
        e_xh[Segment.MIDHAUL],
        e_xh[Segment.BACKHAUL],
        servers_by_unit=plan.servers,
    )


def _scenario_ids(scenarios: Iterable) -> list[ScenarioId]:
    ids = {DeploymentScenario.parse(value).id for value in scenarios}
    if not ids:
        raise MisconfigurationError("No scenario selected", ["scenarios: empty"])
    return [sid for sid in ScenarioId if sid in ids]


def sweep(
    scenarios: Iterable, n_ru_range: Iterable[int], model: ModelConfig
) -> list[SweepPoint]:
    """
    Evaluate every scenario at every RU count. Points are ordered by n_ru, breakdowns
    within a point by scenario id.
    """
    ids = _scenario_ids(scenarios)
    n_values = sorted(set(n_ru_range))
    if not n_values:
        raise DomainError("empty n_ru range")

    du = model.provisioning[NodalUnit.DU]
    points = []
    for n_ru in n_values:
        breakdowns = {}
        for sid in ids:
            try:
                breakdowns[sid] = evaluate(build(sid, n_ru, model), model)
            except RanEnergyError as excep:
                raise with_context(excep, f"{sid.value} @ n_ru={n_ru}") from excep
            logging.debug(
                "%s @ n_ru=%d: e_total=%.6g J/bit", sid.value, n_ru, breakdowns[sid].e_total
            )

        points.append(
            SweepPoint(
                n_ru=n_ru,
                n_du=(
                    du_count(n_ru, du.fanout)
                    if du.fanout is not None
                    else du.instances(n_ru)
                ),
                n_cu=model.provisioning[NodalUnit.CU].instances(n_ru),
                n_dc=model.provisioning[NodalUnit.DC].instances(n_ru),
                users=model.traffic.users,
                breakdowns=breakdowns,
            )
        )

    logging.info(
        "Sweep finished: %d points x %d scenarios", len(points), len(ids)
    )
    return points


def _component(breakdown: EnergyBreakdown, component: str) -> float:
    try:
        return getattr(breakdown, component)
    except AttributeError as excep:
        raise MisconfigurationError(
            "Unknown energy component", [f"component: {component}"]
        ) from excep


def crossover(
    points: Sequence[SweepPoint],
    a: ScenarioId | str,
    b: ScenarioId | str,
    component: str = "e_pr",
) -> int | None:
    """
    First n_ru at which scenario a's component exceeds scenario b's after having
    started below it, or None if the curves never cross that way.
    """
    a, b = ScenarioId(a), ScenarioId(b)
    below = False
    for point in points:
        value_a = _component(point.breakdowns[a], component)
        value_b = _component(point.breakdowns[b], component)
        if value_a < value_b:
            below = True
        elif below and value_a > value_b:
            return point.n_ru
    return None


def savings_vs(
    points: Sequence[SweepPoint], baseline: ScenarioId | str, n_ru: int
) -> dict[ScenarioId, float]:
    """Fractional total-energy saving of every other scenario against the baseline"""
    baseline = ScenarioId(baseline)
    for point in points:
        if point.n_ru == n_ru:
            reference = point.breakdowns[baseline].e_total
            return {
                sid: 1.0 - breakdown.e_total / reference
                for sid, breakdown in point.breakdowns.items()
                if sid != baseline
            }
    raise DomainError(f"n_ru={n_ru} is not part of the sweep")


def sweep_frame(points: Sequence[SweepPoint]) -> pandas.DataFrame:
    """One row per (n_ru, scenario), energies in nJ/bit"""
    rows = []
    for point in points:
        for sid, bd in point.breakdowns.items():
            rows.append(
                {
                    "scenario": sid.value,
                    "n_ru": point.n_ru,
                    "n_du": point.n_du,
                    "n_cu": point.n_cu,
                    "e_w": bd.e_w / NJ,
                    "e_e": bd.e_e / NJ,
                    "e_pr": bd.e_pr / NJ,
                    "e_eq": bd.e_eq / NJ,
                    "e_fh": bd.e_fh / NJ,
                    "e_mh": bd.e_mh / NJ,
                    "e_bh": bd.e_bh / NJ,
                    "e_tr": bd.e_tr / NJ,
                    "e_total": bd.e_total / NJ,
                }
            )
    return pandas.DataFrame(rows, columns=SWEEP_COLUMNS)
