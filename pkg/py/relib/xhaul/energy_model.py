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
Per-bit energy of an uplink user bit through a RAN: radio, baseband processing (BBP),
node equipment and fronthaul / midhaul / backhaul transmission.

The model is mean-value accounting. Every component is the power of the equipment a
bit traverses divided by the traffic that equipment carries, scaled by the
overprovisioning (alpha), overhead (sigma) and coverage (rho) factors. Upstream of the
BBP unit the network carries eCPRI traffic C_N instead of user traffic C_U, which
enters through the gamma factors.

    E_ra  = E_w + N_RU * P_r / C_U
    E_B,u = alpha_u * sigma_u * rho_u * (C_N / C_U) * N_C * P_C / C_C    (BBP unit only)
    E_eq,u = alpha_u * sigma_u * gamma_u * P_I / C_I
    E_XH  = alpha * sigma * gamma * (xi_s + xi_l [+ xi_r])
    E_T   = E_ra + sum(E_B,u) + E_FH + E_MH + E_BH + sum(E_eq,u)
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

from relib.catalog.equipment import (
    Catalog,
    DeviceRole,
    EquipmentSpec,
    GBPS,
    ServerSpec,
    energy_per_bit,
)
from relib.utils.errors import DomainError, MisconfigurationError

SECONDS_PER_MONTH = 30 * 24 * 3600
BITS_PER_GB = 8e9


class NodalUnit(str, Enum):
    """Nodal units in uplink order"""

    RU = "RU"
    DU = "DU"
    CU = "CU"
    DC = "DC"

    @property
    def order(self) -> int:
        return list(NodalUnit).index(self)


class Segment(str, Enum):
    FRONTHAUL = "fronthaul"
    MIDHAUL = "midhaul"
    BACKHAUL = "backhaul"


# devices the radio and x-haul energies look up in the catalog
REQUIRED_ROLES = (
    DeviceRole.ROUTER,
    DeviceRole.CORE_SWITCH,
    DeviceRole.ACCESS_SWITCH,
    DeviceRole.FIBER_LINK,
    DeviceRole.RADIO,
)

# unit feeding each segment on the uplink
SEGMENT_SOURCE = {
    Segment.FRONTHAUL: NodalUnit.RU,
    Segment.MIDHAUL: NodalUnit.DU,
    Segment.BACKHAUL: NodalUnit.CU,
}


@dataclass(frozen=True)
class UnitParams:
    alpha: float
    sigma: float
    rho: float
    nic: EquipmentSpec
    server: ServerSpec | None = None


@dataclass(frozen=True)
class TrafficModel:
    """
    Aggregate traffic of the served population. c_u is the mean user traffic over a
    30-day month, c_n the eCPRI traffic of all deployed radio units.
    """

    users: int
    monthly_gb_per_user: float
    ecpri_rate_per_ru: float = 11 * GBPS
    n_ru: int = 1

    @property
    def c_u(self) -> float:
        return self.users * self.monthly_gb_per_user * BITS_PER_GB / SECONDS_PER_MONTH

    @property
    def c_n(self) -> float:
        return self.n_ru * self.ecpri_rate_per_ru

    def with_n_ru(self, n_ru: int) -> "TrafficModel":
        return replace(self, n_ru=n_ru)

    def check(self) -> None:
        if not self.c_u > 0:
            raise DomainError(f"user traffic must be > 0, got {self.c_u} bit/s")
        if self.c_n < self.c_u:
            raise DomainError(
                f"eCPRI traffic {self.c_n:.6g} bit/s below user traffic {self.c_u:.6g} bit/s"
            )


@dataclass(frozen=True)
class HaulParams:
    segment: Segment
    alpha: float
    sigma: float
    rho: float
    hops_switch: int
    hops_link: int
    hops_router: int = 0


@dataclass(frozen=True)
class EnergyBreakdown:
    """All per-bit components in J/bit. The sums are exact by construction."""

    e_w: float
    e_e: float
    e_ra: float
    e_b_by_unit: Mapping[NodalUnit, float]
    e_pr: float
    e_eq_by_unit: Mapping[NodalUnit, float]
    e_fh: float
    e_mh: float
    e_bh: float
    e_tr: float
    e_total: float
    servers_by_unit: Mapping[NodalUnit, int] = field(default_factory=dict)

    @property
    def e_eq(self) -> float:
        return sum(self.e_eq_by_unit[unit] for unit in NodalUnit)


def _require_user_traffic(traffic: TrafficModel) -> float:
    c_u = traffic.c_u
    if not c_u > 0:
        raise DomainError(f"user traffic must be > 0, got {c_u} bit/s")
    return c_u


def radio_energy(
    e_w: float, n_ru: int, p_r: float, traffic: TrafficModel
) -> tuple[float, float, float]:
    """(E_w, E_e, E_ra): wireless energy per user bit plus the radio equipment share."""
    if n_ru < 0:
        raise DomainError(f"number of radio units must be >= 0, got {n_ru}")
    e_e = n_ru * p_r / _require_user_traffic(traffic)
    return e_w, e_e, e_w + e_e


def gamma_processing(traffic: TrafficModel) -> float:
    return traffic.c_n / _require_user_traffic(traffic)


def processing_energy(
    unit: UnitParams, traffic: TrafficModel, carried: float | None = None
) -> float:
    """
    BBP energy per user bit at the unit. carried is the eCPRI volume the unit's servers
    process (bit/s); it defaults to the network eCPRI traffic. Passing the provisioned
    capacity (servers * server capacity) accounts for integral server counts.
    """
    if unit.server is None:
        raise MisconfigurationError(
            "BBP placed at a unit without a server", ["units: server missing"]
        )
    c_n = traffic.c_n if carried is None else carried
    gamma = c_n / _require_user_traffic(traffic)
    server = unit.server
    return (
        unit.alpha
        * unit.sigma
        * unit.rho
        * gamma
        * server.total_power
        / server.total_bbp_capacity
    )


def gamma_equipment(unit_is_pre_bbp: bool, rho: float, traffic: TrafficModel) -> float:
    """Node equipment upstream of BBP carries coverage-driven eCPRI, elsewhere user data."""
    if unit_is_pre_bbp:
        return rho * traffic.c_n / _require_user_traffic(traffic)
    return 1.0


def equipment_energy(unit: UnitParams, gamma: float) -> float:
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    return unit.alpha * unit.sigma * gamma * energy_per_bit(unit.nic)


def haul_energy(params: HaulParams, gamma: float, catalog: Catalog) -> float:
    """
    Transmission energy per user bit over one x-haul segment. Fronthaul and midhaul
    cross access switches and WDM links; backhaul crosses core switches, WDM links and
    routers. Every segment traverses one switch more than its switch hop count.
    """
    if params.hops_router and params.segment != Segment.BACKHAUL:
        raise MisconfigurationError(
            "Router hops are only valid on the backhaul",
            [f"hauls.{params.segment.value}.hops_router: {params.hops_router}"],
        )
    if min(params.hops_switch, params.hops_link, params.hops_router) < 0:
        raise MisconfigurationError(
            "Hop counts must be >= 0", [f"hauls.{params.segment.value}"]
        )
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")

    if params.segment == Segment.BACKHAUL:
        switch = catalog.device(DeviceRole.CORE_SWITCH)
        xi_r = (params.hops_router + 1) * energy_per_bit(
            catalog.device(DeviceRole.ROUTER)
        )
    else:
        switch = catalog.device(DeviceRole.ACCESS_SWITCH)
        xi_r = 0.0

    xi_s = (params.hops_switch + 1) * energy_per_bit(switch)
    xi_l = params.hops_link * energy_per_bit(catalog.device(DeviceRole.FIBER_LINK))
    return params.alpha * params.sigma * gamma * (xi_s + xi_l + xi_r)


def gamma_haul(
    segment: Segment, bbp_location: NodalUnit, rho: float, traffic: TrafficModel
) -> float:
    """
    A segment carries eCPRI while the BBP unit lies further up the network:
    fronthaul unless BBP is at the RU, midhaul when BBP is at CU or DC, backhaul
    when BBP is at the DC.
    """
    if segment == Segment.FRONTHAUL:
        carries_ecpri = bbp_location != NodalUnit.RU
    elif segment == Segment.MIDHAUL:
        carries_ecpri = bbp_location in (NodalUnit.CU, NodalUnit.DC)
    else:
        carries_ecpri = bbp_location == NodalUnit.DC

    if carries_ecpri:
        return rho * traffic.c_n / _require_user_traffic(traffic)
    return 1.0


def total_energy(
    e_w: float,
    e_e: float,
    e_b_by_unit: Mapping[NodalUnit, float],
    e_eq_by_unit: Mapping[NodalUnit, float],
    e_fh: float,
    e_mh: float,
    e_bh: float,
    servers_by_unit: Mapping[NodalUnit, int] | None = None,
) -> EnergyBreakdown:
    """Assemble an EnergyBreakdown. Units missing from the maps contribute 0."""
    e_b = {unit: float(e_b_by_unit.get(unit, 0.0)) for unit in NodalUnit}
    e_eq = {unit: float(e_eq_by_unit.get(unit, 0.0)) for unit in NodalUnit}

    e_ra = e_w + e_e
    e_pr = sum(e_b[unit] for unit in NodalUnit)
    e_tr = e_fh + e_mh + e_bh + sum(e_eq[unit] for unit in NodalUnit)
    return EnergyBreakdown(
        e_w=e_w,
        e_e=e_e,
        e_ra=e_ra,
        e_b_by_unit=e_b,
        e_pr=e_pr,
        e_eq_by_unit=e_eq,
        e_fh=e_fh,
        e_mh=e_mh,
        e_bh=e_bh,
        e_tr=e_tr,
        e_total=e_ra + e_pr + e_tr,
        servers_by_unit=dict(servers_by_unit or {}),
    )
