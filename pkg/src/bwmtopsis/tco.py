"""Discounted total-cost-of-ownership model for vehicle specs.

Feeds the cost-of-ownership column of a raw decision matrix. Fleet data
lives in editable fixture files so real market figures can be swapped in
without touching code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidSpecError, NoMatchingVehiclesError


class Powertrain(str, enum.Enum):
    EV = "EV"
    ICEV = "ICEV"
    HEV = "HEV"


@dataclass(frozen=True)
class VehicleSpec:
    """One vehicle's purchase, usage and disposal parameters.

    ``energy_consumption`` is per-km (kWh/km for EVs, L/km otherwise) and
    ``energy_price`` is per consumption unit, so their product is the energy
    cost of one kilometre.
    """

    label: str
    segment: str
    powertrain: Powertrain
    purchase_price: float
    incentives: float
    annual_distance: float
    energy_consumption: float
    energy_price: float
    annual_maintenance: float
    annual_insurance_and_taxes: float
    holding_period: int
    discount_rate: float
    resale_fraction: float
    currency: str = "INR"

    def __post_init__(self):
        if not isinstance(self.powertrain, Powertrain):
            object.__setattr__(self, "powertrain", Powertrain(self.powertrain))
        problems = []
        for name in ("purchase_price", "incentives", "annual_distance",
                     "energy_consumption", "energy_price", "annual_maintenance",
                     "annual_insurance_and_taxes"):
            if getattr(self, name) < 0:
                problems.append(f"{name} must be non-negative")
        if self.holding_period < 1:
            problems.append("holding_period must be at least 1 year")
        if not 0.0 <= self.resale_fraction <= 1.0:
            problems.append("resale_fraction must lie in [0, 1]")
        if not 0.0 <= self.discount_rate < 1.0:
            problems.append("discount_rate must lie in [0, 1)")
        if problems:
            raise InvalidSpecError(
                f"vehicle {self.label!r}: " + "; ".join(problems)
            )

    @property
    def annual_operating_cost(self) -> float:
        return (self.annual_distance * self.energy_consumption * self.energy_price
                + self.annual_maintenance + self.annual_insurance_and_taxes)


def tco(spec: VehicleSpec) -> float:
    """Net purchase price plus discounted operating costs minus discounted resale."""
    upfront = spec.purchase_price - spec.incentives
    rate = spec.discount_rate
    operating = math.fsum(
        spec.annual_operating_cost / (1.0 + rate) ** t
        for t in range(1, spec.holding_period + 1)
    )
    resale = (spec.resale_fraction * spec.purchase_price
              / (1.0 + rate) ** spec.holding_period)
    return upfront + operating - resale


def segment_average_tco(specs: list[VehicleSpec], segment: str,
                        powertrain: Powertrain | str) -> float:
    """Mean TCO over the vehicles matching (segment, powertrain)."""
    powertrain = Powertrain(powertrain)
    matching = [s for s in specs
                if s.segment == segment and s.powertrain is powertrain]
    if not matching:
        raise NoMatchingVehiclesError(
            f"no {powertrain.value} vehicles in segment {segment!r}"
        )
    currencies = {s.currency for s in matching}
    if len(currencies) > 1:
        raise InvalidSpecError(
            f"cannot average mixed currencies {sorted(currencies)} in "
            f"segment {segment!r}"
        )
    return math.fsum(tco(s) for s in matching) / len(matching)
