"""Critical-item allocation among subordinate units.

Each unit's priority ("effective demand") blends its declared demand with a
case-implied demand derived from its predicted 7-day peak active cases.
Awards are the capped-proportional (water-filling) projection of effective
demands onto the supply: x_i = min(d_i, lambda * e_i) with lambda the unique
scale exhausting min(supply, total demand). lambda comes from a sorted
breakpoint sweep, so the whole solve is closed-form and scales to any number
of units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .casedata import RegionId
from .errors import DegenerateProblemError


@dataclass(frozen=True)
class ResourceItem:
    name: str
    unit: str
    #: per-active-case daily consumption (item units / person / day)
    kappa: float = 0.0

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")


@dataclass(frozen=True)
class UnitClaim:
    unit: RegionId
    demand: float
    peak_active: float = 0.0

    def __post_init__(self):
        for label, value in (("demand", self.demand), ("peak_active", self.peak_active)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{label} must be finite and non-negative")


@dataclass(frozen=True)
class AllocationProblem:
    item: ResourceItem
    supply: float
    claims: tuple[UnitClaim, ...]
    #: weight on declared demand vs case-implied demand
    blend: float = 0.5

    def __post_init__(self):
        if self.supply < 0 or not math.isfinite(self.supply):
            raise ValueError("supply must be finite and non-negative")
        if not self.claims:
            raise ValueError("at least one claim required")
        if not (0 <= self.blend <= 1):
            raise ValueError("blend must be in [0, 1]")
        codes = [c.unit.code for c in self.claims]
        if len(set(codes)) != len(codes):
            raise ValueError("duplicate unit codes in claims")


@dataclass(frozen=True)
class AllocationResult:
    item: ResourceItem
    #: per-unit awards, aligned with the problem's claim order
    awards: tuple[float, ...]
    effective_demands: tuple[float, ...]
    exhausted: bool


def effective_demand(claim: UnitClaim, blend: float, total_demand: float,
                     total_active: float) -> float:
    """Blend declared demand with the unit's share of case-implied demand.

    The case signal is normalized to the total declared demand so both
    components live in item units; with no case signal anywhere the declared
    demand stands alone.
    """
    if total_demand <= 0 and total_active <= 0:
        raise DegenerateProblemError(
            "neither demand nor active-case signal present")
    if total_active <= 0:
        return claim.demand
    case_implied = (claim.peak_active / total_active) * total_demand
    return blend * claim.demand + (1.0 - blend) * case_implied


def allocate(problem: AllocationProblem) -> AllocationResult:
    """Closed-form capped-proportional allocation.

    Guarantees 0 <= x_i <= d_i and sum(x) = min(supply, sum(d)). A unit with
    zero effective demand receives nothing under scarcity; with slack supply
    every unit simply receives its declared demand.
    """
    demands = [c.demand for c in problem.claims]
    total_demand = sum(demands)
    total_active = sum(c.peak_active for c in problem.claims)

    if total_demand == 0 and total_active == 0:
        zeros = (0.0,) * len(problem.claims)
        return AllocationResult(item=problem.item, awards=zeros,
                                effective_demands=zeros, exhausted=False)

    eff = tuple(
        effective_demand(c, problem.blend, total_demand, total_active)
        for c in problem.claims
    )

    if problem.supply >= total_demand:
        return AllocationResult(item=problem.item, awards=tuple(demands),
                                effective_demands=eff, exhausted=False)

    target = problem.supply
    lam = _water_level(demands, eff, problem.claims, target)
    awards = tuple(min(d, lam * e) for d, e in zip(demands, eff))
    return AllocationResult(item=problem.item, awards=awards,
                            effective_demands=eff, exhausted=True)


def _water_level(demands, eff, claims, target) -> float:
    """Breakpoint sweep for lambda with sum_i min(d_i, lambda*e_i) = target.

    Units saturate in order of d_i/e_i; ties break on unit code for
    determinism. Zero-effective-demand units never absorb supply.
    """
    order = sorted(
        (i for i in range(len(demands)) if eff[i] > 0),
        key=lambda i: (demands[i] / eff[i], claims[i].unit.code),
    )
    remaining = target
    live_eff = sum(eff[i] for i in order)
    lam = 0.0
    for i in order:
        if live_eff <= 0:
            break
        lam = remaining / live_eff
        if lam <= demands[i] / eff[i]:
            return lam
        remaining -= demands[i]
        live_eff -= eff[i]
    # target >= reachable total (numerically); saturate everyone
    ratios = [demands[i] / eff[i] for i in order]
    return max(ratios, default=0.0)


def allocate_multi(problems) -> list[AllocationResult]:
    """Allocate a list of items independently (per-item separability).

    Engine errors are re-raised tagged with the offending item's name.
    """
    results = []
    for problem in problems:
        try:
            results.append(allocate(problem))
        except DegenerateProblemError as exc:
            raise DegenerateProblemError(
                f"item {problem.item.name!r}: {exc.message}",
                detail={"item": problem.item.name},
            ) from exc
    return results
