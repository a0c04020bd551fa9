from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

REPORT_COLUMNS = (
    "region",
    "error",
    "E_bubble",
    "E_uniform",
    "E0_bubble",
    "E0_uniform",
    "eff_bubble",
    "eff_uniform",
    "ratio_bubble",
    "ratio_uniform",
    "upper_eq2",
    "upper_eq3",
    "Y",
)


def _nan_if_none(value: Optional[float]) -> float:
    return math.nan if value is None else float(value)


@dataclass
class EstimatorReport:
    """Estimator values on one region, keyed by weight variant where they depend on it.

    ``E_jump`` holds the jump part of E, ``E_volume`` the ||h_T f|| part.
    ``upper`` holds the eq2 and eq3 upper estimators.
    """

    region: str = "Omega"
    error: Optional[float] = None
    Y: Optional[float] = None
    E: Dict[str, float] = field(default_factory=dict)
    E_jump: Dict[str, float] = field(default_factory=dict)
    E0: Dict[str, float] = field(default_factory=dict)
    E_volume: Optional[float] = None
    upper: Dict[str, float] = field(default_factory=dict)
    upper_components: Dict[str, float] = field(default_factory=dict)
    empty: bool = False

    def effectivity(self, variant: str) -> float:
        if variant not in self.E or not self.error:
            return math.nan
        return self.E[variant] / self.error

    def ratio(self, variant: str) -> float:
        if variant not in self.E0 or not self.E.get(variant):
            return math.nan
        return self.E0[variant] / self.E[variant]

    def merge(self, other: "EstimatorReport") -> "EstimatorReport":
        if other.region != self.region:
            raise ValueError(f"cannot merge reports of {self.region!r} and {other.region!r}")
        return EstimatorReport(
            region=self.region,
            error=other.error if other.error is not None else self.error,
            Y=other.Y if other.Y is not None else self.Y,
            E={**self.E, **other.E},
            E_jump={**self.E_jump, **other.E_jump},
            E0={**self.E0, **other.E0},
            E_volume=other.E_volume if other.E_volume is not None else self.E_volume,
            upper={**self.upper, **other.upper},
            upper_components={**self.upper_components, **other.upper_components},
            empty=self.empty or other.empty,
        )

    def row(self) -> Dict[str, object]:
        values: Dict[str, object] = {"region": self.region, "error": _nan_if_none(self.error)}
        for variant in ("bubble", "uniform"):
            values[f"E_{variant}"] = self.E.get(variant, math.nan)
        for variant in ("bubble", "uniform"):
            values[f"E0_{variant}"] = self.E0.get(variant, math.nan)
        for variant in ("bubble", "uniform"):
            values[f"eff_{variant}"] = self.effectivity(variant)
        for variant in ("bubble", "uniform"):
            values[f"ratio_{variant}"] = self.ratio(variant)
        values["upper_eq2"] = self.upper.get("eq2", math.nan)
        values["upper_eq3"] = self.upper.get("eq3", math.nan)
        values["Y"] = _nan_if_none(self.Y)
        return values
