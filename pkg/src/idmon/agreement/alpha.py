"""Krippendorff's α via the coincidence-matrix formulation.

Each unit contributes its within-unit ordered value pairs weighted by
1/(m_u − 1), where m_u is the unit's number of non-missing values. From
the resulting coincidence matrix o(v, w):

    D_o = Σ o(v,w) δ(v,w) / n          observed disagreement
    D_e = Σ n(v) n(w) δ(v,w) / (n(n−1)) expected disagreement
    α   = 1 − D_o / D_e

Units with fewer than two non-missing values cannot be paired and are
dropped. When every pairable value is identical (D_e = 0) the statistic
is undefined; the summary reports α = 1 with a degeneracy flag because
the data contain no observable disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from ..errors import NoEligibleUnitsError
from .distances import Distance, resolve_distance


@dataclass(frozen=True)
class Unit:
    """One matter to be judged: a value per annotator, missing allowed."""

    unit_id: str
    values: Mapping[str, Any]

    def pairable_values(self) -> list[Any]:
        return [v for v in self.values.values() if v is not None]


@dataclass(frozen=True)
class ReliabilityData:
    """Units plus the distance under which their values are compared."""

    units: tuple[Unit, ...]
    distance: str | Distance = "nominal"
    domain: tuple[Any, ...] = ()

    @classmethod
    def from_table(
        cls,
        rows: Sequence[Mapping[str, Any]],
        distance: str | Distance = "nominal",
    ) -> "ReliabilityData":
        """Build from a list of {annotator: value} mappings (None = missing)."""
        units = tuple(
            Unit(unit_id=str(i), values=dict(row)) for i, row in enumerate(rows)
        )
        return cls(units=units, distance=distance)


@dataclass(frozen=True)
class CoincidenceSummary:
    """Full accounting of one α computation."""

    domain: tuple[Any, ...]
    coincidences: np.ndarray  # o(v, w), symmetric, indexed by domain order
    marginals: np.ndarray  # n(v)
    n_total: float
    d_observed: float
    d_expected: float
    alpha: float
    degenerate: bool
    n_units: int
    distance_name: str

    def to_json(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "d_observed": self.d_observed,
            "d_expected": self.d_expected,
            "n_total": self.n_total,
            "n_units": self.n_units,
            "n_values": len(self.domain),
            "degenerate": self.degenerate,
            "distance": self.distance_name,
        }


def alpha(data: ReliabilityData) -> CoincidenceSummary:
    """Compute α for the given reliability data.

    Raises NoEligibleUnitsError when no unit retains ≥ 2 values.
    """
    distance_name, dist = resolve_distance(data.distance)
    retained = [u for u in data.units if len(u.pairable_values()) >= 2]
    if not retained:
        raise NoEligibleUnitsError("no unit carries two or more values")

    if data.domain:
        domain = list(data.domain)
    else:
        seen: dict[Any, None] = {}
        for unit in retained:
            for value in unit.pairable_values():
                seen.setdefault(value)
        domain = list(seen)
    index = {value: i for i, value in enumerate(domain)}
    k = len(domain)

    o = np.zeros((k, k), dtype=float)
    for unit in retained:
        values = unit.pairable_values()
        m = len(values)
        weight = 1.0 / (m - 1)
        for i, vi in enumerate(values):
            for j, vj in enumerate(values):
                if i != j:
                    o[index[vi], index[vj]] += weight

    marginals = o.sum(axis=1)
    n_total = float(marginals.sum())

    delta = np.empty((k, k), dtype=float)
    for i, vi in enumerate(domain):
        delta[i, i] = 0.0
        for j in range(i + 1, k):
            d = float(dist(vi, domain[j]))
            delta[i, j] = d
            delta[j, i] = d

    d_observed = float((o * delta).sum()) / n_total
    if n_total <= 1:
        d_expected = 0.0
    else:
        d_expected = float((np.outer(marginals, marginals) * delta).sum()) / (
            n_total * (n_total - 1.0)
        )

    if d_expected == 0.0:
        value, degenerate = 1.0, True
    else:
        value, degenerate = 1.0 - d_observed / d_expected, False

    return CoincidenceSummary(
        domain=tuple(domain),
        coincidences=o,
        marginals=marginals,
        n_total=n_total,
        d_observed=d_observed,
        d_expected=d_expected,
        alpha=value,
        degenerate=degenerate,
        n_units=len(retained),
        distance_name=distance_name,
    )
