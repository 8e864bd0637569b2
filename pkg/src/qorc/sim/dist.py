"""Measurement outcome distributions and distance measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import EmptyDistributionError


@dataclass(frozen=True)
class OutcomeDistribution:
    shots: int
    counts: dict[str, int]

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")

    def probabilities(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}

    def to_json_dict(self) -> dict[str, int]:
        return dict(sorted(self.counts.items()))


def fidelity(ideal: OutcomeDistribution, observed: OutcomeDistribution) -> float:
    """Hellinger fidelity (sum of sqrt(p*q))^2 between normalized counts."""
    if ideal.shots == 0 or observed.shots == 0:
        raise EmptyDistributionError("fidelity of an empty distribution")
    p = ideal.probabilities()
    q = observed.probabilities()
    affinity = sum(math.sqrt(p[k] * q[k]) for k in p.keys() & q.keys())
    return min(affinity * affinity, 1.0)


def total_variation(a: OutcomeDistribution, b: OutcomeDistribution) -> float:
    p = a.probabilities()
    q = b.probabilities()
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in p.keys() | q.keys())
