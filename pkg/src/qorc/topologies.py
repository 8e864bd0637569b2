"""Named default topologies used by the experiments and the dashboard picker."""

from __future__ import annotations

from .circuit import TopologyGraph


def grid4() -> TopologyGraph:
    """2x2 grid."""
    return TopologyGraph.from_pairs(4, [(0, 1), (2, 3), (0, 2), (1, 3)])


def line(n: int) -> TopologyGraph:
    return TopologyGraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def ring(n: int) -> TopologyGraph:
    return TopologyGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def heavy_square6() -> TopologyGraph:
    """4-cycle with two degree-1 pendants on opposite corners."""
    return TopologyGraph.from_pairs(
        6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]
    )


def full(n: int) -> TopologyGraph:
    return TopologyGraph.from_pairs(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def tree10() -> TopologyGraph:
    """Balanced-ish 10-node tree used by the topology-choice experiment."""
    return TopologyGraph.from_pairs(
        10, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (4, 8), (5, 9)]
    )


def default_topologies() -> dict[str, TopologyGraph]:
    return {
        "grid-4": grid4(),
        "line-6": line(6),
        "ring-7": ring(7),
        "heavy-square-6": heavy_square6(),
        "full-6": full(6),
    }
