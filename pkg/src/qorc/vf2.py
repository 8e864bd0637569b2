"""Non-induced subgraph isomorphism enumeration (VF2-style backtracking)."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .circuit import TopologyGraph

DEFAULT_LIMIT = 10_000
DEFAULT_TIME_BUDGET_S = 10.0


@dataclass(frozen=True)
class Embedding:
    mapping: tuple[int, ...]  # mapping[pattern_node] = host_node

    def __getitem__(self, pattern_node: int) -> int:
        return self.mapping[pattern_node]

    def to_dict(self) -> dict[int, int]:
        return dict(enumerate(self.mapping))


@dataclass(frozen=True)
class EmbeddingResult:
    embeddings: tuple[Embedding, ...]
    truncated: bool


def _adjacency(t: TopologyGraph) -> list[set[int]]:
    adj = [set() for _ in range(t.num_nodes)]
    for a, b in t.edge_list():
        adj[a].add(b)
        adj[b].add(a)
    return adj


def vf2_embeddings(
    pattern: TopologyGraph,
    host: TopologyGraph,
    limit: int = DEFAULT_LIMIT,
    time_budget: float = DEFAULT_TIME_BUDGET_S,
) -> EmbeddingResult:
    """Enumerate injective maps where every pattern edge lands on a host edge.

    Deterministic order: pattern nodes are assigned in a fixed connectivity-
    first order and host candidates are tried ascending. Stops early at
    `limit` embeddings or after `time_budget` seconds (truncated flag set).
    """
    np_, nh = pattern.num_nodes, host.num_nodes
    if np_ > nh:
        return EmbeddingResult((), False)
    padj = _adjacency(pattern)
    hadj = _adjacency(host)

    # assignment order: highest degree first, then prefer nodes adjacent to
    # already-ordered ones so partial maps are edge-constrained early
    order: list[int] = []
    placed = set()
    remaining = set(range(np_))
    while remaining:
        candidates = [v for v in remaining if padj[v] & placed]
        pool = candidates if candidates else list(remaining)
        nxt = min(pool, key=lambda v: (-len(padj[v] & placed), -len(padj[v]), v))
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    deadline = time.monotonic() + time_budget
    mapping = [-1] * np_
    used = [False] * nh
    found: list[Embedding] = []
    truncated = False

    def backtrack(depth: int) -> bool:
        nonlocal truncated
        if len(found) >= limit or time.monotonic() > deadline:
            truncated = True
            return False
        if depth == np_:
            found.append(Embedding(tuple(mapping)))
            return len(found) < limit
        v = order[depth]
        mapped_nbrs = [mapping[u] for u in padj[v] if mapping[u] >= 0]
        if mapped_nbrs:
            candidates = sorted(set.intersection(*(hadj[h] for h in mapped_nbrs)))
        else:
            candidates = range(nh)
        for h in candidates:
            if used[h] or len(hadj[h]) < len(padj[v]):
                continue
            mapping[v] = h
            used[h] = True
            ok = backtrack(depth + 1)
            mapping[v] = -1
            used[h] = False
            if not ok:
                return False
        return True

    backtrack(0)
    if len(found) >= limit:
        truncated = True
    return EmbeddingResult(tuple(found), truncated)
