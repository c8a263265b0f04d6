"""Future-importance targets on a snapshot: in-degree, betweenness,
closeness, PageRank for nodes, betweenness for edges, plus top-fraction
labeling and the six-group percentile binning.

Shortest paths follow edge direction throughout.  Betweenness runs exact
Brandes accumulation; graphs beyond `max_exact_nodes` are rejected rather
than silently approximated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph_core import OUT, AdjacencyState

NODE_MEASURES = ("in-degree", "betweenness", "closeness", "pagerank")
EDGE_MEASURES = ("edge-betweenness",)

PAGERANK_DAMPING = 0.85
PAGERANK_TOL = 1e-9
DEFAULT_MAX_EXACT_NODES = 20_000


@dataclass
class CentralityScores:
    """Per-subject centrality values.

    Subjects are node ids (ascending) for node measures and directed-edge
    pairs (ascending tuple order) for edge measures; the fixed ordering
    doubles as the deterministic tie-break for ranking.
    """

    measure: str
    subjects: list
    values: np.ndarray


def _successors(state: AdjacencyState):
    return [[w for w, st in nb.items() if st & OUT] for nb in state.nbrs]


def compute_centrality(state: AdjacencyState, measure: str,
                       max_exact_nodes: int = DEFAULT_MAX_EXACT_NODES) -> CentralityScores:
    """Centrality of every subject in the snapshot."""
    n = len(state.nbrs)
    if n == 0 or state.edge_count == 0:
        raise ValueError("empty snapshot")
    if measure == "in-degree":
        return CentralityScores(measure, list(range(n)),
                                np.array(state.in_degree, dtype=float))
    if measure == "pagerank":
        return CentralityScores(measure, list(range(n)), _pagerank(state))
    if measure == "closeness":
        return CentralityScores(measure, list(range(n)), _closeness(state))
    if measure in ("betweenness", "edge-betweenness"):
        if n > max_exact_nodes:
            raise ValueError(
                f"exact Brandes betweenness limited to {max_exact_nodes} nodes "
                f"(snapshot has {n}); raise max_exact_nodes explicitly to override")
        node_bc, edge_bc = _brandes(state, want_edges=measure == "edge-betweenness")
        if measure == "betweenness":
            return CentralityScores(measure, list(range(n)), node_bc)
        subjects = sorted(edge_bc)
        return CentralityScores(measure, subjects,
                                np.array([edge_bc[e] for e in subjects]))
    raise ValueError(f"unknown measure {measure!r}")


def _brandes(state: AdjacencyState, want_edges: bool = False):
    """Brandes dependency accumulation over directed unit-weight edges."""
    succ = _successors(state)
    n = len(succ)
    node_bc = np.zeros(n)
    edge_bc = {(u, v): 0.0 for u in range(n) for v in succ[u]} if want_edges else None
    for s in range(n):
        if not succ[s]:
            continue
        stack = []
        preds = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv1 = dist[v] + 1
            sv = sigma[v]
            for w in succ[v]:
                if dist[w] < 0:
                    dist[w] = dv1
                    queue.append(w)
                if dist[w] == dv1:
                    sigma[w] += sv
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                contribution = sigma[v] * coeff
                delta[v] += contribution
                if want_edges:
                    edge_bc[(v, w)] += contribution
            if w != s:
                node_bc[w] += delta[w]
    return node_bc, edge_bc


def _closeness(state: AdjacencyState) -> np.ndarray:
    """Wasserman-Faust closeness on the directed snapshot: the classic
    (r-1)/sum-of-distances scaled by (r-1)/(n-1), which stays bounded and
    comparable on disconnected graphs."""
    succ = _successors(state)
    n = len(succ)
    out = np.zeros(n)
    for s in range(n):
        dist = {s: 0}
        queue = deque([s])
        total = 0
        while queue:
            v = queue.popleft()
            for w in succ[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    total += dist[w]
                    queue.append(w)
        reached = len(dist)
        if reached > 1:
            out[s] = (reached - 1) / (n - 1) * (reached - 1) / total
    return out


def _pagerank(state: AdjacencyState) -> np.ndarray:
    succ = _successors(state)
    n = len(succ)
    out_deg = np.array([len(s) for s in succ], dtype=float)
    dangling = out_deg == 0
    rank = np.full(n, 1.0 / n)
    for _ in range(10_000):
        nxt = np.zeros(n)
        for u in range(n):
            if out_deg[u]:
                share = rank[u] / out_deg[u]
                for v in succ[u]:
                    nxt[v] += share
        nxt = (1 - PAGERANK_DAMPING) / n + PAGERANK_DAMPING * (
            nxt + rank[dangling].sum() / n)
        if np.abs(nxt - rank).sum() < PAGERANK_TOL:
            return nxt
        rank = nxt
    raise RuntimeError("PageRank failed to converge")


def _descending_order(scores: CentralityScores) -> np.ndarray:
    """Indices sorted by value descending, subject ascending on ties."""
    n = len(scores.values)
    return np.lexsort((np.arange(n), -scores.values))


def label_top_fraction(scores: CentralityScores, fraction: float) -> np.ndarray:
    """Boolean mask (aligned with `scores.subjects`) of the top
    `fraction` of subjects by descending value, ties broken by subject
    order; exactly ceil(fraction * n) positives."""
    if not 0 < fraction < 1:
        raise ValueError("fraction must be in (0, 1)")
    n = len(scores.values)
    k = int(np.ceil(fraction * n))
    labels = np.zeros(n, dtype=bool)
    labels[_descending_order(scores)[:k]] = True
    return labels


GROUP_CUTS = ((6, 0.01), (5, 0.05), (4, 0.10), (3, 0.30), (2, 0.50))


def bin_six_groups(scores: CentralityScores) -> np.ndarray:
    """Percentile group per subject: 6 = top 1%, 5 = top 1-5%, 4 = top
    5-10%, 3 = top 10-30%, 2 = top 30-50%, 1 = bottom half."""
    n = len(scores.values)
    rank_of = np.empty(n, dtype=np.int64)
    rank_of[_descending_order(scores)] = np.arange(n)
    groups = np.ones(n, dtype=np.int64)
    for group, pct in GROUP_CUTS:
        bound = int(np.ceil(pct * n))
        groups[(rank_of < bound) & (groups == 1)] = group
    return groups


def label_map(scores: CentralityScores, fraction: float) -> dict:
    """subject -> top-fraction label, for joining with feature tables."""
    return dict(zip(scores.subjects, label_top_fraction(scores, fraction).tolist()))


def group_map(scores: CentralityScores) -> dict:
    """subject -> six-group bin."""
    return dict(zip(scores.subjects, bin_six_groups(scores).tolist()))
