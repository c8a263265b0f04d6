"""Temporal-graph data model: edge-list ingestion, snapshot adjacency
state, and edge-time randomization.

A temporal graph is a time-sorted stream of directed edges.  The snapshot
at any point of the stream is maintained by `AdjacencyState`, which keeps
one dict per node mapping neighbor id to a 2-bit pair state (OUT: this
node points at the neighbor, IN: the neighbor points back).  That layout
makes the 6-bit triad code of an ordered node triple a three-lookup OR,
which is what every per-edge hot loop in this package runs on.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

OUT = 1  # pair-state bit: edge from this node to the neighbor
IN = 2   # pair-state bit: edge from the neighbor to this node

# apply_edge outcomes
NEW_EDGE = "new-directed-edge"
DUPLICATE = "duplicate"
NEW_RECIPROCAL = "new-reciprocal"


class TemporalEdge(NamedTuple):
    src: int
    dst: int
    time: int


class EdgeListError(ValueError):
    """Malformed or empty input edge list."""


class TemporalGraph:
    """Immutable time-sorted stream of directed edges with compact node ids.

    Edges are stored as three parallel lists (`srcs`, `dsts`, `times`),
    sorted by time with ties keeping input order.  Node ids are dense and
    0-based, assigned in order of first appearance in the sorted stream.
    Duplicate (src, dst) arrivals are retained: structurally they are
    no-ops, but they advance the evolution clock.
    """

    __slots__ = ("srcs", "dsts", "times", "node_count")

    def __init__(self, srcs, dsts, times, node_count):
        self.srcs = list(srcs)
        self.dsts = list(dsts)
        self.times = list(times)
        self.node_count = node_count

    @property
    def edge_count(self) -> int:
        return len(self.srcs)

    def edges(self):
        for s, d, t in zip(self.srcs, self.dsts, self.times):
            yield TemporalEdge(s, d, t)

    def distinct_edge_count(self) -> int:
        return len(set(zip(self.srcs, self.dsts)))

    def __len__(self):
        return len(self.srcs)

    def __repr__(self):
        return (f"TemporalGraph(nodes={self.node_count}, arrivals={self.edge_count}, "
                f"distinct={self.distinct_edge_count()})")


def from_edge_tuples(edges) -> TemporalGraph:
    """Build a graph from (src, dst, time) triples.

    Applies the same normalization as file ingestion: self-loops dropped,
    stable time sort, dense node ids in order of first appearance in the
    sorted stream.
    """
    kept = [(int(t), int(s), int(d)) for s, d, t in edges if s != d]
    if not kept:
        raise EdgeListError("no usable edges (input empty or self-loops only)")
    kept.sort(key=lambda e: e[0])
    ids: dict[int, int] = {}
    srcs, dsts, times = [], [], []
    for t, s, d in kept:
        srcs.append(ids.setdefault(s, len(ids)))
        dsts.append(ids.setdefault(d, len(ids)))
        times.append(t)
    return TemporalGraph(srcs, dsts, times, len(ids))


def load_edge_list(path, fmt: str = "snap") -> TemporalGraph:
    """Load a SNAP-style whitespace edge list: one "src dst time" triple
    per line, '#'-prefixed comment lines ignored.

    Self-loops are dropped at ingestion (3-node structure never involves
    them).  Duplicate (src, dst, time) lines are kept in the stream.
    Raises EdgeListError with a line number on any malformed line, and on
    inputs with no usable edges.
    """
    if fmt != "snap":
        raise ValueError(f"unknown edge-list format: {fmt!r}")
    triples = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise EdgeListError(
                    f"{path}:{lineno}: expected 'src dst time', got {line!r}")
            try:
                s, d, t = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise EdgeListError(
                    f"{path}:{lineno}: non-integer field in {line!r}") from None
            if s < 0 or d < 0:
                raise EdgeListError(f"{path}:{lineno}: negative node id in {line!r}")
            triples.append((s, d, t))
    if not triples:
        raise EdgeListError(f"{path}: no edges found")
    return from_edge_tuples(triples)


def shuffle_times(g: TemporalGraph, seed) -> TemporalGraph:
    """Randomized copy of `g`: same (src, dst) pairs, same multiset of
    times, times reassigned to edges uniformly at random one-to-one.
    The result is re-sorted by time.  Deterministic per seed.
    """
    if g.edge_count == 0:
        raise ValueError("cannot shuffle an empty graph")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.edge_count)
    new_times = [g.times[i] for i in perm]
    order = np.argsort(np.asarray(new_times), kind="stable")
    return TemporalGraph(
        [g.srcs[i] for i in order],
        [g.dsts[i] for i in order],
        [new_times[i] for i in order],
        g.node_count,
    )


class AdjacencyState:
    """Mutable snapshot of the graph seen so far in a replay.

    Tracks, per node: the neighbor -> pair-state map, the degree (count of
    distinct incident directed edges; a reciprocal pair contributes 2),
    and the in-degree.  `active_nodes` counts nodes with at least one
    incident edge, i.e. the snapshot's node-set size.
    """

    __slots__ = ("nbrs", "degree", "in_degree", "edge_count", "active_nodes")

    def __init__(self, node_count: int):
        self.nbrs = [dict() for _ in range(node_count)]
        self.degree = [0] * node_count
        self.in_degree = [0] * node_count
        self.edge_count = 0     # distinct directed edges
        self.active_nodes = 0   # nodes incident to >= 1 edge

    def apply(self, src: int, dst: int) -> str:
        """Insert the directed edge src -> dst.

        Returns DUPLICATE (state untouched), NEW_RECIPROCAL (dst -> src
        already existed) or NEW_EDGE.  Degrees update on non-duplicates
        only.
        """
        nbrs_u = self.nbrs[src]
        st = nbrs_u.get(dst, 0)
        if st & OUT:
            return DUPLICATE
        nbrs_u[dst] = st | OUT
        nbrs_v = self.nbrs[dst]
        nbrs_v[src] = nbrs_v.get(src, 0) | IN
        deg = self.degree
        if deg[src] == 0:
            self.active_nodes += 1
        if deg[dst] == 0:
            self.active_nodes += 1
        deg[src] += 1
        deg[dst] += 1
        self.in_degree[dst] += 1
        self.edge_count += 1
        return NEW_RECIPROCAL if st & IN else NEW_EDGE

    def neighbors(self, v: int):
        return self.nbrs[v].keys()

    def has_edge(self, src: int, dst: int) -> bool:
        return bool(self.nbrs[src].get(dst, 0) & OUT)

    def triad_code(self, x: int, y: int, z: int) -> int:
        """6-bit triad code of the ordered triple (x, y, z)."""
        nb = self.nbrs
        return nb[x].get(y, 0) | nb[x].get(z, 0) << 2 | nb[y].get(z, 0) << 4


def apply_edge(state: AdjacencyState, e) -> str:
    """Functional wrapper over AdjacencyState.apply for (src, dst[, time])."""
    return state.apply(e[0], e[1])


def snapshot_state(g: TemporalGraph, upto: int | None = None) -> AdjacencyState:
    """Replay the first `upto` arrivals (all of them by default) into a
    fresh AdjacencyState."""
    state = AdjacencyState(g.node_count)
    n = g.edge_count if upto is None else upto
    for s, d in zip(g.srcs[:n], g.dsts[:n]):
        state.apply(s, d)
    return state
