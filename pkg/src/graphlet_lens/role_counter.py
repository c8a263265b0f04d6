"""Early-stage local-structure extraction around nodes and edges.

A node's threshold event fires the first time its in-degree reaches
d_theta; an edge's fires the first time the edge exists while its
endpoints' in-degree sum is at least d_theta.  At that instant we record
the subject's orbit counts (30 node orbits or 30 edge orbits), the
wedge/triangle baseline features, and snapshot-level statistics, all of
which feed the downstream prediction pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import IN, OUT, AdjacencyState, TemporalGraph
from .triad_atlas import N_EDGE_ORBITS, N_NODE_ORBITS, TriadAtlas


@dataclass
class RoleVector:
    """Orbit counts of one subject, with simplex-normalized ratios."""

    counts: np.ndarray

    @property
    def ratios(self) -> np.ndarray:
        total = self.counts.sum()
        if total == 0:
            return np.zeros(len(self.counts))
        return self.counts / total


@dataclass
class ThresholdEvent:
    """One subject crossing the in-degree threshold, with the features
    captured at that instant."""

    subject: object            # node id, or (src, dst) for edges
    trigger_index: int         # 1-based arrival index that fired the event
    evolution_ratio: float
    role_counts: np.ndarray    # 30 orbit counts
    npp: np.ndarray | None     # 5 wedge/triangle features (node subjects)
    n_nodes: int               # snapshot |V| at the event
    n_edges: int               # snapshot |E| (distinct directed edges)
    ref_mean: np.ndarray | None = None  # reference-population ratio mean
    ref_std: np.ndarray | None = None   # reference-population ratio std

    @property
    def role_ratios(self) -> np.ndarray:
        return RoleVector(self.role_counts).ratios


def node_roles_at(state: AdjacencyState, v: int, atlas: TriadAtlas) -> RoleVector:
    """Orbit counts of node v over every connected triple containing it.

    Triples where v is adjacent to both others come from pairs of v's
    neighbors; triples where v hangs off a single neighbor w come from
    w's neighbors that are not adjacent to v.  Work is proportional to
    the degree mass around v.
    """
    nbrs = state.nbrs
    if v < 0 or v >= len(nbrs):
        raise ValueError(f"unknown node {v}")
    node_orbit_of = atlas.node_orbit_of
    counts = np.zeros(N_NODE_ORBITS + 1, dtype=np.int64)
    nv = nbrs[v]
    around = list(nv)
    for i in range(len(around)):
        w = around[i]
        st_vw = nv[w]
        nw = nbrs[w]
        for j in range(i + 1, len(around)):
            x = around[j]
            code = st_vw | nv[x] << 2 | nw.get(x, 0) << 4
            counts[node_orbit_of[code][0]] += 1
    for w in around:
        st_vw = nv[w]
        nw = nbrs[w]
        for x in nw:
            if x != v and x not in nv:
                # v-x pair empty, so bits 2..3 stay clear
                code = st_vw | nw[x] << 4
                counts[node_orbit_of[code][0]] += 1
    return RoleVector(counts[1:])


def edge_roles_at(state: AdjacencyState, e, atlas: TriadAtlas) -> RoleVector:
    """Orbit counts of a present directed edge over the connected triples
    containing both endpoints."""
    u, v = e[0], e[1]
    nbrs = state.nbrs
    nu = nbrs[u]
    st_uv = nu.get(v, 0)
    if not st_uv & OUT:
        raise ValueError(f"edge {u}->{v} not present")
    nv = nbrs[v]
    edge_orbit_of = atlas.edge_orbit_of
    counts = np.zeros(N_EDGE_ORBITS + 1, dtype=np.int64)
    witnesses = set(nu)
    witnesses.update(nv)
    witnesses.discard(u)
    witnesses.discard(v)
    for w in witnesses:
        code = st_uv | nu.get(w, 0) << 2 | nv.get(w, 0) << 4
        counts[edge_orbit_of[code][0]] += 1
    return RoleVector(counts[1:])


def undirected_edge_count(state: AdjacencyState) -> int:
    """Number of adjacent node pairs in the snapshot."""
    return sum(len(n) for n in state.nbrs) // 2


def npp_features(state: AdjacencyState, v: int) -> np.ndarray:
    """The five wedge/triangle baseline features of a node, computed on
    the undirected skeleton of the snapshot.

    Local: triangles at v, wedges centered at v (neighbor pairs), wedges
    ended at v (2-paths starting at v).  Global: edges not incident to v,
    and non-adjacent pairs (neighbor of v, non-neighbor of v).
    """
    nbrs = state.nbrs
    if v < 0 or v >= len(nbrs):
        raise ValueError(f"unknown node {v}")
    nv = nbrs[v]
    deg = len(nv)
    around = list(nv)
    triangles = 0
    for i in range(len(around)):
        nw = nbrs[around[i]]
        for j in range(i + 1, len(around)):
            if around[j] in nw:
                triangles += 1
    wedges_centered = deg * (deg - 1) // 2
    wedges_ended = sum(len(nbrs[w]) - 1 for w in around)
    edges_not_incident = undirected_edge_count(state) - deg
    non_adjacent_pairs = 0
    for w in around:
        reach = sum(1 for x in nbrs[w] if x != v and x not in nv)
        non_adjacent_pairs += state.active_nodes - deg - 1 - reach
    return np.array([triangles, wedges_centered, wedges_ended,
                     edges_not_incident, non_adjacent_pairs], dtype=float)


class _ReferenceTracker:
    """Lagged mean/std of the ratio vectors of all subjects sitting
    exactly at the threshold.

    Recomputing the population at every event is quadratic in busy
    streams, so statistics refresh at most once per `refresh_every`
    structural edges, on demand; events in between reuse the last
    refresh.  refresh_every=0 recomputes at every event (exact
    population semantics)."""

    def __init__(self, refresh_every: int):
        self.refresh_every = refresh_every
        self.members = set()
        self.mean = None
        self.std = None
        self._last_refresh = None

    def stats_at(self, edge_index: int, ratios_of):
        stale = (self._last_refresh is None
                 or edge_index - self._last_refresh >= self.refresh_every)
        if stale:
            if len(self.members) >= 2:
                mat = np.array([ratios_of(s) for s in sorted(self.members)])
                self.mean = mat.mean(axis=0)
                self.std = mat.std(axis=0)
            else:
                self.mean = self.std = None
            self._last_refresh = edge_index
        return self.mean, self.std


def scan_threshold_events(g: TemporalGraph, atlas: TriadAtlas, d_theta: int,
                          subject_kind: str = "node",
                          refresh_every: int = 1000) -> list[ThresholdEvent]:
    """Single replay that captures every subject's threshold event.

    Node subjects trigger when their in-degree first reaches d_theta;
    edge subjects when the edge exists and its endpoints' in-degree sum
    first reaches d_theta (simultaneously qualifying edges fire in
    insertion order).  Each subject triggers at most once.
    """
    if d_theta < 1:
        raise ValueError("d_theta must be >= 1")
    if subject_kind not in ("node", "edge"):
        raise ValueError(f"subject_kind must be 'node' or 'edge', got {subject_kind!r}")
    if subject_kind == "node":
        return _scan_nodes(g, atlas, d_theta, refresh_every)
    return _scan_edges(g, atlas, d_theta, refresh_every)


def _scan_nodes(g, atlas, d_theta, refresh_every):
    state = AdjacencyState(g.node_count)
    in_degree = state.in_degree
    total = g.edge_count
    tracker = _ReferenceTracker(refresh_every)
    events = []
    for i, (u, v) in enumerate(zip(g.srcs, g.dsts), start=1):
        if state.apply(u, v) == "duplicate":
            continue
        dv = in_degree[v]
        if dv == d_theta:
            tracker.members.add(v)
        elif dv == d_theta + 1:
            tracker.members.discard(v)
        if dv == d_theta:
            mean, std = tracker.stats_at(
                state.edge_count,
                lambda s: RoleVector(node_roles_at(state, s, atlas).counts).ratios)
            events.append(ThresholdEvent(
                subject=v, trigger_index=i, evolution_ratio=i / total,
                role_counts=node_roles_at(state, v, atlas).counts,
                npp=npp_features(state, v),
                n_nodes=state.active_nodes, n_edges=state.edge_count,
                ref_mean=mean, ref_std=std))
    return events


def _scan_edges(g, atlas, d_theta, refresh_every):
    state = AdjacencyState(g.node_count)
    in_degree = state.in_degree
    nbrs = state.nbrs
    total = g.edge_count
    insert_order = {}
    triggered = set()
    tracker = _ReferenceTracker(refresh_every)

    def sum_of(e):
        return in_degree[e[0]] + in_degree[e[1]]

    events = []
    for i, (u, v) in enumerate(zip(g.srcs, g.dsts), start=1):
        if state.apply(u, v) == "duplicate":
            continue
        insert_order[(u, v)] = len(insert_order)
        # only edges incident to v changed their endpoint in-degree sum
        touched = []
        for x, st in nbrs[v].items():
            if st & OUT:
                touched.append((v, x))
            if st & IN:
                touched.append((x, v))
        for e in touched:
            if sum_of(e) == d_theta:
                tracker.members.add(e)
            else:
                tracker.members.discard(e)
        candidates = sorted(
            (e for e in touched if e not in triggered and sum_of(e) >= d_theta),
            key=insert_order.__getitem__)
        for e in candidates:
            triggered.add(e)
            mean, std = tracker.stats_at(
                state.edge_count,
                lambda s: RoleVector(edge_roles_at(state, s, atlas).counts).ratios)
            events.append(ThresholdEvent(
                subject=e, trigger_index=i, evolution_ratio=i / total,
                role_counts=edge_roles_at(state, e, atlas).counts,
                npp=None,
                n_nodes=state.active_nodes, n_edges=state.edge_count,
                ref_mean=mean, ref_std=std))
    return events


def zscore(vector, mean, std) -> np.ndarray:
    """Coordinate-wise z-score; coordinates with zero (or undefined)
    spread score 0."""
    vector = np.asarray(vector, dtype=float)
    if mean is None or std is None:
        return np.zeros_like(vector)
    out = np.zeros_like(vector)
    ok = std > 0
    out[ok] = (vector[ok] - np.asarray(mean, dtype=float)[ok]) / np.asarray(std, dtype=float)[ok]
    return out


def standardize_role_ratios(events) -> list[np.ndarray]:
    """Z-scored ratio vector per event, against the reference population
    captured at its snapshot.

    Events that predate any usable reference (population smaller than 2)
    are standardized against the event set itself, which is also the
    exact semantics when all events share one snapshot context.
    """
    if not events:
        return []
    fallback_mat = np.array([e.role_ratios for e in events])
    fb_mean = fallback_mat.mean(axis=0)
    fb_std = fallback_mat.std(axis=0)
    out = []
    for e in events:
        if e.ref_mean is not None:
            out.append(zscore(e.role_ratios, e.ref_mean, e.ref_std))
        else:
            out.append(zscore(e.role_ratios, fb_mean, fb_std))
    return out


NODE_FEATURE_SETS = ("local-nr", "local-npp", "global-nr", "global-npp",
                     "global-basic", "all")
EDGE_FEATURE_SETS = ("local-er", "global-er", "global-basic", "all")


def _feature_blocks(events, subject_kind):
    role = "nr" if subject_kind == "node" else "er"
    n_orbits = N_NODE_ORBITS if subject_kind == "node" else N_EDGE_ORBITS
    blocks = {
        "local": ([f"local_{role}_{i}" for i in range(1, n_orbits + 1)],
                  np.array([e.role_counts for e in events], dtype=float)),
        "zscore": ([f"global_{role}_{i}" for i in range(1, n_orbits + 1)],
                   np.array(standardize_role_ratios(events))),
        "basic": (["n_nodes", "n_edges"],
                  np.array([[e.n_nodes, e.n_edges] for e in events], dtype=float)),
    }
    if subject_kind == "node":
        npp = np.array([e.npp for e in events], dtype=float)
        blocks["npp_local"] = (["local_npp_1", "local_npp_2", "local_npp_3"], npp[:, :3])
        blocks["npp_global"] = (["global_npp_1", "global_npp_2"], npp[:, 3:])
    return blocks


_SET_COMPOSITION = {
    ("node", "local-nr"): ("local",),
    ("node", "local-npp"): ("npp_local",),
    ("node", "global-nr"): ("zscore", "local"),
    ("node", "global-npp"): ("npp_global", "npp_local"),
    ("node", "global-basic"): ("basic",),
    ("node", "all"): ("zscore", "local", "npp_global", "npp_local", "basic"),
    ("edge", "local-er"): ("local",),
    ("edge", "global-er"): ("zscore", "local"),
    ("edge", "global-basic"): ("basic",),
    ("edge", "all"): ("zscore", "local", "basic"),
}


def build_feature_table(events, subject_kind: str, feature_set: str):
    """Assemble one named feature set from scanned events.

    The global role sets include the local counts alongside the z-scored
    ratios, and the global wedge/triangle set includes its local
    counterpart; "all" unions every global set.
    """
    from .ml import FeatureTable

    key = (subject_kind, feature_set)
    if key not in _SET_COMPOSITION:
        raise ValueError(f"unknown feature set {feature_set!r} for {subject_kind!r}")
    if not events:
        raise ValueError("no threshold events to build features from")
    blocks = _feature_blocks(events, subject_kind)
    columns, parts = [], []
    for name in _SET_COMPOSITION[key]:
        cols, mat = blocks[name]
        columns.extend(cols)
        parts.append(mat)
    return FeatureTable(columns, np.hstack(parts),
                        [e.subject for e in events])
