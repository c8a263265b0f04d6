"""Incremental maintenance of the 13 graphlet-instance counts over an
edge stream, with checkpointed count/ratio series.

For each arriving structural edge u -> v, every third node w adjacent to
u or v has its triad (u, v, w) reclassified: the class it occupied before
the insertion (if connected) is decremented, the class after is
incremented.  Duplicate arrivals change nothing structurally but still
advance the evolution clock, because the series' x-axis is the fraction
of arrivals processed.
"""

from __future__ import annotations

from .graph_core import OUT, AdjacencyState, TemporalGraph
from .triad_atlas import N_GRAPHLETS, TriadAtlas


class GraphletCountSeries:
    """Counts of each graphlet class sampled at evolution-ratio checkpoints.

    Each checkpoint is (evolution_ratio, counts, ratios) where counts is a
    13-tuple of instance counts and ratios is counts normalized to sum 1
    (all zeros when no instance exists yet).
    """

    __slots__ = ("checkpoints",)

    def __init__(self, checkpoints):
        self.checkpoints = checkpoints

    @property
    def final_counts(self):
        return self.checkpoints[-1][1]

    def ratio_series(self, graphlet_id: int):
        """(xs, ys) of one graphlet's ratio over the stream."""
        xs = [c[0] for c in self.checkpoints]
        ys = [c[2][graphlet_id - 1] for c in self.checkpoints]
        return xs, ys


def _ratios(counts):
    total = sum(counts)
    if total == 0:
        return (0.0,) * N_GRAPHLETS
    return tuple(c / total for c in counts)


def count_stream(g: TemporalGraph, atlas: TriadAtlas,
                 n_checkpoints: int = 1000) -> GraphletCountSeries:
    """Replay the stream and maintain exact graphlet-instance counts.

    Records the counts at `n_checkpoints` evenly spaced evolution ratios
    (the final snapshot is always the last checkpoint).  The final counts
    equal a brute-force census of the last snapshot.
    """
    if n_checkpoints < 1:
        raise ValueError("n_checkpoints must be >= 1")
    total = g.edge_count
    n_checkpoints = min(n_checkpoints, total)
    targets = sorted({max(1, round(j * total / n_checkpoints))
                      for j in range(1, n_checkpoints + 1)})
    target_iter = iter(targets)
    next_target = next(target_iter)

    state = AdjacencyState(g.node_count)
    nbrs = state.nbrs
    graphlet_of = atlas.graphlet_of
    counts = [0] * (N_GRAPHLETS + 1)  # 1-based
    checkpoints = []
    codes = []

    for i, (u, v) in enumerate(zip(g.srcs, g.dsts), start=1):
        nu = nbrs[u]
        st_uv = nu.get(v, 0)
        if not st_uv & OUT:
            nv = nbrs[v]
            witnesses = set(nu)
            witnesses.update(nv)
            witnesses.discard(u)
            witnesses.discard(v)
            codes.clear()
            for w in witnesses:
                code = st_uv | nu.get(w, 0) << 2 | nv.get(w, 0) << 4
                codes.append(code)
                before = graphlet_of[code]
                if before is not None:
                    counts[before] -= 1
            state.apply(u, v)
            # adding bit 0 (u -> v) makes every witnessed triple connected
            for code in codes:
                counts[graphlet_of[code | 1]] += 1
            assert min(counts[1:]) >= 0, "graphlet count went negative"
        if i == next_target:
            body = tuple(counts[1:])
            checkpoints.append((i / total, body, _ratios(body)))
            next_target = next(target_iter, None)

    return GraphletCountSeries(checkpoints)


def census_bruteforce(state: AdjacencyState, atlas: TriadAtlas):
    """Exact graphlet census of a snapshot by neighbor-pair enumeration.

    Every connected triple has 1 center (wedge skeleton) or 3 centers
    (triangle skeleton), so per-class tallies are divided by the class's
    center multiplicity.  Independent of the streaming path; used as its
    oracle.
    """
    nbrs = state.nbrs
    graphlet_of = atlas.graphlet_of
    tallies = [0] * (N_GRAPHLETS + 1)
    for v in range(len(nbrs)):
        nv = nbrs[v]
        around = list(nv)
        for i in range(len(around)):
            w = around[i]
            st_vw = nv[w]
            nw = nbrs[w]
            for j in range(i + 1, len(around)):
                x = around[j]
                code = st_vw | nv[x] << 2 | nw.get(x, 0) << 4
                tallies[graphlet_of[code]] += 1
    counts = []
    for gid in range(1, N_GRAPHLETS + 1):
        if atlas.graphlet_pair_count[gid - 1] == 3:
            assert tallies[gid] % 3 == 0, "triangle-skeleton tally not divisible by 3"
            counts.append(tallies[gid] // 3)
        else:
            counts.append(tallies[gid])
    return tuple(counts)
