"""Graphlet transition counting, characteristic profiles against
time-shuffled baselines, profile similarity, and threshold-based domain
classification.

A transition occurs when an arriving edge turns the induced triad on
(u, v, w) from one state into a graphlet.  Weights over the 28 transition
types summarize how a graph's local structure evolves; their significance
against randomized replicas (same edges, shuffled arrival times) forms
the characteristic profile used for cross-graph comparison.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph_core import OUT, AdjacencyState, TemporalGraph, shuffle_times
from .streaming_counter import count_stream
from .triad_atlas import N_GRAPHLETS, N_TRANSITIONS, TriadAtlas

DEFAULT_EPSILON = 4.0
DEFAULT_N_RANDOM = 50


@dataclass
class GraphletTransitionGraph:
    """Weights over the 28 transition types (1-based ids).

    The five birth types (disconnected source state) are part of the
    vector; `inbound`/`outbound`/`births` aggregate per destination or
    source graphlet for conservation bookkeeping against the counter.
    """

    weights: np.ndarray  # shape (28,), weights[tid - 1]
    atlas: TriadAtlas

    def inbound(self):
        agg = np.zeros(N_GRAPHLETS, dtype=np.int64)
        for tid, (src, dst) in enumerate(self.atlas.transition_endpoints):
            if src is not None:
                agg[dst - 1] += self.weights[tid]
        return agg

    def outbound(self):
        agg = np.zeros(N_GRAPHLETS, dtype=np.int64)
        for tid, (src, _) in enumerate(self.atlas.transition_endpoints):
            if src is not None:
                agg[src - 1] += self.weights[tid]
        return agg

    def births(self):
        agg = np.zeros(N_GRAPHLETS, dtype=np.int64)
        for tid, (src, dst) in enumerate(self.atlas.transition_endpoints):
            if src is None:
                agg[dst - 1] += self.weights[tid]
        return agg


@dataclass
class CharacteristicProfile:
    """Unit-normalized significance vector of transition weights."""

    cp: np.ndarray            # shape (28,); zero vector in the degenerate case
    weights: np.ndarray       # observed weights
    random_mean: np.ndarray   # mean weights over the randomized replicas


def compute_gtg(g: TemporalGraph, atlas: TriadAtlas) -> GraphletTransitionGraph:
    """Exact transition weights of a stream.

    Per structural edge u -> v, witnesses are visited exactly once:
    neighbors of u (except v), then neighbors of v that are not neighbors
    of u.  A witness whose triad was already connected contributes a
    graphlet-to-graphlet transition; one whose triad was a bare adjacent
    pair contributes a birth.  Duplicates contribute nothing.
    """
    state = AdjacencyState(g.node_count)
    nbrs = state.nbrs
    transition_of = atlas.transition_of
    weights = [0] * (N_TRANSITIONS + 1)  # 1-based

    for u, v in zip(g.srcs, g.dsts):
        nu = nbrs[u]
        st_uv = nu.get(v, 0)
        if st_uv & OUT:
            continue
        nv = nbrs[v]
        for w in nu:
            if w != v:
                code = st_uv | nu[w] << 2 | nv.get(w, 0) << 4
                weights[transition_of[code][0]] += 1
        for w in nv:
            if w != u and w not in nu:
                # u-w pair empty by construction
                code = st_uv | nv[w] << 4
                weights[transition_of[code][0]] += 1
        state.apply(u, v)

    return GraphletTransitionGraph(np.array(weights[1:], dtype=np.int64), atlas)


def significance_profile(observed, random_mean, epsilon: float) -> np.ndarray:
    """(w - w~) / (w + w~ + epsilon), computed entrywise."""
    observed = np.asarray(observed, dtype=float)
    random_mean = np.asarray(random_mean, dtype=float)
    return (observed - random_mean) / (observed + random_mean + epsilon)


def normalize_profile(sp: np.ndarray) -> np.ndarray:
    """Scale to unit Euclidean norm; an all-zero vector stays zero."""
    norm = float(np.linalg.norm(sp))
    if norm == 0.0:
        return np.zeros_like(sp)
    return sp / norm


def _gtg_weights_of_shuffle(args):
    g, rng_seed = args
    from .triad_atlas import build_atlas  # worker processes build their own tables

    return compute_gtg(shuffle_times(g, rng_seed), build_atlas()).weights


def compute_cp(g: TemporalGraph, atlas: TriadAtlas,
               n_random: int = DEFAULT_N_RANDOM, epsilon: float = DEFAULT_EPSILON,
               seed=0, threads: int = 1) -> CharacteristicProfile:
    """Characteristic profile of a stream vs. time-shuffled replicas.

    The baseline weight of each transition type is its mean over
    `n_random` independent shuffles.  Deterministic per seed; replicas
    may be computed in parallel worker processes.
    """
    if n_random < 1:
        raise ValueError("n_random must be >= 1")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    observed = compute_gtg(g, atlas).weights
    child_seeds = np.random.SeedSequence(seed).spawn(n_random)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            replica_weights = list(pool.map(
                _gtg_weights_of_shuffle, [(g, s) for s in child_seeds]))
    else:
        replica_weights = [compute_gtg(shuffle_times(g, s), atlas).weights
                           for s in child_seeds]
    random_mean = np.mean(replica_weights, axis=0)
    sp = significance_profile(observed, random_mean, epsilon)
    return CharacteristicProfile(normalize_profile(sp), observed, random_mean)


def _count_statistic(g, atlas, stat: str, n_checkpoints: int):
    series = count_stream(g, atlas, n_checkpoints=n_checkpoints)
    if stat == "final":
        return np.array(series.final_counts, dtype=float)
    if stat == "mean":
        return np.mean([c[1] for c in series.checkpoints], axis=0)
    raise ValueError(f"unknown occurrence statistic: {stat!r}")


def _count_stat_of_shuffle(args):
    g, rng_seed, stat, n_checkpoints = args
    from .triad_atlas import build_atlas

    return _count_statistic(shuffle_times(g, rng_seed), build_atlas(), stat, n_checkpoints)


def cp_from_occurrences(g: TemporalGraph, atlas: TriadAtlas,
                        n_random: int = DEFAULT_N_RANDOM, epsilon: float = DEFAULT_EPSILON,
                        seed=0, stat: str = "final", n_checkpoints: int = 200,
                        threads: int = 1) -> CharacteristicProfile:
    """Occurrence-based profile: the CP machinery applied to the 13
    graphlet counts instead of the 28 transition weights.

    With stat="final" the randomized baseline is degenerate by
    construction -- shuffling arrival times never changes the final
    snapshot, so the profile is the zero vector.  stat="mean" uses counts
    averaged over the checkpoint grid, which does react to arrival order
    and is the variant worth comparing transition profiles against.
    """
    if n_random < 1:
        raise ValueError("n_random must be >= 1")
    observed = _count_statistic(g, atlas, stat, n_checkpoints)
    child_seeds = np.random.SeedSequence(seed).spawn(n_random)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            replica_stats = list(pool.map(
                _count_stat_of_shuffle,
                [(g, s, stat, n_checkpoints) for s in child_seeds]))
    else:
        replica_stats = [_count_statistic(shuffle_times(g, s), atlas, stat, n_checkpoints)
                         for s in child_seeds]
    random_mean = np.mean(replica_stats, axis=0)
    sp = significance_profile(observed, random_mean, epsilon)
    return CharacteristicProfile(normalize_profile(sp), observed, random_mean)


def cp_similarity(a, b) -> float:
    """Pearson correlation between two profiles (errors on zero variance)."""
    from .stats import pearson

    a = a.cp if isinstance(a, CharacteristicProfile) else np.asarray(a, dtype=float)
    b = b.cp if isinstance(b, CharacteristicProfile) else np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("profiles must have equal length")
    return pearson(a, b)


def similarity_matrix(profiles):
    """Pairwise Pearson similarity of profiles.

    Zero-variance profiles (e.g. degenerate zero CPs) are excluded: their
    rows/columns are NaN and their indices are reported alongside the
    matrix.
    """
    vecs = [p.cp if isinstance(p, CharacteristicProfile) else np.asarray(p, dtype=float)
            for p in profiles]
    n = len(vecs)
    valid = [bool(np.std(v) > 0) for v in vecs]
    mat = np.full((n, n), np.nan)
    for i in range(n):
        if valid[i]:
            mat[i, i] = 1.0
        for j in range(i + 1, n):
            if valid[i] and valid[j]:
                mat[i, j] = mat[j, i] = cp_similarity(vecs[i], vecs[j])
    dropped = [i for i, ok in enumerate(valid) if not ok]
    return mat, dropped


def classify_by_threshold(sim_matrix, domain_labels):
    """Best same-domain decision threshold over pairwise similarities.

    Scans every distinct off-diagonal similarity (plus a sentinel above
    the maximum, which predicts all pairs cross-domain) as a candidate
    threshold; a pair is predicted same-domain iff its similarity is >=
    the threshold.  Returns (best_threshold, best_accuracy); among ties
    the smallest threshold wins.
    """
    sim_matrix = np.asarray(sim_matrix, dtype=float)
    n = len(domain_labels)
    if n < 2 or len(set(domain_labels)) < 2:
        raise ValueError("need >= 2 graphs from >= 2 domains")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if not np.isnan(sim_matrix[i, j])]
    if not pairs:
        raise ValueError("no valid similarity pairs")
    sims = np.array([sim_matrix[i, j] for i, j in pairs])
    same = np.array([domain_labels[i] == domain_labels[j] for i, j in pairs])
    candidates = sorted(set(sims.tolist()))
    candidates.append(candidates[-1] + 1.0)
    best_threshold, best_accuracy = None, -1.0
    for threshold in candidates:
        accuracy = float(np.mean((sims >= threshold) == same))
        if accuracy > best_accuracy:
            best_threshold, best_accuracy = threshold, accuracy
    return best_threshold, best_accuracy
