"""Synthetic temporal-graph corpora for the test suite.

Three stream generators imitate the growth mechanics of the domains the
pipeline is aimed at, without copying any real dataset: citation-style
(new nodes cite older ones preferentially), message-style (fixed user
population, bursty repeated + reciprocated messages inside communities),
and Q/A-style (hub answerers reply to a churning asker population).
They produce genuinely different arrival dynamics, which is what the
similarity / non-linearity checks need.
"""

from __future__ import annotations

import math
import random

from graphlet_lens.graph_core import TemporalGraph, from_edge_tuples


def random_stream(n: int, m: int, seed, p_duplicate=0.2, p_reciprocal=0.25,
                  time_step=3) -> TemporalGraph:
    """Uniform random temporal graph with duplicate and reciprocal arrivals
    mixed in; the workhorse of the oracle-equivalence corpora."""
    rng = random.Random(seed)
    edges = []
    t = 0
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        t += rng.randint(0, time_step)
        edges.append((u, v, t))
        if rng.random() < p_duplicate:
            edges.append((u, v, t + 1))
        if rng.random() < p_reciprocal:
            edges.append((v, u, t + 2))
    return from_edge_tuples(edges[:m])


def citation_stream(n_nodes: int, refs_per_node: int, seed) -> TemporalGraph:
    """Citation-style growth: node k arrives at time k and cites earlier
    nodes, preferring already-cited ones (rich get richer) with a recency
    bias.  No reciprocation, no repeats."""
    rng = random.Random(seed)
    edges = [(1, 0, 1)]
    citations = [1, 1] + [0] * (n_nodes - 2)  # 1-smoothed in-degree
    for k in range(2, n_nodes):
        targets = set()
        attempts = 0
        while len(targets) < min(refs_per_node, k) and attempts < 20 * refs_per_node:
            attempts += 1
            if rng.random() < 0.35:
                cand = rng.randrange(max(1, k - 25), k)  # recent work
            else:
                cand = rng.choices(range(k), weights=citations[:k])[0]
            targets.add(cand)
        for v in targets:
            citations[v] += 1
            edges.append((k, v, k))
    return from_edge_tuples(edges)


def message_stream(n_users: int, n_messages: int, seed, n_groups: int = 4) -> TemporalGraph:
    """Message-style traffic: heavy-tailed senders, repeated favorite
    pairs, and quick replies fill in reciprocal and dense triads.  Groups
    carry staggered activity waves (cohorts joining and quieting down),
    so the structural mix shifts in regimes over the stream instead of
    being stationary."""
    rng = random.Random(seed)
    # cohort sizes grow wave over wave: a small founding core, then ever
    # larger crowds joining
    share = [(gr + 1) ** 2 for gr in range(n_groups)]
    group = rng.choices(range(n_groups), weights=share, k=n_users)
    for gr in range(n_groups):  # guarantee non-empty cohorts
        if gr not in group:
            group[rng.randrange(n_users)] = gr
    members = [[u for u in range(n_users) if group[u] == gr] for gr in range(n_groups)]
    activity = [rng.paretovariate(1.6) for _ in range(n_users)]
    member_weights = [[activity[x] for x in members[gr]] for gr in range(n_groups)]
    favorites: dict[int, list[int]] = {}
    edges = []
    t = 0
    while len(edges) < n_messages:
        t += rng.randint(1, 4)
        frac = len(edges) / n_messages
        # one marked regime change mid-stream: a tight reciprocal founding
        # community (pair chatter, triangles) opens up into broadcast
        # contact-making with the later crowds (stars and wedges).  A
        # time-shuffled replica has no such regime structure.
        switch = 1.0 / (1.0 + math.exp(-10.0 * (frac - 0.5)))
        p_reply = 0.55 - 0.45 * switch
        p_favorite = 0.75 - 0.50 * switch
        p_in_group = 0.97 - 0.45 * switch
        wave = [0.25 + max(0.0, 1.0 - abs(frac * n_groups - (gr + 0.5)))
                for gr in range(n_groups)]
        gr = rng.choices(range(n_groups), weights=wave)[0]
        u = rng.choices(members[gr], weights=member_weights[gr])[0]
        if u in favorites and rng.random() < p_favorite:
            v = rng.choice(favorites[u])
        else:
            pool = members[gr] if rng.random() < p_in_group else range(n_users)
            v = rng.choice(list(pool))
            if v == u:
                continue
            favorites.setdefault(u, []).append(v)
        if u == v:
            continue
        edges.append((u, v, t))
        if rng.random() < p_reply:
            edges.append((v, u, t + rng.randint(1, 3)))  # reply
    return from_edge_tuples(edges[:n_messages])


def qa_stream(n_users: int, n_answers: int, seed) -> TemporalGraph:
    """Q/A-style traffic: an edge means "u answered v's question".  A
    small pool of prolific answerers serves a churning asker population
    that joins over time; each question draws a short burst of answers,
    so in-stars grow in consecutive arrivals (unlike message traffic,
    where reciprocated pair chatter dominates)."""
    rng = random.Random(seed)
    n_answerers = max(3, n_users // 12)
    answer_weight = [rng.paretovariate(1.9) for _ in range(n_answerers)]
    edges = []
    t = 0
    while len(edges) < n_answers:
        t += rng.randint(1, 3)
        # population joining over time: askers drawn from a growing prefix
        grown = n_answerers + int((n_users - n_answerers)
                                  * min(1.0, len(edges) / max(1, n_answers * 0.9)))
        asker = rng.randrange(n_answerers, max(n_answerers + 1, grown))
        burst = 1 + (rng.random() < 0.45) + (rng.random() < 0.2)
        answered = set()
        for _ in range(burst):
            if rng.random() < 0.88:
                u = rng.choices(range(n_answerers), weights=answer_weight)[0]
            else:
                u = rng.randrange(n_answerers, max(n_answerers + 1, grown))
            if u == asker or u in answered:
                continue
            answered.add(u)
            t += 1
            edges.append((u, asker, t))
    return from_edge_tuples(edges[:n_answers])


DOMAIN_GENERATORS = {
    "citation": citation_stream,
    "message": message_stream,
    "qa": qa_stream,
}


def domain_corpus(scale: float = 1.0, seed: int = 0):
    """(name, domain, graph) triples: two graphs per synthetic domain."""
    out = []
    specs = [
        ("cite-a", "citation", lambda s: citation_stream(int(700 * scale), 6, s)),
        ("cite-b", "citation", lambda s: citation_stream(int(900 * scale), 5, s)),
        ("msg-a", "message", lambda s: message_stream(int(400 * scale), int(6000 * scale), s)),
        ("msg-b", "message", lambda s: message_stream(int(550 * scale), int(7000 * scale), s)),
        ("qa-a", "qa", lambda s: qa_stream(int(500 * scale), int(5000 * scale), s)),
        ("qa-b", "qa", lambda s: qa_stream(int(650 * scale), int(6000 * scale), s)),
    ]
    for i, (name, domain, make) in enumerate(specs):
        out.append((name, domain, make(seed + 17 * i)))
    return out


def write_snap_file(g: TemporalGraph, path):
    """Serialize a graph back to SNAP whitespace format."""
    with open(path, "w") as fh:
        fh.write("# src dst time\n")
        for s, d, t in zip(g.srcs, g.dsts, g.times):
            fh.write(f"{s} {d} {t}\n")
    return path
