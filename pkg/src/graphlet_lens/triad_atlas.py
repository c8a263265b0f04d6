"""Canonical classification of directed 3-node induced subgraphs.

A triad over an ordered node triple (a, b, c) is encoded as a 6-bit mask:

    bit 0: a -> b      bit 1: b -> a
    bit 2: a -> c      bit 3: c -> a
    bit 4: b -> c      bit 5: c -> b

All tables are derived at import-cost time by exhaustive enumeration of
the 64 masks under the 6 node permutations: the 13 weakly connected
isomorphism classes (graphlets), the 30 node orbits, the 30 edge orbits,
and the 28 single-added-edge transition types (23 between graphlets plus
5 births out of the single-edge and mutual-dyad states).  Deriving rather
than hard-coding doubles as a self-test: construction fails loudly if any
cardinality disagrees.
"""

from __future__ import annotations

import itertools

N_GRAPHLETS = 13
N_NODE_ORBITS = 30
N_EDGE_ORBITS = 30
N_TRANSITIONS = 28

# Ordered node pair -> bit index, and back.
PAIR_TO_BIT = {(0, 1): 0, (1, 0): 1, (0, 2): 2, (2, 0): 3, (1, 2): 4, (2, 1): 5}
BIT_TO_PAIR = tuple(sorted(PAIR_TO_BIT, key=PAIR_TO_BIT.get))

_PERMS = tuple(itertools.permutations(range(3)))


class AtlasError(AssertionError):
    """Raised when the exhaustive enumeration disagrees with the expected
    class cardinalities (13/30/30/28) -- always an implementation bug."""


def permute_mask(mask: int, perm) -> int:
    """Relabel the triad: node p becomes node perm[p]."""
    out = 0
    for bit in range(6):
        if mask >> bit & 1:
            i, j = BIT_TO_PAIR[bit]
            out |= 1 << PAIR_TO_BIT[(perm[i], perm[j])]
    return out


def is_weakly_connected(mask: int) -> bool:
    """Three nodes are weakly connected iff at least two of the three
    unordered pairs are adjacent (any two pairs share a node)."""
    pairs = (mask & 0b000011 != 0) + (mask & 0b001100 != 0) + (mask & 0b110000 != 0)
    return pairs >= 2


def _adjacent_pairs(mask: int) -> int:
    return (mask & 0b000011 != 0) + (mask & 0b001100 != 0) + (mask & 0b110000 != 0)


class TriadAtlas:
    """Immutable lookup tables for triad classification.

    The flat tables (`graphlet_of`, `node_orbit_of`, `edge_orbit_of`,
    `transition_of`) are plain tuples indexed by mask so the per-edge hot
    loops can bypass method-call overhead.  Ids are 1-based; `None` marks
    undefined entries (disconnected masks, absent edge slots).
    """

    def __init__(self, graphlet_of, node_orbit_of, edge_orbit_of, transition_of,
                 canonical_order, graphlet_edge_count, graphlet_pair_count,
                 transition_endpoints, transition_source_state,
                 node_orbit_owner, edge_orbit_owner):
        self.graphlet_of = graphlet_of              # mask -> GraphletId | None
        self.node_orbit_of = node_orbit_of          # mask -> (id|None,)*3
        self.edge_orbit_of = edge_orbit_of          # mask -> (id|None,)*6
        self.transition_of = transition_of          # mask -> (id|None,)*6, keyed by added bit
        self.canonical_order = canonical_order      # representative mask per graphlet, id order
        self.graphlet_edge_count = graphlet_edge_count  # directed edges per graphlet, id order
        self.graphlet_pair_count = graphlet_pair_count  # adjacent pairs (2=wedge, 3=triangle)
        # tid -> (src GraphletId | None, dst GraphletId); src is None for the
        # five birth transitions whose source state is not itself a graphlet.
        self.transition_endpoints = transition_endpoints
        self.transition_source_state = transition_source_state  # tid -> readable source label
        self.node_orbit_owner = node_orbit_owner    # node orbit id -> owning GraphletId
        self.edge_orbit_owner = edge_orbit_owner    # edge orbit id -> owning GraphletId

    def classify(self, code: int):
        """Graphlet id of a mask, or None if not weakly connected."""
        return self.graphlet_of[code]

    def node_orbit(self, code: int, position: int):
        """Orbit id of one position (0..2); None on disconnected masks."""
        return self.node_orbit_of[code][position]

    def edge_orbit(self, code: int, edge_bit: int):
        """Orbit id of a present directed-edge slot."""
        if not code >> edge_bit & 1:
            raise ValueError(f"edge bit {edge_bit} not present in mask {code:06b}")
        return self.edge_orbit_of[code][edge_bit]

    def transition(self, code_before: int, added_bit: int):
        """Transition id for adding `added_bit` to a triad state.

        Defined whenever the source state has at least one edge and the
        result is weakly connected; this includes the five birth
        transitions out of the single-edge and mutual-dyad states, which
        are what bring the class total to 28.  Returns None when the
        result stays disconnected; raises if the bit is already present.
        """
        if code_before >> added_bit & 1:
            raise ValueError(f"edge bit {added_bit} already present in mask {code_before:06b}")
        return self.transition_of[code_before][added_bit]

    def is_birth(self, tid: int) -> bool:
        """True for transitions whose source state is not a graphlet."""
        return self.transition_endpoints[tid - 1][0] is None

    def dump(self) -> dict:
        """All tables as plain JSON-ready structures, for docs and cross-checks."""
        return {
            "n_graphlets": N_GRAPHLETS,
            "n_node_orbits": N_NODE_ORBITS,
            "n_edge_orbits": N_EDGE_ORBITS,
            "n_transitions": N_TRANSITIONS,
            "bit_layout": {f"bit{PAIR_TO_BIT[p]}": f"{'abc'[p[0]]}->{'abc'[p[1]]}"
                           for p in sorted(PAIR_TO_BIT, key=PAIR_TO_BIT.get)},
            "canonical_order": list(self.canonical_order),
            "graphlet_edge_count": list(self.graphlet_edge_count),
            "graphlet_of": list(self.graphlet_of),
            "node_orbit_of": [list(row) for row in self.node_orbit_of],
            "edge_orbit_of": [list(row) for row in self.edge_orbit_of],
            "transition_endpoints": [list(p) for p in self.transition_endpoints],
            "transitions": [
                {"id": tid + 1, "source": src, "source_state": self.transition_source_state[tid],
                 "dest": dst, "birth": src is None}
                for tid, (src, dst) in enumerate(self.transition_endpoints)
            ],
        }


def _isomorphism_to(mask: int, rep: int):
    """A permutation carrying `mask` onto `rep`, or None."""
    for perm in _PERMS:
        if permute_mask(mask, perm) == rep:
            return perm
    return None


def build_atlas(graphlet_order=None) -> TriadAtlas:
    """Enumerate all 64 triad masks and derive the classification tables.

    `graphlet_order`, when given, is a 13-entry permutation: entry k-1 is
    the published id to assign to the k-th class of the default order
    (directed-edge count ascending, then smallest representative mask).
    It exists so ids can be aligned with an external numbering convention
    once, in configuration, instead of renumbering code.
    """
    # Group masks into isomorphism classes via canonical (minimum) forms.
    canon = [min(permute_mask(m, p) for p in _PERMS) for m in range(64)]
    connected_reps = sorted({canon[m] for m in range(64) if is_weakly_connected(m)})
    if len(connected_reps) != N_GRAPHLETS:
        raise AtlasError(f"expected {N_GRAPHLETS} connected triad classes, "
                         f"found {len(connected_reps)}")

    reps = sorted(connected_reps, key=lambda r: (bin(r).count("1"), r))
    if graphlet_order is not None:
        if sorted(graphlet_order) != list(range(1, N_GRAPHLETS + 1)):
            raise ValueError("graphlet_order must be a permutation of 1..13")
        remapped = [None] * N_GRAPHLETS
        for default_idx, new_id in enumerate(graphlet_order):
            remapped[new_id - 1] = reps[default_idx]
        reps = remapped

    gid_of_rep = {rep: gid for gid, rep in enumerate(reps, start=1)}
    graphlet_of = tuple(
        gid_of_rep[canon[m]] if is_weakly_connected(m) else None for m in range(64)
    )

    # Automorphism orbits on the representatives.
    autos = {rep: [p for p in _PERMS if permute_mask(rep, p) == rep] for rep in reps}

    def orbits(rep, items, image):
        """Partition `items` into orbits under Aut(rep); orbits sorted by min item."""
        remaining, out = set(items), []
        while remaining:
            seed = min(remaining)
            orbit = {image(seed, p) for p in autos[rep]}
            remaining -= orbit
            out.append(frozenset(orbit))
        return sorted(out, key=min)

    def node_image(pos, perm):
        return perm[pos]

    def edge_image(bit, perm):
        i, j = BIT_TO_PAIR[bit]
        return PAIR_TO_BIT[(perm[i], perm[j])]

    node_orbit_id = {}   # (rep, position) -> global orbit id
    edge_orbit_id = {}   # (rep, bit) -> global orbit id
    node_orbit_owner, edge_orbit_owner = [], []
    for rep in reps:
        for orbit in orbits(rep, range(3), node_image):
            node_orbit_owner.append(gid_of_rep[rep])
            for pos in orbit:
                node_orbit_id[(rep, pos)] = len(node_orbit_owner)
        present = [b for b in range(6) if rep >> b & 1]
        for orbit in orbits(rep, present, edge_image):
            edge_orbit_owner.append(gid_of_rep[rep])
            for bit in orbit:
                edge_orbit_id[(rep, bit)] = len(edge_orbit_owner)
    if len(node_orbit_owner) != N_NODE_ORBITS:
        raise AtlasError(f"expected {N_NODE_ORBITS} node orbits, found {len(node_orbit_owner)}")
    if len(edge_orbit_owner) != N_EDGE_ORBITS:
        raise AtlasError(f"expected {N_EDGE_ORBITS} edge orbits, found {len(edge_orbit_owner)}")

    # Per-mask orbit tables, pushed through an isomorphism onto the representative.
    node_orbit_of, edge_orbit_of = [], []
    for m in range(64):
        if not is_weakly_connected(m):
            node_orbit_of.append((None, None, None))
            edge_orbit_of.append((None,) * 6)
            continue
        rep = reps[graphlet_of[m] - 1]
        iso = _isomorphism_to(m, rep)
        node_orbit_of.append(tuple(node_orbit_id[(rep, iso[pos])] for pos in range(3)))
        edge_orbit_of.append(tuple(
            edge_orbit_id[(rep, edge_image(b, iso))] if m >> b & 1 else None
            for b in range(6)
        ))

    # Transitions: add one directed edge to a nonempty triad state so that
    # the result is weakly connected.  The identity of a transition is the
    # (source state class, destination graphlet) pair.  Sources cover the 13
    # graphlets plus the two disconnected-but-adjacent dyadic states (single
    # edge, mutual dyad), whose five outgoing types are graphlet births; the
    # pair-level count over all of them is exactly 28.  (Placement-refined
    # identity would give 30 classes and connected-only sources 23, so the
    # published total pins down this definition.)
    canon_all = canon

    def state_key(state_canon):
        return (bin(state_canon).count("1"), state_canon)

    pair_classes = set()
    for m in range(64):
        if m == 0:
            continue
        for bit in range(6):
            if m >> bit & 1:
                continue
            dest = m | 1 << bit
            if is_weakly_connected(dest):
                pair_classes.add((canon_all[m], canon_all[dest]))
    if len(pair_classes) != N_TRANSITIONS:
        raise AtlasError(f"expected {N_TRANSITIONS} transition classes, "
                         f"found {len(pair_classes)}")

    # Birth sources first (ordered by edge count), then graphlet sources in
    # id order; within a source, destinations in id order.
    def pair_key(pair):
        src, dst = pair
        connected = is_weakly_connected(src)
        src_rank = graphlet_of[src] if connected else 0
        return (connected, src_rank, state_key(src), graphlet_of[dst])

    ordered = sorted(pair_classes, key=pair_key)
    tid_of_pair = {pair: tid for tid, pair in enumerate(ordered, start=1)}
    transition_endpoints = tuple(
        (graphlet_of[src] if is_weakly_connected(src) else None, graphlet_of[dst])
        for src, dst in ordered
    )
    transition_source_state = tuple(
        f"graphlet-{graphlet_of[src]}" if is_weakly_connected(src)
        else ("single-edge" if bin(src).count("1") == 1 else "mutual-dyad")
        for src, _ in ordered
    )

    transition_of = []
    for m in range(64):
        row = []
        for b in range(6):
            if m == 0 or m >> b & 1 or not is_weakly_connected(m | 1 << b):
                row.append(None)
            else:
                row.append(tid_of_pair[(canon_all[m], canon_all[m | 1 << b])])
        transition_of.append(tuple(row))

    return TriadAtlas(
        graphlet_of=graphlet_of,
        node_orbit_of=tuple(node_orbit_of),
        edge_orbit_of=tuple(edge_orbit_of),
        transition_of=tuple(transition_of),
        canonical_order=tuple(reps),
        graphlet_edge_count=tuple(bin(r).count("1") for r in reps),
        graphlet_pair_count=tuple(_adjacent_pairs(r) for r in reps),
        transition_endpoints=transition_endpoints,
        transition_source_state=transition_source_state,
        node_orbit_owner=tuple(node_orbit_owner),
        edge_orbit_owner=tuple(edge_orbit_owner),
    )
