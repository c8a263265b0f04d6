from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphlet_lens.graph_core import (DUPLICATE, NEW_EDGE, NEW_RECIPROCAL,
                                      AdjacencyState, EdgeListError, apply_edge,
                                      from_edge_tuples, load_edge_list,
                                      shuffle_times, snapshot_state)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n")
    return path


def test_load_sorts_by_time(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["0 1 5", "1 2 3"])
    g = load_edge_list(f)
    assert [(e.src, e.dst, e.time) for e in g.edges()] == [(0, 1, 3), (2, 0, 5)]
    # compacted ids follow first appearance in the sorted stream:
    # (1->2,t=3) becomes (0->1), then (0->1,t=5) becomes (2->0)
    assert g.node_count == 3


def test_load_keeps_tie_order_stable(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["5 6 7", "8 9 7", "1 2 7"])
    g = load_edge_list(f)
    assert g.times == [7, 7, 7]
    assert (g.srcs[0], g.dsts[0]) == (0, 1)
    assert (g.srcs[1], g.dsts[1]) == (2, 3)
    assert (g.srcs[2], g.dsts[2]) == (4, 5)


def test_load_drops_self_loops(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["3 3 7", "0 1 9"])
    g = load_edge_list(f)
    assert g.edge_count == 1
    assert g.node_count == 2  # node 3 only appeared in the dropped loop


def test_load_keeps_duplicates(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["0 1 1", "0 1 1", "0 1 2"])
    g = load_edge_list(f)
    assert g.edge_count == 3
    assert g.distinct_edge_count() == 1


def test_load_ignores_comments_and_blank_lines(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["# header", "", "0 1 4"])
    assert load_edge_list(f).edge_count == 1


def test_load_errors_carry_line_numbers(tmp_path):
    f = write_lines(tmp_path / "bad.txt", ["0 1 2", "0 zork 3"])
    with pytest.raises(EdgeListError, match=":2:"):
        load_edge_list(f)
    f2 = write_lines(tmp_path / "bad2.txt", ["0 1"])
    with pytest.raises(EdgeListError, match=":1:"):
        load_edge_list(f2)


def test_load_empty_file_errors(tmp_path):
    f = write_lines(tmp_path / "empty.txt", ["# nothing here"])
    with pytest.raises(EdgeListError, match="no edges"):
        load_edge_list(f)
    f2 = write_lines(tmp_path / "loops.txt", ["1 1 1"])
    with pytest.raises(EdgeListError):
        load_edge_list(f2)


def test_unknown_format_rejected(tmp_path):
    f = write_lines(tmp_path / "e.txt", ["0 1 2"])
    with pytest.raises(ValueError, match="format"):
        load_edge_list(f, fmt="csv")


def test_shuffle_single_edge_is_identity():
    g = from_edge_tuples([(0, 1, 42)])
    s = shuffle_times(g, seed=0)
    assert (s.srcs, s.dsts, s.times) == (g.srcs, g.dsts, g.times)


def test_shuffle_preserves_both_multisets():
    g = from_edge_tuples([(0, 1, 1), (1, 2, 2), (2, 0, 2), (0, 2, 9)])
    for seed in range(5):
        s = shuffle_times(g, seed)
        assert sorted(zip(s.srcs, s.dsts)) == sorted(zip(g.srcs, g.dsts))
        assert sorted(s.times) == sorted(g.times)
        assert s.times == sorted(s.times)
        assert s.node_count == g.node_count


def test_shuffle_deterministic_per_seed():
    g = from_edge_tuples([(i % 7, (i + 1) % 7, i) for i in range(30)])
    a = shuffle_times(g, 123)
    b = shuffle_times(g, 123)
    assert (a.srcs, a.dsts, a.times) == (b.srcs, b.dsts, b.times)
    c = shuffle_times(g, 124)
    assert (a.srcs, a.dsts, a.times) != (c.srcs, c.dsts, c.times)


def test_shuffle_fixed_point_rate_matches_uniform_permutation():
    # expected fraction of edges keeping their original slot is 1/m
    m = 400
    g = from_edge_tuples([(i % 20, (i + 1 + i // 20) % 20, i) for i in range(m)])
    keep = []
    originals = list(zip(g.srcs, g.dsts, g.times))
    for seed in range(100):
        s = shuffle_times(g, seed)
        keep.append(sum(a == b for a, b in zip(originals, zip(s.srcs, s.dsts, s.times))))
    # mean fixed points of a uniform permutation is 1 (variance 1)
    assert 0.65 < np.mean(keep) < 1.45


def test_apply_edge_outcomes():
    state = AdjacencyState(3)
    assert apply_edge(state, (0, 1)) == NEW_EDGE
    assert state.degree[0] == state.degree[1] == 1
    assert apply_edge(state, (0, 1)) == DUPLICATE
    assert state.degree[0] == 1 and state.in_degree[1] == 1
    assert apply_edge(state, (1, 0)) == NEW_RECIPROCAL
    assert state.degree[0] == state.degree[1] == 2


def test_degree_sum_counts_each_directed_edge_twice():
    g = from_edge_tuples([(0, 1, 1), (1, 0, 2), (1, 2, 3), (1, 2, 4), (0, 2, 5)])
    state = snapshot_state(g)
    assert sum(state.degree) == 2 * state.edge_count
    assert state.edge_count == g.distinct_edge_count()


def test_full_replay_touches_every_node():
    # every compacted id comes from some edge, so a full replay activates all
    g = from_edge_tuples([(4, 9, 1), (9, 2, 2), (7, 4, 3), (7, 4, 4)])
    state = snapshot_state(g)
    assert state.active_nodes == g.node_count


def test_double_shuffle_preserves_multisets():
    g = from_edge_tuples([(i % 6, (i + 2) % 6, i) for i in range(40)])
    twice = shuffle_times(shuffle_times(g, 5), 6)
    assert sorted(zip(twice.srcs, twice.dsts)) == sorted(zip(g.srcs, g.dsts))
    assert sorted(twice.times) == sorted(g.times)


def test_active_nodes_counts_touched_nodes():
    state = AdjacencyState(10)
    state.apply(0, 1)
    state.apply(0, 2)
    assert state.active_nodes == 3


def test_pair_state_mirror():
    g = from_edge_tuples([(0, 1, 1), (2, 1, 2), (1, 2, 3)])
    state = snapshot_state(g)
    from graphlet_lens.graph_core import IN, OUT

    for u in range(g.node_count):
        for v, stv in state.nbrs[u].items():
            mirror = state.nbrs[v][u]
            assert bool(stv & OUT) == bool(mirror & IN)
            assert bool(stv & IN) == bool(mirror & OUT)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(0, 50)),
                min_size=1, max_size=60),
       st.integers(0, 2 ** 32 - 1))
def test_shuffle_property_multisets_invariant(edge_list, seed):
    try:
        g = from_edge_tuples(edge_list)
    except EdgeListError:
        return
    s = shuffle_times(g, seed)
    assert sorted(zip(s.srcs, s.dsts)) == sorted(zip(g.srcs, g.dsts))
    assert sorted(s.times) == sorted(g.times)


COLLEGE = Path(__file__).resolve().parent.parent / "data" / "CollegeMsg.txt"


@pytest.mark.skipif(not COLLEGE.exists(),
                    reason="real dataset not fetched (scripts/fetch_snap_datasets.py)")
def test_college_msg_reference_counts():
    g = load_edge_list(COLLEGE)
    assert g.node_count == 1899
    # the published edge-set size; small slack for self-loop filtering
    assert abs(g.distinct_edge_count() - 20296) <= 60
