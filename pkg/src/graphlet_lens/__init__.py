"""Long-term evolution of 3-node local structure in temporal directed
graphs: streaming graphlet census, transition profiles, orbit features,
and future-centrality prediction."""

__version__ = "0.1.0"

from .centrality import (CentralityScores, bin_six_groups, compute_centrality,
                         label_top_fraction)
from .graph_core import (AdjacencyState, TemporalEdge, TemporalGraph, apply_edge,
                         from_edge_tuples, load_edge_list, shuffle_times,
                         snapshot_state)
from .ml import (FeatureTable, ForestModel, evaluate, gini_importance,
                 run_repeated, split_train_test, train_forest)
from .role_counter import (RoleVector, ThresholdEvent, build_feature_table,
                           edge_roles_at, node_roles_at, npp_features,
                           scan_threshold_events, standardize_role_ratios)
from .stats import (TimeSeries, mean_ratio_nonlinearity, nonlinearity, pearson,
                    role_group_signals, spearman)
from .streaming_counter import GraphletCountSeries, census_bruteforce, count_stream
from .transition_graph import (CharacteristicProfile, GraphletTransitionGraph,
                               classify_by_threshold, compute_cp,
                               cp_from_occurrences, compute_gtg, cp_similarity,
                               similarity_matrix)
from .triad_atlas import AtlasError, TriadAtlas, build_atlas

__all__ = [
    "AdjacencyState", "AtlasError", "CentralityScores", "CharacteristicProfile",
    "FeatureTable", "ForestModel", "GraphletCountSeries", "GraphletTransitionGraph",
    "RoleVector", "TemporalEdge", "TemporalGraph", "ThresholdEvent", "TimeSeries",
    "TriadAtlas", "apply_edge", "bin_six_groups", "build_atlas",
    "build_feature_table", "census_bruteforce", "classify_by_threshold",
    "compute_centrality", "compute_cp", "compute_gtg", "count_stream",
    "cp_from_occurrences", "cp_similarity", "edge_roles_at", "evaluate",
    "from_edge_tuples", "gini_importance", "label_top_fraction", "load_edge_list",
    "mean_ratio_nonlinearity", "node_roles_at", "nonlinearity", "npp_features",
    "pearson", "role_group_signals", "run_repeated", "scan_threshold_events",
    "shuffle_times", "similarity_matrix", "snapshot_state", "spearman",
    "split_train_test", "standardize_role_ratios", "train_forest",
]
