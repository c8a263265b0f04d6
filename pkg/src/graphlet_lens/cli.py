"""Command-line pipeline over the library: every stage reads plain files,
writes CSV/JSON artifacts plus a companion figure, and drops a manifest
describing exactly how to reproduce the output.

Subcommands: atlas, count, gtg, cp, similarity, features, centrality,
signals, nonlinearity, predict, reproduce.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import (EDGE_MEASURES, NODE_MEASURES, bin_six_groups,
                         compute_centrality, label_top_fraction)
from .graph_core import load_edge_list, shuffle_times
from .ml import FeatureTable, run_repeated
from .role_counter import (EDGE_FEATURE_SETS, NODE_FEATURE_SETS,
                           build_feature_table, scan_threshold_events)
from .stats import (TimeSeries, mean_abs_signal, mean_ratio_nonlinearity,
                    nonlinearity, role_group_signals)
from .streaming_counter import count_stream
from .transition_graph import (classify_by_threshold, compute_cp,
                               cp_from_occurrences, compute_gtg,
                               similarity_matrix)
from .triad_atlas import N_GRAPHLETS, build_atlas

EXIT_BAD_INPUT = 1
EXIT_INTERNAL = 2


def _default_threads() -> int:
    env = os.environ.get("GRAPHLET_LENS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _write_manifest(subcommand: str, inputs, parameters: dict, outputs):
    manifest = {
        "subcommand": subcommand,
        "inputs": [str(p) for p in inputs],
        "parameters": parameters,
        "tool_version": __version__,
        "outputs": [str(p) for p in outputs],
    }
    path = Path(str(outputs[0]) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, list(reader)


def _figure_path(output) -> str:
    return str(Path(output).with_suffix(".png"))


def _subject_columns(kind):
    return ["subject"] if kind == "node" else ["src", "dst"]


def _subject_cells(kind, subject):
    return [subject] if kind == "node" else [subject[0], subject[1]]


def _parse_subject(kind, cells):
    return int(cells[0]) if kind == "node" else (int(cells[0]), int(cells[1]))


# ---- subcommand handlers ---------------------------------------------------

def _cmd_atlas(args):
    if args.action != "dump":
        raise SystemExit(f"unknown atlas action {args.action!r}")
    remap = None
    if args.remap:
        remap = json.loads(Path(args.remap).read_text())["graphlet_order"]
    atlas = build_atlas(graphlet_order=remap)
    payload = atlas.dump()
    Path(args.output).write_text(json.dumps(payload, indent=2) + "\n")
    _write_manifest("atlas", [args.remap] if args.remap else [],
                    {"action": "dump", "remap": args.remap}, [args.output])
    print(f"atlas: {payload['n_graphlets']} graphlets, "
          f"{payload['n_node_orbits']} node orbits, "
          f"{payload['n_edge_orbits']} edge orbits, "
          f"{payload['n_transitions']} transitions -> {args.output}")
    return 0


def _series_rows(series):
    for ratio, counts, ratios in series.checkpoints:
        yield [f"{ratio:.10g}", *counts, *(f"{r:.10g}" for r in ratios)]


def _series_header():
    return (["evolution_ratio"]
            + [f"count_{k}" for k in range(1, N_GRAPHLETS + 1)]
            + [f"ratio_{k}" for k in range(1, N_GRAPHLETS + 1)])


def _cmd_count(args):
    atlas = build_atlas()
    g = load_edge_list(args.input, args.format)
    series = count_stream(g, atlas, n_checkpoints=args.checkpoints)
    _write_csv(args.output, _series_header(), _series_rows(series))
    outputs = [args.output]
    if not args.no_figures:
        from .plots import plot_count_series
        outputs.append(plot_count_series(series, _figure_path(args.output),
                                         title=Path(args.input).stem))
    _write_manifest("count", [args.input],
                    {"checkpoints": args.checkpoints, "format": args.format}, outputs)
    print(f"count: {g!r}, {len(series.checkpoints)} checkpoints -> {args.output}")
    return 0


def _cmd_gtg(args):
    atlas = build_atlas()
    g = load_edge_list(args.input, args.format)
    gtg = compute_gtg(g, atlas)
    payload = {
        "name": args.name or Path(args.input).stem,
        "weights": gtg.weights.tolist(),
        "transitions": atlas.dump()["transitions"],
    }
    Path(args.output).write_text(json.dumps(payload, indent=2) + "\n")
    outputs = [args.output]
    if not args.no_figures:
        from .plots import plot_gtg_weights
        outputs.append(plot_gtg_weights(gtg.weights, atlas.transition_endpoints,
                                        _figure_path(args.output), title=payload["name"]))
    _write_manifest("gtg", [args.input], {"format": args.format}, outputs)
    print(f"gtg: total weight {int(gtg.weights.sum())} -> {args.output}")
    return 0


def _cmd_cp(args):
    atlas = build_atlas()
    g = load_edge_list(args.input, args.format)
    if args.kind == "transition":
        profile = compute_cp(g, atlas, n_random=args.random, epsilon=args.epsilon,
                             seed=args.seed, threads=args.threads)
    else:
        profile = cp_from_occurrences(
            g, atlas, n_random=args.random, epsilon=args.epsilon, seed=args.seed,
            stat=args.occurrence_stat, n_checkpoints=args.checkpoints,
            threads=args.threads)
    payload = {
        "name": args.name or Path(args.input).stem,
        "kind": args.kind,
        "cp": profile.cp.tolist(),
        "weights": profile.weights.tolist(),
        "random_mean": profile.random_mean.tolist(),
        "params": {"random": args.random, "epsilon": args.epsilon, "seed": args.seed,
                   "occurrence_stat": args.occurrence_stat if args.kind == "occurrence" else None},
    }
    Path(args.output).write_text(json.dumps(payload, indent=2) + "\n")
    outputs = [args.output]
    if not args.no_figures:
        from .plots import plot_profile
        outputs.append(plot_profile(profile.cp, _figure_path(args.output),
                                    title=f"{payload['name']} ({args.kind} profile)"))
    _write_manifest("cp", [args.input], payload["params"] | {"kind": args.kind}, outputs)
    print(f"cp: |cp| = {np.linalg.norm(profile.cp):.6f} -> {args.output}")
    return 0


def _read_domain_labels(path):
    header, rows = _read_csv(path)
    if [h.strip() for h in header] != ["name", "domain"]:
        raise SystemExit(f"{path}: expected header 'name,domain'")
    return {r[0]: r[1] for r in rows}


def _cmd_similarity(args):
    profiles, names = [], []
    for cp_path in args.cps:
        payload = json.loads(Path(cp_path).read_text())
        profiles.append(np.array(payload["cp"], dtype=float))
        names.append(payload["name"])
    matrix, dropped = similarity_matrix(profiles)
    for idx in dropped:
        print(f"warning: {names[idx]} has a degenerate (zero-variance) profile; "
              f"excluded from similarity", file=sys.stderr)
    _write_csv(args.output, ["name", *names],
               [[names[i], *(f"{x:.10g}" for x in matrix[i])] for i in range(len(names))])
    outputs = [args.output]
    summary = {"names": names, "dropped": [names[i] for i in dropped]}
    if args.labels:
        domains = _read_domain_labels(args.labels)
        labels = [domains[n] for n in names]
        threshold, accuracy = classify_by_threshold(matrix, labels)
        summary |= {"best_threshold": threshold, "accuracy": accuracy,
                    "domains": labels}
        print(f"similarity: best threshold {threshold:.4f}, "
              f"classification accuracy {accuracy:.4f}")
    summary_path = str(Path(args.output).with_suffix(".summary.json"))
    Path(summary_path).write_text(json.dumps(summary, indent=2) + "\n")
    outputs.append(summary_path)
    if not args.no_figures:
        from .plots import plot_similarity_matrix
        outputs.append(plot_similarity_matrix(matrix, names, _figure_path(args.output)))
    _write_manifest("similarity", list(args.cps) + ([args.labels] if args.labels else []),
                    {}, outputs)
    return 0


def _cmd_features(args):
    atlas = build_atlas()
    g = load_edge_list(args.input, args.format)
    valid = NODE_FEATURE_SETS if args.subject == "node" else EDGE_FEATURE_SETS
    sets = [s.strip() for s in args.sets.split(",")]
    for s in sets:
        if s not in valid:
            raise SystemExit(f"unknown feature set {s!r} for subject {args.subject!r} "
                             f"(valid: {', '.join(valid)})")
    events = scan_threshold_events(g, atlas, args.dtheta, args.subject,
                                   refresh_every=args.refresh_every)
    if not events:
        raise SystemExit(f"no subject reached the threshold d_theta={args.dtheta}")
    tables = [build_feature_table(events, args.subject, s) for s in sets]
    columns, matrices = [], []
    for table in tables:
        fresh = [c for c in table.columns if c not in columns]
        idx = [table.columns.index(c) for c in fresh]
        columns.extend(fresh)
        matrices.append(table.X[:, idx])
    X = np.hstack(matrices)
    meta_cols = _subject_columns(args.subject) + ["trigger_index", "evolution_ratio"]
    rows = []
    for i, e in enumerate(events):
        rows.append(_subject_cells(args.subject, e.subject)
                    + [e.trigger_index, f"{e.evolution_ratio:.10g}"]
                    + [f"{x:.10g}" for x in X[i]])
    _write_csv(args.output, meta_cols + columns, rows)
    _write_manifest("features", [args.input],
                    {"dtheta": args.dtheta, "subject": args.subject,
                     "sets": sets, "refresh_every": args.refresh_every},
                    [args.output])
    print(f"features: {len(events)} events, {len(columns)} columns -> {args.output}")
    return 0


def _cmd_centrality(args):
    g = load_edge_list(args.input, args.format)
    from .graph_core import snapshot_state

    state = snapshot_state(g)
    scores = compute_centrality(state, args.measure,
                                max_exact_nodes=args.max_exact_nodes)
    labels = label_top_fraction(scores, args.top)
    groups = bin_six_groups(scores)
    kind = "node" if args.measure in NODE_MEASURES else "edge"
    rows = []
    for subj, score, label, group in zip(scores.subjects, scores.values, labels, groups):
        rows.append(_subject_cells(kind, subj)
                    + [f"{score:.10g}", int(label), int(group)])
    _write_csv(args.output, _subject_columns(kind) + ["score", "label", "group"], rows)
    _write_manifest("centrality", [args.input],
                    {"measure": args.measure, "top": args.top}, [args.output])
    print(f"centrality: {args.measure} over {len(rows)} subjects -> {args.output}")
    return 0


def _load_features_csv(path):
    header, rows = _read_csv(path)
    kind = "node" if header[0] == "subject" else "edge"
    n_meta = 3 if kind == "node" else 4
    subjects = [_parse_subject(kind, r) for r in rows]
    columns = header[n_meta:]
    X = np.array([[float(x) for x in r[n_meta:]] for r in rows])
    return kind, subjects, columns, X


def _load_scores_csv(path):
    header, rows = _read_csv(path)
    kind = "node" if header[0] == "subject" else "edge"
    n_subj = 1 if kind == "node" else 2
    out = {}
    for r in rows:
        out[_parse_subject(kind, r)] = {
            "score": float(r[n_subj]), "label": bool(int(r[n_subj + 1])),
            "group": int(r[n_subj + 2])}
    return kind, out


def _cmd_signals(args):
    if args.groups != 6:
        raise SystemExit("only the six-group percentile binning is supported")
    kind, subjects, columns, X = _load_features_csv(args.features)
    prefix = "local_nr_" if kind == "node" else "local_er_"
    role_cols = [c for c in columns if c.startswith(prefix)]
    if not role_cols:
        raise SystemExit(f"{args.features}: no {prefix}* columns; "
                         f"export the local role set first")
    idx = [columns.index(c) for c in role_cols]
    counts = X[:, idx]
    totals = counts.sum(axis=1, keepdims=True)
    ratios = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    _, score_map = _load_scores_csv(args.centrality)
    keep = [i for i, s in enumerate(subjects) if s in score_map]
    if len(keep) < len(subjects):
        print(f"warning: {len(subjects) - len(keep)} subjects missing from "
              f"centrality scores", file=sys.stderr)
    groups = [score_map[subjects[i]]["group"] for i in keep]
    signals = role_group_signals(ratios[keep], groups)
    rows = [[role_cols[i].removeprefix(prefix), "" if s is None else f"{s:.10g}"]
            for i, s in enumerate(signals)]
    _write_csv(args.output, ["role", "spearman"], rows)
    outputs = [args.output]
    if not args.no_figures:
        from .plots import plot_signals
        outputs.append(plot_signals(
            [{"role": int(r[0]), "spearman": None if r[1] == "" else float(r[1])}
             for r in rows], _figure_path(args.output)))
    _write_manifest("signals", [args.features, args.centrality],
                    {"groups": args.groups}, outputs)
    print(f"signals: mean |spearman| = {mean_abs_signal(signals):.4f} -> {args.output}")
    return 0


def _cmd_nonlinearity(args):
    atlas = build_atlas()
    if args.series:
        header, rows = _read_csv(args.series)
        xs = [float(r[0]) for r in rows]
        report = {"series": args.series, "per_graphlet": {}}
        scores = []
        for k in range(1, N_GRAPHLETS + 1):
            ys = [float(r[header.index(f"ratio_{k}")]) for r in rows]
            score = nonlinearity(TimeSeries(tuple(xs), tuple(ys)), args.samples)
            report["per_graphlet"][f"ratio_{k}"] = score
            scores.append(score)
        report["mean"] = float(np.mean(scores))
        inputs = [args.series]
    else:
        g = load_edge_list(args.input, args.format)
        series = count_stream(g, atlas, n_checkpoints=args.checkpoints)
        real = mean_ratio_nonlinearity(series, args.samples)
        randoms = []
        seeds = np.random.SeedSequence(args.seed).spawn(args.shuffles)
        for s in seeds:
            shuffled = count_stream(shuffle_times(g, s), atlas,
                                    n_checkpoints=args.checkpoints)
            randoms.append(mean_ratio_nonlinearity(shuffled, args.samples))
        report = {"dataset": Path(args.input).stem, "real": real,
                  "random_mean": float(np.mean(randoms)), "random_all": randoms,
                  "shuffles": args.shuffles, "seed": args.seed}
        inputs = [args.input]
    Path(args.output).write_text(json.dumps(report, indent=2) + "\n")
    outputs = [args.output]
    if not args.no_figures and "real" in report:
        from .plots import plot_nonlinearity
        outputs.append(plot_nonlinearity([report], _figure_path(args.output)))
    _write_manifest("nonlinearity", inputs, {"samples": args.samples}, outputs)
    print(f"nonlinearity -> {args.output}")
    return 0


def _cmd_predict(args):
    kind, subjects, columns, X = _load_features_csv(args.features)
    label_kind, score_map = _load_scores_csv(args.labels)
    if label_kind != kind:
        raise SystemExit("features and labels disagree on subject kind")
    keep = [i for i, s in enumerate(subjects) if s in score_map]
    labels = np.array([score_map[subjects[i]]["label"] for i in keep])
    table = FeatureTable(columns, X[keep], [subjects[i] for i in keep], labels)

    valid = NODE_FEATURE_SETS if kind == "node" else EDGE_FEATURE_SETS
    sets = [s.strip() for s in args.sets.split(",")]
    reports = []
    for feature_set in sets:
        if feature_set not in valid:
            raise SystemExit(f"unknown feature set {feature_set!r}")
        cols = _columns_of_set(kind, feature_set, columns)
        sub = table.select(cols)
        report = run_repeated(sub, feature_set, n_runs=args.repeats,
                              train_fraction=args.train_fraction,
                              n_trees=args.trees, max_depth=args.depth,
                              seed=args.seed)
        reports.append(report)
        print(f"predict[{feature_set}]: f1 {report.f1[0]:.3f}±{report.f1[1]:.3f} "
              f"acc {report.accuracy[0]:.3f}±{report.accuracy[1]:.3f} "
              f"auroc {report.auroc[0]:.3f}±{report.auroc[1]:.3f}")
    payload = {
        "params": {"trees": args.trees, "depth": args.depth, "seed": args.seed,
                   "repeats": args.repeats, "train_fraction": args.train_fraction,
                   "positive_rate": float(labels.mean()), "rows": len(labels)},
        "sets": {r.feature_set: r.as_dict() for r in reports},
    }
    Path(args.output).write_text(json.dumps(payload, indent=2) + "\n")
    outputs = [args.output]
    if not args.no_figures:
        from .plots import plot_metric_bars
        outputs.append(plot_metric_bars(reports, _figure_path(args.output)))
    _write_manifest("predict", [args.features, args.labels], payload["params"], outputs)
    return 0


def _columns_of_set(kind, feature_set, available):
    """Column names of one feature set, validated against a CSV's columns."""
    role = "nr" if kind == "node" else "er"
    n_orbits = 30
    blocks = {
        "local": [f"local_{role}_{i}" for i in range(1, n_orbits + 1)],
        "zscore": [f"global_{role}_{i}" for i in range(1, n_orbits + 1)],
        "basic": ["n_nodes", "n_edges"],
        "npp_local": ["local_npp_1", "local_npp_2", "local_npp_3"],
        "npp_global": ["global_npp_1", "global_npp_2"],
    }
    from .role_counter import _SET_COMPOSITION

    wanted = []
    for block in _SET_COMPOSITION[(kind, feature_set)]:
        wanted.extend(blocks[block])
    missing = [c for c in wanted if c not in available]
    if missing:
        raise SystemExit(f"feature CSV lacks columns for set {feature_set!r} "
                         f"(missing {missing[:3]}...); re-export with --sets all")
    return wanted


def _cmd_reproduce(args):
    config = configparser.ConfigParser()
    if not config.read(args.config):
        raise SystemExit(f"cannot read config {args.config}")
    params = config["params"] if "params" in config else {}
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    def p(key, default, cast=str):
        return cast(params.get(key, default))

    dtheta = p("dtheta", 2, int)
    epsilon = p("epsilon", 4.0, float)
    replicas = p("replicas", 50, int)
    seed = p("seed", 7, int)
    checkpoints = p("checkpoints", 400, int)
    measure = p("measure", "betweenness")
    top_fraction = p("top_fraction", 0.2, float)
    repeats = p("repeats", 10, int)
    shuffles = p("shuffles", 5, int)
    subject = p("subject", "node")
    sets = p("sets", "local-nr,global-nr,global-basic,all")
    occurrence_stat = p("occurrence_stat", "mean")

    datasets = []
    for section in config.sections():
        if section.startswith("dataset:"):
            datasets.append((section.split(":", 1)[1],
                             config[section]["path"],
                             config[section].get("domain", "unknown")))
    if not datasets:
        raise SystemExit("config lists no [dataset:NAME] sections")

    base = ["--no-figures"] if args.no_figures else []
    names, domains = [], []
    for name, path, domain in datasets:
        names.append(name)
        domains.append(domain)
        print(f"=== {name} ({domain}) ===")
        run = lambda argv: main(argv) == 0 or sys.exit(EXIT_INTERNAL)  # noqa: E731
        run(["count", "--input", path, "--checkpoints", str(checkpoints),
             "--output", str(outdir / f"{name}.series.csv"), *base])
        run(["gtg", "--input", path, "--name", name,
             "--output", str(outdir / f"{name}.gtg.json"), *base])
        run(["cp", "--input", path, "--name", name, "--random", str(replicas),
             "--epsilon", str(epsilon), "--seed", str(seed),
             "--threads", str(args.threads),
             "--output", str(outdir / f"{name}.cp.json"), *base])
        run(["cp", "--input", path, "--name", name, "--kind", "occurrence",
             "--occurrence-stat", occurrence_stat, "--random", str(replicas),
             "--epsilon", str(epsilon), "--seed", str(seed),
             "--checkpoints", str(checkpoints), "--threads", str(args.threads),
             "--output", str(outdir / f"{name}.cp-occurrence.json"), *base])
        run(["nonlinearity", "--input", path, "--shuffles", str(shuffles),
             "--seed", str(seed), "--checkpoints", str(checkpoints),
             "--output", str(outdir / f"{name}.nonlinearity.json"), *base])
        run(["features", "--input", path, "--dtheta", str(dtheta),
             "--subject", subject, "--sets", "all",
             "--output", str(outdir / f"{name}.feats.csv")])
        run(["centrality", "--input", path, "--measure", measure,
             "--top", str(top_fraction),
             "--output", str(outdir / f"{name}.scores.csv")])
        run(["signals", "--features", str(outdir / f"{name}.feats.csv"),
             "--centrality", str(outdir / f"{name}.scores.csv"),
             "--output", str(outdir / f"{name}.signals.csv"), *base])
        run(["predict", "--features", str(outdir / f"{name}.feats.csv"),
             "--labels", str(outdir / f"{name}.scores.csv"), "--sets", sets,
             "--seed", str(seed), "--repeats", str(repeats),
             "--output", str(outdir / f"{name}.metrics.json"), *base])

    labels_csv = outdir / "domains.csv"
    _write_csv(labels_csv, ["name", "domain"], list(zip(names, domains)))
    for kind, suffix in (("transition", "cp"), ("occurrence", "cp-occurrence")):
        out = outdir / f"similarity-{kind}.csv"
        argv = ["similarity", "--labels", str(labels_csv), "--output", str(out),
                "--cps", *[str(outdir / f"{n}.{suffix}.json") for n in names], *base]
        if main(argv) != 0:
            return EXIT_INTERNAL
    _write_manifest("reproduce", [args.config],
                    {k: str(v) for k, v in params.items()},
                    [str(outdir / "similarity-transition.csv")])
    print(f"reproduce: artifacts in {outdir}")
    return 0


# ---- parser ----------------------------------------------------------------

def _add_common_io(sub, needs_input=True):
    if needs_input:
        sub.add_argument("--input", required=True, help="edge-list file")
        sub.add_argument("--format", default="snap", choices=["snap"])
    sub.add_argument("--output", required=True, help="output file")
    sub.add_argument("--no-figures", action="store_true",
                     help="skip the companion PNG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphlet-lens",
        description="Long-term evolution of 3-node local structure in temporal "
                    "directed graphs")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("atlas", help="dump the classification tables")
    s.add_argument("action", choices=["dump"])
    s.add_argument("--remap", help="JSON file with a 13-entry graphlet_order permutation")
    s.add_argument("--output", required=True)
    s.set_defaults(func=_cmd_atlas)

    s = subs.add_parser("count", help="streamed graphlet count/ratio series")
    _add_common_io(s)
    s.add_argument("--checkpoints", type=int, default=1000)
    s.set_defaults(func=_cmd_count)

    s = subs.add_parser("gtg", help="graphlet transition weights")
    _add_common_io(s)
    s.add_argument("--name", help="dataset label (default: input stem)")
    s.set_defaults(func=_cmd_gtg)

    s = subs.add_parser("cp", help="characteristic profile vs. shuffled replicas")
    _add_common_io(s)
    s.add_argument("--name", help="dataset label (default: input stem)")
    s.add_argument("--kind", default="transition", choices=["transition", "occurrence"])
    s.add_argument("--occurrence-stat", default="mean", choices=["mean", "final"])
    s.add_argument("--random", type=int, default=50, help="number of shuffled replicas")
    s.add_argument("--epsilon", type=float, default=4.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--checkpoints", type=int, default=200,
                   help="checkpoint grid for occurrence profiles")
    s.add_argument("--threads", type=int, default=_default_threads())
    s.set_defaults(func=_cmd_cp)

    s = subs.add_parser("similarity", help="pairwise profile similarity matrix")
    s.add_argument("--cps", nargs="+", required=True, help="cp JSON files")
    s.add_argument("--labels", help="CSV with header name,domain")
    s.add_argument("--output", required=True)
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=_cmd_similarity)

    s = subs.add_parser("features", help="early-stage features at threshold events")
    s.add_argument("--input", required=True)
    s.add_argument("--format", default="snap", choices=["snap"])
    s.add_argument("--output", required=True)
    s.add_argument("--dtheta", type=int, default=2)
    s.add_argument("--subject", default="node", choices=["node", "edge"])
    s.add_argument("--sets", default="all",
                   help="comma list of feature sets (default: all)")
    s.add_argument("--refresh-every", type=int, default=1000,
                   help="reference-population refresh interval in structural edges")
    s.set_defaults(func=_cmd_features)

    s = subs.add_parser("centrality", help="last-snapshot centrality scores")
    s.add_argument("--input", required=True)
    s.add_argument("--format", default="snap", choices=["snap"])
    s.add_argument("--output", required=True)
    s.add_argument("--measure", default="betweenness",
                   choices=list(NODE_MEASURES) + list(EDGE_MEASURES))
    s.add_argument("--top", type=float, default=0.2,
                   help="top fraction labeled positive")
    s.add_argument("--max-exact-nodes", type=int, default=20_000)
    s.set_defaults(func=_cmd_centrality)

    s = subs.add_parser("signals", help="role-ratio Spearman signals per group")
    s.add_argument("--features", required=True)
    s.add_argument("--centrality", required=True)
    s.add_argument("--groups", type=int, default=6)
    s.add_argument("--output", required=True)
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=_cmd_signals)

    s = subs.add_parser("nonlinearity", help="line-vs-cubic gap of ratio curves")
    s.add_argument("--series", help="series CSV from `count`")
    s.add_argument("--input", help="edge list (computes real vs. shuffled)")
    s.add_argument("--format", default="snap", choices=["snap"])
    s.add_argument("--shuffles", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--checkpoints", type=int, default=400)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--output", required=True)
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=_cmd_nonlinearity)

    s = subs.add_parser("predict", help="future-importance prediction metrics")
    s.add_argument("--features", required=True)
    s.add_argument("--labels", required=True, help="scores CSV from `centrality`")
    s.add_argument("--sets", default="all")
    s.add_argument("--trees", type=int, default=30)
    s.add_argument("--depth", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--repeats", type=int, default=10)
    s.add_argument("--train-fraction", type=float, default=0.8)
    s.add_argument("--output", required=True)
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=_cmd_predict)

    s = subs.add_parser("reproduce", help="full pipeline over a config's datasets")
    s.add_argument("--config", required=True, help="INI config with [params] and "
                   "[dataset:NAME] sections")
    s.add_argument("--output-dir", required=True)
    s.add_argument("--threads", type=int, default=_default_threads())
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
