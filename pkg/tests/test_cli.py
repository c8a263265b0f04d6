import csv
import json

import numpy as np
import pytest

from corpus import message_stream, qa_stream, random_stream, write_snap_file
from graphlet_lens.cli import main


@pytest.fixture(scope="module")
def small_input(tmp_path_factory):
    g = random_stream(30, 260, seed=2)
    return str(write_snap_file(g, tmp_path_factory.mktemp("data") / "small.txt"))


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_atlas_dump(tmp_path):
    out = tmp_path / "atlas.json"
    assert main(["atlas", "dump", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert (payload["n_graphlets"], payload["n_node_orbits"],
            payload["n_edge_orbits"], payload["n_transitions"]) == (13, 30, 30, 28)
    manifest = json.loads((tmp_path / "atlas.json.manifest.json").read_text())
    assert manifest["subcommand"] == "atlas"


def test_atlas_dump_with_remap(tmp_path):
    remap = tmp_path / "remap.json"
    remap.write_text(json.dumps({"graphlet_order": list(range(13, 0, -1))}))
    out = tmp_path / "atlas.json"
    assert main(["atlas", "dump", "--remap", str(remap), "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    base = json.loads((lambda p: (main(["atlas", "dump", "--output", str(p)]), p.read_text())[1])(tmp_path / "base.json"))
    assert payload["canonical_order"] == base["canonical_order"][::-1]


def test_count_toy_cycle(tmp_path):
    src = tmp_path / "cycle.txt"
    src.write_text("0 1 1\n1 2 2\n2 0 3\n")
    out = tmp_path / "series.csv"
    assert main(["count", "--input", str(src), "--checkpoints", "3",
                 "--output", str(out)]) == 0
    header, rows = read_csv(out)
    assert header[0] == "evolution_ratio"
    assert len(rows) == 3
    final_counts = [int(x) for x in rows[-1][1:14]]
    assert sum(final_counts) == 1  # the 3-cycle instance
    assert (tmp_path / "series.png").exists()
    assert (tmp_path / "series.csv.manifest.json").exists()


def test_count_no_figures(small_input, tmp_path):
    out = tmp_path / "series.csv"
    assert main(["count", "--input", small_input, "--checkpoints", "5",
                 "--output", str(out), "--no-figures"]) == 0
    assert not (tmp_path / "series.png").exists()


def test_missing_input_is_reported(tmp_path):
    rc = main(["count", "--input", str(tmp_path / "nope.txt"),
               "--output", str(tmp_path / "x.csv"), "--no-figures"])
    assert rc == 1


def test_gtg_and_cp_roundtrip(small_input, tmp_path):
    gtg_out = tmp_path / "g.gtg.json"
    assert main(["gtg", "--input", small_input, "--output", str(gtg_out),
                 "--no-figures"]) == 0
    payload = json.loads(gtg_out.read_text())
    assert len(payload["weights"]) == 28

    cp_out = tmp_path / "g.cp.json"
    assert main(["cp", "--input", small_input, "--random", "4", "--seed", "9",
                 "--threads", "1", "--output", str(cp_out), "--no-figures"]) == 0
    cp = json.loads(cp_out.read_text())
    norm = float(np.linalg.norm(cp["cp"]))
    assert norm == pytest.approx(1.0, abs=1e-9) or norm == 0.0
    # deterministic re-run produces identical bytes for the cp vector
    cp_out2 = tmp_path / "g2.cp.json"
    main(["cp", "--input", small_input, "--random", "4", "--seed", "9",
          "--threads", "1", "--output", str(cp_out2), "--no-figures"])
    assert json.loads(cp_out2.read_text())["cp"] == cp["cp"]


def test_similarity_pipeline(tmp_path):
    names = []
    for i, (maker, domain) in enumerate([(message_stream, "msg"), (message_stream, "msg"),
                                         (qa_stream, "qa"), (qa_stream, "qa")]):
        g = maker(80, 900, seed=40 + i) if maker is message_stream else maker(150, 900, seed=40 + i)
        path = write_snap_file(g, tmp_path / f"d{i}.txt")
        out = tmp_path / f"d{i}.cp.json"
        assert main(["cp", "--input", str(path), "--name", f"d{i}", "--random", "4",
                     "--seed", "3", "--threads", "1", "--output", str(out),
                     "--no-figures"]) == 0
        names.append((f"d{i}", domain))
    labels = tmp_path / "domains.csv"
    labels.write_text("name,domain\n" + "\n".join(f"{n},{d}" for n, d in names) + "\n")
    out = tmp_path / "matrix.csv"
    rc = main(["similarity", "--cps", *[str(tmp_path / f"d{i}.cp.json") for i in range(4)],
               "--labels", str(labels), "--output", str(out), "--no-figures"])
    assert rc == 0
    header, rows = read_csv(out)
    assert header == ["name", "d0", "d1", "d2", "d3"]
    summary = json.loads((tmp_path / "matrix.summary.json").read_text())
    assert "best_threshold" in summary and 0.0 <= summary["accuracy"] <= 1.0


def test_features_centrality_signals_predict_chain(small_input, tmp_path):
    feats = tmp_path / "feats.csv"
    assert main(["features", "--input", small_input, "--dtheta", "2",
                 "--subject", "node", "--sets", "all", "--output", str(feats)]) == 0
    header, rows = read_csv(feats)
    assert header[:3] == ["subject", "trigger_index", "evolution_ratio"]
    assert any(c == "local_nr_1" for c in header)
    assert any(c == "global_npp_2" for c in header)

    scores = tmp_path / "scores.csv"
    assert main(["centrality", "--input", small_input, "--measure", "in-degree",
                 "--output", str(scores)]) == 0
    sh, srows = read_csv(scores)
    assert sh == ["subject", "score", "label", "group"]
    labels = [int(r[2]) for r in srows]
    assert sum(labels) == int(np.ceil(0.2 * len(srows)))

    sig = tmp_path / "signals.csv"
    assert main(["signals", "--features", str(feats), "--centrality", str(scores),
                 "--output", str(sig), "--no-figures"]) == 0
    sigh, sigrows = read_csv(sig)
    assert sigh == ["role", "spearman"]
    assert len(sigrows) == 30

    metrics = tmp_path / "metrics.json"
    assert main(["predict", "--features", str(feats), "--labels", str(scores),
                 "--sets", "local-nr,global-basic", "--repeats", "3", "--seed", "5",
                 "--output", str(metrics), "--no-figures"]) == 0
    payload = json.loads(metrics.read_text())
    assert set(payload["sets"]) == {"local-nr", "global-basic"}
    for rep in payload["sets"].values():
        assert 0.0 <= rep["accuracy_mean"] <= 1.0


def test_predict_rejects_set_not_in_csv(small_input, tmp_path):
    feats = tmp_path / "feats.csv"
    main(["features", "--input", small_input, "--dtheta", "2", "--subject", "node",
          "--sets", "local-npp", "--output", str(feats)])
    scores = tmp_path / "scores.csv"
    main(["centrality", "--input", small_input, "--measure", "in-degree",
          "--output", str(scores)])
    with pytest.raises(SystemExit):
        main(["predict", "--features", str(feats), "--labels", str(scores),
              "--sets", "all", "--output", str(tmp_path / "m.json"), "--no-figures"])


def test_edge_features_roundtrip(small_input, tmp_path):
    feats = tmp_path / "efeats.csv"
    assert main(["features", "--input", small_input, "--dtheta", "3",
                 "--subject", "edge", "--sets", "all", "--output", str(feats)]) == 0
    header, rows = read_csv(feats)
    assert header[:4] == ["src", "dst", "trigger_index", "evolution_ratio"]
    scores = tmp_path / "escores.csv"
    assert main(["centrality", "--input", small_input, "--measure", "edge-betweenness",
                 "--output", str(scores)]) == 0
    metrics = tmp_path / "em.json"
    assert main(["predict", "--features", str(feats), "--labels", str(scores),
                 "--sets", "local-er,all", "--repeats", "3",
                 "--output", str(metrics), "--no-figures"]) == 0


def test_nonlinearity_series_and_stream_modes(small_input, tmp_path):
    series = tmp_path / "series.csv"
    main(["count", "--input", small_input, "--checkpoints", "40",
          "--output", str(series), "--no-figures"])
    rep = tmp_path / "nl.json"
    assert main(["nonlinearity", "--series", str(series), "--output", str(rep),
                 "--no-figures"]) == 0
    payload = json.loads(rep.read_text())
    assert len(payload["per_graphlet"]) == 13

    rep2 = tmp_path / "nl2.json"
    assert main(["nonlinearity", "--input", small_input, "--shuffles", "2",
                 "--checkpoints", "40", "--seed", "1", "--output", str(rep2),
                 "--no-figures"]) == 0
    payload2 = json.loads(rep2.read_text())
    assert "real" in payload2 and len(payload2["random_all"]) == 2


def test_reproduce_pipeline(tmp_path):
    g1 = write_snap_file(message_stream(90, 1200, seed=1), tmp_path / "m1.txt")
    g2 = write_snap_file(qa_stream(160, 1100, seed=2), tmp_path / "q1.txt")
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        "[params]\n"
        "dtheta = 2\nreplicas = 3\nseed = 5\ncheckpoints = 50\n"
        "measure = in-degree\nrepeats = 2\nshuffles = 2\nsets = local-nr,all\n"
        f"[dataset:mini-msg]\npath = {g1}\ndomain = message\n"
        f"[dataset:mini-qa]\npath = {g2}\ndomain = qa\n")
    outdir = tmp_path / "out"
    assert main(["reproduce", "--config", str(cfg), "--output-dir", str(outdir),
                 "--threads", "1", "--no-figures"]) == 0
    for name in ("mini-msg", "mini-qa"):
        for suffix in ("series.csv", "gtg.json", "cp.json", "cp-occurrence.json",
                       "nonlinearity.json", "feats.csv", "scores.csv",
                       "signals.csv", "metrics.json"):
            assert (outdir / f"{name}.{suffix}").exists(), f"{name}.{suffix}"
    assert (outdir / "similarity-transition.csv").exists()
    assert (outdir / "similarity-occurrence.csv").exists()


def test_figures_rendered_by_default(small_input, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["count", "--input", small_input, "--checkpoints", "10",
                 "--output", str(out)]) == 0
    assert (tmp_path / "s.png").exists()
