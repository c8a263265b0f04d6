#!/usr/bin/env python3
"""Generate a small synthetic demo corpus plus a ready-to-run pipeline
config, so the CLI can be exercised without downloading anything.

Usage: python scripts/make_demo_data.py [outdir]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from corpus import domain_corpus, write_snap_file  # noqa: E402


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo-data")
    outdir.mkdir(parents=True, exist_ok=True)
    sections = []
    for name, domain, graph in domain_corpus(scale=0.5, seed=3):
        path = outdir / f"{name}.txt"
        write_snap_file(graph, path)
        sections.append(f"[dataset:{name}]\npath = {path}\ndomain = {domain}\n")
        print(f"wrote {path} ({graph!r})")
    config = outdir / "demo.ini"
    config.write_text(
        "[params]\n"
        "dtheta = 2\nepsilon = 4\nreplicas = 10\nseed = 7\ncheckpoints = 200\n"
        "measure = in-degree\ntop_fraction = 0.2\nrepeats = 5\nshuffles = 3\n"
        "sets = local-nr,global-nr,global-basic,all\nsubject = node\n\n"
        + "\n".join(sections))
    print(f"wrote {config}")
    print(f"run: graphlet-lens reproduce --config {config} --output-dir demo-out")


if __name__ == "__main__":
    main()
