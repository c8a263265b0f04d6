#!/usr/bin/env python3
"""Download the small public temporal graphs used by the real-data
variant of the acceptance suite into ./data (requires internet access).

Usage: python scripts/fetch_snap_datasets.py [datadir]
"""

import gzip
import shutil
import sys
import urllib.request
from pathlib import Path

DATASETS = {
    "CollegeMsg.txt": "https://snap.stanford.edu/data/CollegeMsg.txt.gz",
    "email-Eu-core-temporal.txt":
        "https://snap.stanford.edu/data/email-Eu-core-temporal.txt.gz",
    "sx-mathoverflow.txt": "https://snap.stanford.edu/data/sx-mathoverflow.txt.gz",
    "sx-askubuntu.txt": "https://snap.stanford.edu/data/sx-askubuntu.txt.gz",
}


def main():
    datadir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    datadir.mkdir(parents=True, exist_ok=True)
    for name, url in DATASETS.items():
        target = datadir / name
        if target.exists():
            print(f"{target} already present")
            continue
        archive = target.with_suffix(target.suffix + ".gz")
        print(f"downloading {url}")
        urllib.request.urlretrieve(url, archive)
        with gzip.open(archive, "rb") as src, open(target, "wb") as dst:
            shutil.copyfileobj(src, dst)
        archive.unlink()
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
