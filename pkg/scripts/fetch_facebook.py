#!/usr/bin/env python3
"""Download the SNAP ego-Facebook combined edge list into data/.

    python scripts/fetch_facebook.py [--dest data/facebook_combined.txt]

The file is not redistributed with this repository. After fetching, the
canonical k=8 partition can be produced with

    hoaxnet cluster --graph data/facebook_combined.txt --k 8 --seed 2023 \
        --out data/facebook_k8_partition.csv
"""

import argparse
import gzip
import hashlib
import shutil
import sys
import urllib.request
from pathlib import Path

URL = "https://snap.stanford.edu/data/facebook_combined.txt.gz"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--dest", default=str(Path(__file__).resolve().parents[1] / "data" / "facebook_combined.txt"))
    parser.add_argument("--url", default=URL)
    args = parser.parse_args()

    dest = Path(args.dest)
    dest.parent.mkdir(parents=True, exist_ok=True)
    tmp = dest.with_suffix(".download")
    print(f"fetching {args.url}")
    with urllib.request.urlopen(args.url, timeout=60) as resp, open(tmp, "wb") as out:
        shutil.copyfileobj(resp, out)
    with gzip.open(tmp, "rb") as src, open(dest, "wb") as out:
        shutil.copyfileobj(src, out)
    tmp.unlink()
    digest = hashlib.sha256(dest.read_bytes()).hexdigest()
    lines = sum(1 for _ in open(dest, encoding="utf-8"))
    print(f"wrote {dest} ({lines} lines, sha256 {digest})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
