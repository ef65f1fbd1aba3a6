"""
Download the benchmark datasets into the data directory.

Each file is stored as ``<name>.data`` so the bundled schema
``datasets/schemas/<name>.yaml`` is picked up without ``--schema``. Checksums
are recorded in ``checksums.json`` next to the data the first time a file is
fetched; later runs verify against that record and refuse a file whose
content changed.

    python scripts/fetch_datasets.py                 # everything
    python scripts/fetch_datasets.py iris abalone    # a subset
"""
import argparse
import hashlib
import io
import json
import os
import sys
import tarfile
import urllib.error
import urllib.request
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

SOURCES = {
    "iris": [f"{UCI}/iris/iris.data"],
    "abalone": [f"{UCI}/abalone/abalone.data"],
    "cpu": [f"{UCI}/cpu-performance/machine.data"],
    # The 4435-row training file; sat.tst is not used.
    "landsat": [f"{UCI}/statlog/satimage/sat.trn"],
    "diabetes": [
        "https://raw.githubusercontent.com/jbrownlee/Datasets/master/pima-indians-diabetes.data.csv"
    ],
    "delta_ailerons": ["https://www.dcc.fc.up.pt/~ltorgo/Regression/delta_ailerons.tgz"],
}

# Member of the archive that holds the data, for sources shipped as tarballs.
ARCHIVE_MEMBERS = {"delta_ailerons": "delta_ailerons.data"}


def sha256(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def download(url: str, timeout: float) -> bytes:
    print(f"  GET {url}")
    with urllib.request.urlopen(url, timeout=timeout) as response:
        return response.read()


def extract(name: str, payload: bytes) -> bytes:
    member = ARCHIVE_MEMBERS.get(name)
    if member is None:
        return payload
    with tarfile.open(fileobj=io.BytesIO(payload), mode="r:gz") as archive:
        for info in archive.getmembers():
            if info.isfile() and info.name.endswith(member):
                return archive.extractfile(info).read()
    raise ValueError(f"{name}: {member} not found in the archive")


def fetch(name: str, timeout: float) -> bytes:
    parts = [extract(name, download(url, timeout)) for url in SOURCES[name]]
    # Concatenated sources must each end with a newline.
    return b"".join(part if part.endswith(b"\n") else part + b"\n" for part in parts)


def load_checksums(path: Path) -> dict:
    if path.is_file():
        return json.loads(path.read_text(encoding="utf-8"))
    return {}


def main(argv=None) -> int:
    load_dotenv(BASE_DIR / ".env")
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("names", nargs="*", help=f"Datasets to fetch (default: all of {', '.join(SOURCES)})")
    parser.add_argument(
        "--out",
        default=os.environ.get("PINVNET_DATA_DIR", str(BASE_DIR / "data")),
        help="Data directory (default: PINVNET_DATA_DIR or ./data)",
    )
    parser.add_argument("--force", action="store_true", help="Download again even if the file exists")
    parser.add_argument("--timeout", type=float, default=60.0)
    args = parser.parse_args(argv)
    unknown = sorted(set(args.names) - set(SOURCES))
    if unknown:
        parser.error(f"unknown datasets: {', '.join(unknown)}")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    checksum_path = out / "checksums.json"
    checksums = load_checksums(checksum_path)
    failures = 0

    for name in args.names or list(SOURCES):
        target = out / f"{name}.data"
        if target.is_file() and not args.force:
            payload = target.read_bytes()
        else:
            print(f"Fetching {name}...")
            try:
                payload = fetch(name, args.timeout)
            except (urllib.error.URLError, TimeoutError, ValueError, tarfile.TarError) as e:
                print(f"✗ {name}: {e}")
                failures += 1
                continue

        digest = sha256(payload)
        known = checksums.get(name)
        if known is None:
            checksums[name] = digest
            print(f"  recorded checksum {digest[:12]}... for {name}")
        elif known != digest:
            print(f"✗ {name}: checksum {digest[:12]}... does not match the recorded {known[:12]}...")
            failures += 1
            continue

        if not target.is_file() or args.force:
            target.write_bytes(payload)
        print(f"✓ {target}")

    checksum_path.write_text(json.dumps(checksums, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
