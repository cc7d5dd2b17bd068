#!/usr/bin/env python3
"""Fetch the benchmark datasets into data/.

Standard library only. Each dataset is tried against a list of public
mirrors and written in the exact shape the library and tests expect:

  wdbc.csv        header row, 30 features, trailing `diagnosis` column
                  with values malignant/benign
  sonar.csv       no header, 60 features, trailing R/M label
  ionosphere.csv  no header, 34 features, trailing g/b label
  divorce.csv     header row Atr1..Atr54,Class with Class in {0,1}

Files that already exist are left alone unless --force is given.
"""

import argparse
import csv
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

HEADERS = {"User-Agent": "Mozilla/5.0 (dataset fetch script)"}

WDBC_FEATURES = [
    "mean_radius", "mean_texture", "mean_perimeter", "mean_area",
    "mean_smoothness", "mean_compactness", "mean_concavity",
    "mean_concave_points", "mean_symmetry", "mean_fractal_dimension",
    "radius_error", "texture_error", "perimeter_error", "area_error",
    "smoothness_error", "compactness_error", "concavity_error",
    "concave_points_error", "symmetry_error", "fractal_dimension_error",
    "worst_radius", "worst_texture", "worst_perimeter", "worst_area",
    "worst_smoothness", "worst_compactness", "worst_concavity",
    "worst_concave_points", "worst_symmetry", "worst_fractal_dimension",
]


def fetch(url, timeout=120):
    req = urllib.request.Request(url, headers=HEADERS)
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        return resp.read()


def unarchive(raw, member_hint):
    """Return the payload, unpacking one zip member when needed."""
    if raw[:4] == b"Rar!":
        raise ValueError("RAR archive; cannot unpack with the standard library")
    if raw[:2] != b"PK":
        return raw
    with zipfile.ZipFile(io.BytesIO(raw)) as zf:
        names = [n for n in zf.namelist() if member_hint in n.lower()]
        if not names:
            raise ValueError(f"archive has no member matching '{member_hint}'")
        return zf.read(min(names, key=len))


def parse_rows(raw, n_features, label_values):
    """Split a headerless CSV payload and validate every row."""
    rows = []
    for ln, line in enumerate(raw.decode("utf-8-sig").strip().splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != n_features + 1:
            raise ValueError(f"line {ln}: expected {n_features + 1} fields, "
                             f"got {len(parts)}")
        for p in parts[:-1]:
            float(p)
        if parts[-1] not in label_values:
            raise ValueError(f"line {ln}: unexpected label '{parts[-1]}'")
        rows.append(parts)
    return rows


def write_wdbc(raw, out):
    # Source rows: id, M/B diagnosis, then the 30 features.
    rows = []
    for ln, line in enumerate(raw.decode("utf-8-sig").strip().splitlines(), 1):
        parts = [p.strip() for p in line.strip().split(",")]
        if len(parts) != 32:
            raise ValueError(f"line {ln}: expected 32 fields, got {len(parts)}")
        label = {"M": "malignant", "B": "benign"}.get(parts[1])
        if label is None:
            raise ValueError(f"line {ln}: unexpected diagnosis '{parts[1]}'")
        for p in parts[2:]:
            float(p)
        rows.append(parts[2:] + [label])
    if len(rows) != 569:
        raise ValueError(f"expected 569 rows, got {len(rows)}")
    with out.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(WDBC_FEATURES + ["diagnosis"])
        w.writerows(rows)


def write_sonar(raw, out):
    rows = parse_rows(raw, 60, {"R", "M"})
    if len(rows) != 208:
        raise ValueError(f"expected 208 rows, got {len(rows)}")
    with out.open("w", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)


def write_ionosphere(raw, out):
    rows = parse_rows(raw, 34, {"g", "b"})
    if len(rows) != 351:
        raise ValueError(f"expected 351 rows, got {len(rows)}")
    with out.open("w", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)


def write_divorce(raw, out):
    # The published file is semicolon separated with an Atr1..Atr54;Class
    # header; rewrite it comma separated.
    text = raw.decode("utf-8-sig")
    delim = ";" if text.splitlines()[0].count(";") else ","
    reader = csv.reader(io.StringIO(text), delimiter=delim)
    header = [h.strip() for h in next(reader)]
    if len(header) != 55 or header[-1].lower() != "class":
        raise ValueError(f"unexpected header of {len(header)} columns")
    rows = []
    for ln, parts in enumerate(reader, 2):
        if not parts:
            continue
        parts = [p.strip() for p in parts]
        if len(parts) != 55:
            raise ValueError(f"line {ln}: expected 55 fields, got {len(parts)}")
        for p in parts:
            float(p)
        if parts[-1] not in {"0", "1"}:
            raise ValueError(f"line {ln}: unexpected class '{parts[-1]}'")
        rows.append(parts)
    if len(rows) != 170:
        raise ValueError(f"expected 170 rows, got {len(rows)}")
    with out.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([f"Atr{i}" for i in range(1, 55)] + ["Class"])
        w.writerows(rows)


DATASETS = {
    "wdbc": {
        "file": "wdbc.csv",
        "writer": write_wdbc,
        "hint": "wdbc.data",
        "urls": [
            "https://archive.ics.uci.edu/ml/machine-learning-databases/breast-cancer-wisconsin/wdbc.data",
            "https://archive.ics.uci.edu/static/public/17/breast+cancer+wisconsin+diagnostic.zip",
        ],
    },
    "sonar": {
        "file": "sonar.csv",
        "writer": write_sonar,
        "hint": "sonar.all-data",
        "urls": [
            "https://raw.githubusercontent.com/jbrownlee/Datasets/master/sonar.csv",
            "https://archive.ics.uci.edu/ml/machine-learning-databases/undocumented/connectionist-bench/sonar/sonar.all-data",
            "https://archive.ics.uci.edu/static/public/151/connectionist+bench+sonar+mines+vs+rocks.zip",
        ],
    },
    "ionosphere": {
        "file": "ionosphere.csv",
        "writer": write_ionosphere,
        "hint": "ionosphere.data",
        "urls": [
            "https://raw.githubusercontent.com/jbrownlee/Datasets/master/ionosphere.csv",
            "https://archive.ics.uci.edu/ml/machine-learning-databases/ionosphere/ionosphere.data",
            "https://archive.ics.uci.edu/static/public/52/ionosphere.zip",
        ],
    },
    "divorce": {
        "file": "divorce.csv",
        "writer": write_divorce,
        "hint": ".csv",
        "urls": [
            "https://archive.ics.uci.edu/static/public/497/divorce+predictors+data+set.zip",
            "https://archive.ics.uci.edu/ml/machine-learning-databases/00497/divorce.rar",
        ],
    },
}


def materialize(name, data_dir, force):
    spec = DATASETS[name]
    out = data_dir / spec["file"]
    if out.exists() and not force:
        print(f"{name}: already present at {out}")
        return True
    errors = []
    for url in spec["urls"]:
        try:
            payload = unarchive(fetch(url), spec["hint"])
            spec["writer"](payload, out)
            print(f"{name}: wrote {out} from {url}")
            return True
        except Exception as e:  # noqa: BLE001 - report and try the next mirror
            errors.append(f"  {url}: {e}")
    print(f"{name}: FAILED, all sources exhausted", file=sys.stderr)
    for line in errors:
        print(line, file=sys.stderr)
    return False


def main():
    default_dir = Path(__file__).resolve().parent.parent / "data"
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("names", nargs="*", metavar="dataset",
                    help=f"datasets to fetch (default: all of "
                         f"{', '.join(DATASETS)})")
    ap.add_argument("--data-dir", type=Path, default=default_dir)
    ap.add_argument("--force", action="store_true",
                    help="re-download even when the file exists")
    args = ap.parse_args()

    for n in args.names:
        if n not in DATASETS:
            ap.error(f"unknown dataset '{n}' (choose from {', '.join(DATASETS)})")
    names = args.names or list(DATASETS)
    args.data_dir.mkdir(parents=True, exist_ok=True)
    ok = all([materialize(n, args.data_dir, args.force) for n in names])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
