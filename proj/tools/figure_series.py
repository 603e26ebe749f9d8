#!/usr/bin/env python3
"""Regenerate plot-ready data series from a sweep output directory.

Reads aggregate.csv (and raw.csv for the viral-stance histogram) and writes:
  series_<axis>.csv   one row per (distribution, axis value) when one axis varies
  heatmap_<a>_<b>.csv dominance mean per cell when two axes vary
  viral_stance.csv    per-point counts of the most-liked stance across reps
"""

import argparse
import csv
import pathlib
import sys
from collections import Counter, defaultdict

AXES = ["alpha", "k", "omega", "delta", "lambda"]
METRICS = ["likes_pct", "wr_pct", "md_tau", "mr_tau", "md_pct_change", "mr_pct_change", "dominance"]


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def numeric(value):
    return float(value) if value != "" else None


def varying_axes(rows):
    return [a for a in AXES if len({r[a] for r in rows}) > 1]


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def series(rows, axis, out):
    header = ["distribution", axis]
    for m in METRICS:
        header += [f"{m}_mean", f"{m}_ci_low", f"{m}_ci_high"]
    body = []
    for r in sorted(rows, key=lambda r: (r["distribution"], float(r[axis]))):
        line = [r["distribution"], r[axis]]
        for m in METRICS:
            line += [r[f"{m}_mean"], r[f"{m}_ci_low"], r[f"{m}_ci_high"]]
        body.append(line)
    path = out / f"series_{axis}.csv"
    write_csv(path, header, body)
    return path


def heatmap(rows, a, b, out):
    body = []
    for r in sorted(rows, key=lambda r: (r["distribution"], float(r[a]), float(r[b]))):
        body.append([r["distribution"], r[a], r[b], r["dominance_mean"], r["dominance_ci_low"], r["dominance_ci_high"]])
    path = out / f"heatmap_{a}_{b}.csv"
    write_csv(path, ["distribution", a, b, "dominance_mean", "dominance_ci_low", "dominance_ci_high"], body)
    return path


def viral_histogram(raw, out):
    counts = defaultdict(Counter)
    for r in raw:
        key = (r["distribution"],) + tuple(r[a] for a in AXES)
        counts[key][r["viral_stance"]] += 1
    body = []
    for key in sorted(counts, key=lambda k: (k[0],) + tuple(float(v) for v in k[1:])):
        for stance, n in sorted(counts[key].items(), key=lambda kv: float(kv[0])):
            body.append(list(key) + [stance, n])
    path = out / "viral_stance.csv"
    write_csv(path, ["distribution"] + AXES + ["viral_stance", "runs"], body)
    return path


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("sweep_dir", type=pathlib.Path)
    parser.add_argument("--out", type=pathlib.Path, help="output directory (default: <sweep_dir>/series)")
    args = parser.parse_args(argv)

    aggregate_path = args.sweep_dir / "aggregate.csv"
    raw_path = args.sweep_dir / "raw.csv"
    if not aggregate_path.exists() or not raw_path.exists():
        print(f"missing aggregate.csv or raw.csv in {args.sweep_dir}", file=sys.stderr)
        return 2
    rows = read_rows(aggregate_path)
    raw = read_rows(raw_path)
    if not rows:
        print("aggregate.csv has no rows", file=sys.stderr)
        return 1
    out = args.out or args.sweep_dir / "series"
    out.mkdir(parents=True, exist_ok=True)

    axes = varying_axes(rows)
    written = []
    if len(axes) == 1:
        written.append(series(rows, axes[0], out))
    elif len(axes) == 2:
        written.append(heatmap(rows, axes[0], axes[1], out))
    else:
        for a in axes or ["alpha"]:
            written.append(series(rows, a, out))
    written.append(viral_histogram(raw, out))

    n_runs = len(raw)
    n_points = len(rows)
    reps = {int(r["rep_count"]) for r in rows}
    print(f"{n_points} points, {n_runs} runs, reps {sorted(reps)}")
    for p in written:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
