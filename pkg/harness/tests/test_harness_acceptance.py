"""End-to-end checks of the harness guarantees, one printed line each.

The benchmark criterion exercises the real pipeline: the `multicurv`
command (the feature producer installed alongside this package) synthesizes
the bridge-vs-rewired dataset, and the harness CLI consumes the resulting
CSV exactly as a user would. Observed accuracies and p-values are printed;
only the documented floors are hard-asserted, since the dataset generator's
exact numbers are seed-specific.
"""

import csv
import shutil
import subprocess
import time

from harness.cli import main
from _fixtures import separable_csv, shuffled_csv
from harness import ExperimentConfig, load_feature_table, run_comparison


def _verdict(label: str, problems: list[str]) -> None:
    ok = not problems
    print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    assert ok, f"{label}: " + " | ".join(problems[:5])


def _read_summary(path):
    with open(path, newline="") as fh:
        return {row["selector"]: row for row in csv.DictReader(fh)}


def test_floor_ceiling_and_bridge_benchmark(tmp_path):
    problems = []
    t0 = time.perf_counter()

    table = load_feature_table(separable_csv(tmp_path / "sep.csv", n=60))
    (ceiling,) = run_comparison(
        table, ExperimentConfig(selectors=(("ce",),), seed=7)
    ).summaries
    if (ceiling.mean_accuracy, ceiling.std_accuracy) != (1.0, 0.0):
        problems.append(f"ceiling {ceiling.mean_accuracy} ± {ceiling.std_accuracy}")

    table = load_feature_table(shuffled_csv(tmp_path / "shuf.csv", n=80))
    (floor,) = run_comparison(
        table, ExperimentConfig(selectors=(("ce",),), repetitions=10, seed=11)
    ).summaries
    band = 3.0 * (0.25 / 16 / 5) ** 0.5
    if abs(floor.mean_accuracy - 0.5) >= band:
        problems.append(f"floor {floor.mean_accuracy} outside 0.5 ± {band:.3f}")

    producer = shutil.which("multicurv")
    if producer is None:
        problems.append("multicurv console script not on PATH")
    else:
        completed = subprocess.run(
            [producer, "features", "--dataset", "bridge", "--count", "300",
             "--seed", "4242", "--out", str(tmp_path / "bridge")],
            capture_output=True,
            text=True,
        )
        if completed.returncode != 0:
            problems.append(f"feature synthesis failed: {completed.stderr.strip()}")
        else:
            out = tmp_path / "bench"
            code = main(
                ["run", "--features", str(tmp_path / "bridge" / "features.csv"),
                 "--mode", "table3", "--seed", "1", "--out", str(out)]
            )
            if code != 0:
                problems.append("harness run failed")
            else:
                summary = _read_summary(out / "summary.csv")
                ce = float(summary["ce"]["mean_accuracy"])
                wl = float(summary["wl"]["mean_accuracy"])
                wl_ce = float(summary["wl+ce"]["mean_accuracy"])
                print(f"  bridge accuracy: wl {wl:.4f}, ce {ce:.4f}, wl+ce {wl_ce:.4f}")
                if not ce > 0.65:
                    problems.append(f"ce-only accuracy {ce:.4f} <= 0.65")
                if not wl_ce >= wl - 0.02:
                    problems.append(f"wl+ce {wl_ce:.4f} trails wl {wl:.4f} by > 0.02")
                with open(out / "wilcoxon.csv", newline="") as fh:
                    pairs = {
                        (row["selector_a"], row["selector_b"]): row["p_value"]
                        for row in csv.DictReader(fh)
                    }
                p = pairs.get(("wl", "wl+ce"))
                if p is None:
                    problems.append("wl vs wl+ce comparison missing")
                elif p != "" and not 0.0 <= float(p) <= 1.0:
                    problems.append(f"p-value {p} out of range")
                else:
                    print(f"  wilcoxon wl vs wl+ce: p = {p or 'n/a (all ties)'}")

    elapsed = time.perf_counter() - t0
    if elapsed >= 600.0:
        problems.append(f"took {elapsed:.0f}s")
    _verdict("S1 harness ceiling, chance floor, bridge benchmark", problems)


def test_table_shapes_are_byte_deterministic(tmp_path):
    problems = []
    csv_path = separable_csv(tmp_path / "f.csv", n=40)
    for mode, extra in (("table1", []), ("table3", ["--repetitions", "2"])):
        blobs = []
        for run in ("a", "b"):
            out = tmp_path / f"{mode}_{run}"
            code = main(
                ["run", "--features", csv_path, "--mode", mode,
                 "--seed", "31", "--out", str(out), *extra]
            )
            if code != 0:
                problems.append(f"{mode} run failed")
                break
            blobs.append({f.name: f.read_bytes() for f in sorted(out.iterdir())})
        if len(blobs) == 2 and blobs[0] != blobs[1]:
            problems.append(f"{mode} artifacts differ across identical runs")
        expected = {
            "table1": {"summary.md", "summary.csv", "scores.csv", "importance.csv"},
            "table3": {"summary.md", "summary.csv", "scores.csv", "wilcoxon.csv"},
        }[mode]
        if blobs and set(blobs[0]) != expected:
            problems.append(f"{mode} artifact set {sorted(blobs[0])}")
    _verdict("S2 result tables byte-deterministic per seed", problems)
