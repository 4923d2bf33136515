"""The full command-line pipeline in a temporary directory.

generate -> measure -> calibrate -> plot, all seeded, so a second run
produces byte-identical artifacts.
"""

import json
import tempfile
from pathlib import Path

from scorecalib.cli import main

workdir = Path(tempfile.mkdtemp(prefix="scorecalib-demo-"))
print(f"working in {workdir}\n")


def run(*argv):
    argv = [str(a) for a in argv]
    print(f"$ scorecalib {' '.join(argv)}")
    code = main(argv)
    assert code == 0, f"exit code {code}"
    print()


run(
    "generate", "--n-minority", 300, "--n-majority", 500,
    "--pos-rate-a", 0.4, "--pos-rate-b", 0.4,
    "--beta-minority-pos", "6,2", "--beta-minority-neg", "2,6",
    "--beta-majority-pos", "10,2", "--beta-majority-neg", "2,8",
    "--seed", 13, "--out-dir", workdir,
)

run(
    "measure", "--input", workdir / "dataset.csv", "--minority-token", "minority",
    "--metric", "dp", "eod", "--out-dir", workdir / "measure",
)

run(
    "calibrate", "--input", workdir / "dataset.csv", "--minority-token", "minority",
    "--algorithm", "calib", "--sigma", 0.05, "--seed", 13,
    "--metric", "dp", "eod", "--out-dir", workdir / "calibrated",
)

run(
    "plot",
    "--input", workdir / "measure" / "dp_minority_before.csv",
    workdir / "measure" / "dp_majority_before.csv",
    "--title", "positive rate by threshold",
    "--out-dir", workdir / "plots",
)

report = json.loads((workdir / "calibrated" / "report.json").read_text())
print("machine-readable report (calibrated/report.json):")
print(f"  dp before: {report['metrics']['dp']['before']:.6f}")
print(f"  dp after:  {report['metrics']['dp']['after']:.6f}")
print(f"  risk:      {report['risk']:.6f}")
print(f"  auc:       {report['auc_before']:.6f} -> {report['auc_after']:.6f}")

print("\nartifacts:")
for path in sorted(workdir.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(workdir)}")
