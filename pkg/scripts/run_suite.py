"""Run the acceptance suite twice in fresh processes and diff the reports.

    python scripts/run_suite.py --profile quick --seed 0 --out reports
"""

from __future__ import annotations

import argparse
import filecmp
import subprocess
import sys
from pathlib import Path


def run(profile: str, seed: int, out: Path) -> int:
    cmd = [sys.executable, "-m", "curvecomplex", "suite", "--profile", profile, "--seed", str(seed), "-o", str(out)]
    return subprocess.run(cmd).returncode


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profile", default="quick")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()
    first, second = args.out / f"{args.profile}-1", args.out / f"{args.profile}-2"
    codes = [run(args.profile, args.seed, d) for d in (first, second)]
    names = sorted(p.name for p in first.iterdir())
    _, mismatch, errors = filecmp.cmpfiles(first, second, names, shallow=False)
    print(f"exit codes {codes}; {len(names)} files, {len(mismatch) + len(errors)} differ")
    for name in mismatch + errors:
        print(f"  differs: {name}")
    return 1 if mismatch or errors else codes[0]


if __name__ == "__main__":
    sys.exit(main())
