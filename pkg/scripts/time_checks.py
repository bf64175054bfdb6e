"""Time each check of the acceptance battery in a fresh process.

    python scripts/time_checks.py --profile desk --seed 0 [--only lipschitz bgi]
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import tempfile
import time

from curvecomplex.checks import BATTERY

RUN = (
    "import sys; from curvecomplex.checks import suite; "
    "suite(sys.argv[1], int(sys.argv[2]), sys.argv[3], only={sys.argv[4]}, log=lambda s: None)"
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profile", default="desk")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", default=list(BATTERY))
    args = ap.parse_args()
    for name in args.only:
        with tempfile.TemporaryDirectory() as tmp:
            t = time.perf_counter()
            subprocess.run([sys.executable, "-c", RUN, args.profile, str(args.seed), tmp, name], check=True)
            elapsed = time.perf_counter() - t
            rep = json.loads(open(f"{tmp}/{name}.json").read())
        print(f"{name:24s} {rep['verdict']:13s} {elapsed:8.1f}s  {json.dumps(rep['metrics'], sort_keys=True)[:150]}",
              flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
