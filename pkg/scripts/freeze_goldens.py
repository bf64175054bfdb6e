"""Recompute the frozen golden values and write them next to the tests.

    python scripts/freeze_goldens.py [--check]

With --check nothing is written; the exit status says whether the stored
goldens still match.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from curvecomplex.complex import ball, enumerate_curves
from curvecomplex.curves import Curve
from curvecomplex.projection import enumerate_subsurfaces
from curvecomplex.surface import Surface

GOLDENS = Path(__file__).resolve().parents[1] / "tests" / "goldens" / "goldens.json"

CONFIG = {
    "universe_sizes": [["0,5", 26], ["0,5", 32], ["0,4", 20], ["1,1", 20], ["1,2", 14], ["0,6", 14]],
    "ball_layers": [["0,5", "ab", 4, 26], ["0,5", "ab", 4, 32], ["1,2", "a", 3, 14]],
    "subsurface_counts": [["0,5", 10], ["0,5", 14], ["0,6", 10]],
}


def compute() -> dict:
    out = {"config": CONFIG, "universe_sizes": {}, "ball_layers": {}, "subsurface_counts": {}}
    for gb, W in CONFIG["universe_sizes"]:
        out["universe_sizes"][f"{gb}|{W}"] = len(enumerate_curves(Surface.parse(gb), W))
    for gb, word, r, W in CONFIG["ball_layers"]:
        S = Surface.parse(gb)
        out["ball_layers"][f"{gb}|{word}|{r}|{W}"] = ball(Curve.parse(S, word), r, W).sizes
    for gb, W in CONFIG["subsurface_counts"]:
        subs = enumerate_subsurfaces(Surface.parse(gb), W)
        out["subsurface_counts"][f"{gb}|{W}"] = {
            "annular": sum(Z.is_annular for Z in subs),
            "nonannular": sum(not Z.is_annular for Z in subs),
        }
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    values = compute()
    text = json.dumps(values, indent=2, sort_keys=True) + "\n"
    if args.check:
        ok = GOLDENS.exists() and GOLDENS.read_text() == text
        print("goldens match" if ok else "goldens differ")
        return 0 if ok else 1
    GOLDENS.parent.mkdir(parents=True, exist_ok=True)
    GOLDENS.write_text(text)
    print(f"wrote {GOLDENS}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
