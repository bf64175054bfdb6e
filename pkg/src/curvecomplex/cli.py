"""Command-line front end.

Exit status: 0 every check passed, 1 a proved statement was falsified (a bug),
2 inconclusive because of truncation, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from pathlib import Path

from . import checks
from .checks import PROFILES, Outcome
from .complex import ball, distance_label, distance_upper, no_dead_ends_check, shell_connectivity, slimness_sample
from .config import CHECKS, ConfigError, ExperimentConfig
from .curves import Curve, validate_curve
from .errors import CurveComplexError, DoesNotCut, InvalidCurve, TruncationExhausted, Unreachable
from .farey import Slope, curve_of_slope, slope_distance, slope_of_curve
from .marking import complete_to_marking, elementary_moves, extend_past_point, validate_marking
from .projection import annulus, bgi_scan, cobounded_report, complement_component, dZ, project
from .reports import FAIL, INCONCLUSIVE, PASS, Report, histogram_csv, write_atomic
from .surface import Surface
from .triangulation import reference_triangulation
from .algebra import bracelet_report

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
USAGE = 3


class UsageError(Exception):
    pass


# --- argument parsing -------------------------------------------------------------

def parse_curve(S: Surface, text: str | None, what: str) -> Curve:
    if text is None:
        raise UsageError(f"--{what} is required")
    text = text.strip()
    if text.startswith("["):
        return validate_curve(json.loads(text), reference_triangulation(S))
    if "/" in text or text in ("inf", "oo"):
        if S.complexity != 1:
            raise UsageError("slopes name curves only on complexity-one surfaces")
        return curve_of_slope(S, Slope.parse(text))
    return Curve.parse(S, text)


_SUB = re.compile(r"^(A|Y)\(([A-Za-z]+)(?:\|([0-9,]+))?\)$")


def parse_subsurface(S: Surface, text: str | None):
    if text is None:
        raise UsageError("--z is required (A(word) or Y(word|punctures))")
    m = _SUB.match(text.replace(" ", ""))
    if not m:
        raise UsageError(f"cannot parse subsurface {text!r}")
    kind, word, side = m.groups()
    c = Curve.parse(S, word)
    if kind == "A":
        return annulus(c)
    if not side:
        raise UsageError("Y(...) needs the punctures of the chosen side")
    try:
        return complement_component(c, tuple(int(x) for x in side.split(",")))
    except ValueError as e:
        raise UsageError(str(e)) from e


def _need(cfg: ExperimentConfig, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"{cfg.check} needs " + ", ".join(f"--{n.replace('_', '-')}" for n in missing))


def _profile(cfg: ExperimentConfig, **fields):
    P = PROFILES[cfg.profile]
    return replace(P, **{k: v for k, v in fields.items() if v is not None})


# --- subcommands ------------------------------------------------------------------

def _distance(cfg, S):
    a, b = parse_curve(S, cfg.a, "from"), parse_curve(S, cfg.b, "to")
    if S.complexity == 1:
        x, y = slope_of_curve(a), slope_of_curve(b)
        d = slope_distance(x, y, S)
        return Outcome(Report("distance", S, {"a": str(a), "b": str(b), "slopes": [str(x), str(y)]},
                              {}, PASS, [], {"distance": d, "label": "exact"}))
    _need(cfg, "W")
    try:
        d, path = distance_upper(a, b, cfg.W)
    except Unreachable as e:
        return Outcome(Report("distance", S, {"a": str(a), "b": str(b)}, {"W": cfg.W}, INCONCLUSIVE,
                              [], {}, str(e)))
    return Outcome(Report("distance", S, {"a": str(a), "b": str(b)}, {"W": cfg.W}, PASS,
                          [path.to_json()], {"distance": d, "label": distance_label(d, S)}))


def _project(cfg, S):
    a, Z = parse_curve(S, cfg.a, "a"), parse_subsurface(S, cfg.z)
    res = project(a, Z)
    return Outcome(Report("project", S, {"a": str(a), "subsurface": str(Z)}, {}, PASS,
                          [str(v) for v in res.vertices], res.to_json()))


def _dz(cfg, S):
    a, b, Z = parse_curve(S, cfg.a, "a"), parse_curve(S, cfg.b, "b"), parse_subsurface(S, cfg.z)
    v = dZ(a, b, Z)
    return Outcome(Report("dz", S, {"a": str(a), "b": str(b), "subsurface": str(Z)}, {}, PASS, [], {"dZ": v}))


def _ball(cfg, S):
    _need(cfg, "r", "W")
    z = parse_curve(S, cfg.z or cfg.a, "z")
    B = ball(z, cfg.r, cfg.W)
    rows = [k for k, layer in enumerate(B.layers) for _ in layer]
    return Outcome(
        Report("ball", S, {"center": str(z), "r": cfg.r}, {"W": cfg.W}, PASS, [], {"layer_sizes": B.sizes}),
        {"layers": histogram_csv(rows)},
    )


def _shell(cfg, S):
    _need(cfg, "r", "d", "W")
    z = parse_curve(S, cfg.z or cfg.a, "z")
    return Outcome(shell_connectivity(z, cfg.r, cfg.d, cfg.W))


def _dead_ends(cfg, S):
    _need(cfg, "r", "W")
    z = parse_curve(S, cfg.z or cfg.a, "z")
    return Outcome(no_dead_ends_check(z, cfg.r, cfg.W, cfg.W_outer))


def _lipschitz(cfg, S):
    P = _profile(cfg, lipschitz_trials=cfg.trials, lipschitz_W=cfg.W, lipschitz_W_sub=cfg.W_sub, path_max=cfg.N)
    return checks.lipschitz(P, cfg.seed, cfg.surface)


def _bgi(cfg, S):
    if cfg.a is not None:
        _need(cfg, "W")
        a, b = parse_curve(S, cfg.a, "a"), parse_curve(S, cfg.b, "b")
        return Outcome(bgi_scan(a, b, cfg.W, cfg.W_sub))
    P = _profile(cfg, bgi_samples=cfg.trials, bgi_W=cfg.W, bgi_W_sub=cfg.W_sub)
    return checks.bgi_sample(P, cfg.seed, cfg.surface)


def _cobounded(cfg, S):
    _need(cfg, "c", "W")
    a, b = parse_curve(S, cfg.a, "a"), parse_curve(S, cfg.b, "b")
    return Outcome(cobounded_report(a, b, cfg.c, cfg.W))


def _marking_moves(cfg, S):
    if cfg.a is None:
        P = _profile(cfg, marking_trials=cfg.trials, marking_W=cfg.W, marking_W_sub=cfg.W_sub)
        return checks.elementary_bound(P, cfg.seed, cfg.surface)
    _need(cfg, "W")
    a = parse_curve(S, cfg.a, "a")
    m = complete_to_marking(a, parse_curve(S, cfg.b, "b") if cfg.b else a, cfg.W)
    moves = elementary_moves(m, cfg.W)
    for m2 in moves.values():
        validate_marking(m2)
    return Outcome(Report(
        "marking-moves", S, {"marking": m.to_json()}, {"W": cfg.W}, PASS,
        [{"move": mv.to_json(), "marking": m2.to_json()} for mv, m2 in sorted(moves.items())],
        {"moves": len(moves), "moves_beyond_W": 3 * len(m.base) - len(moves)},
    ))


def _complete_marking(cfg, S):
    _need(cfg, "W")
    a = parse_curve(S, cfg.a, "a")
    target = parse_curve(S, cfg.b, "b") if cfg.b else a
    try:
        m = complete_to_marking(a, target, cfg.W)
    except TruncationExhausted as e:
        return Outcome(Report("complete-marking", S, {"a": str(a), "target": str(target)}, {"W": cfg.W},
                              INCONCLUSIVE, [], {}, str(e)))
    return Outcome(Report("complete-marking", S, {"a": str(a), "target": str(target)}, {"W": cfg.W},
                          PASS, [m.to_json()], {"marking": str(m)}))


def _extend(cfg, S):
    _need(cfg, "W")
    a, z = parse_curve(S, cfg.a, "a"), parse_curve(S, cfg.z, "z")
    params = {"a": str(a), "z": str(z), "N": cfg.N or 2}
    try:
        res = extend_past_point(a, z, cfg.W, cfg.N or 2)
    except TruncationExhausted as e:
        return Outcome(Report("extend", S, params, {"W": cfg.W}, INCONCLUSIVE, [], {}, str(e)))
    return Outcome(Report("extend", S, params, {"W": cfg.W}, PASS, [res.to_json()],
                          {"length": len(res.path), "power": res.power}))


def _bracelet(cfg, S):
    _need(cfg, "W")
    return Outcome(bracelet_report(parse_curve(S, cfg.a, "a"), cfg.mode or "twist", cfg.W))


def _slimness(cfg, S):
    _need(cfg, "W")
    res = slimness_sample(S, cfg.W, cfg.trials or 20, cfg.seed)
    return Outcome(
        Report("slimness", S, {"trials": cfg.trials or 20, "seed": cfg.seed}, {"W": cfg.W}, PASS,
               [list(t) for t in res.triangles if t], {"delta": res.delta}),
        {"slimness": histogram_csv(res.defects)},
    )


HANDLERS = {
    "distance": _distance,
    "project": _project,
    "dz": _dz,
    "ball": _ball,
    "shell-check": _shell,
    "dead-ends": _dead_ends,
    "lipschitz": _lipschitz,
    "bgi": _bgi,
    "cobounded": _cobounded,
    "marking-moves": _marking_moves,
    "complete-marking": _complete_marking,
    "extend": _extend,
    "bracelet": _bracelet,
    "slimness": _slimness,
}


# --- running ------------------------------------------------------------------------

def _emit(out: Outcome, cfg: ExperimentConfig, stdout) -> None:
    text = out.report.dumps()
    if cfg.output:
        path = Path(cfg.output)
        write_atomic(path, text)
        for key, csv_text in sorted(out.histograms.items()):
            write_atomic(path.with_name(f"{path.stem}_{key}.csv"), csv_text)
        stdout.write(f"{out.report.check}: {out.report.verdict} -> {path}\n")
    else:
        stdout.write(text)


def run(cfg: ExperimentConfig, stdout=None, stderr=None) -> int:
    """Execute one configured check; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg.validate()
        if cfg.profile not in PROFILES:
            raise UsageError(f"unknown profile {cfg.profile!r}")
        if cfg.check == "suite":
            P = PROFILES[cfg.profile]
            seed = cfg.seed if cfg.seed is not None else 0
            outdir = Path(cfg.output or f"reports/{cfg.profile}")
            rep = checks.suite(cfg.profile, seed, outdir, surface=cfg.surface,
                               log=lambda line: stdout.write(line + "\n"))
            stdout.write(f"suite: {rep.verdict} -> {outdir}\n")
            return EXIT[rep.verdict]
        S = Surface.parse(cfg.surface)
        S.require_kernel()
        out = HANDLERS[cfg.check](cfg, S)
    except (UsageError, ConfigError) as e:
        stderr.write(f"usage error: {e}\n")
        return USAGE
    except (InvalidCurve, DoesNotCut, ValueError) as e:
        stderr.write(f"usage error: {type(e).__name__}: {e}\n")
        return USAGE
    except CurveComplexError as e:
        stderr.write(f"usage error: {type(e).__name__}: {e}\n")
        return USAGE
    except AssertionError as e:
        stderr.write(f"falsified: {e}\n")
        return EXIT[FAIL]
    _emit(out, cfg, stdout)
    return EXIT[out.report.verdict]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    common.add_argument("--surface", help="genus,punctures, e.g. 0,5")
    for flag in ("W", "W-outer", "W-sub", "r", "d", "N", "c", "seed", "trials"):
        common.add_argument(f"--{flag}", type=int, dest=flag.replace("-", "_"))
    common.add_argument("--a", "--from", dest="a", help="curve: word, [coords], or p/q")
    common.add_argument("--b", "--to", dest="b")
    common.add_argument("--z", "--center", dest="z", help="centre curve, or subsurface A(w) / Y(w|1,2,3)")
    common.add_argument("--mode", choices=("twist", "halftwist"))
    common.add_argument("--profile", choices=sorted(PROFILES))
    common.add_argument("--output", "-o")
    p = _Parser(prog="curvecomplex", description="Curve complex experiments.")
    sub = p.add_subparsers(dest="check", required=True, parser_class=_Parser)
    for name in CHECKS:
        sub.add_parser(name, parents=[common])
    return p


def config_from_args(argv) -> ExperimentConfig:
    ns = vars(build_parser().parse_args(argv))
    path = ns.pop("config")
    check = ns.pop("check")
    base = ExperimentConfig.load(path) if path else ExperimentConfig(check)
    if base.check != check:
        raise UsageError(f"config is for {base.check!r}, not {check!r}")
    return base.override(**ns)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except (UsageError, ConfigError) as e:
        sys.stderr.write(f"usage error: {e}\n")
        return USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
