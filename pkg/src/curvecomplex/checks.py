"""The acceptance battery: each check returns a Report, ``suite`` writes them all."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .algebra import bracelet_report, characterization_scan
from .complex import adjacent, enumerate_curves, no_dead_ends_check, shell_connectivity, slimness_sample, universe
from .curves import Curve, apply, compile_twist, intersection_number
from .farey import Slope, curve_of_slope, slopes_up_to
from .marking import elementary_moves, marking_cuts, marking_dZ, random_marking
from .projection import _cut_by_all, bgi_scan, dZ, enumerate_subsurfaces
from .reports import FAIL, INCONCLUSIVE, PASS, Report, combine, histogram_csv, write_atomic
from .surface import Surface


@dataclass(frozen=True)
class Profile:
    farey_bound: int = 20
    twist_trials: int = 500
    twist_W: tuple[tuple[str, int], ...] = (("1,1", 12), ("0,5", 20))
    twist_n: int = 8
    lipschitz_trials: int = 1000
    lipschitz_W: int = 26
    lipschitz_W_sub: int = 14
    path_max: int = 5
    marking_trials: int = 200
    marking_W: int = 26
    marking_W_sub: int = 14
    dead_W: int = 38
    dead_W_outer: int = 38
    dead_r: int = 3
    farey_dead_r: int = 4
    farey_dead_bound: int = 40
    shell_W: int = 38
    shell_r: int = 2
    slim_W: int = 26
    slim_trials: int = 40
    bracelets: tuple[tuple[str, str, str, int], ...] = (
        ("1,2", "a", "twist", 14),
        ("1,3", "a", "twist", 14),
        ("0,6", "ab", "halftwist", 20),
    )
    braid: tuple[tuple[str, int], ...] = (("1,1", 10), ("1,2", 10), ("0,5", 18))
    braid_max_i: int = 3
    bgi_samples: int = 1000
    bgi_W: int = 26
    bgi_W_sub: int = 14
    bgi_step: int = 2

    def to_json(self) -> dict:
        return asdict(self)


PROFILES = {
    "desk": Profile(),
    "quick": Profile(
        farey_bound=5,
        twist_trials=20,
        twist_W=(("1,1", 8), ("0,5", 14)),
        twist_n=3,
        lipschitz_trials=20,
        lipschitz_W=20,
        lipschitz_W_sub=10,
        marking_trials=3,
        marking_W=20,
        marking_W_sub=10,
        dead_W=20,
        dead_W_outer=24,
        dead_r=1,
        farey_dead_r=2,
        farey_dead_bound=8,
        shell_W=24,
        shell_r=1,
        slim_W=20,
        slim_trials=5,
        bracelets=(("1,2", "a", "twist", 10), ("0,6", "ab", "halftwist", 14)),
        braid=(("1,1", 8), ("0,5", 14)),
        bgi_samples=10,
        bgi_W=20,
        bgi_W_sub=10,
    ),
}


@dataclass
class Outcome:
    report: Report
    histograms: dict[str, str] = field(default_factory=dict)


def _s(text: str) -> Surface:
    return Surface.parse(text)


# --- 1: Farey oracle ----------------------------------------------------------------

def farey_oracle(P: Profile, seed: int = 0) -> Outcome:
    """Kernel adjacency on S_{1,1} against |ps - qr| = 1 over all slope pairs."""
    S = _s("1,1")
    slopes = slopes_up_to(P.farey_bound)
    curves = {x: curve_of_slope(S, x) for x in slopes}
    bad, n = [], 0
    for k, x in enumerate(slopes):
        for y in slopes[k + 1 :]:
            n += 1
            if adjacent(curves[x], curves[y]) != (abs(x.det(y)) == 1):
                bad.append([str(x), str(y)])
    rep = Report(
        "farey-oracle", S, {"bound": P.farey_bound}, {"bound": P.farey_bound},
        FAIL if bad else PASS, bad[:20], {"pairs": n, "slopes": len(slopes), "mismatches": len(bad)},
    )
    return Outcome(rep)


# --- 2: twist identity ----------------------------------------------------------------

def twist_identity(P: Profile, seed: int) -> Outcome:
    """i(T_c^n a, a) = |n| i(a, c)^2 on random triples."""
    rng = random.Random(seed)
    bad, n_checked, per = [], 0, {}
    for name, W_bound in P.twist_W:
        S = _s(name)
        curves = enumerate_curves(S, W_bound)
        for _ in range(P.twist_trials):
            a, c = rng.choice(curves), rng.choice(curves)
            n = rng.randint(-P.twist_n, P.twist_n)
            lhs = intersection_number(apply(compile_twist(c, n), a), a)
            rhs = abs(n) * intersection_number(a, c) ** 2
            n_checked += 1
            per[name] = per.get(name, 0) + 1
            if lhs != rhs:
                bad.append([name, str(a), str(c), n, lhs, rhs])
    rep = Report(
        "twist-identity", None, {"trials_per_surface": P.twist_trials, "n_max": P.twist_n, "seed": seed},
        {"W": {k: v for k, v in P.twist_W}}, FAIL if bad else PASS, bad[:20],
        {"checked": n_checked, "per_surface": per, "mismatches": len(bad)},
    )
    return Outcome(rep)


# --- 3: Lipschitz projection -------------------------------------------------------------

def random_path(U, rng: random.Random, length: int):
    """Random walk without repeated vertices; may stop early at a cul-de-sac."""
    v = rng.randrange(len(U))
    seq = [v]
    for _ in range(length):
        options = [w for w in U.nbrs[seq[-1]] if w not in seq]
        if not options:
            break
        seq.append(rng.choice(sorted(options)))
    return [U.curves[k] for k in seq]


def lipschitz(P: Profile, seed: int, surface: str = "0,5") -> Outcome:
    """d_Z(a_0, a_N) <= 2N along random paths, for every Z cut by all vertices."""
    S = _s(surface)
    rng = random.Random(seed)
    U = universe(S, P.lipschitz_W)
    subs = enumerate_subsurfaces(S, P.lipschitz_W_sub)
    bad, slack, checked = [], [], 0
    for _ in range(P.lipschitz_trials):
        path = random_path(U, rng, rng.randint(1, P.path_max))
        N = len(path) - 1
        if N == 0:
            continue
        for Z in _cut_by_all(path, subs):
            v = dZ(path[0], path[-1], Z)
            checked += 1
            slack.append(2 * N - v)
            if v > 2 * N:
                bad.append({"path": [str(c) for c in path], "subsurface": str(Z), "dZ": v, "N": N})
    rep = Report(
        "lipschitz", S, {"trials": P.lipschitz_trials, "path_max": P.path_max, "seed": seed},
        {"W": P.lipschitz_W, "W_sub": P.lipschitz_W_sub}, FAIL if bad else PASS, bad[:20],
        {"pairs": checked, "violations": len(bad), "min_slack": min(slack, default=0)},
    )
    return Outcome(rep, {"lipschitz_slack": histogram_csv(slack)})


# --- 4: elementary moves -------------------------------------------------------------------

def elementary_bound(P: Profile, seed: int, surface: str = "0,5", bound: int = 4) -> Outcome:
    S = _s(surface)
    rng = random.Random(seed)
    subs = enumerate_subsurfaces(S, P.marking_W_sub)
    bad, values = [], []
    moves = skipped = 0
    for _ in range(P.marking_trials):
        m = random_marking(S, rng, P.marking_W)
        generated = elementary_moves(m, P.marking_W)
        skipped += 3 * len(m.base) - len(generated)
        for mv, m2 in sorted(generated.items()):
            moves += 1
            for Z in subs:
                if marking_cuts(m, Z) and marking_cuts(m2, Z):
                    v = marking_dZ(m, m2, Z)
                    values.append(v)
                    if v > bound:
                        bad.append({"marking": str(m), "move": mv.to_json(), "subsurface": str(Z), "dZ": v})
    rep = Report(
        "elementary-moves", S, {"trials": P.marking_trials, "bound": bound, "seed": seed},
        {"W": P.marking_W, "W_sub": P.marking_W_sub}, FAIL if bad else PASS, bad[:20],
        {
            "moves": moves,
            "moves_beyond_W": skipped,
            "pairs": len(values),
            "max_dZ": max(values, default=0),
            "violations": len(bad),
        },
    )
    return Outcome(rep, {"elementary_dZ": histogram_csv(values)})


# --- 5: no dead ends -----------------------------------------------------------------------

def dead_ends(P: Profile, seed: int = 0, surface: str = "0,5") -> Outcome:
    S = _s(surface)
    z = Curve.parse(S, "ab")
    parts = [no_dead_ends_check(z, r, P.dead_W, P.dead_W_outer) for r in range(P.dead_r + 1)]
    F = _s("1,1")
    fz = curve_of_slope(F, Slope(0, 1))
    parts += [no_dead_ends_check(fz, r, P.farey_dead_bound) for r in range(P.farey_dead_r + 1)]
    verdict = combine(p.verdict for p in parts)
    rep = Report(
        "dead-ends", S, {"center": "ab", "r_max": P.dead_r, "farey_r_max": P.farey_dead_r},
        {"W": P.dead_W, "W_outer": P.dead_W_outer, "farey_bound": P.farey_dead_bound}, verdict,
        [w for p in parts for w in (p.witnesses if p.verdict != PASS else [])][:20],
        {"parts": [{"surface": str(p.surface), "r": p.parameters["r"], "verdict": p.verdict, **p.metrics} for p in parts]},
        "; ".join(p.diagnosis for p in parts if p.diagnosis and p.verdict != PASS),
    )
    return Outcome(rep)


# --- 6: shell connectivity ---------------------------------------------------------------------

def shell(P: Profile, seed: int, surface: str = "0,5") -> Outcome:
    S = _s(surface)
    slim = slimness_sample(S, P.slim_W, P.slim_trials, seed)
    d = max(slim.delta, 1)
    rep = shell_connectivity(Curve.parse(S, "ab"), P.shell_r, d, P.shell_W)
    rep.parameters.update({"delta_est": slim.delta, "slim_trials": P.slim_trials, "seed": seed})
    rep.truncation["slim_W"] = P.slim_W
    return Outcome(rep, {"slimness": histogram_csv(slim.defects)})


# --- 7: bracelets ---------------------------------------------------------------------------

def bracelets(P: Profile, seed: int = 0) -> Outcome:
    parts = []
    for name, word, mode, W_bound in P.bracelets:
        S = _s(name)
        parts.append(bracelet_report(Curve.parse(S, word), mode, W_bound))
    rep = Report(
        "bracelet", None, {"cases": [list(x) for x in P.bracelets]}, {"W": [x[3] for x in P.bracelets]},
        combine(p.verdict for p in parts),
        [{"surface": str(p.surface), "witness": p.witnesses} for p in parts],
        {"parts": [{"surface": str(p.surface), "verdict": p.verdict, **p.metrics} for p in parts]},
        "; ".join(p.diagnosis for p in parts if p.diagnosis),
    )
    return Outcome(rep)


# --- 8: braid characterization -----------------------------------------------------------------

def braid_characterization(P: Profile, seed: int = 0) -> Outcome:
    parts = [characterization_scan(_s(name), W_bound, P.braid_max_i) for name, W_bound in P.braid]
    rep = Report(
        "braid-characterization", None, {"max_i": P.braid_max_i, "surfaces": [x[0] for x in P.braid]},
        {"W": [x[1] for x in P.braid]}, combine(p.verdict for p in parts),
        [w for p in parts for w in p.witnesses][:20],
        {"parts": [{"surface": str(p.surface), "verdict": p.verdict, **p.metrics} for p in parts]},
    )
    return Outcome(rep)


# --- 9: bounded geodesic image ---------------------------------------------------------------

def bgi_sample(P: Profile, seed: int, surface: str = "0,5") -> Outcome:
    """Largest d_Z over fully cut Z along sampled geodesics, rerun at W + step."""
    S = _s(surface)
    rng = random.Random(seed)
    U = universe(S, P.bgi_W)
    comp = [k for k, d in enumerate(U.distances(U.curves[0])) if d >= 0]
    pairs = []
    while len(pairs) < P.bgi_samples:
        a, b = rng.choice(comp), rng.choice(comp)
        if a != b:
            pairs.append((U.curves[a], U.curves[b]))
    first = [bgi_scan(a, b, P.bgi_W, P.bgi_W_sub).metrics["max_dZ"] for a, b in pairs]
    W2, S2 = P.bgi_W + P.bgi_step, P.bgi_W_sub + P.bgi_step
    second = [bgi_scan(a, b, W2, S2).metrics["max_dZ"] for a, b in pairs]
    m1, m2 = max(first, default=0), max(second, default=0)
    verdict = PASS if m2 <= m1 else INCONCLUSIVE
    rep = Report(
        "bgi", S, {"samples": P.bgi_samples, "seed": seed},
        {"W": P.bgi_W, "W_sub": P.bgi_W_sub, "rerun_W": W2, "rerun_W_sub": S2}, verdict,
        [], {"max_dZ": m1, "rerun_max_dZ": m2, "geodesics": len(pairs)},
        "" if verdict == PASS else f"the maximum grew from {m1} to {m2} on the rerun",
    )
    return Outcome(rep, {"bgi_max_dZ": histogram_csv(first), "bgi_max_dZ_rerun": histogram_csv(second)})


BATTERY = {
    "farey-oracle": farey_oracle,
    "twist-identity": twist_identity,
    "lipschitz": lipschitz,
    "elementary-moves": elementary_bound,
    "dead-ends": dead_ends,
    "shell-check": shell,
    "bracelet": bracelets,
    "braid-characterization": braid_characterization,
    "bgi": bgi_sample,
}


def write_outcome(out: Outcome, outdir: Path, name: str) -> list[Path]:
    paths = [outdir / f"{name}.json"]
    write_atomic(paths[0], out.report.dumps())
    for key, text in sorted(out.histograms.items()):
        p = outdir / f"{key}.csv"
        write_atomic(p, text)
        paths.append(p)
    return paths


ON_SURFACE = frozenset({"lipschitz", "elementary-moves", "dead-ends", "shell-check", "bgi"})


def suite(profile: str, seed: int, outdir: str | Path, surface: str = "0,5", only=None, log=print) -> Report:
    """Run the battery, write one report per check plus a summary, return the summary."""
    P = PROFILES[profile]
    outdir = Path(outdir)
    lines = {}
    for name, fn in BATTERY.items():
        if only and name not in only:
            continue
        out = fn(P, seed, surface) if name in ON_SURFACE else fn(P, seed)
        write_outcome(out, outdir, name)
        lines[name] = out.report.verdict
        log(f"{name}: {out.report.verdict}")
    rep = Report(
        "suite", None, {"profile": profile, "seed": seed, "surface": surface, "profile_values": P.to_json()}, {},
        combine(lines.values()), [], {"checks": lines},
    )
    write_atomic(outdir / "suite.json", rep.dumps())
    return rep
