"""Command-line front end.

Subcommands: classify, atlas, periods, word, orbit, collision, verify,
enumerate.  Exit status: 0 on success, 1 on a verification or computation
failure, 2 on usage errors.  All numbers come from the library calls; the
CLI only formats them.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import export, orbits, periods
from .emmap import Region, classify, critical_data, region_boundaries, region_menu
from .errors import TwoCenterError
from .model import Params
from .sturmian import enumerate_syzygy_words

REGIONS = {"S": Region.S, "S'": Region.SPRIME, "Sprime": Region.SPRIME,
           "L": Region.L, "P": Region.P}

DEFAULT_W_SUITE = "1,2,3,1/2,2/3,3/2,5/2"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _region(text: str) -> Region:
    if text not in REGIONS:
        raise argparse.ArgumentTypeError(
            f"unknown region {text!r} (choose from S, S', L, P)")
    return REGIONS[text]


def _grid(text: str):
    """Parse GMIN:GMAX:HMIN:HMAX:RES with RES either N or NGxNH."""
    parts = text.split(":")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(
            "grid must be GMIN:GMAX:HMIN:HMAX:RES (RES = N or NGxNH)")
    gmin, gmax, hmin, hmax = (float(v) for v in parts[:4])
    res = parts[4]
    if "x" in res:
        ng, nh = (int(v) for v in res.split("x"))
    else:
        ng = nh = int(res)
    if ng < 2 or nh < 2:
        raise argparse.ArgumentTypeError("grid resolutions must be at least 2")
    return gmin, gmax, hmin, hmax, ng, nh


def _formats(text: str):
    fmts = [f.strip() for f in text.split(",") if f.strip()]
    bad = set(fmts) - {"csv", "json", "svg", "png"}
    if bad:
        raise argparse.ArgumentTypeError(f"unknown formats: {sorted(bad)}")
    return fmts


def _add_common(sub, g=False, g_required=False, w=False, region=False,
                out=False, fmt=None, seed=False):
    sub.add_argument("--m1", type=float, default=0.5, help="mass at (-1, 0)")
    sub.add_argument("--m2", type=float, default=0.5, help="mass at (+1, 0)")
    sub.add_argument("--h", "--energy", dest="h", type=float, required=True,
                     help="energy (negative)")
    if g:
        sub.add_argument("--g", type=float, required=g_required,
                         help="separation constant")
    if w:
        sub.add_argument("--W", type=_fraction, help="rotation number p/q")
    if region:
        sub.add_argument("--region", type=_region, help="region type (S, S', L, P)")
    if out:
        sub.add_argument("--out", help="output path (or base path)")
    if fmt is not None:
        sub.add_argument("--format", type=_formats, default=_formats(fmt),
                         help=f"comma-separated outputs (default {fmt!r})")
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twocenter",
        description="Symbolic dynamics of the planar two-fixed-center problem.")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("classify", help="region type at one (g, h) point")
    _add_common(s, g=True, g_required=True, fmt="")
    s.set_defaults(func=cmd_classify)

    s = subs.add_parser("atlas", help="CSV sweep of the integral-map plane")
    _add_common(s, out=True, fmt="csv")
    s.add_argument("--grid", type=_grid, default=None,
                   help="GMIN:GMAX:HMIN:HMAX:RES (RES = N or NGxNH)")
    s.add_argument("--values", choices=("periods", "regions"), default="periods",
                   help="period columns or region/torus-count columns")
    s.set_defaults(func=cmd_atlas)

    s = subs.add_parser("periods", help="periods and rotation number at (g, h)")
    _add_common(s, g=True, g_required=True, fmt="")
    s.set_defaults(func=cmd_periods)

    s = subs.add_parser("word", help="predicted syzygy word of a rational torus")
    _add_common(s, g=True, w=True, region=True)
    s.add_argument("--torus", type=int, default=0)
    s.set_defaults(func=cmd_word)

    s = subs.add_parser("orbit", help="integrate a periodic orbit and export it")
    _add_common(s, g=True, w=True, region=True, out=True, fmt="csv,svg", seed=True)
    s.add_argument("--phases", help="launch phases 'a,b' in [0,1)")
    s.add_argument("--torus", type=int, default=0)
    s.set_defaults(func=cmd_orbit)

    s = subs.add_parser("collision", help="the two collision-collision orbits")
    _add_common(s, g=True, w=True, region=True, out=True, fmt="csv,svg")
    s.add_argument("--torus", type=int, default=0)
    s.set_defaults(func=cmd_collision)

    s = subs.add_parser("verify", help="integrate tori and check the word theory")
    _add_common(s, region=True, out=True, seed=True)
    s.add_argument("--W", default=DEFAULT_W_SUITE,
                   help=f"comma list of rationals (default {DEFAULT_W_SUITE})")
    s.add_argument("--phases", type=int, default=8, help="launch phases per torus")
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("enumerate", help="catalog of cyclic syzygy words")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--format", type=_formats, default=[], help="optionally 'json'")
    s.add_argument("--out", help="output path (default stdout)")
    s.set_defaults(func=cmd_enumerate)
    return parser


def _params(args) -> Params:
    return Params(args.m1, args.m2, args.h)


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    p = _params(args)
    region = classify(args.g, p)
    c = critical_data(p)
    bounds = region_boundaries(p)
    payload = {
        "g": args.g, "h": args.h, "region": region.value,
        "torus_count": region.torus_count,
        "critical": {
            "h_star": c.h_star, "h_lambda": c.h_lambda, "h_nu": c.h_nu,
            "kappa_pp": c.kappa_pp, "kappa_mp": c.kappa_mp,
            "kappa_mm": c.kappa_mm, "chi_p": c.chi_p, "chi_m": c.chi_m,
        },
        "boundaries": [{"g": v, "curve": name} for v, name in bounds],
        "menu": sorted(r.value for r in region_menu(p)),
    }
    if "json" in args.format:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"region {region.value} ({region.torus_count} torus/tori) "
              f"at g={args.g}, h={args.h}")
        print("boundaries: " + ", ".join(f"{name} @ g={v:.12g}" for v, name in bounds))
        print("menu at this energy: " + " ".join(payload["menu"]))
    return 0


def _default_grid(p: Params):
    c = critical_data(p)
    return (c.kappa_mm - 0.2, max(c.kappa_pp, c.chi_p) + 0.2, 1.4 * c.h_star,
            -0.05, 61, 41)


def cmd_atlas(args) -> int:
    p = _params(args)
    gmin, gmax, hmin, hmax, ng, nh = args.grid or _default_grid(p)
    rows = periods.torus_grid(args.m1, args.m2,
                              np.linspace(gmin, gmax, ng),
                              np.linspace(hmin, hmax, nh))
    if args.values == "periods":
        columns = export.ATLAS_PERIOD_COLUMNS
    else:
        columns = export.ATLAS_REGION_COLUMNS
    out = args.out or "atlas.csv"
    if "csv" in args.format:
        export.write_atlas_csv(rows, out, columns)
        print(f"wrote {out}")
    if "png" in args.format:
        from .figures import save_atlas_figure

        png = _with_suffix(out, ".png")
        save_atlas_figure(rows, png, title=f"m1={args.m1} m2={args.m2}")
        print(f"wrote {png}")
    return 0


def cmd_periods(args) -> int:
    p = _params(args)
    td = periods.rotation_number(args.g, p)
    payload = {"g": td.g, "h": td.h, "region": td.region.value,
               "T_lambda": td.T_lambda, "T_nu": td.T_nu, "W": td.W,
               "lambda_branch": td.lambda_branch, "nu_branch": td.nu_branch}
    if "json" in args.format:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"region {td.region.value}: T_lambda={td.T_lambda:.12g} "
              f"({td.lambda_branch}), T_nu={td.T_nu:.12g} ({td.nu_branch}), "
              f"W={td.W:.12g}")
    return 0


def _resolve_g(args, p: Params):
    if (args.g is None) == (args.W is None):
        raise SystemExit(2)
    if args.g is not None:
        return args.g, None
    if args.region is None:
        raise SystemExit(2)
    return periods.solve_g(args.region, float(args.W), p), args.W


def cmd_word(args) -> int:
    p = _params(args)
    g, w = _resolve_g(args, p)
    if w is None:
        wd = periods.rotation_number(g, p).W
        w = Fraction(wd).limit_denominator(1000)
        if abs(float(w) - wd) > 1e-9:
            raise ValueError(f"W={wd} at g={g} is not recognizably rational")
    word = orbits.predicted_word(g, p, w, args.torus)
    print(word.symbols)
    return 0


def _with_suffix(path: str, suffix: str) -> str:
    base = path
    for ext in (".csv", ".svg", ".json", ".png"):
        if base.endswith(ext):
            base = base[: -len(ext)]
            break
    return base + suffix


def _export_trajectory(traj, out_base: str, formats) -> None:
    if "csv" in formats:
        path = _with_suffix(out_base, ".csv")
        export.write_trajectory_csv(traj, path)
        print(f"wrote {path}")
    if "svg" in formats:
        path = _with_suffix(out_base, ".svg")
        export.write_trajectory_svg(traj, path)
        print(f"wrote {path}")
    if "png" in formats:
        from .figures import save_orbit_figure

        path = _with_suffix(out_base, ".png")
        save_orbit_figure(traj, path)
        print(f"wrote {path}")


def cmd_orbit(args) -> int:
    p = _params(args)
    g, w = _resolve_g(args, p)
    if args.phases:
        a, b = (float(v) for v in args.phases.split(","))
        phase = (a, b)
    else:
        rng = np.random.default_rng(args.seed)
        phase = tuple(rng.uniform(0.05, 0.95, 2))
    spec = orbits.OrbitSpec(g=g, p_over_q=w, region=args.region, phase=phase,
                            torus=args.torus)
    traj = orbits.periodic_orbit(spec, p)
    word = orbits.syzygy_word(traj)
    if args.out:
        _export_trajectory(traj, args.out, args.format)
    print(word.symbols)
    return 0


def cmd_collision(args) -> int:
    p = _params(args)
    g, w = _resolve_g(args, p)
    a, b = orbits.collision_orbits(g, p, w, torus=args.torus)
    for i, traj in enumerate((a, b), start=1):
        res = orbits.collision_endpoint_residual(traj)
        word = orbits.syzygy_word(traj)
        print(f"orbit {i}: word={word.symbols} endpoint_residual={res:.3e}")
        if args.out:
            _export_trajectory(traj, _with_suffix(args.out, f"_{i}"), args.format)
    return 0


def cmd_verify(args) -> int:
    p = _params(args)
    w_list = [Fraction(tok) for tok in str(args.W).split(",") if tok]
    report = orbits.verify_theorems(p, w_list, phases_per_torus=args.phases,
                                    seed=args.seed, region=args.region)
    text = export.write_report_json(report, args.out)
    if args.out:
        print(f"wrote {args.out}")
    else:
        print(text)
    print(f"verification {'PASS' if report['pass'] else 'FAIL'}")
    return 0 if report["pass"] else 1


def cmd_enumerate(args) -> int:
    words = enumerate_syzygy_words(args.max_len)
    if "json" in args.format:
        text = json.dumps([w.symbols for w in words])
    else:
        text = "\n".join(w.symbols for w in words)
    _emit(text, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TwoCenterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
