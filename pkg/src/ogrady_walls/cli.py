"""Command line: ``ogrady-walls {classify,cones,walls,bm}``.

Exit codes: 0 success, 1 usage error, 2 domain error.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .cones import movable_cone, nef_cone, square_zero_class
from .enumeration import DEFAULT_WINDOW, Window, enumerate_walls
from .errors import UnsupportedVector, WallsError
from .lattice import make_wall_lattice
from .mukai import MukaiVector, Surface, is_ogrady_type
from .report import classification_to_dict, curve_to_dict, dumps, frac_str, lattice_to_dict, load_walls, \
    walls_report
from .stab import SlicePoint, bm_ray, normal_form_twist, numerical_wall
from .svg import render
from .walls import DEFAULT_TS_SEARCH_BOUND, Kind, classify_wall

CONFIG_ENV = "OGRADY_WALLS_CONFIG"
FORMATS = ("json", "svg", "text")

VECTOR_HELP = ("Mukai vector as r,c,a meaning (r, cH, a): rank, coefficient of the "
               "polarization H (H^2 = 2d) and degree-four part")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    d: int = 1
    vector: MukaiVector = MukaiVector(2, 0, -2)
    window: Window = DEFAULT_WINDOW
    rank_bound: int = 4
    ts_search_bound: int = DEFAULT_TS_SEARCH_BOUND
    output_format: str = "text"
    out_path: str = "-"


def read_config(path: str) -> Dict[str, str]:
    """key=value lines; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _vector(text: str) -> MukaiVector:
    try:
        return MukaiVector.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a Mukai vector: {text!r} (expected r,c,a)")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


_CONFIG_TYPES = {
    "d": _positive_int, "v": _vector, "vector": _vector, "u_min": _rational, "u_max": _rational,
    "t_max": _rational, "rank_bound": _nonneg_int, "ts_search_bound": _positive_int,
    "format": str, "output_format": str, "out": str, "out_path": str,
}


def resolve_config(args) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    cfg = RunConfig()
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    values = {}
    if path:
        try:
            raw = read_config(path)
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc.strerror}")
        for k, text in raw.items():
            if k not in _CONFIG_TYPES:
                raise UsageError(f"unknown config key {k!r}")
            try:
                values[k] = _CONFIG_TYPES[k](text)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"config {k}: {exc}")
    for k in ("d", "v", "u_min", "u_max", "t_max", "rank_bound", "ts_search_bound", "format", "out"):
        val = getattr(args, k, None)
        if val is not None:
            values[k] = val
    win = cfg.window
    cfg = replace(
        cfg,
        d=values.get("d", cfg.d),
        vector=values.get("v", values.get("vector", cfg.vector)),
        window=Window(values.get("u_min", win.u_min), values.get("u_max", win.u_max),
                      values.get("t_max", win.t_max)),
        rank_bound=values.get("rank_bound", cfg.rank_bound),
        ts_search_bound=values.get("ts_search_bound", cfg.ts_search_bound),
        output_format=values.get("format", values.get("output_format", cfg.output_format)),
        out_path=values.get("out", values.get("out_path", cfg.out_path)),
    )
    if cfg.output_format not in FORMATS:
        raise UsageError(f"unknown format {cfg.output_format!r}; choose from {', '.join(FORMATS)}")
    return cfg


def _emit(text: str, path: str) -> None:
    if path in ("-", ""):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _triple(x: MukaiVector) -> str:
    return ",".join(str(e) for e in x)


def _check_vector(v: MukaiVector, d: int) -> None:
    if v.is_zero() or not is_ogrady_type(v, d):
        raise UnsupportedVector(f"{_triple(v)} is not of O'Grady type (v = 2 v_p, v_p^2 = 2) for d={d}")


# -- subcommands -------------------------------------------------------------

def cmd_classify(args, cfg: RunConfig) -> int:
    v, d = cfg.vector, cfg.d
    _check_vector(v, d)
    L = make_wall_lattice(v, args.u, d)
    wall = numerical_wall(v, args.u, d)
    res = classify_wall(L, v, wall, cfg.ts_search_bound)
    if cfg.output_format == "json":
        _emit(dumps({"v": list(v), "d": d, "curve": curve_to_dict(wall), "lattice": lattice_to_dict(L),
                     "classification": classification_to_dict(res)}), cfg.out_path)
        return 0
    lines = [
        f"v={_triple(v)} d={d}",
        f"lattice basis={_triple(L.basis[0])};{_triple(L.basis[1])} gram={[list(r) for r in L.gram]}",
        f"wall={wall}",
        f"kind={res.kind.value}",
        f"ts={'true' if res.totally_semistable else 'false'}",
    ]
    lines += [f"witness {lab} {_triple(w)}" for lab, w in res.witnesses]
    if not res.ts1_search_complete:
        lines.append(f"note: no TS1 class with basis coordinates up to {cfg.ts_search_bound}; "
                     "the scan is bounded")
    _emit("\n".join(lines) + "\n", cfg.out_path)
    return 0


def cone_report(d: int) -> dict:
    mov, nef = movable_cone(d), nef_cone(d)
    lag = square_zero_class(d)

    def pack(res):
        w = res.witness
        return {"low": str(res.ray_low), "high": str(res.ray_high), "case": res.case_tag,
                "witness": list(w) if w is not None else None,
                "witness_class": list(res.witness_class) if res.witness_class is not None else None,
                "notes": list(res.notes)}

    return {"d": d, "movable": pack(mov), "nef": pack(nef),
            "lagrangian_boundary": str(lag) if lag is not None else None}


def cmd_cones(args, cfg: RunConfig) -> int:
    rep = cone_report(cfg.d)
    if cfg.output_format == "json":
        _emit(dumps(rep), cfg.out_path)
        return 0
    lines = [f"d={cfg.d}"]
    for name, key in (("mov", "movable"), ("nef", "nef")):
        c = rep[key]
        line = f"{name} = <{c['low']}, {c['high']}>  case={c['case']}"
        if c["witness"] is not None:
            line += f"  witness={_triple(c['witness'])}"
        if c["witness_class"] is not None:
            line += f"  class={_triple(c['witness_class'])}"
        lines.append(line)
        lines += [f"  note: {n}" for n in c["notes"]]
    lag = rep["lagrangian_boundary"]
    lines.append(f"lagrangian-boundary: yes ({lag})" if lag else "lagrangian-boundary: no")
    _emit("\n".join(lines) + "\n", cfg.out_path)
    return 0


def _cones_for(v: MukaiVector, d: int):
    try:
        normal_form_twist(v, d)
    except UnsupportedVector:
        return None
    return movable_cone(d), nef_cone(d)


def cmd_walls(args, cfg: RunConfig) -> int:
    v, d, win = cfg.vector, cfg.d, cfg.window
    win.check()
    _check_vector(v, d)
    recs = enumerate_walls(v, d, win, cfg.rank_bound, cfg.ts_search_bound)
    if cfg.output_format == "json":
        text = dumps(walls_report(v, d, win, cfg.rank_bound, cfg.ts_search_bound, recs))
    elif cfg.output_format == "svg":
        title = f"walls of M({_triple(v)}) on a K3 of degree {2 * d}"
        text = render(recs, win, title, None if args.no_fan else _cones_for(v, d))
    else:
        lines = [f"v={_triple(v)} d={d} window=[{win.u_min}, {win.u_max}] t<={win.t_max} "
                 f"rank_bound={cfg.rank_bound}"]
        for r in recs:
            if r.classification.kind == Kind.NOT_A_WALL and not args.all:
                continue
            c = r.classification
            wit = " ".join(f"{lab}:{_triple(w)}" for lab, w in c.witnesses)
            lines.append(f"{r.curve}  kind={c.kind.value} ts={'true' if c.totally_semistable else 'false'}"
                         + (f"  {wit}" if wit else ""))
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out_path)
    return 0


def chamber_of(ns, d: int) -> str:
    """Where the ray a*H~ + b*B sits relative to the cones computed for d."""
    a, b = ns
    if a <= 0:
        return "outside the positive cone"
    slope = Fraction(-b) / a
    tag = ""
    if slope < 0:
        slope, tag = -slope, " (mirror image across H~)"
    nef, mov = nef_cone(d).ray_high.slope, movable_cone(d).ray_high.slope
    if slope == 0:
        where = "boundary ray H~ of mov and nef"
    elif slope < nef:
        where = "nef interior"
    elif slope == nef and nef != mov:
        where = "nef boundary"
    elif slope < mov:
        where = "mov interior, beyond the nef cone"
    elif slope == mov:
        where = "mov boundary"
    else:
        where = "outside mov"
    return where + tag


def cmd_bm(args, cfg: RunConfig) -> int:
    v, d = cfg.vector, cfg.d
    _check_vector(v, d)
    try:
        p = SlicePoint(args.u, args.t)
    except ValueError as exc:
        raise UsageError(str(exc))
    img = bm_ray(v, d, p)
    out = {"v": list(v), "d": d, "u": frac_str(p.u), "t": frac_str(p.t),
           "w_sigma": [frac_str(x) for x in img.w_sigma], "q": frac_str(img.q)}
    if img.ns_coords is not None:
        from .cones import ConeRay
        ray = ConeRay.normalized(*img.ns_coords)
        out["ns_coords"] = [frac_str(x) for x in img.ns_coords]
        out["ray"] = str(ray)
        out["chamber"] = chamber_of(img.ns_coords, d)
    if args.walls:
        try:
            with open(args.walls, encoding="utf-8") as fh:
                recs = load_walls(fh.read())
        except OSError as exc:
            raise WallsError(f"cannot read wall file {args.walls}: {exc.strerror}")
        inside = [str(r.curve) for r in recs
                  if r.classification.kind != Kind.NOT_A_WALL and r.curve.value(p.u, p.t) < 0]
        on = [str(r.curve) for r in recs
              if r.classification.kind != Kind.NOT_A_WALL and r.curve.contains(p)]
        out["slice_chamber"] = {"inside": inside, "on": on}
    if cfg.output_format == "json":
        _emit(dumps(out), cfg.out_path)
        return 0
    lines = [f"w_sigma=({', '.join(out['w_sigma'])})"]
    if "ray" in out:
        lines.append(f"ns_coords=({', '.join(out['ns_coords'])})")
        lines.append(f"ray={out['ray']}")
    lines.append(f"q={out['q']} ({'positive' if img.q > 0 else 'not positive'})")
    if "chamber" in out:
        lines.append(f"chamber: {out['chamber']}")
    if "slice_chamber" in out:
        sc = out["slice_chamber"]
        lines.append("inside walls: " + ("; ".join(sc["inside"]) or "none"))
        if sc["on"]:
            lines.append("on walls: " + "; ".join(sc["on"]))
    _emit("\n".join(lines) + "\n", cfg.out_path)
    return 0


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=_positive_int, help="H^2 = 2d (default 1)")
    common.add_argument("--format", choices=FORMATS, help="output format (default text)")
    common.add_argument("--out", help="output path, '-' for stdout")
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    common.add_argument("--ts-search-bound", type=_positive_int,
                        help=f"TS1 scan bound on basis coordinates (default {DEFAULT_TS_SEARCH_BOUND})")

    vec = argparse.ArgumentParser(add_help=False)
    vec.add_argument("--v", type=_vector, help=VECTOR_HELP + "; default 2,0,-2")

    p = _Parser(prog="ogrady-walls", description="Walls and cones for O'Grady-type moduli on K3 surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common, vec], help="classify the wall of sat{v, u}")
    c.add_argument("--u", type=_vector, required=True, help="second generator, " + VECTOR_HELP)

    sub.add_parser("cones", parents=[common], help="movable and nef cones of M(2,0,-2)")

    w = sub.add_parser("walls", parents=[common, vec], help="enumerate walls meeting a window")
    w.add_argument("--u-min", type=_rational)
    w.add_argument("--u-max", type=_rational)
    w.add_argument("--t-max", type=_rational)
    w.add_argument("--rank-bound", type=_nonneg_int)
    w.add_argument("--all", action="store_true", help="text format: also list curves that are not walls")
    w.add_argument("--no-fan", action="store_true", help="svg format: omit the cone panel")

    b = sub.add_parser("bm", parents=[common, vec], help="Bayer-Macri image of a slice point")
    b.add_argument("--u", type=_rational, required=True)
    b.add_argument("--t", type=_rational, required=True)
    b.add_argument("--walls", help="JSON wall report used to locate the point in the slice")
    return p


COMMANDS = {"classify": cmd_classify, "cones": cmd_cones, "walls": cmd_walls, "bm": cmd_bm}


def _glue_negatives(argv: List[str]) -> List[str]:
    # argparse reads "--u -1/2" as two options; rewrite it as "--u=-1/2"
    out: List[str] = []
    for tok in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and len(tok) > 1 and tok[0] == "-" and (tok[1].isdigit() or tok[1] == ".")):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negatives(sys.argv[1:] if argv is None else list(argv)))
    try:
        cfg = resolve_config(args)
        Surface(cfg.d)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"ogrady-walls: error: {exc}", file=sys.stderr)
        return 1
    except WallsError as exc:
        print(f"ogrady-walls: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ogrady-walls: cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
