"""JSON reports.  Rationals travel as "p/q" strings so nothing is rounded."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .enumeration import Window, WallRecord
from .lattice import WallLattice
from .mukai import MukaiVector, Surface
from .stab import WallCurve
from .walls import Kind, WallClassification

SCHEMA = 1


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def curve_to_dict(c: WallCurve) -> Dict[str, Any]:
    out: Dict[str, Any] = {"alpha": c.alpha, "beta": c.beta, "gamma": c.gamma, "shape": c.shape}
    if c.center_u is not None:
        out["center_u"] = frac_str(c.center_u)
    if c.radius_sq is not None:
        out["radius_sq"] = frac_str(c.radius_sq)
    return out


def curve_from_dict(obj) -> WallCurve:
    c = WallCurve(int(obj["alpha"]), int(obj["beta"]), int(obj["gamma"]))
    if c.shape != obj["shape"]:
        raise ValueError(f"shape mismatch: stored {obj['shape']}, recomputed {c.shape}")
    return c


def lattice_to_dict(L: WallLattice) -> Dict[str, Any]:
    return {
        "basis": [list(e) for e in L.basis],
        "gram": [list(row) for row in L.gram],
        "v_coords": list(L.v_coords),
        "d": L.surface.d,
    }


def lattice_from_dict(obj) -> WallLattice:
    e1, e2 = (MukaiVector(*map(int, e)) for e in obj["basis"])
    (g11, g12), (g21, g22) = obj["gram"]
    return WallLattice((e1, e2), ((int(g11), int(g12)), (int(g21), int(g22))),
                       tuple(int(x) for x in obj["v_coords"]), Surface(int(obj["d"])))


def classification_to_dict(c: WallClassification) -> Dict[str, Any]:
    return {
        "kind": c.kind.value,
        "totally_semistable": c.totally_semistable,
        "ts1_search_complete": c.ts1_search_complete,
        "witnesses": [{"label": lab, "class": list(w)} for lab, w in c.witnesses],
    }


def classification_from_dict(obj) -> WallClassification:
    wit = tuple((w["label"], MukaiVector(*map(int, w["class"]))) for w in obj["witnesses"])
    return WallClassification(bool(obj["totally_semistable"]), Kind(obj["kind"]), wit,
                              bool(obj["ts1_search_complete"]))


def record_to_dict(rec: WallRecord) -> Dict[str, Any]:
    return {
        "curve": curve_to_dict(rec.curve),
        "lattice": lattice_to_dict(rec.lattice),
        "classification": classification_to_dict(rec.classification),
    }


def record_from_dict(obj) -> WallRecord:
    return WallRecord(curve_from_dict(obj["curve"]), lattice_from_dict(obj["lattice"]),
                      classification_from_dict(obj["classification"]))


def header(v: MukaiVector, d: int, window: Window, rank_bound: int, ts_search_bound: int) -> Dict[str, Any]:
    from . import __version__
    return {
        "schema": SCHEMA,
        "v": list(v),
        "d": d,
        "window": {"u_min": frac_str(window.u_min), "u_max": frac_str(window.u_max),
                   "t_max": frac_str(window.t_max)},
        "bounds": {"rank_bound": rank_bound, "ts_search_bound": ts_search_bound},
        "tool_version": __version__,
    }


def walls_report(v, d, window, rank_bound, ts_search_bound, records: Sequence[WallRecord]) -> Dict[str, Any]:
    return {"header": header(v, d, window, rank_bound, ts_search_bound),
            "walls": [record_to_dict(r) for r in records]}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_walls(text: str) -> List[WallRecord]:
    obj = json.loads(text)
    schema = obj.get("header", {}).get("schema")
    if schema != SCHEMA:
        raise ValueError(f"unsupported report schema {schema!r}")
    return [record_from_dict(r) for r in obj["walls"]]
