"""Bounded enumeration of the walls for v that meet a window of the (s, t)-slice."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, NamedTuple, Tuple

from .errors import NotHyperbolic, NotRankTwo, WindowEmpty
from .lattice import WallLattice, make_wall_lattice
from .mukai import MukaiVector, SurfaceLike, as_surface, is_ogrady_type
from .stab import CIRCLE, VERTICAL, WallCurve, numerical_wall
from .walls import DEFAULT_TS_SEARCH_BOUND, WallClassification, classify_wall


class Window(NamedTuple):
    u_min: Fraction
    u_max: Fraction
    t_max: Fraction

    @classmethod
    def of(cls, u_min, u_max, t_max) -> Window:
        return cls(Fraction(u_min), Fraction(u_max), Fraction(t_max))

    def shifted(self, m) -> Window:
        return Window(self.u_min + m, self.u_max + m, self.t_max)

    def check(self) -> None:
        if not (self.u_min < self.u_max and self.t_max > 0):
            raise WindowEmpty(f"window {tuple(str(x) for x in self)} is empty")


DEFAULT_WINDOW = Window.of(-2, 1, Fraction(3, 2))


@dataclass(frozen=True)
class WallRecord:
    curve: WallCurve
    lattice: WallLattice
    classification: WallClassification


def meets_window(wall: WallCurve, win: Window) -> bool:
    """Whether some point with u_min <= u <= u_max, 0 < t <= t_max lies on the curve."""
    if wall.shape == VERTICAL:
        return win.u_min <= wall.u0 <= win.u_max
    if wall.shape != CIRCLE:
        return False
    c = wall.center_u
    nearest = min(max(c, win.u_min), win.u_max)
    if wall.height_sq(nearest) <= 0:
        return False
    lo, hi = wall.height_sq(win.u_min), wall.height_sq(win.u_max)
    if lo <= 0 or hi <= 0:
        # the window contains a foot of the semicircle
        return True
    return min(lo, hi) <= win.t_max ** 2


def candidate_classes(v: MukaiVector, S: SurfaceLike, win: Window, rank_bound: int):
    """Spherical and isotropic classes of rank 0..rank_bound whose slope c/r
    lies within one unit of the window.  Every witness of the taxonomy has
    square -2 or 0, so these generate every wall lattice with a witness of
    bounded rank."""
    d = as_surface(S).d
    yield MukaiVector(0, 0, 1)
    for r in range(1, rank_bound + 1):
        c_lo = ceil((win.u_min - 1) * r)
        c_hi = floor((win.u_max + 1) * r)
        for c in range(c_lo, c_hi + 1):
            for sq in (-2, 0):
                num = d * c * c - sq // 2  # r*a = d c^2 - sq/2
                if num % r == 0:
                    yield MukaiVector(r, c, num // r)


def enumerate_walls(v: MukaiVector, S: SurfaceLike, window: Window = DEFAULT_WINDOW,
                    rank_bound: int = 4,
                    ts_search_bound: int = DEFAULT_TS_SEARCH_BOUND) -> List[WallRecord]:
    S = as_surface(S)
    window = Window.of(*window)
    window.check()
    if not is_ogrady_type(v, S):
        raise ValueError(f"{v} is not of O'Grady type for d={S.d}")
    seen: Dict[Tuple[int, int, int], WallRecord] = {}
    for w in candidate_classes(v, S, window, rank_bound):
        curve = numerical_wall(v, w, S)
        if not meets_window(curve, window):
            continue
        try:
            L = make_wall_lattice(v, w, S)
        except (NotRankTwo, NotHyperbolic):
            continue
        if L.normal in seen:
            continue
        seen[L.normal] = WallRecord(curve, L, classify_wall(L, v, curve, ts_search_bound))
    return sorted(seen.values(), key=lambda rec: rec.curve.sort_key())
