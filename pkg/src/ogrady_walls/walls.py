"""Wall taxonomy for O'Grady-type vectors v = 2*v_p, v_p^2 = 2.

Effectivity is decided exactly: a point on a circular wall has coordinates in
Q(sqrt(R)) with R = radius^2, and Re(Z(u) * conj Z(v)) lands in that field,
so its sign is computed without floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Sequence, Tuple

import numpy as np

from .errors import AmbiguousSign, UnrepresentedWall, UnsupportedVector
from .lattice import WallLattice, check_hyperbolic
from .mukai import MukaiVector, is_ogrady_type, pairing, square
from .quadratic import ClassQuery, solve_constrained_classes
from .stab import CIRCLE, VERTICAL, WallCurve

DEFAULT_TS_SEARCH_BOUND = 10 ** 4

# Evaluation points along a wall, tried in order when the top is a hole.
_CIRCLE_PARAMS = (Fraction(0), Fraction(1, 10), Fraction(-1, 10), Fraction(1, 100),
                  Fraction(-1, 100), Fraction(1, 3), Fraction(-1, 3))
_VERTICAL_HEIGHTS = (Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4))


class Kind(str, Enum):
    DIVISORIAL_BN = "DivisorialBN"
    DIVISORIAL_BN_LGU = "DivisorialBNandLGU"
    FLOPPING = "Flopping"
    FAKE = "Fake"
    NOT_A_WALL = "NotAWall"

    @property
    def is_divisorial(self) -> bool:
        return self in (Kind.DIVISORIAL_BN, Kind.DIVISORIAL_BN_LGU)


# -- arithmetic in Q(sqrt R) --------------------------------------------------

def _qs_mul(x, y, R):
    return (x[0] * y[0] + x[1] * y[1] * R, x[0] * y[1] + x[1] * y[0])


def _qs_add(*xs):
    return (sum(x[0] for x in xs), sum(x[1] for x in xs))


def _qs_scale(k, x):
    return (k * x[0], k * x[1])


def _qs_sign(x, R) -> int:
    """Sign of a + b*sqrt(R), R >= 0 rational."""
    a, b = x
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or R == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 R
    diff = a * a - b * b * R
    if diff == 0:
        return 0
    return sa if diff > 0 else sb


@dataclass(frozen=True)
class WallPoint:
    """A point on a wall: u = X0 + X1*sqrt(R), t = Y0 + Y1*sqrt(R)."""

    X: Tuple[Fraction, Fraction]
    Y: Tuple[Fraction, Fraction]
    R: Fraction

    def approx(self) -> Tuple[float, float]:
        r = float(self.R) ** 0.5
        return (float(self.X[0]) + float(self.X[1]) * r, float(self.Y[0]) + float(self.Y[1]) * r)


def wall_point(wall: WallCurve, attempt: int = 0, toward: int = 1) -> WallPoint:
    """attempt=0 is the top of a circle (or height 2 on a vertical line).

    Later attempts move off the top, first in the direction ``toward``
    (+1: increasing u), then the other way.
    """
    if wall.shape == CIRCLE:
        tau = _CIRCLE_PARAMS[attempt] * toward
        cos = 2 * tau / (1 + tau * tau)
        sin = (1 - tau * tau) / (1 + tau * tau)
        return WallPoint((wall.center_u, cos), (Fraction(0), sin), wall.radius_sq)
    if wall.shape == VERTICAL:
        return WallPoint((wall.u0, Fraction(0)), (_VERTICAL_HEIGHTS[attempt], Fraction(0)), Fraction(0))
    raise UnrepresentedWall(f"wall curve {wall} does not meet the upper half-plane")


def n_wall_points(wall: WallCurve) -> int:
    return len(_CIRCLE_PARAMS) if wall.shape == CIRCLE else len(_VERTICAL_HEIGHTS)


def _charge(x: MukaiVector, d: int, P: WallPoint):
    R = P.R
    X, Y = P.X, P.Y
    X2 = _qs_mul(X, X, R)
    Y2 = _qs_mul(Y, Y, R)
    XY = _qs_mul(X, Y, R)
    re = _qs_add(_qs_scale(-d * x.r, _qs_add(X2, _qs_scale(-1, Y2))),
                 _qs_scale(2 * d * x.c, X), (Fraction(-x.a), Fraction(0)))
    im = _qs_add(_qs_scale(-2 * d * x.r, XY), _qs_scale(2 * d * x.c, Y))
    return re, im


def re_ratio_sign(u: MukaiVector, v: MukaiVector, d: int, P: WallPoint) -> int:
    """Sign of Re(Z(u)/Z(v)) at P, i.e. the sign of Re(Z(u) * conj Z(v))."""
    ru, iu = _charge(u, d, P)
    rv, iv = _charge(v, d, P)
    return _qs_sign(_qs_add(_qs_mul(ru, rv, P.R), _qs_mul(iu, iv, P.R)), P.R)


@dataclass(frozen=True)
class ConeMembership:
    positive: bool
    effective: bool


def default_direction(v: MukaiVector, wall: WallCurve) -> int:
    """Perturb towards the vertical wall u = c/r of v, so that the choice of
    arc commutes with twists and with the mirror (r, c, a) -> (r, -c, a)."""
    if wall.shape != CIRCLE or v.r == 0:
        return 1
    return 1 if wall.center_u <= Fraction(v.c, v.r) else -1


def effectivity_sign(L: WallLattice, v: MukaiVector, u: MukaiVector, wall: WallCurve,
                     attempt: int = 0) -> ConeMembership:
    """Positive / effective cone membership of u, evaluated at sigma_0 on the wall.

    Raises AmbiguousSign when Z(u) vanishes at sigma_0; retry with attempt+1.
    """
    L.coords(u)
    S = L.surface
    P = wall_point(wall, attempt, default_direction(v, wall))
    sign = re_ratio_sign(u, v, S.d, P)
    if sign == 0:
        raise AmbiguousSign(f"Re Z({u})/Z({v}) = 0 at {P.approx()}")
    usq = square(u, S)
    return ConeMembership(positive=usq >= 0 and pairing(v, u, S) > 0,
                          effective=usq >= -2 and sign > 0)


@dataclass(frozen=True)
class WallClassification:
    totally_semistable: bool
    kind: Kind
    witnesses: Tuple[Tuple[str, MukaiVector], ...] = ()
    ts1_search_complete: bool = True  # False: bounded TS1 scan found nothing

    def witness(self, label: str) -> List[MukaiVector]:
        return [w for lab, w in self.witnesses if lab == label]

    @property
    def labels(self) -> List[str]:
        return sorted({lab for lab, _ in self.witnesses})


def v_perp_generator(L: WallLattice, v: MukaiVector) -> MukaiVector:
    """Primitive generator of v^perp inside L."""
    pv = L.coords(v)
    (g11, g12), (_, g22) = L.gram
    a = g11 * pv[0] + g12 * pv[1]
    b = g12 * pv[0] + g22 * pv[1]
    g = gcd(a, b)
    return L.element(b // g, -a // g)


def spherical_scan(L: WallLattice, bound: int) -> List[MukaiVector]:
    """Spherical classes x*e1 + y*e2 with |x|, |y| <= bound."""
    (g11, g12), (_, g22) = L.gram
    det = L.det
    out = []
    if g11 == 0:
        for y in range(-bound, bound + 1):
            if y and g12:
                num = -(g22 * y * y + 2)
                den = 2 * g12 * y
                if num % den == 0 and abs(num // den) <= bound:
                    out.append(L.element(num // den, y))
        return out
    # g11*x = -g12*y +- sqrt(-det*y^2 - 2*g11)
    ys = _square_candidates(-det, -2 * g11, bound)
    for y in ys:
        disc = -det * y * y - 2 * g11
        if disc < 0 or isqrt(disc) ** 2 != disc:
            continue
        s = isqrt(disc)
        for num in {-g12 * y + s, -g12 * y - s}:
            if num % g11 == 0 and abs(num // g11) <= bound:
                out.append(L.element(num // g11, y))
    return out


def _square_candidates(A: int, C: int, bound: int) -> Sequence[int]:
    """y in [-bound, bound] for which A*y^2 + C may be a perfect square."""
    if A * bound * bound + abs(C) < 2 ** 50:
        y = np.arange(-bound, bound + 1, dtype=np.int64)
        val = A * y * y + C
        ok = val >= 0
        root = np.rint(np.sqrt(np.where(ok, val, 0).astype(np.float64))).astype(np.int64)
        hit = ok & (np.abs(root * root - val) <= 2 * root + 1)
        return [int(t) for t in y[hit]]
    return range(-bound, bound + 1)


def _ordered(cands: List[MukaiVector], v, L, wall, attempt) -> List[MukaiVector]:
    """Effective classes first, then by size."""
    def key(x):
        eff = effectivity_sign(L, v, x, wall, attempt).effective
        return (not eff, abs(x.r) + abs(x.c) + abs(x.a), tuple(x))
    return sorted(cands, key=key)


MAX_TS1_WITNESSES = 8


def _classify_at(L, v, wall, search_bound, attempt) -> WallClassification:
    S = L.surface
    witnesses: List[Tuple[str, MukaiVector]] = []

    # BN: the generator of v^perp must be spherical
    g = v_perp_generator(L, v)
    bn = square(g, S) == -2
    if bn:
        if not effectivity_sign(L, v, g, wall, attempt).effective:
            g = -g
        witnesses.append(("BN", g))

    lgu = solve_constrained_classes(ClassQuery(L, 0, 2), v)
    if lgu and not bn:
        raise AssertionError(f"LGU class {lgu[0]} without a BN class in {L}")
    witnesses.extend(("LGU", w) for w in _ordered(lgu, v, L, wall, attempt))

    # (s, v) = 2 (s, v_p) is even, so 0 < (s, v) <= 4 leaves only 2 and 4
    sc = []
    for k in (2, 4):
        sc.extend(solve_constrained_classes(ClassQuery(L, -2, k), v))
    witnesses.extend(("SC", s) for s in _ordered(sc, v, L, wall, attempt))

    # TS2 needs (w, v) = 1, impossible for a 2-divisible v
    assert not solve_constrained_classes(ClassQuery(L, 0, 1), v)

    ts1 = []
    for s in spherical_scan(L, search_bound):
        if pairing(s, v, S) < 0 and effectivity_sign(L, v, s, wall, attempt).effective:
            ts1.append(s)
    ts1.sort(key=lambda x: (-pairing(x, v, S), abs(x.r) + abs(x.c) + abs(x.a), tuple(x)))
    witnesses.extend(("TS1", s) for s in ts1[:MAX_TS1_WITNESSES])
    ts = bool(ts1)

    if bn:
        kind = Kind.DIVISORIAL_BN_LGU if lgu else Kind.DIVISORIAL_BN
    elif sc:
        kind = Kind.FLOPPING
    elif ts:
        kind = Kind.FAKE
    else:
        kind = Kind.NOT_A_WALL
    return WallClassification(ts, kind, tuple(witnesses), ts1_search_complete=ts)


def classify_wall(L: WallLattice, v: MukaiVector, wall: WallCurve,
                  search_bound: int = DEFAULT_TS_SEARCH_BOUND) -> WallClassification:
    """Decide TS1/TS2 and BN/LGU/SC for the wall of L represented by ``wall``."""
    S = L.surface
    if not is_ogrady_type(v, S):
        raise UnsupportedVector(f"{v} is not of O'Grady type for d={S.d}")
    check_hyperbolic(L)
    L.coords(v)
    if wall.shape not in (CIRCLE, VERTICAL):
        raise UnrepresentedWall(f"wall curve {wall} does not meet the upper half-plane")
    for e in L.basis:
        if pairing(e, v, S) % 2:
            raise AssertionError(f"odd pairing ({e}, v) for O'Grady v={v}")
    last = None
    for attempt in range(n_wall_points(wall)):
        try:
            return _classify_at(L, v, wall, search_bound, attempt)
        except AmbiguousSign as exc:
            last = exc
    raise last
