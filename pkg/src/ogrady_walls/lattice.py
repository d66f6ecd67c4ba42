"""Saturated rank-two sublattices of the Mukai lattice containing v."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple

from .errors import DegenerateLattice, NotHyperbolic, NotRankTwo, VectorNotInLattice
from .mukai import MukaiVector, Surface, SurfaceLike, as_surface, pairing, primitive_decompose


def _cross(x: MukaiVector, y: MukaiVector) -> Tuple[int, int, int]:
    return (x.c * y.a - x.a * y.c, x.a * y.r - x.r * y.a, x.r * y.c - x.c * y.r)


def _primitive(t):
    g = 0
    for e in t:
        g = gcd(g, e)
    return tuple(e // g for e in t) if g else tuple(t)


def _xgcd(a: int, b: int):
    """Return (g, p, q) with p*a + q*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_p, p = 1, 0
    old_q, q = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_p, p = p, old_p - k * p
        old_q, q = q, old_q - k * q
    if old_r < 0:
        old_r, old_p, old_q = -old_r, -old_p, -old_q
    return old_r, old_p, old_q


def _kernel_basis(n):
    """Z-basis of {x in Z^3 : n . x = 0} for a primitive integer normal n."""
    n1, n2, n3 = n
    g, p, q = _xgcd(n1, n2)
    if g == 0:
        return MukaiVector(1, 0, 0), MukaiVector(0, 1, 0)
    k1 = MukaiVector(n2 // g, -n1 // g, 0)
    k2 = MukaiVector(-n3 * p, -n3 * q, g)
    return k1, k2


def _solve_coords(x: MukaiVector, e1: MukaiVector, e2: MukaiVector):
    """Rational (p, q) with x = p*e1 + q*e2, or None if x is outside the span."""
    rows = list(zip(e1, e2, x))
    for i in range(3):
        for j in range(i + 1, 3):
            a1, b1, c1 = rows[i]
            a2, b2, c2 = rows[j]
            det = a1 * b2 - a2 * b1
            if det:
                p = Fraction(c1 * b2 - c2 * b1, det)
                q = Fraction(a1 * c2 - a2 * c1, det)
                if all(p * u + q * w == z for u, w, z in rows):
                    return p, q
                return None
    return None


def _l1(x: MukaiVector) -> int:
    return abs(x.r) + abs(x.c) + abs(x.a)


@dataclass(frozen=True)
class WallLattice:
    basis: Tuple[MukaiVector, MukaiVector]
    gram: Tuple[Tuple[int, int], Tuple[int, int]]
    v_coords: Tuple[int, int]
    surface: Surface

    @property
    def det(self) -> int:
        (g11, g12), (_, g22) = self.gram
        return g11 * g22 - g12 * g12

    @property
    def normal(self) -> Tuple[int, int, int]:
        """Primitive Euclidean normal with canonical sign; identifies the lattice."""
        n = _primitive(_cross(*self.basis))
        for e in n:
            if e:
                return n if e > 0 else tuple(-x for x in n)
        return n

    def element(self, x: int, y: int) -> MukaiVector:
        e1, e2 = self.basis
        return e1 * x + e2 * y

    def form(self, x: int, y: int) -> int:
        (g11, g12), (_, g22) = self.gram
        return g11 * x * x + 2 * g12 * x * y + g22 * y * y

    def bilinear(self, p, q) -> int:
        (g11, g12), (_, g22) = self.gram
        return g11 * p[0] * q[0] + g12 * (p[0] * q[1] + p[1] * q[0]) + g22 * p[1] * q[1]

    def coords(self, x: MukaiVector) -> Tuple[int, int]:
        pq = _solve_coords(x, *self.basis)
        if pq is None or pq[0].denominator != 1 or pq[1].denominator != 1:
            raise VectorNotInLattice(f"{x} is not in the lattice spanned by {self.basis}")
        return int(pq[0]), int(pq[1])

    def __contains__(self, x: MukaiVector) -> bool:
        try:
            self.coords(x)
        except VectorNotInLattice:
            return False
        return True

    @property
    def v(self) -> MukaiVector:
        return self.element(*self.v_coords)


def _reduce_against(e2: MukaiVector, vp: MukaiVector, S: Surface) -> MukaiVector:
    n = pairing(vp, vp, S)
    if n:
        k = -(pairing(e2, vp, S) // abs(n)) * (1 if n > 0 else -1)
        e2 = e2 + vp * k
        # bring the pairing into (-|n|, 0]
        if pairing(e2, vp, S) > 0:
            e2 = e2 - vp * (1 if n > 0 else -1)
        return e2
    best = e2
    for k in range(-64, 65):
        cand = e2 + vp * k
        if (_l1(cand), tuple(cand)) < (_l1(best), tuple(best)):
            best = cand
    return best


def make_wall_lattice(v: MukaiVector, u: MukaiVector, S: SurfaceLike) -> WallLattice:
    """Saturation of span{v, u}, with basis (v_p, e2) and e2 reduced against v_p."""
    S = as_surface(S)
    n = _cross(v, u)
    if n == (0, 0, 0):
        raise NotRankTwo(f"{u} is proportional to {v}")
    k1, k2 = _kernel_basis(_primitive(n))
    m, vp = primitive_decompose(v)
    al, be = (int(t) for t in _solve_coords(vp, k1, k2))
    _, gam_neg, dl = _xgcd(al, be)  # gam_neg*al + dl*be = 1
    e2 = k1 * (-dl) + k2 * gam_neg  # det [[al, be], [-dl, gam_neg]] = 1
    cands = [_reduce_against(e2, vp, S), _reduce_against(-e2, vp, S)]
    e2 = min(cands, key=lambda x: (_l1(x), tuple(x)))
    g11, g12, g22 = pairing(vp, vp, S), pairing(vp, e2, S), pairing(e2, e2, S)
    L = WallLattice((vp, e2), ((g11, g12), (g12, g22)), (m, 0), S)
    if L.det >= 0:
        raise NotHyperbolic(f"Gram matrix {L.gram} has determinant {L.det} >= 0")
    return L


def check_hyperbolic(L: WallLattice) -> None:
    if L.det == 0:
        raise DegenerateLattice(f"Gram matrix {L.gram} is degenerate")
    if L.det > 0:
        raise NotHyperbolic(f"Gram matrix {L.gram} is definite")
