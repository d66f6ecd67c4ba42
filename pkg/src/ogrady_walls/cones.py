"""Movable and nef cones of M = M_H(2, 0, -2) on a K3 with Pic = Z[H], H^2 = 2d.

NS(M) is identified with v^perp by the Mukai isometry; the basis is
H~ <-> (0, -H, 0) and B <-> (-1, 0, -1), with q = 2d*a^2 - 2*b^2 on a*H~ + b*B.
Far rays are computed as generators of v^perp ∩ s^perp for the witness s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Tuple, Union

from .errors import NotTransverse
from .mukai import MukaiVector, Surface, pairing
from .quadratic import PellSolution, pell_fundamental, pell_general
from .stab import B_PREIMAGE, H_TILDE_PREIMAGE, NORMAL_FORM


@dataclass(frozen=True)
class NSBasis:
    h_tilde_preimage: MukaiVector
    b_preimage: MukaiVector
    gram_ns: Tuple[Tuple[int, int], Tuple[int, int]]


def ns_gram(d: int) -> NSBasis:
    S = Surface(d)
    h, b = H_TILDE_PREIMAGE, B_PREIMAGE
    gram = ((pairing(h, h, S), pairing(h, b, S)), (pairing(b, h, S), pairing(b, b, S)))
    return NSBasis(h, b, gram)


@dataclass(frozen=True)
class ConeRay:
    """Primitive ray coeff_h*H~ + coeff_b*B with coeff_h >= 0."""

    coeff_h: int
    coeff_b: int

    @classmethod
    def normalized(cls, a, b) -> ConeRay:
        a, b = Fraction(a), Fraction(b)
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        ai, bi = int(a * den), int(b * den)
        g = gcd(ai, bi)
        if g == 0:
            raise ValueError("zero ray")
        ai, bi = ai // g, bi // g
        if ai < 0 or (ai == 0 and bi < 0):
            ai, bi = -ai, -bi
        return cls(ai, bi)

    def q(self, d: int) -> int:
        return 2 * d * self.coeff_h ** 2 - 2 * self.coeff_b ** 2

    @property
    def slope(self) -> Fraction:
        """-coeff_b / coeff_h: how far the ray leans from H~ towards -B."""
        return Fraction(-self.coeff_b, self.coeff_h)

    def preimage(self) -> MukaiVector:
        return H_TILDE_PREIMAGE * self.coeff_h + B_PREIMAGE * self.coeff_b

    def __str__(self) -> str:
        a, b = self.coeff_h, self.coeff_b
        if b == 0:
            return "H~" if a == 1 else f"{a}H~"
        head = "" if a == 1 else ("0" if a == 0 else str(a))
        head = (head + "H~") if a else ""
        sign = "-" if b < 0 else ("+" if head else "")
        mag = "" if abs(b) == 1 else str(abs(b))
        return f"{head}{sign}{mag}B"


H_TILDE = ConeRay(1, 0)

PERFECT_SQUARE, BN_PELL, LGU_PELL = "PerfectSquare", "BNPell", "LGUPell"
NO_FLOPPING_WALL, SC_WALL = "NoFloppingWall", "SCWall"


@dataclass(frozen=True)
class ConeResult:
    ray_low: ConeRay
    ray_high: ConeRay
    case_tag: str
    witness: Union[PellSolution, MukaiVector, None] = None
    witness_class: Optional[MukaiVector] = None
    notes: Tuple[str, ...] = field(default=())


def orthogonal_ray(v: MukaiVector, s: MukaiVector, d: int) -> ConeRay:
    """Generator of v^perp ∩ s^perp in (H~, B) coordinates, v = (2, 0, -2)."""
    if v != NORMAL_FORM:
        raise ValueError(f"orthogonal_ray expects v = {NORMAL_FORM}; twist first")
    # v^perp = {(r, c, r)}; (s, (r, c, r)) = 2d*s.c*c - (s.r + s.a)*r
    r, c = 2 * d * s.c, s.r + s.a
    if r == 0 and c == 0:
        raise NotTransverse(f"{s} is proportional to {v}")
    # (r, c, r) = x*(0,-1,0) + y*(-1,0,-1)
    return ConeRay.normalized(-c, -r)


def lgu_class_from_pell(x: int, y: int) -> Optional[MukaiVector]:
    """Isotropic w with (w, v) = 2 from X^2 - dY^2 = 1; needs Y even."""
    if y % 2 or x % 2 == 0:
        return None
    return MukaiVector((x + 1) // 2, -(y // 2), (x - 1) // 2)


def movable_cone(d: int) -> ConeResult:
    k = isqrt(d)
    if k * k == d:
        # q(H~ - kB) = 2d - 2k^2 = 0
        return ConeResult(H_TILDE, ConeRay.normalized(1, -k), PERFECT_SQUARE)
    sol = pell_fundamental(d)
    if sol is not None:
        s = MukaiVector(sol.x, -sol.y, sol.x)
        return ConeResult(H_TILDE, orthogonal_ray(NORMAL_FORM, s, d), BN_PELL, sol, s)
    # unreachable for integral non-square d: x^2 - d y^2 = 1 is always soluble
    raise AssertionError(f"no Brill-Noether class for d={d}")


def sc_classes(d: int):
    """Least solutions of x^2 - 4dy^2 = 5 and x^2 - dy^2 = 2 with their spherical classes."""
    out = []
    sol = pell_general(4 * d, 5)
    if sol is not None:
        out.append((sol, MukaiVector((sol.x + 1) // 2, -sol.y, (sol.x - 1) // 2), 2))
    sol = pell_general(d, 2)
    if sol is not None:
        out.append((sol, MukaiVector(sol.x + 1, -sol.y, sol.x - 1), 4))
    return out


def nef_cone(d: int) -> ConeResult:
    mov = movable_cone(d)
    cands = [(orthogonal_ray(NORMAL_FORM, s, d), sol, s) for sol, s, _ in sc_classes(d)]
    if not cands:
        return ConeResult(H_TILDE, mov.ray_high, NO_FLOPPING_WALL, mov.witness, mov.witness_class)
    cands.sort(key=lambda c: c[0].slope)
    ray, sol, s = cands[0]
    notes = ()
    if len(cands) == 2:
        notes = (f"both SC equations soluble; took the smaller slope from {s}",)
    if ray.slope >= mov.ray_high.slope:
        return ConeResult(H_TILDE, mov.ray_high, NO_FLOPPING_WALL, mov.witness, mov.witness_class,
                          notes + ("SC wall lies outside the movable cone",))
    return ConeResult(H_TILDE, ray, SC_WALL, sol, s, notes)


def square_zero_class(d: int) -> Optional[ConeRay]:
    k = isqrt(d)
    return ConeRay.normalized(1, -k) if k * k == d else None
