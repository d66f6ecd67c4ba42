"""The (s, t)-slice of Stab(X): sigma_{u,t} has central charge
Z(x) = <exp((u + it)H), x>.  The slice coordinate is called ``u`` here so it
does not collide with spherical classes ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple

from .errors import CentralChargeVanishes, UnsupportedVector
from .mukai import MukaiVector, SurfaceLike, as_surface, exp_twist, pairing

QComplex = Tuple[Fraction, Fraction]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def cmul(z: QComplex, w: QComplex) -> QComplex:
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def cinv(z: QComplex) -> QComplex:
    n = z[0] * z[0] + z[1] * z[1]
    if n == 0:
        raise ZeroDivisionError("inverse of 0")
    return (z[0] / n, -z[1] / n)


@dataclass(frozen=True)
class SlicePoint:
    u: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _q(self.u))
        object.__setattr__(self, "t", _q(self.t))
        if self.t <= 0:
            raise ValueError(f"slice points need t > 0, got t={self.t}")

    @property
    def z(self) -> QComplex:
        return (self.u, self.t)


def central_charge(x: MukaiVector, p: SlicePoint, S: SurfaceLike) -> QComplex:
    """Z(x) = 2d*c*z - d*r*z^2 - a at z = u + it, as exact (Re, Im)."""
    d = as_surface(S).d
    u, t = p.u, p.t
    re = 2 * d * x.c * u - d * x.r * (u * u - t * t) - x.a
    im = 2 * d * x.c * t - 2 * d * x.r * u * t
    return (re, im)


CIRCLE, VERTICAL, EMPTY, DEGENERATE = "Circle", "VerticalLine", "Empty", "Degenerate"


@dataclass(frozen=True)
class WallCurve:
    """Locus alpha*(u^2 + t^2) + beta*u + gamma = 0 with t > 0."""

    alpha: int
    beta: int
    gamma: int

    @property
    def shape(self) -> str:
        a, b, g = self.alpha, self.beta, self.gamma
        if a == b == g == 0:
            return DEGENERATE
        if a == 0:
            return VERTICAL if b else EMPTY
        return CIRCLE if b * b - 4 * a * g > 0 else EMPTY

    @property
    def center_u(self) -> Optional[Fraction]:
        if self.shape == CIRCLE:
            return Fraction(-self.beta, 2 * self.alpha)
        if self.shape == VERTICAL:
            return Fraction(-self.gamma, self.beta)
        return None

    @property
    def radius_sq(self) -> Optional[Fraction]:
        if self.shape != CIRCLE:
            return None
        return Fraction(self.beta ** 2 - 4 * self.alpha * self.gamma, 4 * self.alpha ** 2)

    @property
    def u0(self) -> Optional[Fraction]:
        return self.center_u if self.shape == VERTICAL else None

    def value(self, u, t) -> Fraction:
        return self.alpha * (u * u + t * t) + self.beta * u + self.gamma

    def contains(self, p: SlicePoint) -> bool:
        return self.shape in (CIRCLE, VERTICAL) and self.value(p.u, p.t) == 0

    def height_sq(self, u) -> Optional[Fraction]:
        """t^2 of the curve above u (circles only)."""
        if self.shape != CIRCLE:
            return None
        return self.radius_sq - (_q(u) - self.center_u) ** 2

    def translated(self, m: int) -> WallCurve:
        """The curve moved by u -> u + m."""
        a, b, g = self.alpha, self.beta, self.gamma
        return _canonical(a, b - 2 * a * m, a * m * m - b * m + g)

    def sort_key(self):
        if self.shape == CIRCLE:
            return (0, self.center_u, self.radius_sq)
        if self.shape == VERTICAL:
            return (0, self.center_u, Fraction(10 ** 18))
        return (1, Fraction(0), Fraction(0))

    def __str__(self) -> str:
        if self.shape == CIRCLE:
            return f"Circle(center={self.center_u}, radius^2={self.radius_sq})"
        if self.shape == VERTICAL:
            return f"VerticalLine(u={self.u0})"
        return self.shape


def _canonical(a: int, b: int, g: int) -> WallCurve:
    k = gcd(gcd(a, b), g)
    if k == 0:
        return WallCurve(0, 0, 0)
    lead = next(x for x in (a, b, g) if x)
    if lead < 0:
        k = -k
    return WallCurve(a // k, b // k, g // k)


def numerical_wall(v: MukaiVector, w: MukaiVector, S: SurfaceLike) -> WallCurve:
    """Locus where Z(w)/Z(v) is real.

    Im(Z(w) * conj Z(v)) = -2dt * (alpha*(u^2+t^2) + beta*u + gamma).
    """
    d = as_surface(S).d
    r, c, a = v
    r2, c2, a2 = w
    return _canonical(d * (c * r2 - c2 * r), a2 * r - a * r2, c2 * a - c * a2)


def _check_wall_formula() -> None:
    # the flopping circle of M(2,2H,0) on a degree-two K3: centre -1/2, radius sqrt(5)/2
    wall = numerical_wall(MukaiVector(2, 2, 0), MukaiVector(2, 1, 1), 1)
    if (wall.shape, wall.center_u, wall.radius_sq) != (CIRCLE, Fraction(-1, 2), Fraction(5, 4)):
        raise AssertionError(f"wall formula drifted: got {wall}")


_check_wall_formula()


# -- Bayer-Macri map ---------------------------------------------------------

NORMAL_FORM = MukaiVector(2, 0, -2)
H_TILDE_PREIMAGE = MukaiVector(0, -1, 0)
B_PREIMAGE = MukaiVector(-1, 0, -1)


def normal_form_twist(v: MukaiVector, S: SurfaceLike) -> int:
    """m with exp_twist(v, m) == (2, 0, -2); UnsupportedVector otherwise."""
    if v.r == 2 and v.c % 2 == 0:
        m = -v.c // 2
        if exp_twist(v, m, S) == NORMAL_FORM:
            return m
    raise UnsupportedVector(f"{v} is not a twist of (2, 0, -2)")


@dataclass(frozen=True)
class BMImage:
    w_sigma: MukaiVector  # rational entries
    ns_coords: Optional[Tuple[Fraction, Fraction]]  # (coefficient of H~, of B)
    q: Fraction  # w_sigma^2 = q(l_sigma)

    @property
    def slope(self) -> Optional[Fraction]:
        """b/a for the ray a*H~ + b*B."""
        if self.ns_coords is None or self.ns_coords[0] == 0:
            return None
        return self.ns_coords[1] / self.ns_coords[0]


def ns_coordinates(w: MukaiVector, v: MukaiVector, S: SurfaceLike) -> Tuple[Fraction, Fraction]:
    """Coordinates of w in v^perp with respect to the (twisted) basis H~, B."""
    m = normal_form_twist(v, S)
    r, c, a = exp_twist(w, m, S)
    if r != a:
        raise ValueError(f"{w} is not orthogonal to {v}")
    return (_q(-c), _q(-r))


def bm_ray(v: MukaiVector, S: SurfaceLike, p: SlicePoint) -> BMImage:
    """w_sigma = Im(Omega / -(Omega, v)) with Omega = exp((u + it)H)."""
    d = as_surface(S).d
    z = p.z
    z2 = cmul(z, z)
    omega = ((Fraction(1), Fraction(0)), z, (d * z2[0], d * z2[1]))
    zv = central_charge(v, p, S)
    if zv == (0, 0):
        raise CentralChargeVanishes(f"Z({v}) = 0 at {p}")
    k = cinv((-zv[0], -zv[1]))
    w = MukaiVector(*(cmul(comp, k)[1] for comp in omega))
    try:
        ns = ns_coordinates(w, v, S)
    except UnsupportedVector:
        ns = None
    return BMImage(w, ns, pairing(w, w, S))
