"""Algebraic Mukai lattice of a K3 surface with Pic(X) = Z[H], H^2 = 2d.

A Mukai vector is stored as ``(r, c, a)``, meaning ``(r, c*H, a)``.  The
pairing is ``((r, c, a), (r', c', a')) = 2d*c*c' - r*a' - a*r'``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, NamedTuple, Union

from .errors import NotSpherical, ZeroVector


@dataclass(frozen=True)
class Surface:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d!r}")

    @property
    def h_squared(self) -> int:
        return 2 * self.d


SurfaceLike = Union[Surface, int]


def as_surface(S: SurfaceLike) -> Surface:
    return S if isinstance(S, Surface) else Surface(S)


@dataclass(frozen=True)
class MukaiVector:
    """Triple (r, c, a).  Entries are ints; Fractions are tolerated for
    rational classes such as Bayer-Macri images."""

    r: int
    c: int
    a: int

    def __iter__(self) -> Iterator[int]:
        yield self.r
        yield self.c
        yield self.a

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r + other.r, self.c + other.c, self.a + other.a)

    def __sub__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r - other.r, self.c - other.c, self.a - other.a)

    def __neg__(self) -> MukaiVector:
        # cohomological shift [1]
        return MukaiVector(-self.r, -self.c, -self.a)

    def __mul__(self, k) -> MukaiVector:
        return MukaiVector(k * self.r, k * self.c, k * self.a)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.r == 0 and self.c == 0 and self.a == 0

    def __str__(self) -> str:
        return f"({self.r}, {self.c}H, {self.a})"

    @classmethod
    def parse(cls, text: str) -> MukaiVector:
        parts = [p.strip() for p in text.strip().strip("()").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated integers, got {text!r}")
        return cls(*(int(p) for p in parts))


def mv(r, c, a) -> MukaiVector:
    return MukaiVector(r, c, a)


class PrimitiveDecomposition(NamedTuple):
    m: int
    v_p: MukaiVector


def pairing(x: MukaiVector, y: MukaiVector, S: SurfaceLike) -> int:
    d = as_surface(S).d
    return 2 * d * x.c * y.c - x.r * y.a - x.a * y.r


def square(x: MukaiVector, S: SurfaceLike) -> int:
    return pairing(x, x, S)


def primitive_decompose(v: MukaiVector) -> PrimitiveDecomposition:
    if v.is_zero():
        raise ZeroVector("the zero vector has no primitive part")
    m = gcd(gcd(v.r, v.c), v.a)
    return PrimitiveDecomposition(m, MukaiVector(v.r // m, v.c // m, v.a // m))


def is_ogrady_type(v: MukaiVector, S: SurfaceLike) -> bool:
    m, v_p = primitive_decompose(v)
    return m == 2 and square(v_p, S) == 2


def exp_twist(v: MukaiVector, m: int, S: SurfaceLike) -> MukaiVector:
    """Multiply by exp(mH), i.e. tensor with O(mH)."""
    d = as_surface(S).d
    r, c, a = v
    return MukaiVector(r, c + r * m, a + 2 * d * m * c + d * m * m * r)


def spherical_reflect(x: MukaiVector, s: MukaiVector, S: SurfaceLike) -> MukaiVector:
    """Cohomological action of the spherical twist about a (-2)-class s."""
    if square(s, S) != -2:
        raise NotSpherical(f"{s} has square {square(s, S)}, not -2")
    return x + pairing(x, s, S) * s
