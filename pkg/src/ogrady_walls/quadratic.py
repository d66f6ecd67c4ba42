"""Integer solvers: Pell-type equations x^2 - D*y^2 = N and classes of a
rank-two lattice with prescribed square and prescribed pairing with v."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import List, NamedTuple, Optional

from .errors import BoundTooLarge, DegenerateLattice
from .lattice import WallLattice, _xgcd
from .mukai import MukaiVector

ORACLE_MAX_Y = 10 ** 6


class PellSolution(NamedTuple):
    x: int
    y: int


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def pell_fundamental(D: int) -> Optional[PellSolution]:
    """Fundamental solution of x^2 - D*y^2 = 1 from the continued fraction of sqrt(D).

    Returns None when D is a perfect square.
    """
    if D < 1:
        raise ValueError("D must be positive")
    a0 = isqrt(D)
    if a0 * a0 == D:
        return None
    m, q, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, qq = 0, 1
    while p * p - D * qq * qq != 1:
        m = a * q - m
        q = (D - m * m) // q
        a = (a0 + m) // q
        p_prev, p = p, a * p + p_prev
        q_prev, qq = qq, a * qq + q_prev
    return PellSolution(p, qq)


def _divisor_pairs(n: int):
    n = abs(n)
    i = 1
    while i * i <= n:
        if n % i == 0:
            yield i, n // i
        i += 1


def _square_d_solutions(k: int, N: int) -> List[PellSolution]:
    """x^2 - k^2 y^2 = N, x, y >= 0, via (x - ky)(x + ky) = N."""
    out = set()
    for f, g in _divisor_pairs(N):
        for a in (f, g, -f, -g):
            b = N // a
            if (a + b) % 2 or (b - a) % (2 * k):
                continue
            x, y = (a + b) // 2, (b - a) // (2 * k)
            if x >= 0 and y >= 0:
                out.add(PellSolution(x, y))
    return sorted(out)


def nagell_bound(D: int, N: int) -> int:
    """Largest y that a class-fundamental solution of x^2 - D*y^2 = N can have."""
    x1, y1 = pell_fundamental(D)
    if N > 0:
        # y <= y1 * sqrt(N / (2(x1 + 1)))
        return isqrt(y1 * y1 * N // (2 * (x1 + 1))) + 1
    return isqrt(y1 * y1 * (-N) // (2 * (x1 - 1))) + 1


def pell_general(D: int, N: int) -> Optional[PellSolution]:
    """Least solution (x, y >= 0, minimal x then y) of x^2 - D*y^2 = N, or None.

    Since x^2 = N + D*y^2 grows with y, the least x is the least y; every
    solution class has a representative below the Nagell bound, so a scan up to
    that bound decides solubility.
    """
    if D < 1:
        raise ValueError("D must be positive")
    if N == 0:
        raise ValueError("N must be nonzero")
    k = isqrt(D)
    if k * k == D:
        sols = _square_d_solutions(k, N)
        return sols[0] if sols else None
    bound = nagell_bound(D, N)
    y = 0 if N > 0 else isqrt(-N // D)
    while y <= bound:
        x2 = N + D * y * y
        if x2 >= 0:
            x = isqrt(x2)
            if x * x == x2:
                return PellSolution(x, y)
        y += 1
    return None


def brute_force_oracle(D: int, N: int, y_max: int) -> List[PellSolution]:
    """Every (x, y) with x >= 0, 0 <= y <= y_max and x^2 - D*y^2 = N."""
    if y_max > ORACLE_MAX_Y:
        raise BoundTooLarge(f"y_max={y_max} exceeds {ORACLE_MAX_Y}")
    out = []
    for y in range(y_max + 1):
        x2 = N + D * y * y
        if x2 >= 0:
            x = isqrt(x2)
            if x * x == x2:
                out.append(PellSolution(x, y))
    return out


@dataclass(frozen=True)
class ClassQuery:
    lattice: WallLattice
    square: int
    pairing_with_v: int


def solve_constrained_classes(q: ClassQuery, v: MukaiVector) -> List[MukaiVector]:
    """All u in the lattice with u^2 = q.square and (u, v) = q.pairing_with_v.

    The linear condition puts u on an affine line p0 + n*dir; the quadratic
    condition is then a one-variable quadratic in n.
    """
    L = q.lattice
    if L.det == 0:
        raise DegenerateLattice(f"Gram matrix {L.gram} is degenerate")
    pv = L.coords(v)
    (g11, g12), (_, g22) = L.gram
    a = g11 * pv[0] + g12 * pv[1]
    b = g12 * pv[0] + g22 * pv[1]
    k = q.pairing_with_v
    if a == 0 and b == 0:
        raise DegenerateLattice("v pairs to zero with the whole lattice")
    g, p, r = _xgcd(a, b)
    if k % g:
        return []
    p0 = (p * (k // g), r * (k // g))
    direction = (b // g, -a // g)
    # Q(p0 + n*dir) = A n^2 + B n + C
    A = L.form(*direction)
    B = 2 * L.bilinear(p0, direction)
    C = L.form(*p0) - q.square
    roots = set()
    if A == 0:
        if B == 0:
            if C == 0:
                raise DegenerateLattice("infinitely many solutions on an isotropic line")
            return []
        if C % B == 0:
            roots.add(-C // B)
    else:
        disc = B * B - 4 * A * C
        if disc < 0 or not _is_square(disc):
            return []
        s = isqrt(disc)
        for num in (-B + s, -B - s):
            if num % (2 * A) == 0:
                roots.add(num // (2 * A))
    out = []
    for n in sorted(roots):
        x, y = p0[0] + n * direction[0], p0[1] + n * direction[1]
        out.append(L.element(x, y))
    return sorted(set(out), key=tuple)
