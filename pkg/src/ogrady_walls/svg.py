"""Deterministic SVG: walls in the upper half-plane and the cone fan in NS(M).

Every coordinate goes through ``_n`` (six significant digits) and elements are
emitted in a fixed order, so identical inputs give identical bytes.
"""
from __future__ import annotations

from math import ceil, floor, sqrt
from typing import List, Optional, Sequence

from .cones import ConeResult
from .enumeration import Window, WallRecord
from .stab import CIRCLE, VERTICAL
from .walls import Kind

COLORS = {
    "divisorial": "#1f5fbf",
    "flopping": "#d62728",
    "fake": "#7f7f7f",
}
SCALE = 200.0
MARGIN = 40.0
FAN_SIZE = 300.0


def _n(x: float) -> str:
    s = f"{x:.6g}"
    return "0" if s == "-0" else s


def _style(kind: Kind) -> Optional[str]:
    if kind.is_divisorial:
        return f'stroke="{COLORS["divisorial"]}" stroke-width="2"'
    if kind == Kind.FLOPPING:
        return f'stroke="{COLORS["flopping"]}" stroke-width="2"'
    if kind == Kind.FAKE:
        return f'stroke="{COLORS["fake"]}" stroke-width="1.5" stroke-dasharray="6,4"'
    return None


def _label(text: str) -> str:
    return text.replace("H~", "H̃")


def half_plane(records: Sequence[WallRecord], win: Window) -> List[str]:
    width = float(win.u_max - win.u_min) * SCALE
    height = float(win.t_max) * SCALE

    def X(u) -> float:
        return MARGIN + (float(u) - float(win.u_min)) * SCALE

    def Y(t) -> float:
        return MARGIN + height - float(t) * SCALE

    out = [
        '<clipPath id="window"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath>'.format(
            _n(MARGIN), _n(MARGIN), _n(width), _n(height)),
        '<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000" stroke-width="0.5"/>'.format(
            _n(MARGIN), _n(MARGIN), _n(width), _n(height)),
    ]
    # integer ticks on the u-axis
    for k in range(ceil(win.u_min), floor(win.u_max) + 1):
        out.append('<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>'.format(
            _n(X(k)), _n(MARGIN + height + 14), k))
    out.append('<g clip-path="url(#window)" fill="none">')
    for rec in records:
        style = _style(rec.classification.kind)
        if style is None:
            continue
        c = rec.curve
        if c.shape == CIRCLE:
            r = sqrt(float(c.radius_sq))
            x1, x2 = X(float(c.center_u) - r), X(float(c.center_u) + r)
            rp = r * SCALE
            out.append('<path d="M {} {} A {} {} 0 0 1 {} {}" {}/>'.format(
                _n(x1), _n(Y(0)), _n(rp), _n(rp), _n(x2), _n(Y(0)), style))
        elif c.shape == VERTICAL:
            out.append('<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" {3}/>'.format(
                _n(X(c.u0)), _n(Y(0)), _n(MARGIN), style))
    out.append("</g>")
    for i, (name, kind) in enumerate((("divisorial", Kind.DIVISORIAL_BN), ("flopping", Kind.FLOPPING),
                                      ("fake", Kind.FAKE))):
        y = MARGIN + 14 * i + 10
        x = MARGIN + width - 90
        out.append('<line x1="{}" y1="{}" x2="{}" y2="{}" {}/>'.format(
            _n(x), _n(y - 4), _n(x + 20), _n(y - 4), _style(kind)))
        out.append('<text x="{}" y="{}" font-size="11">{}</text>'.format(_n(x + 26), _n(y), name))
    return out


def fan(mov: ConeResult, nef: ConeResult, x0: float) -> List[str]:
    """Rays a*H~ + b*B drawn at (a, -b), so the cones open upwards from H~."""
    ox, oy = x0 + 20, MARGIN + FAN_SIZE - 20
    L = FAN_SIZE - 60

    def tip(ray):
        a, b = float(ray.coeff_h), float(-ray.coeff_b)
        n = sqrt(a * a + b * b)
        return ox + L * a / n, oy - L * b / n

    out = []
    hx, hy = tip(mov.ray_low)
    for res, fill in ((mov, "#dde7f7"), (nef, "#f7dddd")):
        fx, fy = tip(res.ray_high)
        out.append('<path d="M {} {} L {} {} A {} {} 0 0 0 {} {} Z" fill="{}" stroke="none"/>'.format(
            _n(ox), _n(oy), _n(hx), _n(hy), _n(L), _n(L), _n(fx), _n(fy), fill))
    rays = [(mov.ray_low, "#000")]
    rays.append((mov.ray_high, COLORS["divisorial"]))
    if nef.ray_high != mov.ray_high:
        rays.append((nef.ray_high, COLORS["flopping"]))
    for ray, color in rays:
        x, y = tip(ray)
        out.append('<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>'.format(
            _n(ox), _n(oy), _n(x), _n(y), color))
        out.append('<text x="{}" y="{}" font-size="12">{}</text>'.format(
            _n(x + 4), _n(y - 4), _label(str(ray))))
    out.append('<text x="{}" y="{}" font-size="11">NS(M)</text>'.format(_n(ox), _n(oy + 16)))
    return out


def render(records: Sequence[WallRecord], win: Window, title: str,
           cones: Optional[tuple] = None) -> str:
    width = float(win.u_max - win.u_min) * SCALE + 2 * MARGIN
    height = max(float(win.t_max) * SCALE, FAN_SIZE) + 2 * MARGIN
    body = half_plane(records, win)
    if cones is not None:
        body += fan(cones[0], cones[1], width)
        width += FAN_SIZE
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" '
        'viewBox="0 0 {0} {1}">'.format(_n(width), _n(height)),
        '<title>{}</title>'.format(_label(title)),
        '<rect width="100%" height="100%" fill="#fff"/>',
    ]
    return "\n".join(head + body + ["</svg>", ""])
