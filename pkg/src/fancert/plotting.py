"""Deterministic SVG rendering of the rank-1, s = 2 picture: the orbit rays,
the vertical slab B, and the two shaded patches of the fundamental domain.

Output is a plain string built from fixed-precision formats; identical inputs
give byte-identical files.
"""

from __future__ import annotations

import math

from .domain import DomainSpec
from .fans import QuotientFan, _s2_shift, _sectorize

W, H = 800, 640
MARGIN = 40
FMT = "{:.4f}"


def _fmt(x: float) -> str:
    v = FMT.format(x)
    return "0.0000" if v == "-0.0000" else v


class _View:
    def __init__(self, xmax: float, ymax: float):
        self.xmax = xmax
        self.ymax = ymax
        self.sx = (W - 2 * MARGIN) / xmax
        self.sy = (H - 2 * MARGIN) / (2 * ymax)

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return MARGIN + x * self.sx, H / 2 - y * self.sy

    def poly(self, points) -> str:
        return " ".join(f"{_fmt(px)},{_fmt(py)}"
                        for px, py in (self.pt(x, y) for x, y in points))


def render_domain_svg(fan: QuotientFan, spec: DomainSpec,
                      window: int | None = None) -> str:
    window = fan.window if window is None else window
    g = fan.w.generators[0]
    e1, e2 = (float(v) for v in fan.labeled_diag(g)[:2])
    shift = _s2_shift(fan)
    sectors = [_sectorize(c) for c in fan.sigma]

    xmax = max(2.0, e1 * e1 * 1.15)
    ymax = 0.75 * xmax
    view = _View(xmax, ymax)

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">')
    lines.append(f'<rect width="{W}" height="{H}" fill="#ffffff"/>')
    lines.append(
        f'<clipPath id="world"><rect x="{MARGIN}" y="{MARGIN}" '
        f'width="{W - 2 * MARGIN}" height="{H - 2 * MARGIN}"/></clipPath>')
    lines.append('<g clip-path="url(#world)">')

    # slab B: leading coordinate between the simplex endpoints
    b_lo, b_hi = 1.0, e1
    p0 = view.pt(b_lo, 0)[0]
    p1 = view.pt(b_hi, 0)[0]
    lines.append(
        f'<rect x="{_fmt(p0)}" y="{MARGIN}" width="{_fmt(p1 - p0)}" '
        f'height="{H - 2 * MARGIN}" fill="#4477aa" fill-opacity="0.12"/>')

    # shaded patches, per sign
    for sign in (1, -1):
        secs = [sec for sec in sectors if sec.valid and sec.sign == sign]
        if not secs:
            continue
        hi = max(sec.hi for sec in secs)
        lo = min(sec.lo for sec in secs)
        tail = lo - window * abs(shift)
        r_top, r_bot = math.exp(hi), math.exp(tail) if tail > -500 else 0.0
        # D1: inside the slab, between the extreme orbit rays
        quad = [(b_lo, sign * r_bot * b_lo), (b_lo, sign * r_top * b_lo),
                (b_hi, sign * r_top * b_hi), (b_hi, sign * r_bot * b_hi)]
        lines.append(f'<polygon points="{view.poly(quad)}" fill="#cc6677" '
                     f'fill-opacity="0.35"/>')
        # D2: inside the base sectors, beyond the slab start
        for sec in secs:
            rl, rh = math.exp(sec.lo), math.exp(sec.hi)
            quad = [(b_lo, sign * rl * b_lo), (b_lo, sign * rh * b_lo),
                    (xmax, sign * rh * xmax), (xmax, sign * rl * xmax)]
            lines.append(f'<polygon points="{view.poly(quad)}" '
                         f'fill="#ddaa33" fill-opacity="0.35"/>')

    # orbit rays eta^k (1, +-1)
    for k in range(-window, window + 1):
        lx = k * math.log(e1)
        ly = k * math.log(e2)
        m = max(lx, ly)
        dx, dy = math.exp(lx - m), math.exp(ly - m)
        for sign in (1, -1):
            t = min(xmax / dx, ymax / dy)
            x1, y1 = view.pt(0.0, 0.0)
            x2, y2 = view.pt(t * dx, sign * t * dy)
            lines.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                f'y2="{_fmt(y2)}" stroke="#555555" stroke-width="0.6"/>')

    # slab edges
    for xv in (b_lo, b_hi):
        px = view.pt(xv, 0)[0]
        lines.append(
            f'<line x1="{_fmt(px)}" y1="{MARGIN}" x2="{_fmt(px)}" '
            f'y2="{H - MARGIN}" stroke="#4477aa" stroke-width="1.2"/>')

    lines.append('</g>')
    # axes
    ox, oy = view.pt(0.0, 0.0)
    lines.append(f'<line x1="{MARGIN}" y1="{_fmt(oy)}" x2="{W - MARGIN}" '
                 f'y2="{_fmt(oy)}" stroke="#000000" stroke-width="1"/>')
    lines.append(f'<line x1="{_fmt(ox)}" y1="{MARGIN}" x2="{_fmt(ox)}" '
                 f'y2="{H - MARGIN}" stroke="#000000" stroke-width="1"/>')
    lines.append(
        f'<text x="{W - MARGIN + 4}" y="{_fmt(oy + 4)}" font-size="12" '
        f'font-family="monospace">x1</text>')
    lines.append(
        f'<text x="{_fmt(ox - 24)}" y="{MARGIN - 8}" font-size="12" '
        f'font-family="monospace">x2</text>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
