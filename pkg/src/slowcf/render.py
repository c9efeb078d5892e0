"""SVG plot of the forward map of an SCFA."""

from __future__ import annotations

from fractions import Fraction

from .scfa import Scfa

__all__ = ["render_svg"]

MARGIN = 24


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_svg(s: Scfa, width: int = 320, height: int = 320, samples: int = 32) -> str:
    """Each branch is drawn as a polyline through exactly computed points.

    The branches are Moebius maps, so they are only straight when the cell is
    [0, 1]; ``samples`` points per cell keep the curvature visible.
    """
    if width < 64 or height < 64:
        raise ValueError("width and height must be at least 64")
    pw, ph = width - 2 * MARGIN, height - 2 * MARGIN

    def px(x: Fraction) -> float:
        return MARGIN + float(x) * pw

    def py(y: Fraction) -> float:
        return height - MARGIN - float(y) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"  <title>{s.name}</title>",
        f'  <rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" '
        'fill="none" stroke="#999"/>',
    ]
    for i, (iv, sign) in enumerate(zip(s.partition, s.signs), start=1):
        inv = s.inverse_branches[i - 1]
        pts = []
        for k in range(samples + 1):
            x = iv.lo + (iv.hi - iv.lo) * Fraction(k, samples)
            pts.append(f"{_fmt(px(x))},{_fmt(py(inv.apply(x)))}")
        out.append(
            f'  <polyline class="branch" data-branch="{i}" data-sign="{"+" if sign > 0 else "-"}" '
            f'fill="none" stroke="black" points="{" ".join(pts)}"/>'
        )
    ticks = [Fraction(0)] + [iv.hi for iv in s.partition]
    for t in ticks:
        x = _fmt(px(t))
        base = height - MARGIN
        out.append(f'  <line class="tick" x1="{x}" y1="{base}" x2="{x}" y2="{base + 4}" stroke="black"/>')
        out.append(
            f'  <text class="tick-label" x="{x}" y="{base + 16}" font-size="10" '
            f'text-anchor="middle">{t.numerator}/{t.denominator}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
