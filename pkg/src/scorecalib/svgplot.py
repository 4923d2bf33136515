"""Deterministic SVG rendering of threshold curves and their gap band.

Hand-written SVG keeps output byte-stable across runs: no timestamps,
no generated ids.  The shaded band between the two group curves has
area equal to the integrated bias, and that area is recorded in the
SVG ``<title>`` element.
"""

from __future__ import annotations

import numpy as np

from .empirical import StepCurve, integrate_abs_difference

WIDTH, HEIGHT = 720, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 64, 20, 44, 52

COLOR_A = "#1f77b4"
COLOR_B = "#d62728"
COLOR_BAND = "#888888"


def _x(theta: float) -> float:
    return MARGIN_LEFT + theta * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)

def _y(value: float) -> float:
    return HEIGHT - MARGIN_BOTTOM - value * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _step_points(breakpoints: np.ndarray, values: np.ndarray) -> list[tuple[float, float]]:
    """Corner points of the staircase from theta=0 to theta=1."""
    pts = [(0.0, float(values[0]))]
    for bp, nxt in zip(breakpoints, values[1:]):
        pts.append((float(bp), pts[-1][1]))
        pts.append((float(bp), float(nxt)))
    pts.append((1.0, pts[-1][1]))
    return pts


def _polyline(points: list[tuple[float, float]]) -> str:
    return " ".join(f"{_fmt(_x(t))},{_fmt(_y(v))}" for t, v in points)


def render_gap_svg(
    curve_a: StepCurve,
    curve_b: StepCurve,
    label_a: str = "minority",
    label_b: str = "majority",
    title: str = "threshold curves",
) -> str:
    """SVG document overlaying two step curves with the |gap| shaded."""
    area = integrate_abs_difference(curve_a, curve_b)

    merged = np.union1d(curve_a.breakpoints, curve_b.breakpoints)
    eval_at = np.concatenate((merged, [1.0]))
    va = curve_a(eval_at)
    vb = curve_b(eval_at)
    upper = _step_points(merged, np.maximum(va, vb))
    lower = _step_points(merged, np.minimum(va, vb))
    band = _polyline(upper) + " " + _polyline(lower[::-1])

    ticks = []
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        ticks.append(
            f'<line x1="{_fmt(_x(frac))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(frac))}" '
            f'y2="{_fmt(_y(0) + 5)}" stroke="#333" stroke-width="1"/>'
            f'<text x="{_fmt(_x(frac))}" y="{_fmt(_y(0) + 20)}" font-size="12" '
            f'text-anchor="middle" fill="#333">{frac:g}</text>'
            f'<line x1="{_fmt(_x(0))}" y1="{_fmt(_y(frac))}" x2="{_fmt(_x(0) - 5)}" '
            f'y2="{_fmt(_y(frac))}" stroke="#333" stroke-width="1"/>'
            f'<text x="{_fmt(_x(0) - 9)}" y="{_fmt(_y(frac) + 4)}" font-size="12" '
            f'text-anchor="end" fill="#333">{frac:g}</text>'
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{title} | gap band area = {area:.9f}</title>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<polygon points="{band}" fill="{COLOR_BAND}" fill-opacity="0.35" stroke="none"/>',
        f'<polyline points="{_polyline(_step_points(curve_a.breakpoints, curve_a.values))}" '
        f'fill="none" stroke="{COLOR_A}" stroke-width="2"/>',
        f'<polyline points="{_polyline(_step_points(curve_b.breakpoints, curve_b.values))}" '
        f'fill="none" stroke="{COLOR_B}" stroke-width="2"/>',
        f'<line x1="{_fmt(_x(0))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(1))}" y2="{_fmt(_y(0))}" '
        f'stroke="#333" stroke-width="1"/>',
        f'<line x1="{_fmt(_x(0))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(0))}" y2="{_fmt(_y(1))}" '
        f'stroke="#333" stroke-width="1"/>',
        "".join(ticks),
        f'<text x="{_fmt(_x(0.5))}" y="24" font-size="15" text-anchor="middle" '
        f'fill="#111">{title} (band area {area:.4f})</text>',
        f'<rect x="{_fmt(_x(0.72))}" y="{_fmt(MARGIN_TOP + 6)}" width="12" height="3" '
        f'fill="{COLOR_A}"/>',
        f'<text x="{_fmt(_x(0.72) + 18)}" y="{_fmt(MARGIN_TOP + 12)}" font-size="12" '
        f'fill="#333">{label_a}</text>',
        f'<rect x="{_fmt(_x(0.72))}" y="{_fmt(MARGIN_TOP + 24)}" width="12" height="3" '
        f'fill="{COLOR_B}"/>',
        f'<text x="{_fmt(_x(0.72) + 18)}" y="{_fmt(MARGIN_TOP + 30)}" font-size="12" '
        f'fill="#333">{label_b}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
