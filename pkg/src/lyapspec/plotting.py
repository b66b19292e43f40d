"""Standalone SVG rendering of a Lyapunov spectrum."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 800, 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 30, 40, 70


def _ticks(lo, hi, count=6):
    return np.linspace(lo, hi, count)


def render_svg(alphas, values, inflections=(), title: str = "") -> str:
    """SVG document of the curve ``(alphas, values)``.

    ``inflections`` is a sequence of ``(alpha, L)`` pairs; each is drawn as a
    circle, and consecutive ones are joined by dashed segments.
    """
    alphas = np.asarray(alphas, dtype=float)
    values = np.asarray(values, dtype=float)
    x_lo, x_hi = float(alphas.min()), float(alphas.max())
    y_lo, y_hi = 0.0, max(float(values.max()), 1e-12) * 1.05
    plot_w = WIDTH - _LEFT - _RIGHT
    plot_h = HEIGHT - _TOP - _BOTTOM

    def px(a):
        return _LEFT + (a - x_lo) / (x_hi - x_lo) * plot_w

    def py(v):
        return _TOP + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH / 2}" y="{_TOP - 15}" text-anchor="middle" '
            f'font-size="16">{escape(title)}</text>'
        )
    x0, y0 = _LEFT, _TOP + plot_h
    out.append(
        f'<g class="axes" stroke="black" stroke-width="1">'
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}"/>'
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_TOP}"/></g>'
    )
    for a in _ticks(x_lo, x_hi):
        out.append(
            f'<text class="tick" x="{px(a):.2f}" y="{y0 + 20}" text-anchor="middle" '
            f'font-size="12">{a:.4g}</text>'
        )
    for v in _ticks(y_lo, y_hi):
        out.append(
            f'<text class="tick" x="{x0 - 8}" y="{py(v) + 4:.2f}" text-anchor="end" '
            f'font-size="12">{v:.3g}</text>'
        )
    out.append(
        f'<text class="xlabel" x="{x0 + plot_w / 2}" y="{HEIGHT - 20}" '
        f'text-anchor="middle" font-size="14">alpha</text>'
    )
    out.append(
        f'<text class="ylabel" x="20" y="{_TOP + plot_h / 2}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 20 {_TOP + plot_h / 2})">L</text>'
    )
    points = " ".join(f"{px(a):.2f},{py(v):.2f}" for a, v in zip(alphas, values))
    out.append(
        f'<polyline class="spectrum" fill="none" stroke="navy" stroke-width="1.5" '
        f'points="{points}"/>'
    )
    marks = sorted(inflections)
    for (a1, v1), (a2, v2) in zip(marks[:-1], marks[1:]):
        out.append(
            f'<line class="interpolation" x1="{px(a1):.2f}" y1="{py(v1):.2f}" '
            f'x2="{px(a2):.2f}" y2="{py(v2):.2f}" stroke="firebrick" '
            f'stroke-dasharray="6,4"/>'
        )
    for a, v in marks:
        out.append(
            f'<circle class="inflection" cx="{px(a):.2f}" cy="{py(v):.2f}" r="4" '
            f'fill="firebrick"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
