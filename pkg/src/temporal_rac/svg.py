"""Minimal deterministic SVG line plots (800x600, linear axes)."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 80, 30, 40, 70


@dataclass(frozen=True)
class CurveSpec:
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    x_label: str = "x"
    y_label: str = "y"
    title: str = ""
    output: Path | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ValueError("need matching 1-d x and y with at least two points")
        if not np.all(np.diff(x) > 0):
            raise ValueError("x values must be strictly increasing")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("x and y must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def _ticks(lo: float, hi: float, count: int = 5) -> np.ndarray:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** np.floor(np.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    start = np.ceil(lo / step - 1e-9) * step
    ticks = np.arange(start, hi + step * 1e-6, step)
    return np.round(ticks, 10)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render(spec: CurveSpec) -> str:
    x, y = spec.x, spec.y
    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo, y_hi = float(min(y.min(), 0.0)), float(y.max())
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0
    pw = WIDTH - LEFT - RIGHT
    ph = HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return TOP + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        if x_lo - 1e-9 <= t <= x_hi + 1e-9:
            X = px(t)
            out.append(f'<line x1="{X:.2f}" y1="{TOP + ph}" x2="{X:.2f}" y2="{TOP + ph + 6}" stroke="black"/>')
            out.append(f'<text x="{X:.2f}" y="{TOP + ph + 22}" font-size="13" '
                       f'text-anchor="middle">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        if y_lo - 1e-9 <= t <= y_hi + 1e-9:
            Y = py(t)
            out.append(f'<line x1="{LEFT - 6}" y1="{Y:.2f}" x2="{LEFT}" y2="{Y:.2f}" stroke="black"/>')
            out.append(f'<text x="{LEFT - 10}" y="{Y + 4:.2f}" font-size="13" '
                       f'text-anchor="end">{t:g}</text>')
    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
    out.append(f'<polyline points="{points}" fill="none" stroke="#1f4e9c" stroke-width="2"/>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 20}" font-size="15" '
               f'text-anchor="middle">{_escape(spec.x_label)}</text>')
    out.append(f'<text x="20" y="{TOP + ph / 2:.1f}" font-size="15" text-anchor="middle" '
               f'transform="rotate(-90 20 {TOP + ph / 2:.1f})">{_escape(spec.y_label)}</text>')
    if spec.title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" font-size="16" '
                   f'text-anchor="middle">{_escape(spec.title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write(spec: CurveSpec, path=None) -> Path:
    target = Path(path if path is not None else spec.output)
    target.write_bytes(render(spec).encode("utf-8"))
    return target
