"""Tabular and graphical output.

Both emitters are deterministic: the same study produces byte-identical
files on every run, which the test suite relies on.  Floats are printed
with 9 significant digits, enough to reconstruct every plotted or
tabulated comparison without dumping full binary precision.
"""

from __future__ import annotations

import csv
import io

from .config import display_scale
from .study import SweepTable

CSV_COLUMNS = ("param_name", "param_value", "d_tip_um", "u_um", "theta_mrad",
               "dl_hot_um", "dl_cold_um", "t_peak_c")

_MICRO = 1.0e-6


def _fmt(value: float) -> str:
    return format(value, ".9g")


def _rows(table: SweepTable):
    param = table.plan.parameter
    scale = display_scale(param)
    for rec in table.records:
        yield (
            param,
            _fmt(rec.value / scale),
            _fmt(rec.tip_deflection / _MICRO),
            _fmt(rec.junction_deflection / _MICRO),
            _fmt(rec.junction_rotation * 1.0e3),
            _fmt(rec.hot_elongation / _MICRO),
            _fmt(rec.cold_elongation / _MICRO),
            _fmt(rec.peak_temperature),
        )


def sweep_csv(table: SweepTable) -> str:
    """Render a sweep as CSV text, one row per operating point."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(_rows(table))
    return buf.getvalue()


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def line_chart_svg(xs, ys, x_label: str, y_label: str) -> str:
    """An 800x600 single-polyline chart with min/max tick labels.

    Degenerate ranges (single point, constant response) are padded so
    the geometry stays finite and the file stays valid.
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    if not xs or len(xs) != len(ys):
        raise ValueError("need equal, non-empty coordinate lists")
    width, height = 800, 600
    left, right, top, bottom = 80.0, 24.0, 24.0, 64.0
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    plot_w = width - left - right
    plot_h = height - top - bottom

    def px(x):
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return height - bottom - (y - y_lo) / (y_hi - y_lo) * plot_h

    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    axis_y = height - bottom
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{axis_y}" x2="{width - right}" y2="{axis_y}" '
        'stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{axis_y}" '
        'stroke="black"/>',
        f'<polyline fill="none" stroke="#1050a0" stroke-width="1.5" '
        f'points="{points}"/>',
        f'<text x="{left}" y="{axis_y + 18:.0f}" font-size="12" '
        f'text-anchor="middle">{_fmt(min(xs))}</text>',
        f'<text x="{width - right}" y="{axis_y + 18:.0f}" font-size="12" '
        f'text-anchor="middle">{_fmt(max(xs))}</text>',
        f'<text x="{left - 6}" y="{axis_y + 4:.0f}" font-size="12" '
        f'text-anchor="end">{_fmt(min(ys))}</text>',
        f'<text x="{left - 6}" y="{top + 4:.0f}" font-size="12" '
        f'text-anchor="end">{_fmt(max(ys))}</text>',
        f'<text x="{left + plot_w / 2:.0f}" y="{height - 20}" font-size="13" '
        f'text-anchor="middle">{_escape(x_label)}</text>',
        f'<text x="8" y="16" font-size="13">{_escape(y_label)}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def sweep_chart_svg(table: SweepTable) -> str:
    """Tip deflection against the swept parameter, display units."""
    param = table.plan.parameter
    scale = display_scale(param)
    xs = [rec.value / scale for rec in table.records]
    ys = [rec.tip_deflection / _MICRO for rec in table.records]
    unit = {"voltage": "V", "ratio": "", "gap": "um",
            "hot_arm_length": "um"}[param]
    x_label = f"{param} [{unit}]" if unit else param
    return line_chart_svg(xs, ys, x_label, "tip deflection [um]")
