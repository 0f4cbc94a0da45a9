"""Text, CSV, JSON and SVG renderings of the package's tables and reports.

Machine formats (CSV, JSON) carry full float precision via ``repr``; only the
text renderer rounds. SVG output is a single self-contained document.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Mapping, Sequence

from .bayes import JohnsonTableRow
from .positivity import BoundTable, format_percent

__all__ = [
    "FORMATS",
    "render_bound_table",
    "render_johnson",
    "render_record",
    "render_rows",
    "parse_bound_csv",
]

FORMATS = ("text", "csv", "json", "svg")

JOHNSON_COLUMNS = ("bf_lo", "bf_hi", "p_lo", "p_hi", "prob_bin", "prob_h0_given_bin")


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _num(x) -> str:
    # repr round-trips exactly through float()
    return repr(float(x))


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def to_json(payload: Any) -> str:
    return json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n"


def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _align(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _fmt_text(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)


def _escape(text: str) -> str:
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


# ---------------------------------------------------------------- bound table

def render_bound_table(table: BoundTable, fmt: str = "text") -> str:
    _check_format(fmt)
    if not table.alphas or not table.ratios:
        raise ValueError("empty table")
    if fmt == "text":
        header = ["r \\ alpha"] + [f"{a:g}" for a in table.alphas]
        body = [
            [f"{r:g}"] + [format_percent(v) for v in row]
            for r, row in zip(table.ratios, table.cells)
        ]
        return _align([header] + body)
    if fmt == "csv":
        rows = [["ratio"] + [_num(a) for a in table.alphas]]
        rows += [[_num(r)] + [_num(v) for v in row] for r, row in zip(table.ratios, table.cells)]
        return _csv(rows)
    if fmt == "json":
        return to_json({
            "alphas": list(table.alphas),
            "ratios": list(table.ratios),
            "rows": [
                {
                    "ratio": r,
                    "cells": [
                        {"alpha": a, "bound": float(v), "display": format_percent(v)}
                        for a, v in zip(table.alphas, row)
                    ],
                }
                for r, row in zip(table.ratios, table.cells)
            ],
        })
    return _bound_heatmap_svg(table)


def parse_bound_csv(text: str) -> tuple[list[float], list[float], list[list[float]]]:
    """Inverse of the CSV rendering: ``(alphas, ratios, cells)``."""
    rows = list(csv.reader(io.StringIO(text)))
    alphas = [float(a) for a in rows[0][1:]]
    ratios = [float(r[0]) for r in rows[1:]]
    cells = [[float(v) for v in r[1:]] for r in rows[1:]]
    return alphas, ratios, cells


def _heat_colour(value: float) -> str:
    # white -> red, saturating at 1
    t = max(0.0, min(1.0, value))
    g = int(round(255 * (1.0 - 0.85 * t)))
    return f"#ff{g:02x}{g:02x}"


def _bound_heatmap_svg(table: BoundTable) -> str:
    cell_w, cell_h = 90, 44
    left, top = 90, 70
    ncol, nrow = len(table.alphas), len(table.ratios)
    width = left + ncol * cell_w + 30
    height = top + nrow * cell_h + 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="13">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="15">'
        "Maximal share of false positives among positive results</text>",
        f'<text x="{left + ncol * cell_w / 2}" y="48" text-anchor="middle">significance level alpha</text>',
        f'<text x="18" y="{top + nrow * cell_h / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + nrow * cell_h / 2})">positivity ratio r</text>',
    ]
    for j, a in enumerate(table.alphas):
        x = left + j * cell_w + cell_w / 2
        parts.append(f'<text x="{x}" y="{top - 6}" text-anchor="middle">{_escape(f"{a:g}")}</text>')
    for i, r in enumerate(table.ratios):
        y = top + i * cell_h
        parts.append(
            f'<text x="{left - 8}" y="{y + cell_h / 2 + 4}" text-anchor="end">{_escape(f"{r:g}")}</text>'
        )
        for j, v in enumerate(table.cells[i]):
            x = left + j * cell_w
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" '
                f'fill="{_heat_colour(float(v))}" stroke="#444444"/>'
            )
            parts.append(
                f'<text x="{x + cell_w / 2}" y="{y + cell_h / 2 + 4}" text-anchor="middle">'
                f"{_escape(format_percent(float(v)))}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -------------------------------------------------------------- johnson table

def _johnson_values(row: JohnsonTableRow):
    return (row.interval.lo, row.interval.hi, row.p_lo, row.p_hi, row.prob_bin, row.prob_h0_given_bin)


def render_johnson(rows: Sequence[JohnsonTableRow], fmt: str = "text", meta: Mapping | None = None) -> str:
    _check_format(fmt)
    if not rows:
        raise ValueError("empty table")
    meta = dict(meta or {})
    if fmt == "text":
        header = ["BF from", "BF to", "p from", "p to", "P[E]", "P[H0|E]"]
        body = []
        for row in rows:
            lo, hi, p_lo, p_hi, pe, ph0 = _johnson_values(row)
            body.append([
                f"{lo:.4g}", "inf" if math.isinf(hi) else f"{hi:.4g}",
                f"{p_lo:.2g}", f"{p_hi:.2g}", f"{pe:.3g}", f"{ph0:.2g}",
            ])
        out = _align([header] + body)
        for key, value in meta.items():
            out += f"{key}: {_fmt_text(value)}\n"
        return out
    if fmt == "csv":
        return _csv([JOHNSON_COLUMNS] + [[_num(v) for v in _johnson_values(r)] for r in rows])
    if fmt == "json":
        records = [dict(zip(JOHNSON_COLUMNS, _johnson_values(r))) for r in rows]
        return to_json({**meta, "rows": records})
    return _johnson_bars_svg(rows)


def _johnson_bars_svg(rows: Sequence[JohnsonTableRow]) -> str:
    series = (("P[E]", "#1f77b4", 4), ("P[H0|E]", "#d62728", 5))
    group_w, bar_w = 110, 36
    left, top, plot_h = 60, 50, 220
    width = left + group_w * len(rows) + 150
    height = top + plot_h + 60
    ymax = max(max(v[4], v[5]) for v in map(_johnson_values, rows))
    ymax = max(ymax, 1e-12) * 1.1
    base = top + plot_h
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">'
        "Bayes-factor bins: bin probability and share of true nulls</text>",
        f'<line x1="{left}" y1="{base}" x2="{left + group_w * len(rows)}" y2="{base}" stroke="#000000"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{base}" stroke="#000000"/>',
    ]
    for g, row in enumerate(rows):
        vals = _johnson_values(row)
        gx = left + g * group_w + 15
        for s, (_, colour, idx) in enumerate(series):
            h = plot_h * vals[idx] / ymax
            x = gx + s * (bar_w + 4)
            parts.append(
                f'<rect x="{x}" y="{base - h:.2f}" width="{bar_w}" height="{h:.2f}" fill="{colour}"/>'
            )
            parts.append(
                f'<text x="{x + bar_w / 2}" y="{base - h - 4:.2f}" text-anchor="middle" font-size="10">'
                f"{vals[idx]:.2g}</text>"
            )
        hi = "inf" if math.isinf(vals[1]) else f"{vals[1]:.3g}"
        parts.append(
            f'<text x="{gx + bar_w + 2}" y="{base + 16}" text-anchor="middle">'
            f"{_escape(f'[{vals[0]:.3g}, {hi}]')}</text>"
        )
    lx = left + group_w * len(rows) + 15
    for s, (label, colour, _) in enumerate(series):
        y = top + 10 + 20 * s
        parts.append(f'<rect x="{lx}" y="{y - 10}" width="12" height="12" fill="{colour}"/>')
        parts.append(f'<text x="{lx + 18}" y="{y}">{_escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------- generic payloads

def _flatten(record: Mapping, prefix: str = ""):
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            yield from _flatten(value, name + ".")
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                if isinstance(item, Mapping):
                    yield from _flatten(item, f"{name}.{i}.")
                else:
                    yield f"{name}.{i}", item
        else:
            yield name, value


def render_record(record: Mapping, fmt: str = "text") -> str:
    """Render a (possibly nested) key/value payload; SVG is refused."""
    _check_format(fmt)
    if fmt == "svg":
        raise ValueError("svg output is only available for the table and johnson commands")
    if fmt == "json":
        return to_json(record)
    flat = list(_flatten(record))
    if fmt == "csv":
        return _csv([("key", "value")] + [
            (k, _num(v) if isinstance(v, float) else ("" if v is None else v)) for k, v in flat
        ])
    width = max(len(k) for k, _ in flat)
    return "".join(f"{k.ljust(width)}  {_fmt_text(v)}\n" for k, v in flat)


def render_rows(columns: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str = "text") -> str:
    """Render a plain list of homogeneous rows (no SVG)."""
    _check_format(fmt)
    if fmt == "svg":
        raise ValueError("svg output is only available for the table and johnson commands")
    if not rows:
        raise ValueError("empty table")
    if fmt == "json":
        return to_json([dict(zip(columns, r)) for r in rows])
    if fmt == "csv":
        return _csv([list(columns)] + [[_num(v) if isinstance(v, float) else v for v in r] for r in rows])
    return _align([list(columns)] + [[_fmt_text(v) for v in r] for r in rows])
