"""Flat-file emission: CSV rows, JSON documents and self-contained SVG plots.

Numbers are printed with 15 significant digits and a '.' decimal separator,
independent of locale, so repeated runs with identical inputs produce
byte-identical files (the basis for diff-style golden tests and resumable
sweeps).  The SVG writer draws directly -- no plotting dependency -- and
embeds no external assets.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .critical import ClassificationReport, SweepReport
from .extension import BoundResult
from .spectra import Family

CURVE_CSV_HEADER = "L,bound,family,harmonic_index"
SWEEP_CSV_HEADER = "i,k,k_cover_end,verdict,witness_L,sup_estimate,asymptotic_limit"
CLASSIFY_CSV_HEADER = "k,verdict,witness_L,sup_estimate,asymptotic_limit"


def fmt(x: float) -> str:
    return format(float(x), ".15g")


def _opt(x: Optional[float]) -> str:
    return "" if x is None else fmt(x)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def bound_csv(result: BoundResult) -> str:
    lines = ["position,value,family,harmonic_index,multiplicity,cumulative,selected"]
    cum = 0
    for pos, cand in enumerate(result.candidates):
        cum += cand.multiplicity
        lines.append(
            f"{pos},{fmt(cand.value)},{cand.family.value},{cand.harmonic_index},"
            f"{cand.multiplicity},{cum},{1 if pos == result.l1 else 0}"
        )
    return "\n".join(lines) + "\n"


def curve_csv(rows: Sequence[tuple[float, BoundResult]]) -> str:
    lines = [CURVE_CSV_HEADER]
    for L, res in rows:
        lines.append(
            f"{fmt(L)},{fmt(res.bound)},{res.achieved_by.family.value},"
            f"{res.achieved_by.harmonic_index}"
        )
    return "\n".join(lines) + "\n"


def classify_csv_row(report: ClassificationReport) -> str:
    return (
        f"{report.k},{report.verdict.value},{_opt(report.witness_length)},"
        f"{fmt(report.supremum_estimate)},{fmt(report.asymptotic_limit)}"
    )


def classify_csv(report: ClassificationReport) -> str:
    return CLASSIFY_CSV_HEADER + "\n" + classify_csv_row(report) + "\n"


def sweep_csv(report: SweepReport) -> str:
    lines = [SWEEP_CSV_HEADER]
    for e in report.entries:
        r = e.report
        lines.append(
            f"{e.i},{e.k},{e.k_cover_end},{r.verdict.value},"
            f"{_opt(r.witness_length)},{fmt(r.supremum_estimate)},"
            f"{fmt(r.asymptotic_limit)}"
        )
    return "\n".join(lines) + "\n"


def diagnosis_csv(values: Sequence[int]) -> str:
    lines = ["i,k"]
    for i, k in enumerate(values, start=1):
        lines.append(f"{i},{k}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def bound_json(n: int, k: int, length: float, result: BoundResult) -> dict:
    return {
        "n": n,
        "k": k,
        "length": length,
        "bound": result.bound,
        "l0": result.l0,
        "l1": result.l1,
        "achieved_by": _candidate_json(result.achieved_by),
        "candidates": [_candidate_json(c) for c in result.candidates],
    }


def _candidate_json(c) -> dict:
    return {
        "value": c.value,
        "family": c.family.value,
        "harmonic_index": c.harmonic_index,
        "multiplicity": c.multiplicity,
    }


def curve_json(n: int, k: int, rows: Sequence[tuple[float, BoundResult]]) -> dict:
    return {
        "n": n,
        "k": k,
        "rows": [
            {
                "L": L,
                "bound": res.bound,
                "family": res.achieved_by.family.value,
                "harmonic_index": res.achieved_by.harmonic_index,
            }
            for L, res in rows
        ],
    }


def classify_json(report: ClassificationReport) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "verdict": report.verdict.value,
        "witness_length": report.witness_length,
        "supremum_estimate": report.supremum_estimate,
        "asymptotic_limit": report.asymptotic_limit,
        "scan_horizon": report.scan_horizon,
        "samples_used": report.samples_used,
    }


def sweep_json(report: SweepReport) -> dict:
    return {
        "n": report.n,
        "entries": [
            {
                "i": e.i,
                "k": e.k,
                "k_cover_end": e.k_cover_end,
                **classify_json(e.report),
            }
            for e in report.entries
        ],
    }


def diagnosis_json(n: int, values: Sequence[int]) -> dict:
    return {"n": n, "values": [{"i": i, "k": k} for i, k in enumerate(values, 1)]}


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_W, _H = 960, 600
_ML, _MR, _MT, _MB = 72, 24, 40, 56

_BOUND_STYLE = 'fill="none" stroke="#d62728" stroke-width="2.5"'
_DIRICHLET_STYLE = 'fill="none" stroke="#1f77b4" stroke-width="1"'
_NEUMANN_STYLE = 'fill="none" stroke="#2ca02c" stroke-width="1"'


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


class _Frame:
    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi

    def x(self, v: float) -> float:
        t = (v - self.x_lo) / (self.x_hi - self.x_lo)
        return _ML + t * (_W - _ML - _MR)

    def y(self, v: float) -> float:
        t = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return _H - _MB - t * (_H - _MT - _MB)

    def contains_y(self, v: float) -> bool:
        return self.y_lo <= v <= self.y_hi


def _path(frame: _Frame, xs, ys) -> str:
    # clipped path: move-to whenever the previous point fell outside the frame
    parts = []
    pen_down = False
    for x, y in zip(xs, ys):
        if frame.contains_y(y):
            cmd = "L" if pen_down else "M"
            parts.append(f"{cmd}{frame.x(x):.2f},{frame.y(y):.2f}")
            pen_down = True
        else:
            pen_down = False
    return " ".join(parts)


def render_curve_svg(
    n: int,
    k: int,
    rows: Sequence[tuple[float, BoundResult]],
    mixed: Optional[dict] = None,
    annotation: Optional[ClassificationReport] = None,
) -> str:
    """Self-contained SVG of the bound curve, linear in both axes.

    `mixed` maps Family to a list of (harmonic_index, values) branch curves
    sampled on the same grid; they are drawn thin (Dirichlet blue, Neumann
    green) under the highlighted bound.  `annotation` adds the verdict, the
    witness length and the supremum estimate of a classification run.
    """
    if not rows:
        raise ValueError("cannot plot an empty curve")
    xs = [L for L, _ in rows]
    bounds = [res.bound for _, res in rows]
    y_hi = 1.1 * max(bounds)
    frame = _Frame(0.0, max(xs), 0.0, y_hi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]

    # axes and ticks
    ax = (
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" '
        f'stroke="black" stroke-width="1"/>'
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" '
        f'stroke="black" stroke-width="1"/>'
    )
    parts.append(ax)
    for t in _ticks(frame.x_lo, frame.x_hi):
        px = frame.x(t)
        parts.append(
            f'<line x1="{px:.2f}" y1="{_H - _MB}" x2="{px:.2f}" y2="{_H - _MB + 5}" '
            f'stroke="black" stroke-width="1"/>'
            f'<text x="{px:.2f}" y="{_H - _MB + 20}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">{t:g}</text>'
        )
    for t in _ticks(frame.y_lo, frame.y_hi):
        py = frame.y(t)
        parts.append(
            f'<line x1="{_ML - 5}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" '
            f'stroke="black" stroke-width="1"/>'
            f'<text x="{_ML - 9}" y="{py + 4:.2f}" font-size="12" '
            f'text-anchor="end" font-family="sans-serif">{t:.4g}</text>'
        )
    parts.append(
        f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 14}" font-size="14" '
        f'text-anchor="middle" font-family="sans-serif">meridian length L</text>'
    )
    parts.append(
        f'<text x="18" y="{(_MT + _H - _MB) / 2:.0f}" font-size="14" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 18 {(_MT + _H - _MB) / 2:.0f})">eigenvalue</text>'
    )

    if mixed:
        for family, style in (
            (Family.DIRICHLET, _DIRICHLET_STYLE),
            (Family.NEUMANN, _NEUMANN_STYLE),
        ):
            for _idx, values in mixed.get(family, []):
                d = _path(frame, xs, values)
                if d:
                    parts.append(f'<path {style} d="{d}"/>')

    parts.append(f'<path {_BOUND_STYLE} d="{_path(frame, xs, bounds)}"/>')

    # legend
    lx, ly = _W - _MR - 210, _MT + 10
    legend = [("sharp bound", _BOUND_STYLE)]
    if mixed:
        legend += [
            ("Dirichlet branches", _DIRICHLET_STYLE),
            ("Neumann branches", _NEUMANN_STYLE),
        ]
    for i, (label, style) in enumerate(legend):
        yy = ly + 18 * i
        parts.append(
            f'<line x1="{lx}" y1="{yy}" x2="{lx + 28}" y2="{yy}" {style}/>'
            f'<text x="{lx + 34}" y="{yy + 4}" font-size="12" '
            f'font-family="sans-serif">{label}</text>'
        )

    # annotation block, bottom right
    label = f"B_{n}^{k}"
    anno = [label]
    if annotation is not None:
        anno.append(annotation.verdict.value)
        if annotation.witness_length is not None:
            anno.append(f"L* = {annotation.witness_length:.6g}")
        anno.append(f"sup = {annotation.supremum_estimate:.6g}")
        anno.append(f"limit = {annotation.asymptotic_limit:.6g}")
    for i, line in enumerate(anno):
        parts.append(
            f'<text x="{_W - _MR - 10}" y="{_H - _MB - 12 - 16 * (len(anno) - 1 - i)}" '
            f'font-size="13" text-anchor="end" font-family="sans-serif">{line}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
