"""Benchmark sweeps: per-(n, method) synthesis metrics, CSV, and SVG output.

Rows are deterministic for a fixed seed; wall-clock timing is opt-in so a
rerun produces a byte-identical CSV by default.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Iterable, Sequence

from .circuit import abstract_depth, gate_count
from .lowering import lowered_metrics
from .synthesis.mcx import METHODS, SynthesisConfig, synthesize
from .verify import DEFAULT_SEED

CSV_HEADER = "n,method,abstract_depth,lowered_depth,cx_count,total_gates,ancillas,seed,wall_ms"


@dataclass(frozen=True)
class BenchRow:
    n: int
    method: str
    abstract_depth: int
    lowered_depth: int
    cx_count: int
    total_gates: int
    ancillas: int
    seed: int
    wall_ms: float

    def to_csv(self) -> str:
        return (
            f"{self.n},{self.method},{self.abstract_depth},{self.lowered_depth},"
            f"{self.cx_count},{self.total_gates},{self.ancillas},{self.seed},"
            f"{self.wall_ms:.3f}"
        )


def measure(n: int, method: str, cfg: SynthesisConfig | None = None,
            seed: int = DEFAULT_SEED, measure_time: bool = False) -> BenchRow:
    t0 = time.perf_counter()
    circuit = synthesize(n, method, cfg)
    wall = (time.perf_counter() - t0) * 1e3 if measure_time else 0.0
    depth, cx, total_lowered = lowered_metrics(circuit)
    return BenchRow(
        n=n,
        method=method,
        abstract_depth=abstract_depth(circuit),
        lowered_depth=depth,
        cx_count=cx,
        total_gates=gate_count(circuit),
        ancillas=1,
        seed=seed,
        wall_ms=wall,
    )


def run_bench(
    ns: Sequence[int],
    methods: Sequence[str],
    cfg: SynthesisConfig | None = None,
    seed: int = DEFAULT_SEED,
    measure_time: bool = False,
) -> list[BenchRow]:
    if not ns:
        raise ValueError("benchmark range must be nonempty")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    rows = [
        measure(n, method, cfg, seed, measure_time)
        for n in ns
        for method in methods
    ]
    rows.sort(key=lambda r: (r.n, r.method))
    return rows


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    return "\n".join([CSV_HEADER, *(r.to_csv() for r in rows)]) + "\n"


def geometric_range(start: int, stop: int, points: int) -> list[int]:
    """Distinct integer points spaced geometrically from start to stop."""
    if start < 1 or stop < start or points < 1:
        raise ValueError("invalid geometric range")
    if points == 1:
        return [start]
    ratio = (stop / start) ** (1.0 / (points - 1))
    out: list[int] = []
    for i in range(points):
        v = round(start * ratio**i)
        if not out or v > out[-1]:
            out.append(v)
    return out


@lru_cache(maxsize=65536)
def _cached_metrics(n: int, method: str, base_threshold: int | None) -> tuple[int, int, int]:
    cfg = None if base_threshold is None else SynthesisConfig(
        method=method if method in METHODS else "auto", base_threshold=base_threshold
    )
    circuit = synthesize(n, method, cfg)
    depth, cx, _ = lowered_metrics(circuit)
    return abstract_depth(circuit), depth, cx


def metric_fn(name: str, base_threshold: int | None = None):
    """(method, n) -> metric value, cached across crossover scans."""
    idx = {"abstract_depth": 0, "lowered_depth": 1, "cx_count": 2}[name]

    def metric(method: str, n: int) -> float:
        return float(_cached_metrics(n, method, base_threshold)[idx])

    return metric


# -- static SVG chart ------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def svg_chart(rows: Sequence[BenchRow], metric: str = "lowered_depth",
              width: int = 640, height: int = 420) -> str:
    """Log-log polyline chart of one metric per method."""
    series: dict[str, list[tuple[int, float]]] = {}
    for r in rows:
        series.setdefault(r.method, []).append((r.n, float(asdict(r)[metric])))
    for pts in series.values():
        pts.sort()
    xs = [n for pts in series.values() for n, _ in pts]
    ys = [v for pts in series.values() for _, v in pts if v > 0]
    if not xs or not ys:
        raise ValueError("no data to plot")
    lx0, lx1 = math.log10(min(xs)), math.log10(max(xs))
    ly0, ly1 = math.log10(min(ys)), math.log10(max(ys))
    lx1 = lx1 if lx1 > lx0 else lx0 + 1
    ly1 = ly1 if ly1 > ly0 else ly0 + 1
    pad = 56

    def px(n: float) -> float:
        return pad + (math.log10(n) - lx0) / (lx1 - lx0) * (width - 2 * pad)

    def py(v: float) -> float:
        return height - pad - (math.log10(v) - ly0) / (ly1 - ly0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height-pad}" x2="{width-pad}" y2="{height-pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height-pad}" stroke="black"/>',
        f'<text x="{width//2}" y="{height-12}" text-anchor="middle" font-size="12">n (log)</text>',
        f'<text x="14" y="{height//2}" font-size="12" transform="rotate(-90 14 {height//2})" '
        f'text-anchor="middle">{metric} (log)</text>',
    ]
    for d in range(math.floor(lx0), math.ceil(lx1) + 1):
        x = px(10**d)
        if pad - 1 <= x <= width - pad + 1:
            parts.append(f'<line x1="{x:.1f}" y1="{height-pad}" x2="{x:.1f}" '
                         f'y2="{height-pad+5}" stroke="black"/>')
            parts.append(f'<text x="{x:.1f}" y="{height-pad+18}" text-anchor="middle" '
                         f'font-size="11">1e{d}</text>')
    for d in range(math.floor(ly0), math.ceil(ly1) + 1):
        y = py(10**d)
        if pad - 1 <= y <= height - pad + 1:
            parts.append(f'<line x1="{pad-5}" y1="{y:.1f}" x2="{pad}" y2="{y:.1f}" '
                         f'stroke="black"/>')
            parts.append(f'<text x="{pad-8}" y="{y+4:.1f}" text-anchor="end" '
                         f'font-size="11">1e{d}</text>')
    for k, (method, pts) in enumerate(sorted(series.items())):
        color = _PALETTE[k % len(_PALETTE)]
        coords = " ".join(f"{px(n):.1f},{py(max(v, 1e-9)):.1f}" for n, v in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        parts.append(f'<text x="{width-pad+4}" y="{pad + 16*k}" font-size="11" '
                     f'fill="{color}">{method}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
