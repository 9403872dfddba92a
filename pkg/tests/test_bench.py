import pytest

from mcgs.bench import (
    CSV_HEADER,
    geometric_range,
    measure,
    rows_to_csv,
    run_bench,
    svg_chart,
)


class TestRows:
    def test_row_counts(self):
        rows = run_bench([8, 16], ["linear", "optimized"])
        assert len(rows) == 4
        assert [(r.n, r.method) for r in rows] == sorted((r.n, r.method) for r in rows)

    def test_csv_shape(self):
        rows = run_bench([8], ["linear"])
        text = rows_to_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2
        assert len(lines[1].split(",")) == len(CSV_HEADER.split(","))

    def test_deterministic_csv(self):
        a = rows_to_csv(run_bench([8, 12], ["linear", "original"]))
        b = rows_to_csv(run_bench([8, 12], ["linear", "original"]))
        assert a == b

    def test_wall_ms_zero_by_default(self):
        row = measure(8, "linear")
        assert row.wall_ms == 0.0
        timed = measure(8, "linear", measure_time=True)
        assert timed.wall_ms >= 0.0

    def test_counts_nonnegative(self):
        row = measure(12, "optimized")
        assert row.abstract_depth > 0
        assert row.lowered_depth >= row.abstract_depth
        assert row.cx_count > 0
        assert row.ancillas == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            run_bench([], ["linear"])
        with pytest.raises(ValueError):
            run_bench([4], ["sorcery"])


class TestGeometricRange:
    def test_endpoints(self):
        ns = geometric_range(64, 4096, 10)
        assert ns[0] == 64 and ns[-1] == 4096
        assert ns == sorted(set(ns))

    def test_degenerate(self):
        assert geometric_range(5, 5, 3) == [5]
        with pytest.raises(ValueError):
            geometric_range(0, 10, 3)


class TestSvg:
    def test_chart_contains_series(self):
        rows = run_bench([8, 16, 32], ["linear", "optimized"])
        svg = svg_chart(rows)
        assert svg.startswith("<svg")
        assert svg.count("<polyline") == 2
        assert "linear" in svg and "optimized" in svg

    def test_empty_rows_rejected(self):
        with pytest.raises(ValueError):
            svg_chart([])
