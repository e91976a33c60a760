"""Byte-frequency statistics for judging how much repetition survives encryption.

A constant plaintext has index of coincidence 1.0 and one long run; a good
position-dependent shift should spread it over many byte values.

The index of coincidence here is the raw 256-symbol probability
``sum c(c-1) / (N(N-1))`` without the usual alphabet-size normalisation, so
uniform bytes score about 1/256.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_message
from .exceptions import InsufficientDataError

__all__ = [
    "ByteHistogram",
    "AnalysisReport",
    "ByteStats",
    "histogram",
    "index_of_coincidence",
    "chi_square_uniform",
    "max_run_length",
    "analyze",
    "render_report",
    "UNDEFINED",
]

UNDEFINED = "undefined"
CHART_WIDTH = 60


@dataclass(frozen=True, eq=False)
class ByteHistogram:
    counts: np.ndarray
    total: int

    def __eq__(self, other):
        if not isinstance(other, ByteHistogram):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.counts, other.counts)

    @property
    def distinct(self) -> int:
        return int(np.count_nonzero(self.counts))


@dataclass(frozen=True)
class AnalysisReport:
    """Repetition metrics for one byte sequence.

    ``index_of_coincidence`` is ``None`` below two bytes and
    ``chi_square_uniform`` is ``None`` for empty input.
    """

    histogram: ByteHistogram
    index_of_coincidence: float | None
    chi_square_uniform: float | None
    max_run_length: int
    distinct_bytes: int

    @property
    def total(self) -> int:
        return self.histogram.total


class ByteStats:
    """Incremental histogram and run tracker for chunked input."""

    def __init__(self) -> None:
        self.counts = np.zeros(256, dtype=np.int64)
        self.total = 0
        self.max_run = 0
        self._last = -1
        self._run = 0

    def update(self, chunk) -> "ByteStats":
        data = check_message(chunk)
        n = len(data)
        if n == 0:
            return self
        self.counts += np.bincount(data, minlength=256)
        self.total += n

        # run boundaries inside the chunk
        starts = np.flatnonzero(data[1:] != data[:-1]) + 1
        bounds = np.concatenate(([0], starts, [n]))
        runs = np.diff(bounds)
        if int(data[0]) == self._last:
            runs[0] += self._run
        self.max_run = max(self.max_run, int(runs.max()))
        self._last = int(data[-1])
        self._run = int(runs[-1])
        return self

    def histogram(self) -> ByteHistogram:
        return ByteHistogram(counts=self.counts.copy(), total=self.total)

    def report(self) -> AnalysisReport:
        h = self.histogram()
        return AnalysisReport(
            histogram=h,
            index_of_coincidence=index_of_coincidence(h) if h.total >= 2 else None,
            chi_square_uniform=chi_square_uniform(h) if h.total >= 1 else None,
            max_run_length=self.max_run,
            distinct_bytes=h.distinct,
        )


def histogram(data) -> ByteHistogram:
    return ByteStats().update(data).histogram()


def index_of_coincidence(h: ByteHistogram) -> float:
    """Probability that two distinct positions hold the same byte.

    >>> index_of_coincidence(histogram(b"aab"))
    0.3333333333333333
    """
    n = h.total
    if n < 2:
        raise InsufficientDataError(f"index of coincidence needs >= 2 bytes, got {n}")
    counts = [int(c) for c in h.counts]
    # exact integers, then one correctly rounded division
    return sum(c * (c - 1) for c in counts) / (n * (n - 1))


def chi_square_uniform(h: ByteHistogram) -> float:
    """Pearson chi-square statistic against a uniform byte distribution."""
    n = h.total
    if n < 1:
        raise InsufficientDataError("chi-square needs at least one byte")
    # sum (c - n/256)^2 / (n/256)  ==  (256 * sum c^2 - n^2) / n
    sum_sq = sum(int(c) ** 2 for c in h.counts)
    return (256 * sum_sq - n * n) / n


def max_run_length(data) -> int:
    return ByteStats().update(data).max_run


def analyze(data) -> AnalysisReport:
    return ByteStats().update(data).report()


def _format_number(value) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def _render_csv(report: AnalysisReport) -> str:
    lines = ["byte,count"]
    lines.extend(f"{b},{int(c)}" for b, c in enumerate(report.histogram.counts))
    lines += [
        f"total,{report.total}",
        f"distinct,{report.distinct_bytes}",
        f"max_run,{report.max_run_length}",
        f"ic,{_format_number(report.index_of_coincidence)}",
        f"chi2,{_format_number(report.chi_square_uniform)}",
    ]
    return "\n".join(lines) + "\n"


def _bar_length(count: int, peak: int, width: int) -> int:
    return math.ceil(count * width / peak) if peak else 0


def _render_chart(report: AnalysisReport, width: int = CHART_WIDTH) -> str:
    counts = report.histogram.counts
    peak = int(counts.max()) if report.total else 0
    lines = [
        "# byte frequency (bar width scaled to the most frequent byte)",
        "# ic = sum c(c-1) / (N(N-1)), unnormalised over 256 symbols",
    ]
    for b in np.flatnonzero(counts):
        c = int(counts[b])
        glyph = chr(b) if 0x21 <= b < 0x7F else "."
        lines.append(f"0x{b:02x} {glyph} |{'#' * _bar_length(c, peak, width)} {c}")
    lines += [
        f"total    {report.total}",
        f"distinct {report.distinct_bytes}",
        f"max_run  {report.max_run_length}",
        f"ic       {_format_number(report.index_of_coincidence)}",
        f"chi2     {_format_number(report.chi_square_uniform)}",
    ]
    return "\n".join(lines) + "\n"


def render_report(report: AnalysisReport, format: str = "csv") -> str:
    """Render as ``csv`` (all 256 bins plus a metrics footer) or ``chart``."""
    if format == "csv":
        return _render_csv(report)
    if format in ("chart", "ascii-chart"):
        return _render_chart(report)
    raise ValueError(f"unknown report format {format!r}; expected 'csv' or 'chart'")
