"""Report records for inequality checks and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Union

__all__ = [
    "CSV_COLUMNS",
    "DEFAULT_TOLERANCE",
    "DegenerateInputError",
    "EMPIRICAL",
    "EstimateReport",
    "SweepResult",
    "make_report",
    "reports_from_json",
    "reports_to_csv",
    "reports_to_json",
    "summarize",
    "write_reports",
]

EMPIRICAL = "empirical"
DEFAULT_TOLERANCE = 1e-3
CSV_COLUMNS = ("name", "t", "lhs", "rhs", "ratio", "constant", "passes")

Constant = Union[float, str]


class DegenerateInputError(ValueError):
    """Zero input where an inequality has a zero right-hand side."""


@dataclass(frozen=True)
class EstimateReport:
    """One inequality check: ``ratio = lhs / rhs_without_constant``.

    ``passes`` is ratio <= claimed_constant * (1 + tolerance) for a numeric
    constant and "ratio is finite" for an empirical one.
    """

    name: str
    lhs: float
    rhs_without_constant: float
    ratio: float
    claimed_constant: Constant
    t: float
    passes: bool
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.ratio >= 0 or math.isnan(self.ratio)):
            raise ValueError(f"negative ratio in report {self.name!r}")

    @property
    def numeric(self) -> bool:
        return not isinstance(self.claimed_constant, str)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs_without_constant": _num(self.rhs_without_constant),
            "ratio": _num(self.ratio),
            "claimed_constant": self.claimed_constant if not self.numeric else _num(self.claimed_constant),
            "t": _num(self.t),
            "passes": bool(self.passes),
            "metadata": {str(k): str(v) for k, v in self.metadata.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EstimateReport":
        c = d["claimed_constant"]
        return cls(
            d["name"],
            _unnum(d["lhs"]),
            _unnum(d["rhs_without_constant"]),
            _unnum(d["ratio"]),
            c if isinstance(c, str) else _unnum(c),
            _unnum(d["t"]),
            bool(d["passes"]),
            dict(d.get("metadata", {})),
        )


def _num(v):
    v = float(v)
    return None if math.isnan(v) else v


def _unnum(v):
    return math.nan if v is None else float(v)


def make_report(
    name: str,
    lhs: float,
    rhs: float,
    constant: Constant,
    t: float = math.nan,
    tolerance: float = DEFAULT_TOLERANCE,
    **metadata: Any,
) -> EstimateReport:
    """Build a report, raising DegenerateInputError when rhs is zero."""
    lhs, rhs = float(lhs), float(rhs)
    if not rhs > 0:
        raise DegenerateInputError(f"{name}: right-hand side is {rhs!r}")
    ratio = lhs / rhs
    if isinstance(constant, str):
        passes = math.isfinite(ratio)
    else:
        passes = bool(ratio <= float(constant) * (1.0 + tolerance))
    meta = {k: str(v) for k, v in metadata.items()}
    meta.setdefault("tolerance", repr(tolerance))
    return EstimateReport(name, lhs, rhs, ratio, constant, float(t), passes, meta)


def summarize(reports: Iterable[EstimateReport]) -> dict:
    reports = list(reports)
    ratios = [r.ratio for r in reports if math.isfinite(r.ratio)]
    return {
        "max_ratio": max(ratios) if ratios else math.nan,
        "min_ratio": min(ratios) if ratios else math.nan,
        "pass_count": sum(1 for r in reports if r.passes),
        "fail_count": sum(1 for r in reports if not r.passes),
    }


@dataclass(frozen=True)
class SweepResult:
    config: Any
    reports: tuple
    summary: dict

    @classmethod
    def build(cls, config, reports) -> "SweepResult":
        reports = tuple(reports)
        return cls(config, reports, summarize(reports))

    @property
    def all_pass(self) -> bool:
        return self.summary["fail_count"] == 0


def _g17(v) -> str:
    return format(float(v), ".17g")


def reports_to_csv(reports: Iterable[EstimateReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        const = r.claimed_constant if not r.numeric else _g17(r.claimed_constant)
        w.writerow([r.name, _g17(r.t), _g17(r.lhs), _g17(r.rhs_without_constant), _g17(r.ratio), const, int(r.passes)])
    return buf.getvalue()


def reports_to_json(reports: Iterable[EstimateReport]) -> str:
    # float repr is the shortest string that round-trips, so parsing back is exact
    return json.dumps([r.to_dict() for r in reports], indent=1) + "\n"


def reports_from_json(text: str) -> list:
    return [EstimateReport.from_dict(d) for d in json.loads(text)]


def write_reports(reports, path, fmt: str = "csv") -> Path:
    path = Path(path)
    text = reports_to_csv(reports) if fmt == "csv" else reports_to_json(reports)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report file {path}: {exc.strerror}") from exc
    return path
