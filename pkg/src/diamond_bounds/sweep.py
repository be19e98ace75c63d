"""Backhaul-capacity sweeps, CSV output and gnuplot script generation."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from diamond_bounds.bounds import BoundReport, theorem1_bound
from diamond_bounds.core_model import ChannelConfig, InvalidInput, OptimizerOptions
from diamond_bounds.mimo_bc import DEFAULT_OPTIONS

CSV_COLUMNS = (
    "C",
    "simple_cutset",
    "cutset_102",
    "theorem1",
    "bound_101_a",
    "bound_101_b",
    "argmax_rho_102",
    "argmax_rho_101_a",
    "argmax_rho_101_b",
)
ROW_ORDER_TOL = 1e-6


class InvariantViolation(RuntimeError):
    """A computed row breaks ``theorem1 <= cutset_102 <= simple_cutset``; points at an optimizer bug."""


@dataclass(frozen=True)
class SweepSpec:
    """Sweep with ``C1 = C2 = C`` for ``C = c_min, c_min + step, ... <= c_max``."""

    base: ChannelConfig
    c_min: float
    c_max: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.c_min) and math.isfinite(self.c_max) and math.isfinite(self.step)):
            raise InvalidInput("sweep bounds must be finite")
        if self.c_min < 0 or self.c_max < self.c_min:
            raise InvalidInput(f"need 0 <= c_min <= c_max, got [{self.c_min}, {self.c_max}]")
        if self.step <= 0:
            raise InvalidInput("step must be positive")

    def capacities(self) -> list[float]:
        n = int(math.floor((self.c_max - self.c_min) / self.step + 1e-9)) + 1
        return [round(self.c_min + i * self.step, 12) for i in range(n)]


@dataclass(frozen=True)
class SweepRow:
    c: float
    simple_cutset: float
    cutset_102: float
    theorem1: float
    bound_101_a: float
    bound_101_b: float
    argmax_rho_102: float
    argmax_rho_101_a: float
    argmax_rho_101_b: float

    @classmethod
    def from_report(cls, c: float, report: BoundReport) -> SweepRow:
        return cls(
            c,
            report.simple_cutset,
            report.cutset_102,
            report.theorem1,
            report.bound_101_a,
            report.bound_101_b,
            report.argmax_rho_102,
            report.argmax_rho_101_a,
            report.argmax_rho_101_b,
        )

    def ordering_violation(self) -> float:
        return max(0.0, self.theorem1 - self.cutset_102, self.cutset_102 - self.simple_cutset)


assert tuple(f.name for f in fields(SweepRow))[1:] == CSV_COLUMNS[1:]


def eval_point(cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> BoundReport:
    return theorem1_bound(cfg, opts)


def _row(args) -> SweepRow:
    base, c, opts = args
    return SweepRow.from_report(c, theorem1_bound(base.with_backhaul(c, c), opts))


def run_sweep(spec: SweepSpec, opts: OptimizerOptions = DEFAULT_OPTIONS, jobs: int = 1) -> list[SweepRow]:
    """Evaluate every sweep point; rows come back in increasing C regardless of ``jobs``."""
    work = [(spec.base, c, opts) for c in spec.capacities()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, work))
    return [_row(w) for w in work]


def check_rows(rows: list[SweepRow], tol: float = ROW_ORDER_TOL) -> None:
    for row in rows:
        gap = row.ordering_violation()
        if gap > tol:
            raise InvariantViolation(
                f"ordering broken at C={row.c}: theorem1={row.theorem1:.9f}, "
                f"cutset_102={row.cutset_102:.9f}, simple_cutset={row.simple_cutset:.9f}"
            )


def format_csv(rows: list[SweepRow]) -> str:
    check_rows(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([f"{v:.6f}" for v in astuple(row)])
    return buf.getvalue()


def write_csv(rows: list[SweepRow], path: str | Path) -> None:
    text = format_csv(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


_PLOT_TEMPLATE = """\
# gnuplot script: sum-rate upper bounds versus backhaul capacity
# data: {csv}
set datafile separator ","
set terminal pngcairo size 800,600
set output "{png}"
set xlabel "C = C_1 = C_2 (bits/channel use)"
set ylabel "upper bound on R_1 + R_2 (bits/channel use)"
set key bottom right
set grid
"""

_PLOT_COMMAND = """\
plot "{csv}" using 1:2 every ::1 with lines lw 2 title "simple cut-set", \\
     "{csv}" using 1:3 every ::1 with linespoints pt 6 title "four-cut cut-set", \\
     "{csv}" using 1:4 every ::1 with linespoints pt 4 title "combined bound"
"""


def emit_plot_script(csv_path: str | Path, out_path: str | Path) -> str:
    """Write a gnuplot script drawing columns 2-4 of a sweep CSV against column 1.

    Raises ``InvalidInput`` if the CSV header is not the sweep schema.  A
    header-only CSV yields a script with no plot command.
    """
    csv_path = Path(csv_path)
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        n_rows = sum(1 for row in reader if row)
    if header is None or tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise InvalidInput(f"{csv_path}: header {header} does not match {','.join(CSV_COLUMNS)}")
    out_path = Path(out_path)
    text = _PLOT_TEMPLATE.format(csv=csv_path.as_posix(), png=out_path.with_suffix(".png").as_posix())
    if n_rows:
        text += _PLOT_COMMAND.format(csv=csv_path.as_posix())
    else:
        text += "# no data rows: nothing to plot\n"
    out_path.write_text(text, encoding="utf-8")
    return text
