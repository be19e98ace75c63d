"""Sweep the backhaul capacity for the two reference channels, b = 0.9 and b = -0.9.

Writes one CSV and one gnuplot script per figure into the output
directory.  Usage::

    python3 scripts/reproduce_sweeps.py --out results --jobs 4
"""

import argparse
import time
from pathlib import Path

from diamond_bounds import ChannelConfig
from diamond_bounds.sweep import SweepSpec, emit_plot_script, run_sweep, write_csv

CHANNELS = {
    "sym": ChannelConfig(a=0.9, b=0.9, p1=10.0, p2=10.0, c1=0.0, c2=0.0),
    "anti": ChannelConfig(a=0.9, b=-0.9, p1=10.0, p2=10.0, c1=0.0, c2=0.0),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--step", type=float, default=0.05)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for name, base in CHANNELS.items():
        start = time.perf_counter()
        rows = run_sweep(SweepSpec(base, 1.0, 3.0, args.step), jobs=args.jobs)
        csv_path = args.out / f"{name}.csv"
        write_csv(rows, csv_path)
        emit_plot_script(csv_path, args.out / f"{name}.gp")
        print(f"{name}: {len(rows)} rows in {time.perf_counter() - start:.1f} s -> {csv_path}")


if __name__ == "__main__":
    main()
