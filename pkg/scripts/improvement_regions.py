"""Report where each bound strictly improves on the next looser one.

For both test channels this prints the backhaul values at which the
four-cut bound beats the simple cut-set bound, and at which the
combined bound beats the four-cut bound, by more than a margin.
"""

import argparse

import numpy as np

from diamond_bounds import theorem1_bound

from reproduce_sweeps import CHANNELS


def intervals(cs, mask):
    """Group consecutive True entries of mask into (first, last) pairs."""
    out, start = [], None
    for c, flag in zip(cs, mask):
        if flag and start is None:
            start = c
        if not flag and start is not None:
            out.append((start, prev))
            start = None
        prev = c
    if start is not None:
        out.append((start, prev))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--margin", type=float, default=1e-3)
    parser.add_argument("--step", type=float, default=0.01)
    args = parser.parse_args()

    cs = np.round(np.arange(1.0, 3.0 + 1e-9, args.step), 10).tolist()
    for name, base in CHANNELS.items():
        reports = [theorem1_bound(base.with_backhaul(c, c)) for c in cs]
        four_cut = [r.simple_cutset - r.cutset_102 > args.margin for r in reports]
        thm = [r.cutset_102 - r.theorem1 > args.margin for r in reports]
        print(f"{name}: four-cut gain on {intervals(cs, four_cut)}")
        print(f"{name}: combined-bound gain on {intervals(cs, thm)}")


if __name__ == "__main__":
    main()
