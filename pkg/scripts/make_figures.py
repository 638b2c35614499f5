#!/usr/bin/env python3
"""Regenerate every numbered figure preset (CSV tables + gnuplot scripts).

Usage: python scripts/make_figures.py [--output figures] [--only N]
"""

import argparse
import sys
import time

from resonance_lab import run_figure


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", default="figures")
    parser.add_argument("--only", type=int, default=None, help="single figure number")
    args = parser.parse_args()

    figures = [args.only] if args.only is not None else [1, 2, 3, 4, 5, 6]
    worst = 0
    for fig in figures:
        t0 = time.perf_counter()
        result = run_figure(fig, output_dir=args.output)
        dt = time.perf_counter() - t0
        worst = max(worst, result.exit_code)
        names = ", ".join(p.name for p in result.paths)
        print(f"figure {fig}: {names}  [{dt:.2f}s, exit {result.exit_code}]")
    return worst


if __name__ == "__main__":
    sys.exit(main())
