#!/usr/bin/env python3
"""Social-cost discrepancy experiments.

Enumerates all equilibria of the high-discrepancy ring family and a few
standard benchmark graphs, and prints the discrepancy table together with
the ratio discrepancy / sqrt(k*n).

Usage:
    python scripts/run_experiments.py [--workers N] [--budget B] [--json]
"""
from __future__ import annotations

import argparse
import json
import sys

from voronoigame import build_instance, cycle_instance
from voronoigame.cli import FamilyRow, SuiteConfig, jsonable, run_experiment_suite


def benchmark_instances():
    path6 = build_instance(6, [(i, i + 1) for i in range(5)], k=2)
    grid = build_instance(
        9,
        [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
        + [(r * 3 + c, (r + 1) * 3 + c) for r in range(2) for c in range(3)],
        k=2,
    )
    star = build_instance(7, [(0, i) for i in range(1, 7)], k=2)
    return (
        ("cycle(n=6,k=2)", cycle_instance(6, 2)),
        ("cycle(n=9,k=3)", cycle_instance(9, 3)),
        ("path(n=6,k=2)", path6),
        ("grid(3x3,k=2)", grid),
        ("star(n=7,k=2)", star),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--json", action="store_true",
                        help="emit the raw rows as JSON instead of the table")
    args = parser.parse_args(argv)

    config = SuiteConfig(
        rows=tuple(FamilyRow(k=2, a=a, b=a * a) for a in (1, 2, 3)),
        instances=benchmark_instances(),
        budget=args.budget,
        workers=args.workers,
    )
    result = run_experiment_suite(config)
    if args.json:
        print(json.dumps(jsonable(result["rows"]), sort_keys=True, indent=2))
    else:
        print(result["table"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
