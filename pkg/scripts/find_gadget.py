#!/usr/bin/env python3
"""Search for a 9-vertex two-player gadget and print it with its certificate.

The gadget is a unit-weight graph on 9 vertices in which every one of the
nine single-vertex placements has a best-response value of at least 5 and
the minimum over placements is exactly 5. Used as the no-equilibrium
pressure component of the 3-Partition reduction.

Usage:
    python scripts/find_gadget.py [--seed S] [--budget N] [--restarts R]
"""
from __future__ import annotations

import argparse
import json
import sys

from voronoigame import GadgetVerificationError, gadget_certificate, gadget_search
from voronoigame.cli import jsonable
from voronoigame.reductions import gadget_best_response_values


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=200_000,
                        help="scored candidate graphs before giving up")
    parser.add_argument("--restarts", type=int, default=1,
                        help="try seeds seed, seed+1, ... until one hits")
    args = parser.parse_args(argv)

    for seed in range(args.seed, args.seed + args.restarts):
        try:
            edges = gadget_search(seed=seed, budget=args.budget)
        except GadgetVerificationError:
            print(f"seed {seed}: budget exhausted", file=sys.stderr)
            continue
        report = {
            "edges": [list(e) for e in edges],
            "best_response_values": gadget_best_response_values(edges),
            "certificate": gadget_certificate(edges, seed=seed,
                                              budget=args.budget),
        }
        print(json.dumps(jsonable(report), sort_keys=True, indent=2))
        return 0
    return 3


if __name__ == "__main__":
    sys.exit(main())
