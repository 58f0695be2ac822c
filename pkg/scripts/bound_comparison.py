#!/usr/bin/env python3
"""Compare the three bound rules on randomly generated inputs.

Generates a directory of random bi-filtrations, runs every pair with the
global, local constant, and local linear bounds, and prints per-pair call
counts plus the aggregate call and time ratios.

Example:
    python scripts/bound_comparison.py --pairs 5 --vertices 100 --epsilon 0.5
"""

import argparse
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from matchdist.cli import main as cli_main
from matchdist.generators import GenSpec, generate_random
from matchdist.io import write_bifiltration


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=3)
    ap.add_argument("--vertices", type=int, default=100)
    ap.add_argument("--maximal-factor", type=int, default=4,
                    help="maximal simplices per vertex")
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workdir", default=None,
                    help="keep generated inputs here (default: temp dir)")
    ap.add_argument("--out", default=None, help="CSV output path")
    args = ap.parse_args(argv)

    workdir = Path(args.workdir) if args.workdir else Path(tempfile.mkdtemp())
    workdir.mkdir(parents=True, exist_ok=True)
    n = args.vertices
    for i in range(2 * args.pairs):
        spec = GenSpec(n, args.maximal_factor * n, 1, seed=args.seed + i)
        write_bifiltration(workdir / f"rnd_{i:03d}.txt", generate_random(spec))
    print(f"generated {2 * args.pairs} inputs in {workdir}", file=sys.stderr)

    bench_args = ["bench", str(workdir), "--epsilon", str(args.epsilon),
                  "--relative", "--same-size-only"]
    if args.out:
        bench_args += ["--out", args.out]
    return cli_main(bench_args)


if __name__ == "__main__":
    sys.exit(run())
