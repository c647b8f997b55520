"""Run every fuzz campaign at acceptance size and write a CSV summary.

    python3 scripts/run_campaigns.py --seed 2026 --csv campaigns.csv
"""

import argparse
import sys

from lattice_slopes.fuzz import FuzzConfig, run_campaign, write_csv

TRIALS = {
    "bost-chen": 50,
    "filtration": 200,
    "parallelogram": 1000,
    "lemma-x": 500,
    "first-minimum": 200,
    "identities": 500,
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every trial count")
    ap.add_argument("--csv", default="campaigns.csv")
    ap.add_argument("--repro-dir", default=None)
    args = ap.parse_args()
    results = []
    for name, n in TRIALS.items():
        cfg = FuzzConfig(seed=args.seed, trials=max(1, int(n * args.scale)))
        res = run_campaign(name, cfg, reproducer_dir=args.repro_dir)
        print(f"{name:14s} {res.summary():>16s}  {res.seconds:7.1f}s")
        results.append(res)
    write_csv(results, args.csv)
    return 0 if all(r.ok for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
