"""Recompute the open BPS tables and compare with the published values.

Usage: python scripts/reproduce_tables.py [--dmax 20] [--json results.json]
"""

import argparse
import json
import time
from fractions import Fraction

from real_quintic.reference_data import BPS_TABLES
from real_quintic.solver import Solver, SolverConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=20)
    ap.add_argument("--json", default=None, help="write all tables to this file")
    args = ap.parse_args()
    solver = Solver(SolverConfig(order=Fraction(args.dmax + 1, 2), d_max=args.dmax))
    dump, all_ok = [], True
    for gh, ref in BPS_TABLES.items():
        t0 = time.perf_counter()
        table = solver.bps_table(*gh)
        dt = time.perf_counter() - t0
        print(f"(g,h)={gh}  [{dt:.2f}s]")
        for d, n in sorted(table.items()):
            want = ref.get(d)
            mark = "" if want is None else ("ok" if want == n else f"MISMATCH (published {want})")
            all_ok &= want is None or want == n
            print(f"  d={d:2d}  n={n}  {mark}")
        dump.append({"g": gh[0], "h": gh[1], "entries": [{"d": d, "n": str(n)} for d, n in sorted(table.items())]})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dump, fh, indent=1)
    print("all published entries reproduced" if all_ok else "MISMATCHES FOUND")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
