"""Diagram counts, symmetry sums and enumeration timings for small (g,h).

Usage: python scripts/graph_counts.py [--chi-max 4]
"""

import argparse
import time

from real_quintic.feynman import BASE_SET, enumerate_graphs, symmetry_sum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--chi-max", type=int, default=4, help="largest 2g-2+h to enumerate")
    args = ap.parse_args()
    print(f"{'(g,h)':>7} {'#graphs':>8} {'sum 1/#A':>12} {'seconds':>8}")
    for chi in range(1, args.chi_max + 1):
        for g in range(0, chi // 2 + 2):
            h = chi - 2 * g + 2
            if h < 0 or (g, h) in BASE_SET:
                continue
            t0 = time.perf_counter()
            graphs = enumerate_graphs(g, h)
            dt = time.perf_counter() - t0
            print(f"{str((g, h)):>7} {len(graphs):>8} {str(symmetry_sum(g, h)):>12} {dt:8.3f}")


if __name__ == "__main__":
    main()
