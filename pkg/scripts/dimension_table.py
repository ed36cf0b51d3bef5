"""Print dim A, W, Weyl, Wtilde and Wbar for k = k4 = n, next to the closed formulas."""

import argparse
import json
import time

from coloralg import lie
from coloralg.config import from_dict
from coloralg.weyl import WeylAlgebra


def grassmann_config(n: int):
    return from_dict({
        "name": f"grassmann_n{n}",
        "k": [0, 0, 0, n],
        "t_colors": [[1]] * n,
        "gamma": {"invariant_factors": [2]},
        "epsilon": {"exponent_matrix": [[1]], "denominator": 2},
    })


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        rep = lie.dims_report(WeylAlgebra(grassmann_config(n).algebra()))
        rep["seconds"] = round(time.perf_counter() - t0, 2)
        rows.append(rep)
    if args.json:
        print(json.dumps(rows, indent=2, default=str))
        return
    print(f"{'n':>2} {'A':>5} {'W':>5} {'n2^n':>5} {'Weyl':>6} {'Wtilde':>6} {'Wbar':>6} {'4^n-2':>6} {'even/odd':>9} {'s':>6}")
    for r in rows:
        n = r["n"]
        c = r["Wbar_colors"]
        print(f"{n:>2} {r['A']:>5} {r['W']:>5} {n * 2**n:>5} {r['Weyl']:>6} {r['Wtilde']:>6} {r['Wbar']:>6} {4**n - 2:>6} {str(c.get('0', 0)) + '/' + str(c.get('1', 0)):>9} {r['seconds']:>6}")


if __name__ == "__main__":
    main()
