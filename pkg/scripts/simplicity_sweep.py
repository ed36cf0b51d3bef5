"""Simplicity verdicts and certificate checks for W and Wbar over k = k4 = n."""

import argparse
import time

from dimension_table import grassmann_config

from coloralg import lie
from coloralg.simplicity import simplicity_check, verify_certificate
from coloralg.suites import build_target
from coloralg.weyl import WeylAlgebra


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--probes", type=int, default=64)
    ap.add_argument("--no-burnside", action="store_true", help="use only the graded closure route")
    args = ap.parse_args()
    print(f"{'n':>2} {'target':>6} {'dim':>4} {'verdict':>11} {'method':>15} {'cert':>5} {'search s':>9} {'check s':>8}")
    for n in range(1, args.max_n + 1):
        W = WeylAlgebra(grassmann_config(n).algebra())
        for target in ("W", "Wbar"):
            T = lie.LieTable.build(build_target(W, target))
            t0 = time.perf_counter()
            res = simplicity_check(T, probes=args.probes, seed=args.seed, use_burnside=not args.no_burnside)
            t1 = time.perf_counter()
            ok = verify_certificate(T, res).ok
            t2 = time.perf_counter()
            print(f"{n:>2} {target:>6} {res.dim:>4} {res.verdict:>11} {res.method:>15} {'ok' if ok else 'BAD':>5} {t1 - t0:>9.2f} {t2 - t1:>8.2f}")


if __name__ == "__main__":
    main()
