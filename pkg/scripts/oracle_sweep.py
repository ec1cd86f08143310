"""Compare enumeration against brute force on random instances and tabulate counts.

    python3 scripts/oracle_sweep.py --trials 30 --max-n 7
"""

import argparse
import random
import time

from laman_enum.enumeration import LamanEnumerator
from laman_enum.instances import random_constraints, random_generic_points
from laman_enum.oracle import brute_frameworks


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'n':>2} {'|F|':>3} {'count':>7} {'oracle':>7} {'enum s':>8} {'oracle s':>8}  ok")
    bad = 0
    for _ in range(args.trials):
        n = rng.randint(args.min_n, args.max_n)
        ps = random_generic_points(n, rng)
        F = random_constraints(ps, rng.randint(0, n - 1), rng)
        t0 = time.perf_counter()
        got = {tuple(tuple(e) for e in em.framework.edges) for em in LamanEnumerator(ps, F).run()}
        t1 = time.perf_counter()
        expect = brute_frameworks(ps, F).frameworks
        t2 = time.perf_counter()
        ok = got == expect
        bad += not ok
        print(f"{n:>2} {len(F):>3} {len(got):>7} {len(expect):>7} {t1 - t0:8.2f} {t2 - t1:8.2f}  {'yes' if ok else 'NO'}")
    print(f"{args.trials - bad}/{args.trials} instances agree")


if __name__ == "__main__":
    main()
