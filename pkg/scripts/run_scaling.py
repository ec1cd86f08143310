"""Time a full enumeration on random points and track traced memory.

    python3 scripts/run_scaling.py --fixed          # the 10-point acceptance instance
    python3 scripts/run_scaling.py --n 10 --seed 10 # random points (604186 frameworks)
"""

import argparse
import gc
import random
import time
import tracemalloc

from laman_enum.enumeration import LamanEnumerator
from laman_enum.geometry import PointSet
from laman_enum.instances import SCALING_COORDS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixed", action="store_true", help="use the fixed 10-point instance")
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=10)
    ap.add_argument("--coord-range", type=int, default=10**6)
    ap.add_argument("--every", type=int, default=20000, help="progress interval")
    ap.add_argument("--max-outputs", type=int)
    ap.add_argument("--no-trace", action="store_true", help="skip tracemalloc (faster)")
    args = ap.parse_args()

    if args.fixed:
        ps = PointSet(SCALING_COORDS)
    else:
        rng = random.Random(args.seed)
        ps = PointSet([(rng.randint(0, args.coord_range), rng.randint(0, args.coord_range)) for _ in range(args.n)])
    print(f"points: {[(int(x), int(y)) for x, y in ps.coords]}")
    print(f"generic: {ps.genericity().ok}")
    gc.collect()
    if not args.no_trace:
        tracemalloc.start()
    start = time.perf_counter()
    count = 0
    for em in LamanEnumerator(ps).run(args.max_outputs):
        count += 1
        if count % args.every == 0:
            mem = tracemalloc.get_traced_memory()[0] / 1024 if not args.no_trace else float("nan")
            el = time.perf_counter() - start
            print(f"{count:>9} outputs  {el:8.1f} s  {1000 * el / count:6.2f} ms/output  "
                  f"depth {em.depth:>3}  traced {mem:8.0f} KiB", flush=True)
    el = time.perf_counter() - start
    peak = tracemalloc.get_traced_memory()[1] / 1024 if not args.no_trace else float("nan")
    print(f"total {count} frameworks in {el:.1f} s ({1000 * el / count:.2f} ms/output), peak {peak:.0f} KiB")


if __name__ == "__main__":
    main()
