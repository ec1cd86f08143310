"""Print the search tree of an instance file as an indented outline.

    python3 scripts/search_tree.py instances/six_points.txt
"""

import argparse

from laman_enum.cli import parse_instance
from laman_enum.enumeration import LamanEnumerator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance")
    ap.add_argument("--max-outputs", type=int)
    args = ap.parse_args()
    ps, F = parse_instance(args.instance)
    en = LamanEnumerator(ps, F)
    cdt = en.cdt_edges
    for em in en.run(args.max_outputs):
        fw = em.framework
        tag = "CDLF" if fw.edge_set <= cdt else "    "
        swap = "" if em.swap is None else f"  -{em.swap[0]} +{em.swap[1]}"
        print(f"{'  ' * em.depth}{em.index:>4} {tag} {fw.format()}{swap}")


if __name__ == "__main__":
    main()
