#!/usr/bin/env python3
"""Walk one fixture through the finite matrix model and print what happens.

Shows the point space, the two embeddings at each site, a sample image,
cross-site products, the identity formula, and the deliberate finite-depth
failure of span independence.
"""

import argparse
import sys

from orderlab import fixtures
from orderlab import truncation as tr


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture", nargs="?", default="vee")
    ap.add_argument("--n", type=int, default=2)
    args = ap.parse_args(argv)

    P = fixtures.fixture(args.fixture)
    space = tr.build_space(P, args.n)
    print("fixture %s at depth n = %d" % (P.name, args.n))
    print("point space: %d points (%d^%d value tuples x %d maximal chains)"
          % (len(space), args.n, len(P.elements), len(space.chains)))

    for i in P.elements:
        q = tr.inflate_source(space, i)
        s = tr.localize_source(space, i)
        print("\nsite %s: scalar-block source %d x %d, local source %d x %d"
              % (i, len(q), len(q), len(s), len(s)))
        print("  inflate check:  %s" % tr.verify_inflate_at(space, i, pairs=20).describe())
        print("  localize check: %s" % tr.verify_localize_at(space, i, pairs=20).describe())
        unit = tr.matrix_unit(s, 0, min(1, len(s) - 1))
        img = tr.localize(space, i, unit)
        print("  localize(e_01) has %d entries, member: %s"
              % (len(img.entries), tr.in_local_algebra(space, i, img)))

    print()
    elems = list(P.elements)
    for a in elems:
        for b in elems:
            if a < b:
                print(tr.product_laws(space, a, b, samples=6).describe())

    print()
    print(tr.unit_check(space, set(P.elements)).describe())

    print()
    rep = tr.independence_probe(space)
    print(rep.describe())
    if rep.witness is not None:
        print("witness entries: %s" % sorted(rep.witness.entries))
    return 0


if __name__ == "__main__":
    sys.exit(main())
