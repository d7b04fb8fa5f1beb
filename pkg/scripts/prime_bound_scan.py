#!/usr/bin/env python3
"""Scan which cone elements look prime as the witness bound grows.

The basis classes at minimal elements are the primes; everything else should
get decomposed once the bound is large enough to see the witness.  The scan
reports, per bound, which elements of a small cone box still pass.
"""

import argparse
import itertools
import sys

from orderlab import fixtures, hahn


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture", nargs="?", default="lambda")
    ap.add_argument("--box", type=int, default=2, help="coefficient box for candidates")
    ap.add_argument("--bounds", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args(argv)

    P = fixtures.fixture(args.fixture)
    elems = list(P.elements)
    candidates = []
    for vec in itertools.product(range(0, args.box + 1), repeat=len(elems)):
        x = hahn.element(P, dict(zip(elems, vec)))
        if not x.is_zero and hahn.is_positive(x):
            candidates.append(x)
    print("fixture %s: %d nonzero cone candidates in the box [0, %d]^%d"
          % (P.name, len(candidates), args.box, len(elems)))
    print("minimal elements: %s" % (sorted(P.minimal_elements),))

    for bound in args.bounds:
        survivors = [x for x in candidates if hahn.is_prime_element(x, coeff_bound=bound)]
        print("bound %d: %2d pass: %s"
              % (bound, len(survivors), ", ".join(repr(x) for x in survivors)))

    basis_primes = sorted(
        i for i in elems if hahn.is_prime_element(hahn.basis(P, i), coeff_bound=max(args.bounds))
    )
    agree = basis_primes == sorted(P.minimal_elements)
    print("basis primes at bound %d: %s (%s minimal elements)"
          % (max(args.bounds), basis_primes, "match" if agree else "do NOT match"))
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
