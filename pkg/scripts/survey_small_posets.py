#!/usr/bin/env python3
"""Sweep every poset on up to k letters (up to isomorphism) and tabulate the
structure invariants the package computes: ideal counts, Loewy length, and
the prime and primitive flags.

Usage: python3 scripts/survey_small_posets.py [--max-size 4]
"""

import argparse
import itertools
import sys
from collections import Counter

from orderlab import algebra
from orderlab.posets import make_poset


def closed_relations(n):
    """All reflexive transitive antisymmetric relations on range(n)."""
    base = [(i, i) for i in range(n)]
    candidates = [(i, j) for i in range(n) for j in range(n) if i != j]
    for picks in itertools.product([False, True], repeat=len(candidates)):
        rel = set(base)
        rel.update(c for c, keep in zip(candidates, picks) if keep)
        ok = True
        for (a, b) in list(rel):
            if (b, a) in rel and a != b:
                ok = False
                break
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield frozenset(rel)


def canonical(n, rel):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or key < best:
            best = key
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-size", type=int, default=4)
    args = ap.parse_args(argv)
    if args.max_size > 5:
        print("size over 5 takes long with this brute-force sweep", file=sys.stderr)

    print("size  posets  prime  primitive  loewy lengths        ideal counts")
    for n in range(args.max_size + 1):
        seen = {}
        for rel in closed_relations(n):
            key = canonical(n, rel)
            if key not in seen:
                seen[key] = rel
        loewy = Counter()
        ideals = Counter()
        prime = primitive = 0
        for rel in seen.values():
            labels = [chr(ord("a") + i) for i in range(n)]
            pairs = [(labels[i], labels[j]) for i, j in rel if i != j]
            P = make_poset(labels, pairs)
            alg = algebra.full_algebra(P)
            loewy[algebra.loewy_length(alg)] += 1
            ideals[len(algebra.ideal_lattice(alg))] += 1
            prime += algebra.is_prime(alg)
            primitive += algebra.is_primitive(alg)
        print(
            "%4d  %6d  %5d  %9d  %-19s  %s"
            % (
                n,
                len(seen),
                prime,
                primitive,
                dict(sorted(loewy.items())),
                dict(sorted(ideals.items())),
            )
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
