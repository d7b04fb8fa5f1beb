"""Command-line surface tying the modules into reproducible reports.

Exit codes: 0 all requested checks pass, 1 a check found a counterexample
(which is serialized to stdout), 2 input or usage error.  All sampling is
governed by --seed (default 0); identical invocations produce byte-identical
output.
"""

import argparse
import itertools
import json
import sys

from . import algebra, fixtures, hahn, maps, serialize
from . import truncation as tr
from .errors import MorphismError, OrderlabError, SchemaError
from .posets import lower_sets, maximal_chains

ANALYZE_POINT_CAP = 700


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except SchemaError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except OrderlabError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


def build_parser():
    p = argparse.ArgumentParser(
        prog="orderlab",
        description="Finite posets, their ordered groups, and the finite "
        "matrix model: checks and reports at desk scale.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full structure report for a poset file")
    a.add_argument("poset")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit the report as JSON")
    fmt.add_argument("--dot", action="store_true",
                     help="emit DOT for the order and its ideal lattice")
    a.add_argument("--n", type=int, default=2, help="truncation depth (default 2)")
    a.add_argument("--bound", type=int, default=2,
                   help="coefficient bound for group checks (default 2)")
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("spectrum", help="primitive ideals and their order")
    s.add_argument("poset")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    k = sub.add_parser("k0", help="basis order embedding and cone agreement")
    k.add_argument("poset")
    k.add_argument("--bound", type=int, default=3)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_k0)

    h = sub.add_parser("hahn", help="ordered-group checks on the free group")
    h.add_argument("poset")
    h.add_argument("--check", required=True,
                   choices=["interpolation", "unperforation", "primes", "ideals"])
    h.add_argument("--bound", type=int, default=3)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_hahn)

    t = sub.add_parser("truncate", help="finite matrix model verification")
    t.add_argument("poset")
    t.add_argument("--n", type=int, required=True, help="truncation depth")
    t.add_argument("--verify", required=True,
                   choices=["all", "phi", "psi", "products", "unit",
                            "independence"])
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_truncate)

    m = sub.add_parser("morphism", help="checks on a poset map file")
    m.add_argument("morphism")
    m.add_argument("--check", required=True,
                   choices=["pos", "ck", "g", "gstar", "naturality"])
    m.add_argument("--bound", type=int, default=2)
    m.add_argument("--n", type=int, default=2)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_morphism)

    f = sub.add_parser("fixtures", help="list or emit named example posets")
    f.add_argument("action", choices=["list", "emit"])
    f.add_argument("name", nargs="?")
    f.set_defaults(func=cmd_fixtures)

    return p


def _print_json(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _finish(args, payload, lines, ok):
    if getattr(args, "json", False):
        _print_json(payload)
    else:
        for line in lines:
            print(line)
        if not ok:
            bad = payload.get("counterexample")
            if bad is not None:
                print("counterexample: %s" % json.dumps(bad, sort_keys=True))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# analyze


def _antichain_count(P):
    """Independent cross-check: down-sets correspond one to one with
    antichains (take the maximal elements).  Counted by brute subsets."""
    count = 0
    elems = P.elements
    for r in range(len(elems) + 1):
        for sub in itertools.combinations(elems, r):
            if all(not P.comparable(x, y) for x, y in itertools.combinations(sub, 2)):
                count += 1
    return count


def cmd_analyze(args):
    P = serialize.load_poset(args.poset)

    if args.dot:
        sys.stdout.write(serialize.emit_dot(P, graph_name=P.name or "poset"))
        sys.stdout.write("\n")
        sys.stdout.write(serialize.emit_ideal_lattice_dot(P))
        return 0

    alg = algebra.full_algebra(P)
    ideals = algebra.ideal_lattice(alg)
    crosscheck = _antichain_count(P) if len(P) <= 12 else None
    socles = algebra.socle_series(alg)
    layers = []
    prev = frozenset()
    for ideal in socles:
        layers.append(sorted(ideal.members - prev))
        prev = ideal.members
    spec = algebra.primitive_spectrum(P)

    checks = []
    if P.elements:
        checks.append(hahn.check_conical(P, bound=args.bound, seed=args.seed))
        checks.append(hahn.check_riesz(P, bound=args.bound, samples=60,
                                       seed=args.seed))
        checks.append(hahn.check_interpolation(P, bound=args.bound, samples=60,
                                               seed=args.seed))
        checks.append(hahn.check_unperforation(P, bound=args.bound,
                                               seed=args.seed))

    points = (args.n ** len(P.elements)) * max(1, len(maximal_chains(P)))
    trunc = {}
    if points <= ANALYZE_POINT_CAP:
        space = tr.build_space(P, args.n)
        trunc["n"] = args.n
        trunc["points"] = len(space)
        trunc["inflate_ok"] = all(
            tr.verify_inflate_at(space, i, pairs=6, seed=args.seed).ok
            for i in P.elements
        )
        trunc["localize_ok"] = all(
            tr.verify_localize_at(space, i, pairs=6, seed=args.seed).ok
            for i in P.elements
        )
        trunc["products_ok"] = all(
            tr.product_laws(space, i, j, samples=4, seed=args.seed).ok
            for i, j in itertools.combinations_with_replacement(P.elements, 2)
        )
        trunc["unit_ok"] = (
            tr.unit_check(space, set(P.elements), samples=4,
                          seed=args.seed).verdict
            if P.elements
            else True
        )
    else:
        trunc["skipped"] = (
            "space would have %d points, over the %d cap"
            % (points, ANALYZE_POINT_CAP)
        )

    flags = {
        "prime": algebra.is_prime(alg),
        "primitive": algebra.is_primitive(alg),
        "semiartinian": algebra.is_semiartinian(alg),
        "has_identity": algebra.has_identity(alg),
    }
    k0 = {}
    if P.elements:
        model = algebra.k0_model(P)
        k0["basis"] = [t for _, t in model.basis_tags]
        k0["order_unit"] = hahn.order_unit(P).as_dict()

    payload = {
        "poset": {
            "name": P.name,
            "size": len(P),
            "strict_pairs": sum(1 for x, y in P.le_pairs() if x != y),
            "maximal": list(P.maximal_elements),
            "minimal": list(P.minimal_elements),
        },
        "ideals": {
            "count": len(ideals),
            "antichain_crosscheck": crosscheck,
            "crosscheck_ok": crosscheck is None or crosscheck == len(ideals),
        },
        "loewy": {
            "layers": layers,
            "length": algebra.loewy_length(alg),
        },
        "flags": flags,
        "spectrum": {
            "size": len(spec.primitive_ideals),
            "order_isomorphic": spec.psi_is_iso,
        },
        "k0": k0,
        "group_checks": [
            {"name": c.name, "ok": c.ok, "bound": c.bound, "cases": c.cases}
            for c in checks
        ],
        "truncation": trunc,
    }
    ok = (
        payload["ideals"]["crosscheck_ok"]
        and spec.psi_is_iso
        and all(c.ok for c in checks)
        and all(v for k, v in trunc.items() if k.endswith("_ok"))
    )
    payload["ok"] = ok

    lines = [
        "poset %s: %d elements, %d strict pairs"
        % (P.name or "(unnamed)", len(P), payload["poset"]["strict_pairs"]),
        "ideals: %d%s"
        % (
            len(ideals),
            ""
            if crosscheck is None
            else " (antichain cross-check: %d)" % crosscheck,
        ),
        "loewy length %d, layers %s"
        % (payload["loewy"]["length"], payload["loewy"]["layers"]),
        "flags: prime=%(prime)s primitive=%(primitive)s "
        "semiartinian=%(semiartinian)s identity=%(has_identity)s" % flags,
        "spectrum: %d primitive ideals, order isomorphic to the poset: %s"
        % (payload["spectrum"]["size"], spec.psi_is_iso),
    ]
    for c in checks:
        lines.append("group check: " + c.describe())
    if "skipped" in trunc:
        lines.append("truncation: skipped (%s)" % trunc["skipped"])
    else:
        lines.append(
            "truncation at n = %d over %d points: inflate=%s localize=%s "
            "products=%s unit=%s"
            % (
                trunc["n"],
                trunc["points"],
                trunc["inflate_ok"],
                trunc["localize_ok"],
                trunc["products_ok"],
                trunc["unit_ok"],
            )
        )
    lines.append("overall: %s" % ("ok" if ok else "FAILED"))
    return _finish(args, payload, lines, ok)


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(args):
    P = serialize.load_poset(args.poset)
    spec = algebra.primitive_spectrum(P)
    carriers = sorted(sorted(i.members) for i in spec.primitive_ideals)
    payload = {
        "primitive_ideals": carriers,
        "count": len(carriers),
        "order_isomorphic": spec.psi_is_iso,
    }
    lines = ["%d primitive ideals" % len(carriers)]
    for c in carriers:
        lines.append("  {%s}" % ", ".join(c))
    lines.append("order isomorphic to the poset: %s" % spec.psi_is_iso)
    return _finish(args, payload, lines, spec.psi_is_iso)


# ---------------------------------------------------------------------------
# k0


def cmd_k0(args):
    P = serialize.load_poset(args.poset)
    model = algebra.k0_model(P)
    mismatch = None
    for i in P.elements:
        for j in P.elements:
            if model.class_leq(i, j) != P.le(i, j):
                mismatch = [i, j]
    cases = 0
    cone_ok = True
    for vec in itertools.product(
        range(-args.bound, args.bound + 1), repeat=len(P.elements)
    ):
        comb = dict(zip(P.elements, vec))
        cases += 1
        if bool(model.positive(comb)) != bool(
            hahn.is_positive(hahn.element(P, comb))
        ):
            cone_ok = False
            mismatch = mismatch or [comb]
    unit_ok = model.identity_class() == hahn.order_unit(P)
    ok = mismatch is None and cone_ok and unit_ok
    payload = {
        "basis": [t for _, t in model.basis_tags],
        "embedding_ok": mismatch is None or not isinstance(mismatch[0], str),
        "cone_cases": cases,
        "cone_ok": cone_ok,
        "identity_is_order_unit": unit_ok,
        "bound": args.bound,
        "ok": ok,
        "counterexample": mismatch,
    }
    lines = [
        "basis classes: %s" % ", ".join(payload["basis"]),
        "order embedding on basis: %s" % (mismatch is None),
        "cone agreement verified at bound %d over %d combinations: %s"
        % (args.bound, cases, cone_ok),
        "identity class equals the order unit: %s" % unit_ok,
    ]
    return _finish(args, payload, lines, ok)


# ---------------------------------------------------------------------------
# hahn checks


def cmd_hahn(args):
    P = serialize.load_poset(args.poset)
    if args.check == "interpolation":
        rep = hahn.check_interpolation(P, bound=args.bound, samples=200,
                                       seed=args.seed)
        payload = {
            "check": rep.name, "ok": rep.ok, "bound": rep.bound,
            "cases": rep.cases, "counterexample": rep.counterexample,
        }
        return _finish(args, payload, [rep.describe()], rep.ok)
    if args.check == "unperforation":
        rep = hahn.check_unperforation(P, bound=args.bound, seed=args.seed)
        payload = {
            "check": rep.name, "ok": rep.ok, "bound": rep.bound,
            "cases": rep.cases, "counterexample": rep.counterexample,
        }
        return _finish(args, payload, [rep.describe()], rep.ok)
    if args.check == "primes":
        primes = sorted(
            i for i in P.elements
            if hahn.is_prime_element(hahn.basis(P, i), coeff_bound=args.bound)
        )
        minimal = sorted(P.minimal_elements)
        ok = primes == minimal
        payload = {
            "check": "primes", "primes": primes, "minimal": minimal,
            "bound": args.bound, "ok": ok,
            "counterexample": None if ok else {"primes": primes,
                                               "minimal": minimal},
        }
        lines = [
            "prime basis classes verified at bound %d: {%s}"
            % (args.bound, ", ".join(primes)),
            "minimal elements:%s {%s}" % ("" if ok else " MISMATCH",
                                          ", ".join(minimal)),
        ]
        return _finish(args, payload, lines, ok)
    # ideals: the group ideal lattice against the lower-set lattice
    group_ideals = hahn.group_ideal_lattice(P)
    downsets = [frozenset(L.members) for L in lower_sets(P)]
    got = sorted(sorted(g.members) for g in group_ideals)
    want = sorted(sorted(s) for s in downsets)
    crosscheck = _antichain_count(P) if len(P) <= 12 else None
    ok = got == want and (crosscheck is None or crosscheck == len(got))
    payload = {
        "check": "ideals", "count": len(got),
        "antichain_crosscheck": crosscheck, "ok": ok,
        "counterexample": None,
    }
    lines = [
        "group ideals: %d, lower sets: %d%s"
        % (
            len(got),
            len(want),
            "" if crosscheck is None else ", antichains: %d" % crosscheck,
        ),
        "lattices coincide: %s" % ok,
    ]
    return _finish(args, payload, lines, ok)


# ---------------------------------------------------------------------------
# truncate


def cmd_truncate(args):
    P = serialize.load_poset(args.poset)
    space = tr.build_space(P, args.n)
    payload = {"n": args.n, "points": len(space), "verify": args.verify}
    lines = ["space over %s at n = %d: %d points"
             % (P.name or "(unnamed)", args.n, len(space))]

    def run_inflate():
        reps = {i: tr.verify_inflate_at(space, i, pairs=12, seed=args.seed)
                for i in P.elements}
        payload["inflate"] = {i: r.ok for i, r in reps.items()}
        for i, r in sorted(reps.items()):
            lines.append("  " + r.describe())
        return all(r.ok for r in reps.values())

    def run_localize():
        reps = {i: tr.verify_localize_at(space, i, pairs=12, seed=args.seed)
                for i in P.elements}
        payload["localize"] = {i: r.ok for i, r in reps.items()}
        for i, r in sorted(reps.items()):
            lines.append("  " + r.describe())
        return all(r.ok for r in reps.values())

    def run_products():
        oks = {}
        for i, j in itertools.combinations_with_replacement(P.elements, 2):
            rep = tr.product_laws(space, i, j, samples=8, seed=args.seed)
            oks["%s,%s" % (i, j)] = rep.ok
            lines.append("  " + rep.describe())
        payload["products"] = oks
        return all(oks.values())

    def run_unit():
        rep = tr.unit_check(space, set(P.elements), samples=8, seed=args.seed)
        payload["unit"] = {
            "verdict": rep.verdict,
            "shelter_sites": list(rep.shelter_sites),
            "note": rep.note,
        }
        lines.append("  " + rep.describe())
        return rep.verdict

    if args.verify == "independence":
        rep = tr.independence_probe(space)
        payload["note"] = rep.note
        lines.append("  " + rep.describe())
        if rep.witness is None:
            payload["witness"] = None
            return _finish(args, payload, lines, True)
        payload["witness"] = serialize.matrix_to_dict(rep.witness)
        payload["counterexample"] = payload["witness"]
        return _finish(args, payload, lines, False)

    steps = {
        "phi": [run_inflate],
        "psi": [run_localize],
        "products": [run_products],
        "unit": [run_unit],
        "all": [run_inflate, run_localize, run_products, run_unit],
    }[args.verify]
    ok = True
    for step in steps:
        ok = step() and ok
    payload["ok"] = ok
    lines.append("verified at n = %d: %s" % (args.n, "ok" if ok else "FAILED"))
    return _finish(args, payload, lines, ok)


# ---------------------------------------------------------------------------
# morphism


def cmd_morphism(args):
    f = serialize.load_morphism(args.morphism)
    if args.check == "pos":
        d = maps.map_diagnosis(f)
        payload = {
            "isotone": d.isotone, "injective": d.injective,
            "imbedding": d.imbedding, "image_upper": d.image_upper,
            "ok": d.ok, "counterexample": d.clause,
        }
        lines = [
            "isotone=%s injective=%s imbedding=%s image_upper=%s"
            % (d.isotone, d.injective, d.imbedding, d.image_upper),
            "admissible: %s%s"
            % (d.ok, "" if d.ok else " (fails %s)" % d.clause),
        ]
        return _finish(args, payload, lines, d.ok)

    if args.check == "ck":
        try:
            ok = maps.is_strict_ck(maps.graph_map_of(f))
            reason = None if ok else "an out-fiber fails to biject"
        except MorphismError as e:
            ok, reason = False, str(e)
        payload = {"strict_ck": ok, "counterexample": reason, "ok": ok}
        lines = ["strict graph-morphism condition: %s%s"
                 % (ok, "" if ok else " (%s)" % reason)]
        return _finish(args, payload, lines, ok)

    if args.check in ("g", "gstar"):
        try:
            gmap = (maps.push_forward(f) if args.check == "g"
                    else maps.pull_back(f))
        except MorphismError as e:
            payload = {"ok": False, "counterexample": str(e)}
            return _finish(args, payload, ["rejected: %s" % e], False)
        scan = maps.cone_preservation(gmap, bound=args.bound)
        bad = None if scan.counterexample is None else scan.counterexample.as_dict()
        payload = {
            "direction": "covariant" if args.check == "g" else "contravariant",
            "preserved": scan.preserved, "bound": scan.bound,
            "cases": scan.checked, "counterexample": bad, "ok": scan.preserved,
        }
        lines = [
            "%s cone preservation verified at bound %d over %d positives: %s"
            % (payload["direction"], scan.bound, scan.checked, scan.preserved)
        ]
        return _finish(args, payload, lines, scan.preserved)

    # naturality
    try:
        rep = maps.naturality_check(f, n=args.n)
    except MorphismError as e:
        payload = {"ok": False, "counterexample": str(e)}
        return _finish(args, payload, ["rejected: %s" % e], False)
    payload = {
        "depth": rep.depth, "covariant_ok": rep.covariant_ok,
        "contravariant_ok": rep.contravariant_ok, "ok": rep.ok,
        "counterexample": None if rep.ok else "a square fails to commute",
    }
    return _finish(args, payload, [rep.describe()], rep.ok)


# ---------------------------------------------------------------------------
# fixtures


def cmd_fixtures(args):
    if args.action == "list":
        for name in fixtures.fixture_names():
            print(name)
        return 0
    if not args.name:
        print("input error: emit needs a fixture name", file=sys.stderr)
        return 2
    try:
        P = fixtures.fixture(args.name)
    except (KeyError, ValueError) as e:
        print("input error: %s" % e.args[0], file=sys.stderr)
        return 2
    sys.stdout.write(serialize.dump_poset(P))
    return 0


if __name__ == "__main__":
    sys.exit(main())
