"""Free abelian group on a finite poset, ordered by the maximal-support cone.

An element is a finitely supported integer vector over the poset.  It is
positive when every maximal element of its support carries a positive
coefficient.  This module implements the exact arithmetic, the cone test,
group ideals, and bounded checkers for the dimension-group axioms
(interpolation, Riesz decomposition, unperforation, conicality, order
units) plus a bounded prime-element test.

All searches are exact integer searches over explicit coefficient boxes;
reports carry the bound they were run at.
"""

from dataclasses import dataclass
import hashlib
import itertools
import random

from .errors import (
    EmptyPoset,
    NotInCone,
    NotLowerSet,
    PosetMismatch,
    SearchBudgetExceeded,
    UnknownLabel,
)
from .posets import LowerSet, is_lower_set, linear_extension, lower_closure, lower_sets


class HahnElement:
    """Integer vector over a poset; zero coefficients are never stored."""

    __slots__ = ("parent", "coeffs", "_hash")

    def __init__(self, parent, coeffs):
        clean = {}
        for k, v in coeffs.items():
            if k not in parent._down:
                raise UnknownLabel("coefficient at unknown element %r" % (k,))
            v = int(v)
            if v:
                clean[k] = v
        self.parent = parent
        self.coeffs = clean
        self._hash = hash((parent, frozenset(clean.items())))

    @property
    def support(self):
        return frozenset(self.coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        self.parent._check(i)
        return self.coeffs.get(i, 0)

    def _match(self, other):
        if not isinstance(other, HahnElement):
            raise TypeError("expected a group element, got %r" % (other,))
        if other.parent != self.parent:
            raise PosetMismatch("elements live over different posets")

    def __add__(self, other):
        self._match(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return HahnElement(self.parent, out)

    def __sub__(self, other):
        self._match(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return HahnElement(self.parent, out)

    def __neg__(self):
        return HahnElement(self.parent, {k: -v for k, v in self.coeffs.items()})

    def scaled(self, n):
        return HahnElement(self.parent, {k: n * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, HahnElement)
            and self.parent == other.parent
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return self._hash

    def as_dict(self):
        return {k: self.coeffs[k] for k in sorted(self.coeffs)}

    def __repr__(self):
        if not self.coeffs:
            return "<0>"
        bits = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            sign = "+" if v > 0 else "-"
            mag = abs(v)
            bits.append("%s%s%s" % (sign, "" if mag == 1 else mag, k))
        s = " ".join(bits)
        return "<%s>" % (s[1:] if s.startswith("+") else s)


def element(P, coeffs):
    return HahnElement(P, coeffs)


def zero(P):
    return HahnElement(P, {})


def basis(P, i):
    P._check(i)
    return HahnElement(P, {i: 1})


def add(x, y):
    return x + y


def negate(x):
    return -x


def scale(n, x):
    return x.scaled(n)


def sub(x, y):
    return x - y


# ---------------------------------------------------------------------------
# positivity


@dataclass(frozen=True)
class ConeVerdict:
    positive: bool
    witness: str | None = None

    def __bool__(self):
        return self.positive


def _support_maxima(P, supp):
    return [i for i in supp if not any(j != i and P.le(i, j) for j in supp)]


def is_positive(x):
    """Cone membership.  Negative verdicts carry the first (by label) maximal
    support element whose coefficient fails to be positive."""
    P = x.parent
    bad = sorted(
        m for m in _support_maxima(P, x.support) if x.coeffs[m] <= 0
    )
    if bad:
        return ConeVerdict(False, bad[0])
    return ConeVerdict(True, None)


def leq(x, y):
    x._match(y)
    return is_positive(y - x).positive


def order_unit(P):
    """Sum of the maximal elements; the canonical order unit."""
    if not P.elements:
        raise EmptyPoset("the empty poset has no order unit")
    return HahnElement(P, {m: 1 for m in P.maximal_elements})


# ---------------------------------------------------------------------------
# exact box search for cone constraints
#
# The workhorse: find integer coefficients a, one per poset element, each in
# a per-element window, such that every derived vector sign*a + shift lies
# in the cone.  Coordinates are assigned top-down along a reverse linear
# extension, so when a coordinate becomes negative in some derived vector
# the "is there a positive coefficient strictly above" condition is already
# decided.  Pruning is therefore exact: the search returns None only if the
# box truly holds no witness.


def search_cone_witness(P, lo, hi, terms, nonzero=(), budget=500_000):
    """Find a coefficient dict a with lo[e] <= a[e] <= hi[e] such that for
    every (sign, shift) in `terms` the vector sign*a + shift is in the cone.

    `shift` entries are plain dicts.  `nonzero` lists indices of terms whose
    derived vector must not vanish.  Returns a dict or None; raises
    SearchBudgetExceeded when more than `budget` nodes are expanded.
    """
    order = tuple(reversed(linear_extension(P)))
    sup = {e: P.strict_up(e) for e in order}
    nterms = len(terms)
    pos = [set() for _ in range(nterms)]
    nzcount = [0] * nterms
    assign = {}
    nodes = 0

    def rec(idx):
        nonlocal nodes
        if idx == len(order):
            if all(nzcount[t] for t in nonzero):
                return dict(assign)
            return None
        e = order[idx]
        above = sup[e]
        for val in range(lo[e], hi[e] + 1):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(
                    "cone witness search exceeded %d nodes" % budget
                )
            ok = True
            touched_pos = []
            touched_nz = []
            for t in range(nterms):
                sign, shift = terms[t]
                dv = sign * val + shift.get(e, 0)
                if dv > 0:
                    pos[t].add(e)
                    touched_pos.append(t)
                    nzcount[t] += 1
                    touched_nz.append(t)
                elif dv < 0:
                    nzcount[t] += 1
                    touched_nz.append(t)
                    if not (pos[t] & above):
                        ok = False
                        break
            if ok:
                assign[e] = val
                found = rec(idx + 1)
                if found is not None:
                    return found
                del assign[e]
            for t in touched_pos:
                pos[t].discard(e)
            for t in touched_nz:
                nzcount[t] -= 1
        return None

    return rec(0)


def _stable_seed(P, seed, tag):
    h = hashlib.md5()
    h.update(repr((tuple(P.elements), tuple(sorted(P.le_pairs())), tag)).encode())
    return seed ^ int.from_bytes(h.digest()[:8], "big")


def _box_vectors(elements, bound):
    for tup in itertools.product(range(-bound, bound + 1), repeat=len(elements)):
        yield dict(zip(elements, tup))


def _random_vector(rng, elements, bound):
    return {e: rng.randint(-bound, bound) for e in elements}


def _random_positive(rng, P, bound, tries=64):
    for _ in range(tries):
        c = _random_vector(rng, P.elements, bound)
        x = HahnElement(P, c)
        if is_positive(x).positive:
            return x
    # fall back to a coordinatewise nonnegative vector, always in the cone
    return HahnElement(P, {e: abs(v) for e, v in c.items()})


# ---------------------------------------------------------------------------
# prime elements


def is_prime_element(x, coeff_bound=3):
    """Bounded primality: no way to write x = a + b with a, b nonzero cone
    members supported below Supp(x) and all coefficients in the stated box.

    Raises NotInCone unless x is a nonzero cone member.  The box on witness
    coefficients is a desk-scale device: a True verdict means no witness in
    the box, full stop.
    """
    if x.is_zero or not is_positive(x).positive:
        raise NotInCone("prime test needs a nonzero positive element, got %r" % (x,))
    P = x.parent
    supp = x.support
    maxima = sorted(_support_maxima(P, supp))
    within = all(abs(v) <= coeff_bound for v in x.coeffs.values())

    if within:
        # peel one copy of a repeated maximal support element
        for m in maxima:
            if x.coeffs[m] >= 2:
                return False
        # a single basis vector at a non-minimal element splits through
        # any element below it
        m0 = maxima[0]
        scoop = {m0: 1}
        for k in supp:
            if x.coeffs[k] < 0 and P.lt(k, m0):
                scoop[k] = x.coeffs[k]
        w = HahnElement(P, scoop)
        rest = x - w
        if not rest.is_zero:
            # both parts are cone members by construction
            return False
        if supp == {m0} and P.strict_down(m0):
            return False

    # exhaustive box search over the allowed support
    region = lower_closure(P, supp).members
    lo = {}
    hi = {}
    for e in P.elements:
        if e in region:
            xe = x.coeffs.get(e, 0)
            lo[e] = max(-coeff_bound, xe - coeff_bound)
            hi[e] = min(coeff_bound, xe + coeff_bound)
        else:
            lo[e] = hi[e] = 0
    terms = [(1, {}), (-1, dict(x.coeffs))]
    found = search_cone_witness(P, lo, hi, terms, nonzero=(0, 1))
    return found is None


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class GroupIdeal:
    lower_set: LowerSet

    @property
    def poset(self):
        return self.lower_set.poset

    @property
    def members(self):
        return self.lower_set.members

    def __contains__(self, x):
        if isinstance(x, HahnElement):
            if x.parent != self.poset:
                raise PosetMismatch("element over a different poset")
            return x.support <= self.members
        return x in self.members

    def __le__(self, other):
        return self.members <= other.members


def ideal_from_lower_set(P, subset):
    members = frozenset(subset.members if isinstance(subset, LowerSet) else subset)
    for e in members:
        P._check(e)
    if not is_lower_set(P, members):
        raise NotLowerSet("%r is not downward closed" % (sorted(members),))
    return GroupIdeal(LowerSet(P, members))


def positive_splitting(x):
    """x = y - z with y, z the coordinatewise positive / negative parts;
    both are cone members."""
    P = x.parent
    y = HahnElement(P, {k: v for k, v in x.coeffs.items() if v > 0})
    z = HahnElement(P, {k: -v for k, v in x.coeffs.items() if v < 0})
    return y, z


def ideal_generated_by(P, xs, coeff_bound=3):
    """Smallest ideal containing every generator: split each generator into
    positive parts, take the union of the supports, close downward."""
    xs = list(xs)
    if not xs:
        return GroupIdeal(LowerSet(P, frozenset()))
    supp = set()
    for x in xs:
        if x.parent != P:
            raise PosetMismatch("generator over a different poset")
        y, z = positive_splitting(x)
        supp |= y.support | z.support
    return GroupIdeal(lower_closure(P, supp))


def group_ideal_lattice(P):
    return tuple(GroupIdeal(L) for L in lower_sets(P))


def ideal_meet(a, b):
    return GroupIdeal(LowerSet(a.poset, a.members & b.members))


def ideal_join(a, b):
    # union of lower sets is lower
    return GroupIdeal(LowerSet(a.poset, a.members | b.members))


# ---------------------------------------------------------------------------
# dimension-group checkers


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    bound: int
    cases: int
    counterexample: tuple = None
    note: str = ""

    def __bool__(self):
        return self.ok

    def describe(self):
        verdict = "holds" if self.ok else "FAILS"
        extra = " (%s)" % self.note if self.note else ""
        return "%s %s over %d cases verified at bound %d%s" % (
            self.name, verdict, self.cases, self.bound, extra,
        )


def _candidate_interpolants(P, x1, x2, y1, y2):
    cmax = HahnElement(
        P, {e: max(x1.coeff(e), x2.coeff(e)) for e in P.elements}
    )
    cmin = HahnElement(
        P, {e: min(y1.coeff(e), y2.coeff(e)) for e in P.elements}
    )
    return (x1, x2, y1, y2, cmax, cmin)


def _interpolates(z, x1, x2, y1, y2):
    return leq(x1, z) and leq(x2, z) and leq(z, y1) and leq(z, y2)


def interpolate(x1, x2, y1, y2, bound, budget=500_000):
    """Find z with x1, x2 <= z <= y1, y2, searching the window
    [min coord - bound, max coord + bound] per element.  None if the
    window holds no interpolant."""
    P = x1.parent
    for z in _candidate_interpolants(P, x1, x2, y1, y2):
        if _interpolates(z, x1, x2, y1, y2):
            return z
    lo = {}
    hi = {}
    for e in P.elements:
        vals = (x1.coeff(e), x2.coeff(e), y1.coeff(e), y2.coeff(e))
        lo[e] = min(vals) - bound
        hi[e] = max(vals) + bound
    terms = [
        (1, {k: -v for k, v in x1.coeffs.items()}),
        (1, {k: -v for k, v in x2.coeffs.items()}),
        (-1, dict(y1.coeffs)),
        (-1, dict(y2.coeffs)),
    ]
    found = search_cone_witness(P, lo, hi, terms, budget=budget)
    return None if found is None else HahnElement(P, found)


def check_interpolation(P, bound=3, samples=200, seed=0, budget=500_000):
    """Riesz interpolation on quadruples x1, x2 <= y1, y2 with coefficients
    in the box.  samples=None scans every quadruple (tiny posets only);
    otherwise a seeded mix of rejection-sampled and constructed quadruples."""
    cases = 0
    if samples is None:
        vecs = [HahnElement(P, c) for c in _box_vectors(P.elements, bound)]
        ups = {}
        for x in vecs:
            ups[x] = [y for y in vecs if leq(x, y)]
        for x1, x2 in itertools.product(vecs, repeat=2):
            shared = [y for y in ups[x1] if leq(x2, y)]
            for y1, y2 in itertools.product(shared, repeat=2):
                cases += 1
                if interpolate(x1, x2, y1, y2, bound, budget) is None:
                    return CheckReport(
                        "interpolation", False, bound, cases,
                        counterexample=(x1.as_dict(), x2.as_dict(),
                                        y1.as_dict(), y2.as_dict()),
                    )
        return CheckReport("interpolation", True, bound, cases, note="exhaustive")

    rng = random.Random(_stable_seed(P, seed, "interp"))
    quads = []
    attempts = 0
    while len(quads) < samples // 2 and attempts < samples * 40:
        attempts += 1
        x1 = HahnElement(P, _random_vector(rng, P.elements, bound))
        x2 = HahnElement(P, _random_vector(rng, P.elements, bound))
        y1 = HahnElement(P, _random_vector(rng, P.elements, bound))
        y2 = HahnElement(P, _random_vector(rng, P.elements, bound))
        if leq(x1, y1) and leq(x1, y2) and leq(x2, y1) and leq(x2, y2):
            quads.append((x1, x2, y1, y2))
    while len(quads) < samples:
        x1 = HahnElement(P, _random_vector(rng, P.elements, bound))
        x2 = HahnElement(P, _random_vector(rng, P.elements, bound))
        base = HahnElement(P, {e: max(x1.coeff(e), x2.coeff(e)) for e in P.elements})
        y1 = base + _random_positive(rng, P, bound)
        y2 = base + _random_positive(rng, P, bound)
        quads.append((x1, x2, y1, y2))
    for x1, x2, y1, y2 in quads:
        cases += 1
        if interpolate(x1, x2, y1, y2, bound, budget) is None:
            return CheckReport(
                "interpolation", False, bound, cases,
                counterexample=(x1.as_dict(), x2.as_dict(),
                                y1.as_dict(), y2.as_dict()),
            )
    return CheckReport("interpolation", True, bound, cases, note="sampled")


def riesz_decompose(x, y, z, bound, budget=500_000):
    """Given cone members with x <= y + z, find cone members a <= y, b <= z
    with x = a + b.  Returns (a, b) or None."""
    P = x.parent
    candidates = [x, zero(P),
                  HahnElement(P, {e: min(x.coeff(e), y.coeff(e)) for e in P.elements})]
    for a in candidates:
        b = x - a
        if (is_positive(a).positive and is_positive(b).positive
                and leq(a, y) and leq(b, z)):
            return a, b
    zmx = z - x
    lo = {}
    hi = {}
    for e in P.elements:
        vals = (0, x.coeff(e), y.coeff(e), x.coeff(e) - z.coeff(e))
        lo[e] = min(vals) - bound
        hi[e] = max(vals) + bound
    terms = [
        (1, {}),                                    # a positive
        (-1, dict(x.coeffs)),                       # x - a positive
        (-1, dict(y.coeffs)),                       # a <= y
        (1, dict(zmx.coeffs)),                      # x - a <= z
    ]
    found = search_cone_witness(P, lo, hi, terms, budget=budget)
    if found is None:
        return None
    a = HahnElement(P, found)
    return a, x - a


def check_riesz(P, bound=3, samples=200, seed=0, budget=500_000):
    """Riesz decomposition on triples of cone members with x <= y + z."""
    cases = 0
    if samples is None:
        vecs = [HahnElement(P, c) for c in _box_vectors(P.elements, bound)
                if is_positive(HahnElement(P, c)).positive]
        for x, y, z in itertools.product(vecs, repeat=3):
            if not leq(x, y + z):
                continue
            cases += 1
            if riesz_decompose(x, y, z, bound, budget) is None:
                return CheckReport(
                    "riesz-decomposition", False, bound, cases,
                    counterexample=(x.as_dict(), y.as_dict(), z.as_dict()),
                )
        return CheckReport("riesz-decomposition", True, bound, cases,
                           note="exhaustive")

    rng = random.Random(_stable_seed(P, seed, "riesz"))
    triples = []
    attempts = 0
    while len(triples) < samples and attempts < samples * 60:
        attempts += 1
        y = _random_positive(rng, P, bound)
        z = _random_positive(rng, P, bound)
        x = _random_positive(rng, P, bound)
        if leq(x, y + z):
            triples.append((x, y, z))
    for x, y, z in triples:
        cases += 1
        if riesz_decompose(x, y, z, bound, budget) is None:
            return CheckReport(
                "riesz-decomposition", False, bound, cases,
                counterexample=(x.as_dict(), y.as_dict(), z.as_dict()),
            )
    return CheckReport("riesz-decomposition", True, bound, cases, note="sampled")


def _scan_box(P, bound, cap, seed, tag):
    """Either every vector in the box or a seeded sample of `cap` vectors."""
    total = (2 * bound + 1) ** len(P.elements)
    if total <= cap:
        yield from _box_vectors(P.elements, bound)
    else:
        rng = random.Random(_stable_seed(P, seed, tag))
        for _ in range(cap):
            yield _random_vector(rng, P.elements, bound)


def check_unperforation(P, bound=3, n_max=3, cap=20_000, seed=0):
    cases = 0
    for c in _scan_box(P, bound, cap, seed, "unperf"):
        x = HahnElement(P, c)
        xpos = is_positive(x).positive
        for n in range(2, n_max + 1):
            cases += 1
            if is_positive(x.scaled(n)).positive and not xpos:
                return CheckReport(
                    "unperforation", False, bound, cases,
                    counterexample=(n, x.as_dict()),
                )
    return CheckReport("unperforation", True, bound, cases,
                       note="n up to %d" % n_max)


def check_conical(P, bound=3, cap=20_000, seed=0):
    cases = 0
    for c in _scan_box(P, bound, cap, seed, "conical"):
        x = HahnElement(P, c)
        cases += 1
        if not x.is_zero and is_positive(x).positive and is_positive(-x).positive:
            return CheckReport("conicality", False, bound, cases,
                               counterexample=(x.as_dict(),))
    return CheckReport("conicality", True, bound, cases)


@dataclass(frozen=True)
class OrderUnitReport:
    ok: bool
    bound: int
    cases: int
    worst_k: int

    def __bool__(self):
        return self.ok


def verify_order_unit(P, bound=3, cap=20_000, seed=0):
    """Every vector in the box sits below some multiple k*u of the canonical
    order unit; k never needs to exceed bound + 1."""
    u = order_unit(P)
    k_cap = bound + 1
    worst = 0
    cases = 0
    for c in _scan_box(P, bound, cap, seed, "unit"):
        x = HahnElement(P, c)
        cases += 1
        for k in range(k_cap + 1):
            if leq(x, u.scaled(k)):
                worst = max(worst, k)
                break
        else:
            return OrderUnitReport(False, bound, cases, -1)
    return OrderUnitReport(True, bound, cases, worst)
