"""Finite partially ordered sets and the order combinatorics everything else reduces to.

Conventions used throughout the package:

* labels are strings; the canonical enumeration order is sorted(label).
* chains are tuples listed in increasing order.
* the empty poset has exactly one maximal chain, the empty chain ().  This
  keeps the point-count formula of the truncation space uniform (one point
  for the empty poset).
"""

from dataclasses import dataclass
import itertools

from .errors import CycleError, UnknownLabel, SearchBudgetExceeded


class Poset:
    """Immutable finite poset.  `le` is stored as the full closure."""

    __slots__ = ("name", "elements", "_down", "_up", "_le_pairs", "_hash")

    def __init__(self, elements, le_pairs, name="", _trusted=False):
        elements = tuple(sorted(elements))
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate labels: %r" % (elements,))
        self.name = name
        self.elements = elements
        if not _trusted:
            le_pairs = _reflexive_transitive_closure(elements, le_pairs)
        down = {e: set() for e in elements}
        up = {e: set() for e in elements}
        for x, y in le_pairs:
            down[y].add(x)
            up[x].add(y)
        for x, y in le_pairs:
            if x != y and (y, x) in le_pairs:
                raise CycleError("antisymmetry violated: %s <= %s <= %s" % (x, y, x))
        self._down = {e: frozenset(s) for e, s in down.items()}
        self._up = {e: frozenset(s) for e, s in up.items()}
        self._le_pairs = frozenset(le_pairs)
        self._hash = hash((self.elements, self._le_pairs))

    # -- order queries ------------------------------------------------

    def le(self, x, y):
        self._check(x)
        self._check(y)
        return (x, y) in self._le_pairs

    def lt(self, x, y):
        return x != y and self.le(x, y)

    def comparable(self, x, y):
        return self.le(x, y) or self.le(y, x)

    def down(self, x):
        """All y <= x."""
        self._check(x)
        return self._down[x]

    def up(self, x):
        """All y >= x."""
        self._check(x)
        return self._up[x]

    def strict_down(self, x):
        return self._down[x] - {x}

    def strict_up(self, x):
        return self._up[x] - {x}

    @property
    def maximal_elements(self):
        return tuple(e for e in self.elements if len(self._up[e]) == 1)

    @property
    def minimal_elements(self):
        return tuple(e for e in self.elements if len(self._down[e]) == 1)

    def covers(self):
        """Covering pairs (x, y): x < y with nothing strictly between."""
        out = []
        for x in self.elements:
            for y in sorted(self.strict_up(x)):
                if not any(self.lt(x, z) and self.lt(z, y) for z in self.elements):
                    out.append((x, y))
        return tuple(out)

    def restrict(self, subset, name=""):
        """Induced subposet on `subset`."""
        subset = frozenset(subset)
        for e in subset:
            self._check(e)
        pairs = {(x, y) for (x, y) in self._le_pairs if x in subset and y in subset}
        return Poset(subset, pairs, name=name or (self.name + "|restricted"), _trusted=True)

    def le_pairs(self):
        return self._le_pairs

    def _check(self, x):
        if x not in self._down:
            raise UnknownLabel("unknown element %r" % (x,))

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and self._le_pairs == other._le_pairs
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "Poset(%s, %d elements)" % (self.name or "unnamed", len(self.elements))


def _reflexive_transitive_closure(elements, pairs):
    idx = {e: k for k, e in enumerate(elements)}
    n = len(elements)
    for x, y in pairs:
        if x not in idx:
            raise UnknownLabel("unknown element %r in relation" % (x,))
        if y not in idx:
            raise UnknownLabel("unknown element %r in relation" % (y,))
    reach = [set() for _ in range(n)]
    for k in range(n):
        reach[k].add(k)
    for x, y in pairs:
        reach[idx[x]].add(idx[y])
    # Warshall
    for k in range(n):
        for i in range(n):
            if k in reach[i]:
                reach[i] |= reach[k]
    return {(elements[i], elements[j]) for i in range(n) for j in reach[i]}


def make_poset(elements, relations, name=""):
    """Build a poset from generating pairs; the closure is computed here.

    Raises CycleError if the closure violates antisymmetry and UnknownLabel
    for relations mentioning labels outside `elements`.
    """
    return Poset(elements, relations, name=name)


# ---------------------------------------------------------------------------
# lower/upper sets


@dataclass(frozen=True)
class LowerSet:
    poset: Poset
    members: frozenset

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class UpperSet:
    poset: Poset
    members: frozenset

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


def lower_closure(P, J):
    """Smallest lower set containing J."""
    out = set()
    for j in J:
        out |= P.down(j)
    return LowerSet(P, frozenset(out))


def upper_closure(P, J):
    out = set()
    for j in J:
        out |= P.up(j)
    return UpperSet(P, frozenset(out))


def is_lower_set(P, S):
    S = set(S)
    return all(P.down(x) <= S for x in S)


def is_upper_set(P, S):
    S = set(S)
    return all(P.up(x) <= S for x in S)


def lower_sets(P):
    """All lower sets of P, sorted by (size, labels).  Bitmask scan, so only
    sensible for the desk scale this package targets (|P| <= ~20)."""
    n = len(P.elements)
    if n > 20:
        raise ValueError("lower set enumeration capped at 20 elements, got %d" % n)
    idx = {e: k for k, e in enumerate(P.elements)}
    downmask = []
    for e in P.elements:
        m = 0
        for d in P.down(e):
            m |= 1 << idx[d]
        downmask.append(m)
    out = []
    for mask in range(1 << n):
        ok = True
        for k in range(n):
            if mask >> k & 1 and downmask[k] & mask != downmask[k]:
                ok = False
                break
        if ok:
            members = frozenset(P.elements[k] for k in range(n) if mask >> k & 1)
            out.append(LowerSet(P, members))
    out.sort(key=lambda L: (len(L.members), tuple(sorted(L.members))))
    return tuple(out)


def linear_extension(P):
    """Elements in an order compatible with P (smaller first); deterministic."""
    return tuple(sorted(P.elements, key=lambda e: (len(P.down(e)), e)))


# ---------------------------------------------------------------------------
# chains


def maximal_chains(P):
    """All maximal chains, canonically ordered.

    Chains are increasing tuples; the listing is lexicographic.  The empty
    poset yields the single empty chain (see module docstring).
    """
    if not P.elements:
        return ((),)
    chains = []

    def extend(chain, last):
        succs = sorted(
            y
            for y in P.strict_up(last)
            if not any(P.lt(last, z) and P.lt(z, y) for z in P.elements)
        )
        if not succs:
            chains.append(tuple(chain))
            return
        for y in succs:
            chain.append(y)
            extend(chain, y)
            chain.pop()

    for m in sorted(P.minimal_elements):
        extend([m], m)
    return tuple(sorted(chains))


def chains_through(P, i):
    """Maximal chains of P containing i."""
    P._check(i)
    return tuple(A for A in maximal_chains(P) if i in A)


def is_chain(P, S):
    S = list(S)
    return all(P.comparable(x, y) for x, y in itertools.combinations(S, 2))


def sort_chain(P, S):
    """Order the elements of a chain increasingly."""
    return tuple(sorted(S, key=lambda x: (len(P.down(x)), x)))


# ---------------------------------------------------------------------------
# predicates


def is_downward_directed(P):
    """Every pair has a lower bound.  Empty poset: true by convention."""
    for x, y in itertools.combinations(P.elements, 2):
        if not (P.down(x) & P.down(y)):
            return False
    return True


def has_coinitial_chain(P):
    """Some chain C has every element of P above a member of C.

    Computed by direct search over chains (subsets of pairwise comparable
    elements), independently of is_downward_directed, so the finite
    equivalence of the two predicates stays a testable fact.  Empty poset:
    true (the empty chain works vacuously).
    """
    elems = P.elements
    if not elems:
        return True
    universe = set(elems)
    # smallest chains first; a singleton minimum is the common case
    for size in range(1, len(elems) + 1):
        for cand in itertools.combinations(elems, size):
            if not is_chain(P, cand):
                continue
            covered = set()
            for c in cand:
                covered |= P.up(c)
            if covered == universe:
                return True
    return False


def coinitial_family_condition(P, member_bound=2, budget=10**6):
    """Search for a family (F_i), F_i a nonempty subset of {<=i} with at most
    `member_bound` members, such that every pair F_i, F_j contains a
    comparable pair of elements.  Bounded backtracking; budget counts
    candidate assignments tried.
    """
    elems = sorted(P.elements)
    if not elems:
        return True
    candidates = {}
    for i in elems:
        pool = sorted(P.down(i))
        cands = []
        for size in range(1, member_bound + 1):
            cands.extend(itertools.combinations(pool, size))
        # small, deep candidates first: a global minimum shows up immediately
        cands.sort(key=lambda F: (len(F), tuple(len(P.down(f)) for f in F), F))
        candidates[i] = cands

    def compatible(F, G):
        return any(P.comparable(x, y) for x in F for y in G)

    tried = 0

    def assign(k, chosen):
        nonlocal tried
        if k == len(elems):
            return True
        i = elems[k]
        for F in candidates[i]:
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(
                    "family search passed %d candidate assignments" % budget
                )
            if all(compatible(F, chosen[j]) for j in elems[:k]):
                chosen[i] = F
                if assign(k + 1, chosen):
                    return True
                del chosen[i]
        return False

    return assign(0, {})


# ---------------------------------------------------------------------------
# Krull filtration


@dataclass(frozen=True)
class KrullFiltration:
    """Layers of iterated minimal-element stripping; layer 0 = minimal elements."""

    poset: Poset
    layers: tuple

    @property
    def dimension(self):
        return len(self.layers)

    def cumulative(self):
        """Increasing unions of layers (the lower sets J_1 <= J_2 <= ...)."""
        out = []
        acc = set()
        for layer in self.layers:
            acc |= set(layer)
            out.append(frozenset(acc))
        return tuple(out)


def krull_filtration(P):
    layers = []
    remaining = set(P.elements)
    while remaining:
        sub = {x: P.down(x) & remaining for x in remaining}
        layer = frozenset(x for x in remaining if sub[x] == {x})
        layers.append(layer)
        remaining -= layer
    return KrullFiltration(P, tuple(layers))


# ---------------------------------------------------------------------------
# sheltering


def shelter(P, J):
    """Maximal elements of P lying above J."""
    up = upper_closure(P, J).members
    return frozenset(m for m in P.maximal_elements if m in up)


def is_finitely_sheltered(P, J):
    """The exact identity-existence condition for the symbolic subalgebra on J.

    J empty returns False by convention (the test is stated for nonempty J).
    """
    J = frozenset(J)
    for x in J:
        P._check(x)
    if not J:
        return False
    tops = shelter(P, J)
    if not tops <= J:
        return False
    return J <= lower_closure(P, tops).members
