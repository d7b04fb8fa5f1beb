"""Finite matrix model over a poset.

The function space picture of the poset algebra uses maps p: I -> alpha for an
infinite index cardinal.  Everything this package checks at desk scale happens
after replacing alpha by a finite depth n >= 2: points are pairs (p, A) with
p: I -> {0..n-1} and A a maximal chain, and matrices are square arrays over
those points with exact rational entries (or entries mod a small prime, for
speed).

Identities that quantify over values only survive the replacement verbatim and
are checked exactly here.  Statements that need "finitely many out of an
infinite supply" degenerate: at finite depth every matrix has finitely many
nonzero rows, so the smallest two-sided piece of a local algebra at a
non-maximal site is the local algebra itself.  Functions whose exact-theory
counterpart diverges from the finite one say so in their docstrings, and
`independence_probe` demonstrates the collapse on the two element chain.
"""

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IndexMismatch,
    NotPosMorphism,
    NTooSmall,
)
from .posets import (
    is_finitely_sheltered,
    is_upper_set,
    maximal_chains,
    shelter,
)


# ---------------------------------------------------------------------------
# point spaces


class TruncationSpace:
    """Point set of the depth-n model: pairs (p, A), canonically enumerated.

    `domain` is the coordinate set of the value maps p (all elements unless
    told otherwise) and `chains` the allowed second components (all maximal
    chains unless told otherwise).  The two block diagonal embeddings index
    their sources by spaces with a restricted domain or chain set, so both
    are parameters.

    Enumeration is lexicographic: value tuples in counting order outermost,
    chains in their canonical order innermost.
    """

    __slots__ = ("poset", "n", "domain", "chains", "points", "index", "_pos")

    def __init__(self, poset, n, domain=None, chains=None):
        if int(n) < 2:
            raise NTooSmall("depth must be at least 2, got %r" % (n,))
        self.poset = poset
        self.n = int(n)
        if domain is None:
            self.domain = tuple(sorted(poset.elements))
        else:
            self.domain = tuple(sorted(domain))
        for e in self.domain:
            poset._check(e)
        if chains is None:
            self.chains = maximal_chains(poset)
        else:
            self.chains = tuple(chains)
        self._pos = {e: k for k, e in enumerate(self.domain)}
        pts = []
        for p in itertools.product(range(self.n), repeat=len(self.domain)):
            for A in self.chains:
                pts.append((p, A))
        self.points = tuple(pts)
        self.index = {x: k for k, x in enumerate(self.points)}

    def signature(self):
        return (self.poset, self.n, self.domain, self.chains)

    def locate(self, point):
        try:
            return self.index[point]
        except KeyError:
            raise IndexMismatch("point %r does not belong to this space" % (point,))

    def sub_map(self, p, sub):
        """Restrict a value tuple (aligned with `domain`) to the labels in `sub`."""
        try:
            return tuple(p[self._pos[e]] for e in sorted(sub))
        except KeyError as exc:
            raise IndexMismatch("label %s is outside the coordinate domain" % (exc,))

    def __eq__(self, other):
        return isinstance(other, TruncationSpace) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "TruncationSpace(%d coordinates, n=%d, %d points)" % (
            len(self.domain),
            self.n,
            len(self.points),
        )


def build_space(P, n):
    """Depth-n point space over the whole poset."""
    return TruncationSpace(P, n)


def lower_chains(P, i):
    """Maximal chains of the principal lower set at i (each ends at i)."""
    return maximal_chains(P.restrict(P.down(i)))


def upper_chains(P, i):
    """Maximal chains of the principal upper set at i (each starts at i)."""
    return maximal_chains(P.restrict(P.up(i)))


def _merge_chain(C, E):
    # C ends at i, E starts at i; the union is again increasing
    return tuple(C) + tuple(E[1:])


# ---------------------------------------------------------------------------
# partitions of the value maps alone


def value_classes(P, n, i):
    """Partition of all value tuples by their restriction to the upper set at i."""
    P._check(i)
    dom = tuple(sorted(P.elements))
    pos = {e: k for k, e in enumerate(dom)}
    upi = tuple(sorted(P.up(i)))
    out = {}
    for p in itertools.product(range(n), repeat=len(dom)):
        u = tuple(p[pos[e]] for e in upi)
        out.setdefault(u, set()).add(p)
    return {u: frozenset(s) for u, s in sorted(out.items())}


def separation_threshold(P, J):
    """Smallest depth at which the class separation scan below is conclusive."""
    return sum(len(P.up(j)) for j in J) + 1


def value_separation(P, n, i, J):
    """True when no value class at i sits inside a union of one class per j in J.

    The scan is exact for the given n.  Escape is guaranteed by the theory
    whenever i is not below any member of J and n >= separation_threshold;
    below the threshold a spurious containment can occur, which is the point
    of reporting rather than asserting.
    """
    J = tuple(sorted(set(J)))
    classes_i = value_classes(P, n, i)
    per_j = [sorted(value_classes(P, n, j).items()) for j in J]
    for picks in itertools.product(*per_j):
        union = set()
        for _, blk in picks:
            union |= blk
        for blk in classes_i.values():
            if blk <= union:
                return False
    return True


# ---------------------------------------------------------------------------
# partitions and distinguished subsets of the point space


def restriction_partition(space, i):
    """Blocks keyed by (u, A): u the values on the upper set at i, A the chain.

    Partitions the whole space; every block is a singleton exactly when i is
    the unique minimum.
    """
    P = space.poset
    P._check(i)
    up = sorted(P.up(i))
    out = {}
    for k, (p, A) in enumerate(space.points):
        u = tuple(p[space._pos[e]] for e in up)
        out.setdefault((u, A), []).append(k)
    return {key: tuple(v) for key, v in sorted(out.items())}


def points_through(space, i):
    """Indices of the points whose chain passes through i."""
    space.poset._check(i)
    return frozenset(k for k, (_, A) in enumerate(space.points) if i in A)


def points_with_lower_chain(space, i, C):
    """Indices whose chain passes through i with lower part exactly C."""
    P = space.poset
    P._check(i)
    C = tuple(C)
    if C not in lower_chains(P, i):
        raise ValueError("%r is not a maximal chain of the lower set at %r" % (C, i))
    down = P.down(i)
    out = []
    for k, (_, A) in enumerate(space.points):
        if i in A and tuple(x for x in A if x in down) == C:
            out.append(k)
    return frozenset(out)


class BlockMap:
    """Chain relabeling on one block: (p, source + E) maps to (p, target + E).

    `source` and `target` are maximal chains of the lower set at `site`; the
    map is a bijection between the corresponding point blocks and composition
    only depends on the outer chains.
    """

    __slots__ = ("space", "site", "source", "target", "mapping")

    def __init__(self, space, site, source, target, mapping):
        self.space = space
        self.site = site
        self.source = tuple(source)
        self.target = tuple(target)
        self.mapping = dict(mapping)

    def __call__(self, k):
        try:
            return self.mapping[k]
        except KeyError:
            raise IndexMismatch("point %r is outside the source block" % (k,))

    def as_dict(self):
        return dict(self.mapping)

    def compose(self, other):
        """self after other.  Requires other to land in this map's source block."""
        if self.space != other.space or self.site != other.site:
            raise IndexMismatch("block maps live at different sites")
        if other.target != self.source:
            raise IndexMismatch(
                "cannot compose: codomain %r does not match domain %r"
                % (other.target, self.source)
            )
        return BlockMap(
            self.space,
            self.site,
            other.source,
            self.target,
            {k: self.mapping[v] for k, v in other.mapping.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, BlockMap)
            and self.space == other.space
            and self.site == other.site
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __repr__(self):
        return "BlockMap(site=%r, %r -> %r, %d points)" % (
            self.site,
            self.source,
            self.target,
            len(self.mapping),
        )


def chain_reroute(space, i, source, target):
    """The relabeling that swaps the lower chain `source` for `target` at i."""
    P = space.poset
    P._check(i)
    source = tuple(source)
    target = tuple(target)
    lows = lower_chains(P, i)
    if source not in lows or target not in lows:
        raise ValueError("both chains must be maximal in the lower set at %r" % (i,))
    down = P.down(i)
    mapping = {}
    for k in sorted(points_with_lower_chain(space, i, source)):
        p, A = space.points[k]
        above = tuple(x for x in A if x not in down)
        mapping[k] = space.locate((p, target + above))
    return BlockMap(space, i, source, target, mapping)


def local_partition(space, i):
    """Blocks keyed by (u, E): values on the upper set at i and upper chain part.

    Partitions the set of points whose chain passes through i.
    """
    P = space.poset
    P._check(i)
    up = sorted(P.up(i))
    upset = P.up(i)
    out = {}
    for k, (p, A) in enumerate(space.points):
        if i not in A:
            continue
        u = tuple(p[space._pos[e]] for e in up)
        E = tuple(x for x in A if x in upset)
        out.setdefault((u, E), []).append(k)
    return {key: frozenset(v) for key, v in sorted(out.items())}


def saturate(space, i, u, A):
    """Union of all chain reroutes at i of the restriction block keyed by (u, A).

    Needs i in A.  Equals the local block keyed by (u, A upper part): the
    saturation forgets which lower chain the block started from.
    """
    P = space.poset
    P._check(i)
    u = tuple(u)
    A = tuple(A)
    if i not in A:
        raise ValueError("saturation needs the chain to pass through %r" % (i,))
    blocks = restriction_partition(space, i)
    try:
        base = blocks[(u, A)]
    except KeyError:
        raise ValueError("no restriction block is keyed by %r" % ((u, A),))
    down = P.down(i)
    source = tuple(x for x in A if x in down)
    out = set()
    for target in lower_chains(P, i):
        f = chain_reroute(space, i, source, target)
        out.update(f(k) for k in base)
    return frozenset(out)


def local_block_refinement(space, i, j, u, E):
    """Local blocks at i inside the local block at j keyed by (u, E), with the
    predicted count.

    Requires i <= j.  Returns (keys, expected): `keys` are the (v, F) keys of
    the contained blocks, `expected` the count n**(free coordinates) times the
    number of maximal chains of the interval [i, j].
    """
    P = space.poset
    if not P.le(i, j):
        raise ValueError("refinement count needs %r <= %r" % (i, j))
    Z = local_partition(space, j)[(tuple(u), tuple(E))]
    got = tuple(sorted(key for key, blk in local_partition(space, i).items() if blk <= Z))
    free = len(P.up(i)) - len(P.up(j))
    interval = P.restrict(P.up(i) & P.down(j))
    expected = (space.n ** free) * len(maximal_chains(interval))
    return got, expected


# ---------------------------------------------------------------------------
# sparse matrices


def _coerce(value, mod):
    if mod is None:
        return Fraction(value)
    return int(value) % mod


class SparseMat:
    """Square matrix over a truncation space, stored sparsely.

    Entries are Fractions by default; pass mod=p for arithmetic in a prime
    field (p = 2 is the intended speed mode).  All operations return new
    objects; nothing mutates.
    """

    __slots__ = ("space", "mod", "entries")

    def __init__(self, space, entries=None, mod=None):
        self.space = space
        self.mod = mod
        store = {}
        if entries:
            npts = len(space.points)
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < npts and 0 <= c < npts):
                    raise IndexMismatch(
                        "entry (%r, %r) is outside a %d point space" % (r, c, npts)
                    )
                v = _coerce(v, mod)
                if v:
                    store[(r, c)] = v
        self.entries = store

    # -- queries --------------------------------------------------------

    def entry(self, r, c):
        return self.entries.get((r, c), _coerce(0, self.mod))

    def is_zero(self):
        return not self.entries

    @property
    def nnz(self):
        return len(self.entries)

    def row_support(self):
        return frozenset(r for r, _ in self.entries)

    def col_support(self):
        return frozenset(c for _, c in self.entries)

    def is_diagonal(self):
        return all(r == c for r, c in self.entries)

    # -- arithmetic -----------------------------------------------------

    def _compat(self, other):
        if self.space != other.space or self.mod != other.mod:
            raise IndexMismatch("matrices live over different spaces or scalars")

    def __add__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        self._compat(other)
        acc = dict(self.entries)
        for key, v in other.entries.items():
            acc[key] = acc.get(key, 0) + v
        return SparseMat(self.space, acc, mod=self.mod)

    def __sub__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, k):
        return SparseMat(
            self.space, {key: v * k for key, v in self.entries.items()}, mod=self.mod
        )

    def __mul__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        self._compat(other)
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMat(self.space, acc, mod=self.mod)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMat)
            and self.space == other.space
            and self.mod == other.mod
            and self.entries == other.entries
        )

    def __repr__(self):
        return "SparseMat(%d points, %d nonzero)" % (len(self.space.points), self.nnz)


def zero_mat(space, mod=None):
    return SparseMat(space, {}, mod=mod)


def identity_mat(space, mod=None):
    return SparseMat(space, {(k, k): 1 for k in range(len(space.points))}, mod=mod)


def indicator(space, points, mod=None):
    """Diagonal idempotent supported on the given point indices."""
    return SparseMat(space, {(k, k): 1 for k in points}, mod=mod)


def matrix_unit(space, x, y, mod=None):
    """Single entry matrix; x and y may be point indices or points."""
    r = x if isinstance(x, int) else space.locate(x)
    c = y if isinstance(y, int) else space.locate(y)
    return SparseMat(space, {(r, c): 1}, mod=mod)


# ---------------------------------------------------------------------------
# deterministic sampling


def _seed_int(space, tag):
    h = hashlib.md5()
    h.update(
        repr(
            (
                space.poset.elements,
                tuple(sorted(space.poset.le_pairs())),
                space.n,
                space.domain,
                space.chains,
                tag,
            )
        ).encode()
    )
    return int.from_bytes(h.digest()[:8], "big")


def sample_mats(space, count, seed=0, max_entries=8, mod=None):
    """Deterministic random sparse matrices with small integer entries."""
    rng = random.Random(_seed_int(space, ("sample", seed, mod, max_entries)))
    npts = len(space.points)
    out = []
    for _ in range(count):
        ent = {}
        for _ in range(rng.randint(1, max_entries)):
            ent[(rng.randrange(npts), rng.randrange(npts))] = rng.randint(-3, 3)
        out.append(SparseMat(space, ent, mod=mod))
    return out


# ---------------------------------------------------------------------------
# the scalar block extension (free off-coordinate on the diagonal)


def inflate_source(space, i):
    """Index space for `inflate` at i: values on the upper set, full chain set."""
    P = space.poset
    P._check(i)
    return TruncationSpace(P, space.n, domain=sorted(P.up(i)), chains=space.chains)


def _gluer(space, up):
    up = sorted(up)
    pos_up = {e: k for k, e in enumerate(up)}
    rest = [e for e in space.domain if e not in pos_up]
    rest_pos = {e: k for k, e in enumerate(rest)}

    def glue(rvals, u):
        return tuple(
            u[pos_up[e]] if e in pos_up else rvals[rest_pos[e]] for e in space.domain
        )

    return rest, glue


def inflate(space, i, small):
    """Copy each source entry across every choice of values off the upper set
    at i, placed on the diagonal of that free coordinate."""
    P = space.poset
    P._check(i)
    src = inflate_source(space, i)
    if small.space != src:
        raise IndexMismatch("matrix is not indexed by the inflation source at %r" % (i,))
    rest, glue = _gluer(space, P.up(i))
    acc = {}
    for (rs, cs), val in small.entries.items():
        u, A = src.points[rs]
        v, B = src.points[cs]
        for rvals in itertools.product(range(space.n), repeat=len(rest)):
            rr = space.locate((glue(rvals, u), A))
            cc = space.locate((glue(rvals, v), B))
            acc[(rr, cc)] = val
    return SparseMat(space, acc, mod=small.mod)


def deflate(space, i, mat):
    """Read the zero section of the free coordinate; left inverse of `inflate`."""
    P = space.poset
    P._check(i)
    if mat.space != space:
        raise IndexMismatch("matrix does not live over this space")
    src = inflate_source(space, i)
    up = sorted(P.up(i))
    rest = [e for e in space.domain if e not in P.up(i)]
    zero_rest = (0,) * len(rest)
    acc = {}
    for (r, c), val in mat.entries.items():
        p, A = space.points[r]
        q, B = space.points[c]
        if space.sub_map(p, rest) != zero_rest or space.sub_map(q, rest) != zero_rest:
            continue
        key_r = src.locate((space.sub_map(p, up), A))
        key_c = src.locate((space.sub_map(q, up), B))
        acc[(key_r, key_c)] = val
    return SparseMat(src, acc, mod=mat.mod)


def in_inflated_algebra(space, i, mat):
    """Exact membership in the image of `inflate` at i.

    Each (row values on the upper set, row chain, column values, column
    chain) block must be a scalar times the identity in the free coordinate:
    off diagonal entries vanish, diagonal entries agree and are all present.
    """
    P = space.poset
    P._check(i)
    if mat.space != space:
        raise IndexMismatch("matrix does not live over this space")
    up = sorted(P.up(i))
    rest = [e for e in space.domain if e not in P.up(i)]
    full = space.n ** len(rest)
    blocks = {}
    for (r, c), val in mat.entries.items():
        p, A = space.points[r]
        q, B = space.points[c]
        if space.sub_map(p, rest) != space.sub_map(q, rest):
            return False
        key = (space.sub_map(p, up), A, space.sub_map(q, up), B)
        blocks.setdefault(key, []).append(val)
    for vals in blocks.values():
        if len(vals) != full or any(v != vals[0] for v in vals):
            return False
    return True


# ---------------------------------------------------------------------------
# the local embedding (free lower chain as well)


def localize_source(space, i):
    """Index space for `localize` at i: the principal upper set with its own chains."""
    P = space.poset
    P._check(i)
    return TruncationSpace(P.restrict(P.up(i)), space.n)


def localize(space, i, small):
    """Spread each source entry over every lower chain at i and every choice
    of off-coordinate values, diagonally in both."""
    P = space.poset
    P._check(i)
    src = localize_source(space, i)
    if small.space != src:
        raise IndexMismatch("matrix is not indexed by the local source at %r" % (i,))
    rest, glue = _gluer(space, P.up(i))
    lows = lower_chains(P, i)
    acc = {}
    for (rs, cs), val in small.entries.items():
        u, E = src.points[rs]
        v, F = src.points[cs]
        for C in lows:
            A = _merge_chain(C, E)
            B = _merge_chain(C, F)
            for rvals in itertools.product(range(space.n), repeat=len(rest)):
                rr = space.locate((glue(rvals, u), A))
                cc = space.locate((glue(rvals, v), B))
                acc[(rr, cc)] = val
    return SparseMat(space, acc, mod=small.mod)


def delocalize(space, i, mat):
    """Read the canonical section (first lower chain, zero off-values); left
    inverse of `localize`."""
    P = space.poset
    P._check(i)
    if mat.space != space:
        raise IndexMismatch("matrix does not live over this space")
    src = localize_source(space, i)
    C0 = lower_chains(P, i)[0]
    up = sorted(P.up(i))
    upset = P.up(i)
    down = P.down(i)
    rest = [e for e in space.domain if e not in upset]
    zero_rest = (0,) * len(rest)
    acc = {}
    for (r, c), val in mat.entries.items():
        p, A = space.points[r]
        q, B = space.points[c]
        if i not in A or i not in B:
            continue
        if tuple(x for x in A if x in down) != C0:
            continue
        if tuple(x for x in B if x in down) != C0:
            continue
        if space.sub_map(p, rest) != zero_rest or space.sub_map(q, rest) != zero_rest:
            continue
        E = tuple(x for x in A if x in upset)
        F = tuple(x for x in B if x in upset)
        key_r = src.locate((space.sub_map(p, up), E))
        key_c = src.locate((space.sub_map(q, up), F))
        acc[(key_r, key_c)] = val
    return SparseMat(src, acc, mod=mat.mod)


def local_membership_report(space, i, mat):
    """All membership conditions for the local algebra at i, separately.

    The local algebra at i is cut out of the inflated algebra at i, so the
    scalar block condition is part of membership:
      scalar_blocks    membership in the inflated algebra at i
    Entrywise conditions:
      support          every entry sits on points whose chains pass through i
      chain_match      row and column chains agree below i
      reroute_invariant  entries are unchanged under every lower chain swap
    Matrix form of the first two (the redundancy question between the two
    displayed forms is open, so both are computed):
      matrix_support   mat equals its two sided compression to the points at i
      matrix_blocks    compressions to single lower chain blocks commute with mat
    """
    P = space.poset
    P._check(i)
    if mat.space != space:
        raise IndexMismatch("matrix does not live over this space")
    down = P.down(i)
    lows = lower_chains(P, i)

    support = True
    chain_match = True
    groups = {}
    for (r, c), val in mat.entries.items():
        p, A = space.points[r]
        q, B = space.points[c]
        if i not in A or i not in B:
            support = False
            continue
        CA = tuple(x for x in A if x in down)
        CB = tuple(x for x in B if x in down)
        if CA != CB:
            chain_match = False
            continue
        key = (p, tuple(x for x in A if x not in down), q, tuple(x for x in B if x not in down))
        groups.setdefault(key, {})[CA] = val
    reroute = True
    for by_chain in groups.values():
        vals = set(by_chain.values())
        if len(vals) != 1 or len(by_chain) != len(lows):
            reroute = False
            break

    zx = indicator(space, points_through(space, i), mod=mat.mod)
    matrix_support = (zx * mat == mat) and (mat * zx == mat)
    matrix_blocks = True
    for C in lows:
        zn = indicator(space, points_with_lower_chain(space, i, C), mod=mat.mod)
        left = zn * mat
        right = mat * zn
        if not (left == left * zn == right):
            matrix_blocks = False
            break

    return {
        "scalar_blocks": in_inflated_algebra(space, i, mat),
        "support": support,
        "chain_match": chain_match,
        "reroute_invariant": reroute,
        "matrix_support": matrix_support,
        "matrix_blocks": matrix_blocks,
    }


def in_local_algebra(space, i, mat):
    """Exact membership in the image of `localize` at i (entrywise test)."""
    rep = local_membership_report(space, i, mat)
    return (
        rep["scalar_blocks"]
        and rep["support"]
        and rep["chain_match"]
        and rep["reroute_invariant"]
    )


# ---------------------------------------------------------------------------
# embedding verification drivers (shared by tests and the command line)


@dataclass(frozen=True)
class EmbeddingReport:
    kind: str
    site: object
    pairs: int
    multiplicative: bool
    injective: bool
    unit_image_ok: bool
    image_in_algebra: bool
    reconstruction_ok: bool

    @property
    def ok(self):
        return (
            self.multiplicative
            and self.injective
            and self.unit_image_ok
            and self.image_in_algebra
            and self.reconstruction_ok
        )

    def describe(self):
        status = "ok" if self.ok else "FAILED"
        return "%s at site %s: %s (%d sampled pairs)" % (self.kind, self.site, status, self.pairs)


def verify_inflate_at(space, i, pairs=40, seed=0):
    """Homomorphism, injectivity, unit and membership checks for `inflate`."""
    src = inflate_source(space, i)
    mats = sample_mats(src, 2 * pairs, seed=seed)
    mult = True
    inj = True
    member = True
    for a, b in zip(mats[:pairs], mats[pairs:]):
        if inflate(space, i, a * b) != inflate(space, i, a) * inflate(space, i, b):
            mult = False
        if deflate(space, i, inflate(space, i, a)) != a:
            inj = False
        big = inflate(space, i, a)
        if not in_inflated_algebra(space, i, big):
            member = False
        if inflate(space, i, deflate(space, i, big)) != big:
            member = False
    unit_ok = inflate(space, i, identity_mat(src)) == identity_mat(space)
    recon = True
    for m in sample_mats(space, pairs // 2 or 1, seed=seed + 1):
        agrees = inflate(space, i, deflate(space, i, m)) == m
        if agrees != in_inflated_algebra(space, i, m):
            recon = False
    return EmbeddingReport("inflate", i, pairs, mult, inj, unit_ok, member, recon)


def verify_localize_at(space, i, pairs=40, seed=0):
    """Homomorphism, injectivity, unit and membership checks for `localize`."""
    src = localize_source(space, i)
    mats = sample_mats(src, 2 * pairs, seed=seed)
    mult = True
    inj = True
    member = True
    for a, b in zip(mats[:pairs], mats[pairs:]):
        if localize(space, i, a * b) != localize(space, i, a) * localize(space, i, b):
            mult = False
        if delocalize(space, i, localize(space, i, a)) != a:
            inj = False
        big = localize(space, i, a)
        rep = local_membership_report(space, i, big)
        if not all(rep.values()):
            member = False
    unit_ok = localize(space, i, identity_mat(src)) == indicator(
        space, points_through(space, i)
    )
    recon = True
    for m in sample_mats(space, pairs // 2 or 1, seed=seed + 1):
        agrees = localize(space, i, delocalize(space, i, m)) == m
        if agrees != in_local_algebra(space, i, m):
            recon = False
    return EmbeddingReport("localize", i, pairs, mult, inj, unit_ok, member, recon)


# ---------------------------------------------------------------------------
# products across sites


def sample_local_mats(space, i, count, seed=0):
    """Members of the local algebra at i: embedded units plus random images."""
    src = localize_source(space, i)
    rng = random.Random(_seed_int(space, ("local", i, seed)))
    npts = len(src.points)
    unit_pairs = list(itertools.product(range(npts), repeat=2))
    if len(unit_pairs) > count:
        unit_pairs = rng.sample(unit_pairs, count)
    out = [localize(space, i, matrix_unit(src, r, c)) for r, c in unit_pairs]
    out.extend(localize(space, i, m) for m in sample_mats(src, count, seed=seed + 1))
    return out


@dataclass(frozen=True)
class ProductLawReport:
    site_a: object
    site_b: object
    comparable: bool
    samples: int
    zero_products: object  # bool when the sites are incomparable, else None
    stay_local: object  # bool when comparable, else None
    indicator_product_matches: bool

    @property
    def ok(self):
        checks = [self.indicator_product_matches]
        if self.zero_products is not None:
            checks.append(self.zero_products)
        if self.stay_local is not None:
            checks.append(self.stay_local)
        return all(checks)

    def describe(self):
        rel = "comparable" if self.comparable else "incomparable"
        return "products at (%s, %s), %s: %s (%d samples per site)" % (
            self.site_a,
            self.site_b,
            rel,
            "ok" if self.ok else "FAILED",
            self.samples,
        )


def product_laws(space, i, j, samples=10, seed=0):
    """Cross site product behaviour on sampled local matrices.

    Incomparable sites annihilate each other; for comparable sites every
    product lands in the local algebra of the lower site, and the diagonal
    site idempotents have nonzero product exactly when the sites compare.
    """
    P = space.poset
    P._check(i)
    P._check(j)
    comp = P.comparable(i, j)
    lower = i if P.le(i, j) else j
    ms_i = sample_local_mats(space, i, samples, seed=seed)
    ms_j = sample_local_mats(space, j, samples, seed=seed + 7)
    zero_ok = None
    local_ok = None
    if not comp:
        zero_ok = all(
            (a * b).is_zero() and (b * a).is_zero() for a in ms_i for b in ms_j
        )
    else:
        local_ok = all(
            in_local_algebra(space, lower, a * b)
            and in_local_algebra(space, lower, b * a)
            for a in ms_i
            for b in ms_j
        )
    prod = indicator(space, points_through(space, i)) * indicator(
        space, points_through(space, j)
    )
    ind_ok = (not prod.is_zero()) == comp
    return ProductLawReport(i, j, comp, samples, zero_ok, local_ok, ind_ok)


# ---------------------------------------------------------------------------
# identity over an upper set of sites


@dataclass(frozen=True)
class UnitReport:
    sites: tuple
    sheltered: bool
    shelter_sites: tuple
    covers_region: bool
    acts_as_identity: bool
    note: str = ""

    @property
    def verdict(self):
        return self.sheltered and self.covers_region and self.acts_as_identity

    def describe(self):
        head = "identity over sites {%s}" % ", ".join(str(s) for s in self.sites)
        body = "yes" if self.verdict else "no"
        out = "%s: %s (sheltered=%s, covers=%s, acts=%s)" % (
            head,
            body,
            self.sheltered,
            self.covers_region,
            self.acts_as_identity,
        )
        if self.note:
            out += " [%s]" % self.note
        return out


def unit_check(space, J, samples=8, seed=0):
    """Identity test for the span attached to a set of sites.

    The exact criterion is shelteredness of the site set.  In a finite poset
    every nonempty upper set is sheltered, so the interesting negatives are
    the non-upper site sets (for example the bottom of a chain); J is
    therefore allowed to be arbitrary.  At finite depth the span at a
    non-maximal site is the whole local algebra, which can contain an
    identity even when the criterion fails; the verdict follows the
    criterion and the note records such a collapse when it appears.
    """
    P = space.poset
    J = frozenset(J)
    for x in J:
        P._check(x)
    sh = tuple(sorted(shelter(P, J)))
    sheltered = is_finitely_sheltered(P, J)

    region = set()
    for x in J:
        region |= points_through(space, x)
    u = zero_mat(space)
    for m in sh:
        u = u + indicator(space, points_through(space, m))
    covers = u == indicator(space, region)

    gens = []
    for x in sorted(J):
        if x in P.maximal_elements:
            gens.append(indicator(space, points_through(space, x)))
            gens.append(indicator(space, points_through(space, x)).scaled(2))
        else:
            gens.extend(sample_local_mats(space, x, samples, seed=seed))
    acts = all(u * g == g and g * u == g for g in gens)

    note = ""
    if not sheltered and covers and acts:
        note = (
            "finite depth collapse: the truncated span contains an identity "
            "even though the exact criterion fails"
        )
    return UnitReport(tuple(sorted(J)), sheltered, sh, covers, acts, note)


# ---------------------------------------------------------------------------
# independence probe (a deliberate failure demonstration)


@dataclass(frozen=True)
class ProbeReport:
    witness: object  # SparseMat or None
    description: str
    checks: tuple  # pairs (label, bool)
    note: str

    def describe(self):
        lines = [self.description]
        for label, ok in self.checks:
            lines.append("  %s: %s" % (label, ok))
        if self.note:
            lines.append("  note: %s" % self.note)
        return "\n".join(lines)


def independence_probe(space):
    """Look for one nonzero matrix lying in the spans of two different sites.

    In the exact theory the site spans are independent.  At finite depth they
    need not be: on the two element chain the identity matrix belongs both to
    the local algebra at the bottom (which is everything) and to the scalar
    span at the top (the single maximal chain passes through the top).  The
    probe scans small scalar combinations of the maximal site idempotents
    against membership at each non-maximal site and reports what it finds.
    """
    P = space.poset
    maxima = tuple(sorted(P.maximal_elements))
    others = tuple(e for e in P.elements if e not in maxima)
    if not others:
        return ProbeReport(
            None,
            "no non-maximal site to probe",
            (),
            "every element is maximal, the site spans decompose the algebra",
        )
    for i in others:
        for coeffs in itertools.product(range(3), repeat=len(maxima)):
            if not any(coeffs):
                continue
            mat = zero_mat(space)
            for k, m in zip(coeffs, maxima):
                if k:
                    mat = mat + indicator(space, points_through(space, m)).scaled(k)
            if in_local_algebra(space, i, mat):
                desc = "witness found: %s inside the local algebra at %s" % (
                    " + ".join(
                        "%d*[site %s]" % (k, m) for k, m in zip(coeffs, maxima) if k
                    ),
                    i,
                )
                checks = (
                    ("member of the local algebra at %s" % i, True),
                    ("nonzero", not mat.is_zero()),
                    (
                        "scalar combination of maximal site idempotents",
                        True,
                    ),
                )
                return ProbeReport(
                    mat,
                    desc,
                    checks,
                    "the exact theory keeps these spans independent; depth %d does not"
                    % space.n,
                )
    return ProbeReport(
        None,
        "no witness among scalar combinations of maximal site idempotents",
        (),
        "outcome recorded, not asserted: absence here does not prove independence",
    )


# ---------------------------------------------------------------------------
# transport along an order imbedding onto an upper set


def _check_site_map(P, Q, fmap):
    if set(fmap) != set(P.elements):
        raise NotPosMorphism("map must be defined on exactly the source elements")
    img = []
    for x in sorted(fmap):
        w = fmap[x]
        Q._check(w)
        img.append(w)
    if len(set(img)) != len(img):
        raise NotPosMorphism("map is not injective")
    for x in P.elements:
        for y in P.elements:
            if P.le(x, y) != Q.le(fmap[x], fmap[y]):
                raise NotPosMorphism(
                    "order is not matched at the pair (%r, %r)" % (x, y)
                )
    if not is_upper_set(Q, set(img)):
        raise NotPosMorphism("image is not an upper set of the target")


def transport(space_src, space_dst, fmap, i, mat):
    """Push a local matrix at site i across an order imbedding onto an upper set.

    The target entry at ((r+u, A), (r+v, B)) is the source entry at the pulled
    back points, with the lower chain below i on the source side fixed to the
    first one (for genuine local matrices the choice is immaterial).  Entries
    appear only where the target chains pass through the image site with equal
    lower parts and the off values agree.
    """
    P = space_src.poset
    Q = space_dst.poset
    _check_site_map(P, Q, fmap)
    P._check(i)
    if space_src.n != space_dst.n:
        raise IndexMismatch("source and target spaces use different depths")
    if mat.space != space_src:
        raise IndexMismatch("matrix does not live over the source space")
    fi = fmap[i]
    inv = {w: x for x, w in fmap.items()}
    upJ = Q.up(fi)
    downJ = Q.down(fi)
    C0 = lower_chains(P, i)[0]

    # chains through the image site, grouped by their lower part
    by_low = {}
    for A in space_dst.chains:
        if fi in A:
            low = tuple(x for x in A if x in downJ)
            by_low.setdefault(low, []).append(A)

    posJ = space_dst._pos
    src_dom = space_src.domain

    def pulled(full):
        return tuple(full[posJ[fmap[x]]] for x in src_dom)

    def src_chain(A):
        pulled_up = tuple(inv[w] for w in A if w in upJ)
        return _merge_chain(C0, pulled_up)

    upJ_sorted = sorted(upJ)
    restJ = [e for e in space_dst.domain if e not in upJ]
    rest_pos = {e: k for k, e in enumerate(restJ)}
    up_pos = {e: k for k, e in enumerate(upJ_sorted)}

    def glue(rvals, u):
        return tuple(
            u[up_pos[e]] if e in up_pos else rvals[rest_pos[e]]
            for e in space_dst.domain
        )

    acc = {}
    for As in by_low.values():
        for A in As:
            sA = src_chain(A)
            for B in As:
                sB = src_chain(B)
                for rvals in itertools.product(range(space_dst.n), repeat=len(restJ)):
                    for u in itertools.product(range(space_dst.n), repeat=len(upJ_sorted)):
                        row_full = glue(rvals, u)
                        rr_src = space_src.locate((pulled(row_full), sA))
                        for v in itertools.product(
                            range(space_dst.n), repeat=len(upJ_sorted)
                        ):
                            col_full = glue(rvals, v)
                            val = mat.entries.get(
                                (rr_src, space_src.locate((pulled(col_full), sB)))
                            )
                            if val:
                                rr = space_dst.locate((row_full, A))
                                cc = space_dst.locate((col_full, B))
                                acc[(rr, cc)] = val
    return SparseMat(space_dst, acc, mod=mat.mod)
