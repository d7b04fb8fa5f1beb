"""Maps between posets and the homomorphisms they induce.

A map of posets is admissible for everything downstream when it is an order
embedding whose image is an upper set of the codomain.  Such maps act
covariantly on the ordered groups (push the basis forward) and
contravariantly (read coefficients back along the map).  They also act on
the matrix model: the site-by-site transport lives in the truncation module,
and naturality_check drives it against the basis-level group maps.

Non-injective maps are rejected, but a forced evaluation mode computes the
raw linear extension anyway so the standard counterexamples can be pinned
in tests.
"""

import itertools
from dataclasses import dataclass

from . import hahn
from . import truncation as tr
from .errors import (
    NotGraphMorphism,
    NotInjective,
    NotIsotone,
    NotLowerSet,
    NotPosMorphism,
    PosetMismatch,
    UnknownLabel,
)
from .posets import Poset, is_lower_set, is_upper_set, lower_closure


class PosetMap:
    """A total map between the element sets of two posets.

    Nothing about order is enforced at construction; run map_diagnosis for
    that.  Composition is written left-of-after: (g.compose(f))(x) = g(f(x)).
    """

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping):
        if not isinstance(source, Poset) or not isinstance(target, Poset):
            raise TypeError("source and target must be posets")
        mapping = dict(mapping)
        missing = set(source.elements) - set(mapping)
        if missing:
            raise UnknownLabel("map not defined on %r" % (sorted(missing),))
        extra = set(mapping) - set(source.elements)
        if extra:
            raise UnknownLabel("map defined on foreign labels %r" % (sorted(extra),))
        for x, y in mapping.items():
            if y not in target._down:
                raise UnknownLabel("image label %r not in target" % (y,))
        self.source = source
        self.target = target
        self.mapping = mapping

    @staticmethod
    def identity(P):
        return PosetMap(P, P, {x: x for x in P.elements})

    def __call__(self, x):
        try:
            return self.mapping[x]
        except KeyError:
            raise UnknownLabel("map not defined at %r" % (x,))

    def image(self):
        return frozenset(self.mapping.values())

    def is_injective(self):
        return len(self.image()) == len(self.source.elements)

    def compose(self, other):
        if not isinstance(other, PosetMap):
            raise TypeError("can only compose with another map")
        if other.target != self.source:
            raise PosetMismatch("codomain of inner map differs from domain of outer")
        return PosetMap(
            other.source, self.target, {x: self(other(x)) for x in other.source.elements}
        )

    def __eq__(self, other):
        return (
            isinstance(other, PosetMap)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.mapping.items())))

    def __repr__(self):
        body = ", ".join("%r:%r" % (k, self.mapping[k]) for k in self.source.elements)
        return "PosetMap({%s})" % body


@dataclass(frozen=True)
class MapDiagnosis:
    isotone: bool
    injective: bool
    imbedding: bool
    image_upper: bool

    @property
    def ok(self):
        return self.isotone and self.imbedding and self.image_upper

    @property
    def clause(self):
        for name in ("isotone", "injective", "imbedding", "image_upper"):
            if not getattr(self, name):
                return name
        return None


def map_diagnosis(f):
    """Check the three admissibility clauses separately.

    imbedding means x <= y iff f(x) <= f(y); it implies injectivity, which
    is reported on its own because the group maps need only that much.
    """
    P, Q = f.source, f.target
    isotone = all(Q.le(f(x), f(y)) for x, y in P.le_pairs())
    injective = f.is_injective()
    imbedding = all(
        P.le(x, y) == Q.le(f(x), f(y))
        for x in P.elements
        for y in P.elements
    )
    image_upper = is_upper_set(Q, f.image())
    return MapDiagnosis(isotone, injective, imbedding, image_upper)


def is_upper_embedding(f):
    return map_diagnosis(f).ok


def require_upper_embedding(f):
    d = map_diagnosis(f)
    if not d.ok:
        raise NotPosMorphism("map fails the %s clause" % d.clause)
    return d


# ---------------------------------------------------------------------------
# induced maps on the ordered groups


class GroupMap:
    """A group homomorphism between the free groups over two posets.

    domain and codomain are posets; the action is determined by basis_action,
    a function from domain basis labels to codomain group elements.
    """

    __slots__ = ("domain", "codomain", "_table", "tag")

    def __init__(self, domain, codomain, table, tag=""):
        self.domain = domain
        self.codomain = codomain
        self._table = table  # label -> HahnElement over codomain
        self.tag = tag

    def __call__(self, x):
        if not isinstance(x, hahn.HahnElement) or x.parent != self.domain:
            raise PosetMismatch("argument does not live over the domain poset")
        out = hahn.zero(self.codomain)
        for i, v in x.coeffs.items():
            out = out + self._table[i].scaled(v)
        return out

    def on_basis(self):
        return {i: self._table[i] for i in self.domain.elements}

    def compose(self, other):
        if other.codomain != self.domain:
            raise PosetMismatch("maps do not compose")
        table = {i: self(other._table[i]) for i in other.domain.elements}
        return GroupMap(other.domain, self.codomain, table, tag="composite")

    def __repr__(self):
        return "GroupMap(%s, %d basis elements)" % (
            self.tag or "untagged",
            len(self._table),
        )


def push_forward(f, force=False):
    """Covariant action: send each basis label to its image label.

    Rejects non-isotone maps outright and non-injective maps unless forced;
    the forced mode exists so the classical failure (a two-point chain
    collapsing onto a point sends -2h+k to a negative element) stays
    reproducible.
    """
    P, Q = f.source, f.target
    if not all(Q.le(f(x), f(y)) for x, y in P.le_pairs()):
        raise NotIsotone("map does not preserve order")
    if not f.is_injective() and not force:
        raise NotInjective("covariant action on the cone needs injectivity")
    table = {i: hahn.basis(Q, f(i)) for i in P.elements}
    return GroupMap(P, Q, table, tag="push")


def pull_back(f, force=False):
    """Contravariant action: coefficient at i is the coefficient at f(i)."""
    P, Q = f.source, f.target
    if not f.is_injective() and not force:
        raise NotInjective("contravariant action needs injectivity")
    table = {}
    for j in Q.elements:
        hits = {i: 1 for i in P.elements if f(i) == j}
        table[j] = hahn.HahnElement(P, hits)
    return GroupMap(Q, P, table, tag="pull")


@dataclass(frozen=True)
class ConeScan:
    preserved: bool
    counterexample: object
    bound: int
    checked: int


def cone_preservation(gmap, bound=2):
    """Exhaustively test whether the map sends positives to positives.

    All vectors with coefficients in [-bound, bound] over the domain are
    enumerated; the first positive one with a non-positive image is
    returned as the counterexample.
    """
    elements = gmap.domain.elements
    checked = 0
    for vec in itertools.product(range(-bound, bound + 1), repeat=len(elements)):
        x = hahn.HahnElement(gmap.domain, dict(zip(elements, vec)))
        if not hahn.is_positive(x):
            continue
        checked += 1
        if not hahn.is_positive(gmap(x)):
            return ConeScan(False, x, bound, checked)
    return ConeScan(True, None, bound, checked)


# ---------------------------------------------------------------------------
# associated graphs and the Cuntz-Krieger condition


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple  # pairs (source_vertex, range_vertex)

    def out_edges(self, v):
        return tuple(e for e in self.edges if e[0] == v)


def associated_graph(P):
    """Vertices are the elements, arrows are the strict relations."""
    edges = tuple(
        (i, j) for i in P.elements for j in P.elements if P.lt(i, j)
    )
    return Graph(P.elements, edges)


class GraphMap:
    """A pair of vertex and edge maps commuting with source and range."""

    __slots__ = ("source", "target", "vertex_map", "edge_map")

    def __init__(self, source, target, vertex_map, edge_map):
        vertex_map = dict(vertex_map)
        edge_map = dict(edge_map)
        if set(vertex_map) != set(source.vertices):
            raise NotGraphMorphism("vertex map is not total")
        if set(edge_map) != set(source.edges):
            raise NotGraphMorphism("edge map is not total")
        if not set(vertex_map.values()) <= set(target.vertices):
            raise NotGraphMorphism("vertex image escapes the target graph")
        if not set(edge_map.values()) <= set(target.edges):
            raise NotGraphMorphism("edge image escapes the target graph")
        for e in source.edges:
            img = edge_map[e]
            if img[0] != vertex_map[e[0]] or img[1] != vertex_map[e[1]]:
                raise NotGraphMorphism(
                    "edge %r breaks the source/range squares" % (e,)
                )
        self.source = source
        self.target = target
        self.vertex_map = vertex_map
        self.edge_map = edge_map


def graph_map_of(f):
    """The graph map induced by an isotone poset map."""
    P, Q = f.source, f.target
    if not all(Q.le(f(x), f(y)) for x, y in P.le_pairs()):
        raise NotIsotone("map does not preserve order")
    gsrc = associated_graph(P)
    gdst = associated_graph(Q)
    vmap = dict(f.mapping)
    emap = {(i, j): (f(i), f(j)) for (i, j) in gsrc.edges}
    return GraphMap(gsrc, gdst, vmap, emap)


def is_strict_ck(g):
    """Injective on vertices and edges, and a bijection on EVERY out-fiber."""
    vvals = list(g.vertex_map.values())
    if len(set(vvals)) != len(vvals):
        return False
    evals = list(g.edge_map.values())
    if len(set(evals)) != len(evals):
        return False
    for v in g.source.vertices:
        fiber = g.source.out_edges(v)
        image = {g.edge_map[e] for e in fiber}
        if image != set(g.target.out_edges(g.vertex_map[v])):
            return False
    return True


# ---------------------------------------------------------------------------
# symbolic algebra-level handles


class AlgebraMapHandle:
    """Covariant action on the matrix algebra, described on ideals and K0.

    The element-level action is the transport map of the truncation module;
    here we record what it does to the ideal lattice and to the K0 basis.
    """

    __slots__ = ("map",)

    def __init__(self, f):
        require_upper_embedding(f)
        self.map = f

    def k0_basis_image(self, i):
        return self.map(i)

    def ideal_image(self, L):
        """The ideal generated by the image of the ideal carried by L."""
        P, Q = self.map.source, self.map.target
        if not is_lower_set(P, L):
            raise NotLowerSet("carrier %r is not a lower set" % (sorted(L),))
        return frozenset(lower_closure(Q, {self.map(x) for x in L}))

    @property
    def unital(self):
        got = {self.map(m) for m in self.map.source.maximal_elements}
        return got == set(self.map.target.maximal_elements)


class AlgebraComapHandle:
    """Contravariant action: project away the sites outside the image, then
    read the remaining sites back along the map."""

    __slots__ = ("map",)

    def __init__(self, f):
        require_upper_embedding(f)
        self.map = f

    def kernel_carrier(self):
        Q = self.map.target
        gone = frozenset(set(Q.elements) - self.map.image())
        # the complement of an upper set; recorded as a sanity check
        assert is_lower_set(Q, gone)
        return gone

    def ideal_preimage(self, L):
        Q = self.map.target
        if not is_lower_set(Q, L):
            raise NotLowerSet("carrier %r is not a lower set" % (sorted(L),))
        return frozenset(x for x in self.map.source.elements if self.map(x) in L)

    def k0_basis_image(self, j):
        for i in self.map.source.elements:
            if self.map(i) == j:
                return i
        return None

    @property
    def unital(self):
        return True


def algebra_map(f):
    return AlgebraMapHandle(f)


def algebra_comap(f):
    return AlgebraComapHandle(f)


# ---------------------------------------------------------------------------
# naturality of the K0 correspondence


@dataclass(frozen=True)
class NaturalityReport:
    depth: int
    covariant_ok: bool
    contravariant_ok: bool
    sites: tuple

    @property
    def ok(self):
        return self.covariant_ok and self.contravariant_ok

    def describe(self):
        verdict = "commute" if self.ok else "FAIL"
        return "naturality squares %s at depth %d over sites %s" % (
            verdict,
            self.depth,
            ", ".join(map(str, self.sites)) or "(none)",
        )


def naturality_check(f, n=2):
    """Drive both K0 naturality squares at finite depth.

    Covariantly: the transported indicator of every minimal block at site i
    must be the indicator of a single minimal block at site f(i), which is
    exactly the basis statement rho(G(f) i) = K0-image of rho(i).
    Contravariantly: at a site j = f(i) of the target, every minimal block
    must be hit by exactly one minimal block from site i (the element-level
    map is injective on classes), while sites outside the image contribute
    zero on both paths.
    """
    require_upper_embedding(f)
    P, Q = f.source, f.target
    space_p = tr.build_space(P, n)
    space_q = tr.build_space(Q, n)
    push = push_forward(f)

    covariant_ok = True
    transported = {}  # site i -> list of transported block indicators
    for i in P.elements:
        if push(hahn.basis(P, i)) != hahn.basis(Q, f(i)):
            covariant_ok = False
        target_blocks = {
            frozenset(blk): key
            for key, blk in tr.local_partition(space_q, f(i)).items()
        }
        outs = []
        for blk in tr.local_partition(space_p, i).values():
            out = tr.transport(
                space_p, space_q, f.mapping, i, tr.indicator(space_p, blk)
            )
            support = frozenset(r for r, _ in out.entries)
            if (
                not out.is_diagonal()
                or out != tr.indicator(space_q, support)
                or support not in target_blocks
            ):
                covariant_ok = False
                break
            outs.append(support)
        transported[i] = outs

    contravariant_ok = True
    preimage = {f(i): i for i in P.elements}
    for j in Q.elements:
        if j not in preimage:
            # kernel site: both composite maps send the basis element to zero
            comap = algebra_comap(f)
            if comap.k0_basis_image(j) is not None:
                contravariant_ok = False
            continue
        i = preimage[j]
        for blk in tr.local_partition(space_q, j).values():
            hits = [s for s in transported[i] if s == frozenset(blk)]
            if len(hits) != 1:
                contravariant_ok = False
                break

    return NaturalityReport(
        depth=n,
        covariant_ok=covariant_ok,
        contravariant_ok=contravariant_ok,
        sites=tuple(P.elements),
    )
