"""Structural model of the poset algebra and its subquotients.

An algebra is represented by its base poset and a carrier subset: the full
algebra has carrier = all elements, and every subquotient is again of this
shape.  Ideals are lower subsets of the carrier, quotients drop the lower
set from the carrier, and the socle series is read off the layered
stripping of minimal elements.  No element-level arithmetic happens here;
the matrix side lives in the truncation module.
"""

from dataclasses import dataclass
import itertools

from .errors import EmptyPoset, NotAnIdeal, NotUpperSet, UnknownLabel
from .hahn import HahnElement, basis, is_positive, leq
from .posets import (
    LowerSet,
    has_coinitial_chain,
    is_downward_directed,
    is_lower_set,
    is_upper_set,
    is_chain,
    is_finitely_sheltered,
    krull_filtration,
    lower_sets,
    upper_closure,
)


@dataclass(frozen=True)
class AlgebraHandle:
    base_poset: object
    carrier: frozenset

    def induced(self):
        """The carrier with the ambient order restricted to it."""
        return self.base_poset.restrict(self.carrier)

    @property
    def is_full(self):
        return self.carrier == frozenset(self.base_poset.elements)

    def __repr__(self):
        tag = "full" if self.is_full else "carrier=%s" % sorted(self.carrier)
        return "AlgebraHandle(%s, %s)" % (self.base_poset.name or "poset", tag)


def full_algebra(P):
    return AlgebraHandle(P, frozenset(P.elements))


def component_algebra(P, carrier):
    carrier = frozenset(carrier)
    for e in carrier:
        P._check(e)
    return AlgebraHandle(P, carrier)


@dataclass(frozen=True)
class IdealModel:
    algebra: AlgebraHandle
    members: frozenset

    @property
    def lower_set(self):
        return LowerSet(self.algebra.induced(), self.members)

    def __contains__(self, x):
        return x in self.members

    def __le__(self, other):
        return self.members <= other.members

    def __repr__(self):
        return "IdealModel(%s)" % (sorted(self.members),)


def make_ideal(alg, members):
    """Wrap a subset as an ideal after checking it is lower in the carrier."""
    members = frozenset(members)
    for e in members:
        if e not in alg.carrier:
            raise NotAnIdeal("%r is not in the carrier" % (e,))
    if not is_lower_set(alg.induced(), members):
        raise NotAnIdeal("%r is not a lower subset of the carrier" % (sorted(members),))
    return IdealModel(alg, members)


def ideal_lattice(alg):
    """Every ideal, smallest first; meets and joins are intersection and
    union of the underlying lower sets."""
    return tuple(IdealModel(alg, L.members) for L in lower_sets(alg.induced()))


def quotient(alg, ideal):
    if ideal.algebra != alg:
        raise NotAnIdeal("ideal belongs to a different algebra")
    if not is_lower_set(alg.induced(), ideal.members):
        raise NotAnIdeal("quotient needs a lower subset of the carrier")
    return AlgebraHandle(alg.base_poset, alg.carrier - ideal.members)


def socle_series(alg):
    """Ascending chain of ideals; step k piles up the k lowest stripping
    layers of the carrier."""
    filt = krull_filtration(alg.induced())
    return tuple(IdealModel(alg, cum) for cum in filt.cumulative())


def is_semiartinian(alg):
    filt = krull_filtration(alg.induced())
    reached = frozenset().union(*filt.layers) if filt.layers else frozenset()
    return reached == alg.carrier


def loewy_length(alg):
    return krull_filtration(alg.induced()).dimension


def is_prime(alg):
    if not is_upper_set(alg.base_poset, alg.carrier):
        raise NotUpperSet("prime test defined for upper carriers only")
    return is_downward_directed(alg.induced())


def is_primitive(alg):
    # one flag: the left and right notions agree for these algebras
    if not is_upper_set(alg.base_poset, alg.carrier):
        raise NotUpperSet("primitivity test defined for upper carriers only")
    return has_coinitial_chain(alg.induced())


# ---------------------------------------------------------------------------
# primitive spectrum


@dataclass(frozen=True)
class SpectrumReport:
    primitive_ideals: frozenset
    psi_image: frozenset
    psi_is_iso: bool


def primitive_ideal_at(P, i):
    """The ideal of the full algebra attached to a single element: everything
    not above i."""
    P._check(i)
    members = frozenset(P.elements) - P.up(i)
    return IdealModel(full_algebra(P), members)


def _all_nonempty_chains(P):
    elems = P.elements
    for r in range(1, len(elems) + 1):
        for sub in itertools.combinations(elems, r):
            if is_chain(P, sub):
                yield sub


def primitive_spectrum(P):
    """Primitive ideals computed two ways: complements of upper closures of
    nonempty chains, and the single-element map's image.  The report says
    whether the single-element map is an order isomorphism onto the lot."""
    alg = full_algebra(P)
    everything = frozenset(P.elements)
    from_chains = set()
    for A in _all_nonempty_chains(P):
        from_chains.add(IdealModel(alg, everything - upper_closure(P, A).members))
    image = {primitive_ideal_at(P, i) for i in P.elements}
    order_ok = all(
        (primitive_ideal_at(P, i).members <= primitive_ideal_at(P, j).members)
        == P.le(i, j)
        for i in P.elements
        for j in P.elements
    )
    return SpectrumReport(
        primitive_ideals=frozenset(from_chains),
        psi_image=frozenset(image),
        psi_is_iso=order_ok and from_chains == image,
    )


# ---------------------------------------------------------------------------
# K0


@dataclass(frozen=True)
class K0Model:
    poset: object
    basis_tags: tuple  # pairs (element, tag), sorted by element

    def tag_of(self, i):
        for e, t in self.basis_tags:
            if e == i:
                return t
        raise UnknownLabel("no basis class for %r" % (i,))

    def element_for(self, combination):
        """combination: mapping element -> integer multiplicity of its class."""
        return HahnElement(self.poset, dict(combination))

    def positive(self, combination):
        return is_positive(self.element_for(combination))

    def class_leq(self, i, j):
        return leq(basis(self.poset, i), basis(self.poset, j))

    def identity_class(self):
        return HahnElement(self.poset, {m: 1 for m in self.poset.maximal_elements})


def k0_model(P):
    if not P.elements:
        raise EmptyPoset("K0 of the zero algebra has no basis")
    tags = tuple((e, "[u_%s]" % e) for e in P.elements)
    return K0Model(P, tags)


def k0_correspondence(P):
    """Element -> basis class tag; the order embedding is class_leq."""
    return dict(k0_model(P).basis_tags)


def has_identity(alg):
    return is_finitely_sheltered(alg.base_poset, alg.carrier)


# ---------------------------------------------------------------------------
# assembled report (CLI-facing)


def structure_report(P):
    alg = full_algebra(P)
    spec = primitive_spectrum(P)
    k0_basis = [t for _, t in k0_model(P).basis_tags] if P.elements else []
    return {
        "ideals": [sorted(i.members) for i in ideal_lattice(alg)],
        "loewy": [sorted(i.members) for i in socle_series(alg)],
        "prime": is_prime(alg),
        "primitive": is_primitive(alg),
        "spectrum": sorted(sorted(i.members) for i in spec.primitive_ideals),
        "k0_basis": k0_basis,
    }
