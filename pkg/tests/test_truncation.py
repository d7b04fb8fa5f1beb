"""Finite matrix model: point spaces, partitions, embeddings, transport."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orderlab.errors import IndexMismatch, NotPosMorphism, NTooSmall, UnknownLabel
from orderlab.posets import make_poset, maximal_chains
import orderlab.truncation as tr


CHAIN2 = make_poset(["a", "b"], [("a", "b")], name="chain2")
CHAIN3 = make_poset(["a", "b", "c"], [("a", "b"), ("b", "c")], name="chain3")
ANTI2 = make_poset(["a", "b"], [], name="antichain2")
VEE = make_poset(["a", "b", "c"], [("a", "b"), ("a", "c")], name="vee")
LAM = make_poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="lambda")
DIAMOND = make_poset(
    ["a", "b", "c", "d"],
    [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
    name="diamond",
)
KITE = make_poset(
    ["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("c", "d")], name="kite"
)
EMPTY = make_poset([], [], name="empty")

FIXTURES = [CHAIN2, CHAIN3, ANTI2, VEE, LAM, DIAMOND, KITE]

S_CHAIN2 = tr.build_space(CHAIN2, 2)
S_CHAIN3 = tr.build_space(CHAIN3, 2)
S_ANTI2 = tr.build_space(ANTI2, 2)
S_VEE = tr.build_space(VEE, 2)
S_LAM = tr.build_space(LAM, 2)
S_DIAMOND = tr.build_space(DIAMOND, 2)
S_KITE = tr.build_space(KITE, 2)

SPACES = [S_CHAIN2, S_CHAIN3, S_ANTI2, S_VEE, S_LAM, S_DIAMOND, S_KITE]


# ---------------------------------------------------------------------------
# spaces and enumeration


def test_point_counts_frozen():
    assert len(S_CHAIN2) == 4
    assert len(S_ANTI2) == 8
    assert len(tr.build_space(EMPTY, 2)) == 1


def test_point_count_formula():
    for P in FIXTURES:
        for n in (2, 3):
            space = tr.build_space(P, n)
            assert len(space) == n ** len(P.elements) * len(maximal_chains(P))


def test_depth_floor():
    with pytest.raises(NTooSmall):
        tr.build_space(CHAIN2, 1)
    with pytest.raises(NTooSmall):
        tr.build_space(CHAIN2, 0)


def test_canonical_enumeration_frozen():
    assert S_CHAIN2.points == (
        ((0, 0), ("a", "b")),
        ((0, 1), ("a", "b")),
        ((1, 0), ("a", "b")),
        ((1, 1), ("a", "b")),
    )
    # chains innermost
    assert S_ANTI2.points[0] == ((0, 0), ("a",))
    assert S_ANTI2.points[1] == ((0, 0), ("b",))


def test_locate_roundtrip():
    for space in (S_CHAIN2, S_VEE):
        for k, x in enumerate(space.points):
            assert space.locate(x) == k
    with pytest.raises(IndexMismatch):
        S_CHAIN2.locate(((0, 0), ("b",)))


# ---------------------------------------------------------------------------
# the restriction partition and value classes


def test_restriction_partition_chain_frozen():
    top = tr.restriction_partition(S_CHAIN2, "b")
    assert len(top) == 2
    assert sorted(len(v) for v in top.values()) == [2, 2]
    bottom = tr.restriction_partition(S_CHAIN2, "a")
    assert len(bottom) == 4
    assert all(len(v) == 1 for v in bottom.values())


def test_restriction_partition_is_partition():
    for space in SPACES:
        for i in space.poset.elements:
            blocks = tr.restriction_partition(space, i)
            seen = sorted(k for blk in blocks.values() for k in blk)
            assert seen == list(range(len(space)))


def test_restriction_partition_unknown_label():
    with pytest.raises(UnknownLabel):
        tr.restriction_partition(S_CHAIN2, "z")


def test_partition_coarsening_counts():
    # for i < j every upper-site block is a union of blocks from the lower site
    cases = [(S_CHAIN2, "a", "b"), (S_DIAMOND, "a", "b"), (S_DIAMOND, "b", "d"),
             (S_KITE, "a", "c")]
    for space, i, j in cases:
        P = space.poset
        wanted = space.n ** (len(P.up(i)) - len(P.up(j)))
        fine = tr.restriction_partition(space, i)
        coarse = tr.restriction_partition(space, j)
        for blk in coarse.values():
            parts = [key for key, sub in fine.items() if set(sub) <= set(blk)]
            assert len(parts) == wanted
            assert sorted(k for key in parts for k in fine[key]) == sorted(blk)


def test_value_class_coarsening():
    for P, i, j in [(CHAIN2, "a", "b"), (DIAMOND, "a", "d"), (VEE, "a", "c")]:
        n = 2
        fine = tr.value_classes(P, n, i)
        coarse = tr.value_classes(P, n, j)
        wanted = n ** (len(P.up(i)) - len(P.up(j)))
        for blk in coarse.values():
            parts = [u for u, sub in fine.items() if sub <= blk]
            assert len(parts) == wanted


def test_value_separation_at_threshold():
    # the scan is asserted at or above the computed threshold only
    cases = [(VEE, "c", ["b"]), (VEE, "b", ["c"]), (LAM, "a", ["b"]),
             (DIAMOND, "b", ["c"])]
    for P, i, J in cases:
        assert not any(P.le(i, j) for j in J)
        thr = tr.separation_threshold(P, J)
        assert tr.value_separation(P, thr, i, J)
        assert tr.value_separation(P, thr + 1, i, J)


def test_value_separation_detects_containment():
    # i below a member of J: the class at i refines the class at j
    assert not tr.value_separation(VEE, 2, "a", ["b"])
    assert not tr.value_separation(CHAIN3, 2, "a", ["c"])
    assert not tr.value_separation(DIAMOND, 3, "b", ["d"])


# ---------------------------------------------------------------------------
# distinguished point sets


def test_site_sets_intersect_iff_comparable():
    for space in (S_VEE, S_LAM, S_DIAMOND, S_KITE):
        P = space.poset
        for i, j in itertools.combinations(P.elements, 2):
            touch = bool(tr.points_through(space, i) & tr.points_through(space, j))
            assert touch == P.comparable(i, j)


def test_maximal_site_sets_partition_space():
    for space in (S_ANTI2, S_VEE):
        parts = [tr.points_through(space, m) for m in space.poset.maximal_elements]
        assert sorted(k for blk in parts for k in blk) == list(range(len(space)))


def test_lower_chain_blocks_partition_site():
    for space in (S_LAM, S_DIAMOND, S_KITE):
        P = space.poset
        for i in P.elements:
            blocks = [
                tr.points_with_lower_chain(space, i, C) for C in tr.lower_chains(P, i)
            ]
            assert sorted(k for blk in blocks for k in blk) == sorted(
                tr.points_through(space, i)
            )


def test_lower_chain_block_nesting():
    # same-site blocks with different chains are disjoint; a finer lower chain
    # at a lower site absorbs the block
    lows_d = tr.lower_chains(DIAMOND, "d")
    nd = {C: tr.points_with_lower_chain(S_DIAMOND, "d", C) for C in lows_d}
    assert not (nd[lows_d[0]] & nd[lows_d[1]])
    C = tr.lower_chains(DIAMOND, "b")[0]
    nb = tr.points_with_lower_chain(S_DIAMOND, "b", C)
    D = [x for x in lows_d if set(C) <= set(x)][0]
    assert nd[D] <= nb


def test_points_with_lower_chain_rejects_non_chain():
    with pytest.raises(ValueError):
        tr.points_with_lower_chain(S_DIAMOND, "d", ("a", "d"))  # not maximal
    with pytest.raises(ValueError):
        tr.points_with_lower_chain(S_DIAMOND, "b", ("a", "c"))


# ---------------------------------------------------------------------------
# chain reroutes


def test_reroute_composition_law():
    lows = tr.lower_chains(LAM, "c")
    maps = {
        (C, D): tr.chain_reroute(S_LAM, "c", C, D)
        for C in lows
        for D in lows
    }
    for C in lows:
        ident = maps[(C, C)]
        assert all(ident(k) == k for k in ident.mapping)
        for D in lows:
            for E in lows:
                assert maps[(D, E)].compose(maps[(C, D)]) == maps[(C, E)]


def test_reroute_is_bijection_between_blocks():
    lows = tr.lower_chains(DIAMOND, "d")
    f = tr.chain_reroute(S_DIAMOND, "d", lows[0], lows[1])
    src = tr.points_with_lower_chain(S_DIAMOND, "d", lows[0])
    dst = tr.points_with_lower_chain(S_DIAMOND, "d", lows[1])
    assert {f(k) for k in src} == set(dst)
    # the value tuple is untouched
    for k in src:
        p, _ = S_DIAMOND.points[k]
        q, _ = S_DIAMOND.points[f(k)]
        assert p == q


def test_cross_site_reroute_agreement():
    # a reroute at a lower site restricts to the matching reroute one site up
    C, Cp = tr.lower_chains(KITE, "c")
    D, Dp = C + ("d",), Cp + ("d",)
    f_low = tr.chain_reroute(S_KITE, "c", C, Cp)
    f_high = tr.chain_reroute(S_KITE, "d", D, Dp)
    nd = tr.points_with_lower_chain(S_KITE, "d", D)
    assert {f_low(k) for k in nd} == set(tr.points_with_lower_chain(S_KITE, "d", Dp))
    assert all(f_low(k) == f_high(k) for k in nd)


def test_reroute_outside_block():
    lows = tr.lower_chains(DIAMOND, "d")
    f = tr.chain_reroute(S_DIAMOND, "d", lows[0], lows[1])
    outside = next(iter(tr.points_with_lower_chain(S_DIAMOND, "d", lows[1])))
    with pytest.raises(IndexMismatch):
        f(outside)


# ---------------------------------------------------------------------------
# local partitions


def test_local_partition_covers_site():
    for space in SPACES:
        for i in space.poset.elements:
            blocks = tr.local_partition(space, i)
            seen = sorted(k for blk in blocks.values() for k in blk)
            assert seen == sorted(tr.points_through(space, i))
            assert sum(len(b) for b in blocks.values()) == len(seen)


def test_local_blocks_incomparable_disjoint_comparable_nested():
    for space, i, j in [(S_VEE, "b", "c"), (S_KITE, "a", "b")]:
        for Y in tr.local_partition(space, i).values():
            for Z in tr.local_partition(space, j).values():
                assert not (Y & Z)
    for space, i, j in [(S_DIAMOND, "a", "d"), (S_KITE, "a", "c"), (S_CHAIN3, "a", "b")]:
        for Y in tr.local_partition(space, i).values():
            for Z in tr.local_partition(space, j).values():
                assert not (Y & Z) or Y <= Z


def test_local_block_refinement_counts_frozen():
    for (u, E) in tr.local_partition(S_DIAMOND, "d"):
        got, expected = tr.local_block_refinement(S_DIAMOND, "a", "d", u, E)
        assert expected == 16  # n**3 free values times two interval chains
        assert len(got) == expected
    for (u, E) in tr.local_partition(S_DIAMOND, "d"):
        got, expected = tr.local_block_refinement(S_DIAMOND, "b", "d", u, E)
        assert expected == 2
        assert len(got) == expected


def test_local_block_refinement_characterization():
    P = DIAMOND
    for (u, E) in tr.local_partition(S_DIAMOND, "d"):
        got, _ = tr.local_block_refinement(S_DIAMOND, "a", "d", u, E)
        for (v, F) in got:
            named = dict(zip(sorted(P.up("a")), v))
            assert tuple(named[e] for e in sorted(P.up("d"))) == u
            assert tuple(x for x in F if x in P.up("d")) == E


def test_local_block_upward_step():
    # every local block at a non-maximal site fits in one block further up
    for space in (S_KITE, S_DIAMOND):
        P = space.poset
        for i in P.elements:
            if i in P.maximal_elements:
                continue
            for (u, E), Y in tr.local_partition(space, i).items():
                j = [x for x in E if P.lt(i, x)][0]
                named = dict(zip(sorted(P.up(i)), u))
                v = tuple(named[e] for e in sorted(P.up(j)))
                F = tuple(x for x in E if x in P.up(j))
                assert Y <= tr.local_partition(space, j)[(v, F)]


def test_saturate_equals_local_block():
    for space, i in [(S_LAM, "c"), (S_DIAMOND, "d"), (S_KITE, "c")]:
        P = space.poset
        for (u, A) in tr.restriction_partition(space, i):
            if i not in A:
                with pytest.raises(ValueError):
                    tr.saturate(space, i, u, A)
                continue
            E = tuple(x for x in A if x in P.up(i))
            assert tr.saturate(space, i, u, A) == tr.local_partition(space, i)[(u, E)]


def test_local_mat_row_support_is_union_of_blocks():
    for space, i in [(S_KITE, "c"), (S_DIAMOND, "b")]:
        blocks = tr.local_partition(space, i).values()
        for m in tr.sample_local_mats(space, i, 6, seed=11):
            rows = m.row_support()
            for blk in blocks:
                assert blk & rows in (frozenset(), blk)


# ---------------------------------------------------------------------------
# sparse matrices


def test_matrix_arithmetic_basics():
    one = tr.identity_mat(S_CHAIN2)
    zero = tr.zero_mat(S_CHAIN2)
    a, b, c = tr.sample_mats(S_CHAIN2, 3, seed=1)
    assert one * a == a == a * one
    assert zero * a == zero == a * zero
    assert a + zero == a
    assert a - a == zero
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a.scaled(Fraction(1, 2)).scaled(2) == a
    assert (-a) + a == zero


def test_matrix_space_guard():
    a = tr.identity_mat(S_CHAIN2)
    b = tr.identity_mat(S_ANTI2)
    with pytest.raises(IndexMismatch):
        a * b
    with pytest.raises(IndexMismatch):
        a + b
    with pytest.raises(IndexMismatch):
        tr.SparseMat(S_CHAIN2, {(0, 99): 1})


def test_mod2_reduction_is_a_homomorphism():
    def red(x):
        return tr.SparseMat(x.space, {k: int(v) for k, v in x.entries.items()}, mod=2)

    a, b = tr.sample_mats(S_VEE, 2, seed=6)
    assert red(a * b) == red(a) * red(b)
    assert red(a + b) == red(a) + red(b)
    one2 = tr.identity_mat(S_VEE, mod=2)
    assert one2 * red(a) == red(a)
    with pytest.raises(IndexMismatch):
        red(a) * a  # scalar modes must match


# ---------------------------------------------------------------------------
# the inflated algebra (scalar blocks in the free coordinate)


def test_inflate_sends_one_to_one():
    for space in SPACES:
        for i in space.poset.elements:
            src = tr.inflate_source(space, i)
            assert tr.inflate(space, i, tr.identity_mat(src)) == tr.identity_mat(space)


def test_inflate_matrix_unit_is_block_indicator():
    for space, i in [(S_CHAIN2, "b"), (S_VEE, "c"), (S_DIAMOND, "b")]:
        src = tr.inflate_source(space, i)
        blocks = tr.restriction_partition(space, i)
        for k, (u, A) in enumerate(src.points):
            image = tr.inflate(space, i, tr.matrix_unit(src, k, k))
            assert image == tr.indicator(space, blocks[(u, A)])


def test_inflate_reports_ok():
    for space in SPACES:
        for i in space.poset.elements:
            rep = tr.verify_inflate_at(space, i, pairs=10, seed=3)
            assert rep.ok, rep


def test_inflated_membership_matches_reconstruction():
    for space, i in [(S_CHAIN2, "a"), (S_CHAIN2, "b"), (S_VEE, "b"), (S_LAM, "c")]:
        for m in tr.sample_mats(space, 10, seed=21):
            agrees = tr.inflate(space, i, tr.deflate(space, i, m)) == m
            assert agrees == tr.in_inflated_algebra(space, i, m)


def test_inflated_algebras_nest_downward():
    # i <= j: anything inflated at j also passes the test at i
    cases = [(S_CHAIN3, "a", "c"), (S_DIAMOND, "a", "d"), (S_KITE, "b", "d")]
    for space, i, j in cases:
        for m in tr.sample_mats(tr.inflate_source(space, j), 8, seed=9):
            assert tr.in_inflated_algebra(space, i, tr.inflate(space, j, m))


def test_inflated_reverse_containment_fails_frozen():
    # b and c are incomparable in the vee: some block indicator from the site c
    # partition escapes the inflated algebra at b, already at depth 2
    blocks = tr.restriction_partition(S_VEE, "c")
    key = ((0,), ("a", "b"))
    assert key in blocks
    witness = tr.indicator(S_VEE, blocks[key])
    assert tr.in_inflated_algebra(S_VEE, "c", witness)
    assert not tr.in_inflated_algebra(S_VEE, "b", witness)


def test_inflated_reverse_containment_fails_at_conservative_depth():
    # the depth used by the textbook separation argument: |I| + 2
    n = len(VEE.elements) + 2
    space = tr.build_space(VEE, n)
    found = False
    for key, blk in tr.restriction_partition(space, "c").items():
        cand = tr.indicator(space, blk)
        if not tr.in_inflated_algebra(space, "b", cand):
            found = True
            break
    assert found


def test_one_in_inflated_algebra_everywhere():
    for space in SPACES:
        one = tr.identity_mat(space)
        for i in space.poset.elements:
            assert tr.in_inflated_algebra(space, i, one)


# ---------------------------------------------------------------------------
# the local algebra


def test_localize_one_is_site_indicator():
    for space in SPACES:
        for i in space.poset.elements:
            src = tr.localize_source(space, i)
            assert tr.localize(space, i, tr.identity_mat(src)) == tr.indicator(
                space, tr.points_through(space, i)
            )


def test_localize_matrix_unit_is_local_block_indicator():
    for space, i in [(S_CHAIN2, "b"), (S_LAM, "c"), (S_DIAMOND, "b")]:
        src = tr.localize_source(space, i)
        blocks = tr.local_partition(space, i)
        for k, (u, E) in enumerate(src.points):
            image = tr.localize(space, i, tr.matrix_unit(src, k, k))
            assert image == tr.indicator(space, blocks[(u, E)])


def test_localize_reports_ok():
    for space in SPACES:
        for i in space.poset.elements:
            rep = tr.verify_localize_at(space, i, pairs=10, seed=3)
            assert rep.ok, rep


def test_local_membership_full_report_on_images():
    for space, i in [(S_VEE, "b"), (S_KITE, "c"), (S_DIAMOND, "d")]:
        for m in tr.sample_mats(tr.localize_source(space, i), 6, seed=13):
            rep = tr.local_membership_report(space, i, tr.localize(space, i, m))
            assert all(rep.values()), rep


def test_local_membership_matrix_form_matches_entrywise():
    # the two displayed matrix equations capture exactly the first two
    # entrywise conditions; checked on random matrices, members or not
    for space, i in [(S_CHAIN2, "a"), (S_VEE, "b"), (S_LAM, "c"), (S_KITE, "c")]:
        mats = tr.sample_mats(space, 12, seed=17)
        mats.append(tr.identity_mat(space))
        mats.append(tr.indicator(space, tr.points_through(space, i)))
        for m in mats:
            rep = tr.local_membership_report(space, i, m)
            assert (rep["matrix_support"] and rep["matrix_blocks"]) == (
                rep["support"] and rep["chain_match"]
            ), rep


def test_local_membership_matches_reconstruction():
    for space, i in [(S_CHAIN2, "b"), (S_LAM, "c"), (S_VEE, "a")]:
        for m in tr.sample_mats(space, 10, seed=19):
            agrees = tr.localize(space, i, tr.delocalize(space, i, m)) == m
            assert agrees == tr.in_local_algebra(space, i, m)


def test_site_indicators_are_local_members():
    for space in (S_LAM, S_DIAMOND):
        P = space.poset
        for i in P.elements:
            assert tr.in_local_algebra(
                space, i, tr.indicator(space, tr.points_through(space, i))
            )
            for C in tr.lower_chains(P, i):
                zn = tr.indicator(space, tr.points_with_lower_chain(space, i, C))
                rep = tr.local_membership_report(space, i, zn)
                # a single lower-chain block indicator is a member exactly
                # when there is only one lower chain
                assert rep["scalar_blocks"] and rep["support"] and rep["chain_match"]
                assert rep["reroute_invariant"] == (len(tr.lower_chains(P, i)) == 1)


def test_local_sits_inside_inflated():
    for space, i in [(S_VEE, "b"), (S_KITE, "c")]:
        for m in tr.sample_local_mats(space, i, 8, seed=23):
            assert tr.in_inflated_algebra(space, i, m)


# ---------------------------------------------------------------------------
# products across sites


def test_product_laws_all_fixture_pairs():
    for space in (S_CHAIN2, S_ANTI2, S_VEE, S_LAM, S_DIAMOND, S_KITE):
        P = space.poset
        for i, j in itertools.combinations_with_replacement(P.elements, 2):
            rep = tr.product_laws(space, i, j, samples=6, seed=2)
            assert rep.ok, rep.describe()


def test_indicator_products_frozen():
    ia = tr.indicator(S_ANTI2, tr.points_through(S_ANTI2, "a"))
    ib = tr.indicator(S_ANTI2, tr.points_through(S_ANTI2, "b"))
    assert (ia * ib).is_zero()
    ja = tr.indicator(S_CHAIN2, tr.points_through(S_CHAIN2, "a"))
    jb = tr.indicator(S_CHAIN2, tr.points_through(S_CHAIN2, "b"))
    meet = tr.points_through(S_CHAIN2, "a") & tr.points_through(S_CHAIN2, "b")
    assert ja * jb == tr.indicator(S_CHAIN2, meet)
    assert not (ja * jb).is_zero()


def test_incomparable_unit_products_vanish_exhaustively():
    # every pair of embedded matrix units from the two arms of the vee
    src_b = tr.localize_source(S_VEE, "b")
    src_c = tr.localize_source(S_VEE, "c")
    units_b = [
        tr.localize(S_VEE, "b", tr.matrix_unit(src_b, r, c))
        for r in range(len(src_b))
        for c in range(len(src_b))
    ]
    units_c = [
        tr.localize(S_VEE, "c", tr.matrix_unit(src_c, r, c))
        for r in range(len(src_c))
        for c in range(len(src_c))
    ]
    for x in units_b:
        for y in units_c:
            assert (x * y).is_zero() and (y * x).is_zero()


# ---------------------------------------------------------------------------
# identities over site sets


def test_unit_check_whole_poset():
    for space in SPACES:
        rep = tr.unit_check(space, set(space.poset.elements), samples=4)
        assert rep.verdict, rep.describe()
        u = tr.zero_mat(space)
        for m in rep.shelter_sites:
            u = u + tr.indicator(space, tr.points_through(space, m))
        assert u == tr.identity_mat(space)


def test_unit_check_upper_sets():
    assert tr.unit_check(S_CHAIN2, {"b"}, samples=4).verdict
    assert tr.unit_check(S_VEE, {"b", "c"}, samples=4).verdict
    assert tr.unit_check(S_KITE, {"c", "d"}, samples=4).verdict


def test_unit_check_bottom_of_chain_frozen():
    rep = tr.unit_check(S_CHAIN2, {"a"}, samples=4)
    assert not rep.sheltered
    assert rep.shelter_sites == ("b",)
    assert not rep.verdict
    # the finite-depth collapse: the span does contain an identity, recorded
    # in the note rather than silently flipping the verdict
    assert rep.covers_region and rep.acts_as_identity
    assert "collapse" in rep.note


def test_unit_check_empty_sites():
    rep = tr.unit_check(S_CHAIN2, set())
    assert not rep.verdict
    assert rep.covers_region  # zero matrix covers the empty region


def test_unit_check_unknown_site():
    with pytest.raises(UnknownLabel):
        tr.unit_check(S_CHAIN2, {"z"})


# ---------------------------------------------------------------------------
# independence probe


def test_probe_chain_witness_is_identity():
    for n in (2, 3):
        space = tr.build_space(CHAIN2, n)
        rep = tr.independence_probe(space)
        assert rep.witness == tr.identity_mat(space)
        assert all(ok for _, ok in rep.checks)
        assert "depth %d" % n in rep.note


def test_probe_vee_outcome_recorded():
    # the scalar span at a maximal site leaks into the local algebra at the
    # bottom; the probe records this without asserting the exact theory
    rep = tr.independence_probe(S_VEE)
    assert rep.witness is not None
    assert rep.witness == tr.indicator(S_VEE, tr.points_through(S_VEE, "c"))
    assert tr.in_local_algebra(S_VEE, "a", rep.witness)


def test_probe_antichain_has_no_candidate_site():
    rep = tr.independence_probe(S_ANTI2)
    assert rep.witness is None
    assert "maximal" in rep.note


# ---------------------------------------------------------------------------
# transport


def test_transport_identity_map():
    ident = {e: e for e in VEE.elements}
    for i in VEE.elements:
        for m in tr.sample_local_mats(S_VEE, i, 5, seed=1):
            assert tr.transport(S_VEE, S_VEE, ident, i, m) == m


def test_transport_maximal_site_scalar_frozen():
    single = make_poset(["b"], [])
    ssrc = tr.build_space(single, 2)
    out = tr.transport(ssrc, S_CHAIN2, {"b": "b"}, "b", tr.identity_mat(ssrc).scaled(3))
    assert out == tr.indicator(S_CHAIN2, tr.points_through(S_CHAIN2, "b")).scaled(3)


def test_transport_lands_in_local_algebra():
    anti_bc = make_poset(["b", "c"], [])
    sbc = tr.build_space(anti_bc, 2)
    fmap = {"b": "b", "c": "c"}
    for i in ("b", "c"):
        for m in tr.sample_local_mats(sbc, i, 6, seed=2):
            big = tr.transport(sbc, S_VEE, fmap, i, m)
            assert tr.in_local_algebra(S_VEE, i, big)


def test_transport_sends_block_indicators_to_block_indicators():
    sub = CHAIN3.restrict({"b", "c"})
    ssub = tr.build_space(sub, 2)
    fmap = {"b": "b", "c": "c"}
    for i in ("b", "c"):
        src = tr.localize_source(ssub, i)
        target_blocks = set(tr.local_partition(S_CHAIN3, fmap[i]).values())
        for k in range(len(src)):
            y = tr.localize(ssub, i, tr.matrix_unit(src, k, k))
            out = tr.transport(ssub, S_CHAIN3, fmap, i, y)
            assert out.is_diagonal()
            support = frozenset(r for r, _ in out.entries)
            assert out == tr.indicator(S_CHAIN3, support)
            assert support in target_blocks


def test_transport_multiplicative_across_sites():
    sub = CHAIN3.restrict({"b", "c"})
    ssub = tr.build_space(sub, 2)
    fmap = {"b": "b", "c": "c"}
    ms_b = tr.sample_local_mats(ssub, "b", 5, seed=4)
    ms_c = tr.sample_local_mats(ssub, "c", 5, seed=5)
    for a in ms_b:
        for b in ms_c:
            lhs = tr.transport(ssub, S_CHAIN3, fmap, "b", a * b)
            rhs = tr.transport(ssub, S_CHAIN3, fmap, "b", a) * tr.transport(
                ssub, S_CHAIN3, fmap, "c", b
            )
            assert lhs == rhs


def test_transport_rejects_bad_maps():
    sub = CHAIN3.restrict({"b", "c"})
    ssub = tr.build_space(sub, 2)
    m = tr.sample_local_mats(ssub, "b", 1, seed=0)[0]
    with pytest.raises(NotPosMorphism):
        tr.transport(ssub, S_CHAIN3, {"b": "a", "c": "c"}, "b", m)  # image not upper
    with pytest.raises(NotPosMorphism):
        tr.transport(ssub, S_CHAIN3, {"b": "c", "c": "c"}, "b", m)  # not injective
    with pytest.raises(NotPosMorphism):
        tr.transport(ssub, S_CHAIN3, {"b": "b"}, "b", m)  # wrong domain
    anti = tr.build_space(make_poset(["b", "c"], []), 2)
    with pytest.raises(NotPosMorphism):
        # order not matched: b < c upstairs, incomparable downstairs
        tr.transport(ssub, anti, {"b": "b", "c": "c"}, "b", m)
    with pytest.raises(IndexMismatch):
        tr.transport(ssub, tr.build_space(CHAIN3, 3), {"b": "b", "c": "c"}, "b", m)


# ---------------------------------------------------------------------------
# degenerate poset


def test_empty_poset_space():
    space = tr.build_space(EMPTY, 2)
    assert space.points == (((), ()),)
    one = tr.identity_mat(space)
    assert one * one == one
    rep = tr.unit_check(space, set())
    assert not rep.verdict  # empty site set by convention
    probe = tr.independence_probe(space)
    assert probe.witness is None


# ---------------------------------------------------------------------------
# randomized reconstruction equivalences


_entry_strategy = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-3, 3),
    max_size=6,
)


@given(_entry_strategy)
def test_inflated_reconstruction_equivalence_random(entries):
    m = tr.SparseMat(S_CHAIN2, entries)
    for i in ("a", "b"):
        agrees = tr.inflate(S_CHAIN2, i, tr.deflate(S_CHAIN2, i, m)) == m
        assert agrees == tr.in_inflated_algebra(S_CHAIN2, i, m)


@given(_entry_strategy)
def test_local_reconstruction_equivalence_random(entries):
    m = tr.SparseMat(S_CHAIN2, entries)
    for i in ("a", "b"):
        agrees = tr.localize(S_CHAIN2, i, tr.delocalize(S_CHAIN2, i, m)) == m
        assert agrees == tr.in_local_algebra(S_CHAIN2, i, m)
