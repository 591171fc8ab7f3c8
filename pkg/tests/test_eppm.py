import random

import pytest

from fskit.dynamics import caret_map, evaluate_word, generator_map
from fskit.eppm import (
    Family,
    IDENTITY,
    Piece,
    UndefinedAt,
    canonicalize,
    compose,
    eq_runs,
    equals,
    evaluate,
    expanded_pieces,
    in_domain,
    invert,
    is_identity_on_domain,
    is_total,
    make_eppm,
    region_equal,
    region_subset,
    restrict,
    validate_disjoint,
)
from fskit.sequences import parse_point

from conftest import random_point, random_signed_word


def b1(cls):
    return caret_map(cls, cls.colour_b, 1)


def test_caret_maps_shape(j3):
    assert caret_map(j3, "a", 0) == make_eppm(pieces=[Piece("", "0")])
    assert caret_map(j3, "a", 1) == make_eppm(pieces=[Piece("", "1")])
    assert caret_map(j3, "b", 0) == make_eppm(pieces=[Piece("", "00")])
    fam = b1(j3).families[0]
    assert fam.dom_step == fam.ran_step == 2
    assert set(fam.blocks) == {("00", "01"), ("01", "10"), ("10", "1100")}
    assert fam.carries_limit


def test_b1_collapses_for_vine_pair(rho2):
    # x = rho forces B1 = A1: the family collapses to a single piece
    assert b1(rho2) == make_eppm(pieces=[Piece("", "1")])


def test_evaluate_b1(j3):
    f = b1(j3)
    assert evaluate(f, parse_point("(0)")) == parse_point("01(0)")
    assert evaluate(f, parse_point("01(0)")) == parse_point("10(0)")
    assert evaluate(f, parse_point("10(0)")) == parse_point("1100(0)")
    assert evaluate(f, parse_point("1100(0)")) == parse_point("1101(0)")
    assert evaluate(f, parse_point("(1)")) == parse_point("(1)")


def test_evaluate_undefined():
    f = make_eppm(pieces=[Piece("0", "")])
    assert evaluate(f, parse_point("01(0)")) == parse_point("1(0)")
    with pytest.raises(UndefinedAt):
        evaluate(f, parse_point("1(0)"))


def test_invert_b1_image(j3):
    g = invert(b1(j3))
    # image of B1 misses exactly the cone below 00
    assert not in_domain(g, parse_point("00(0)"))
    assert in_domain(g, parse_point("01(0)"))
    assert in_domain(g, parse_point("(1)"))
    assert evaluate(g, parse_point("01(0)")) == parse_point("(0)")


def test_invert_involution(j3):
    rng = random.Random(0)
    for _ in range(40):
        w = random_signed_word(rng, rng.randint(0, 6))
        f = evaluate_word(j3, w)
        assert canonicalize(invert(invert(f))) == canonicalize(f)


def test_compose_identity(j3):
    f = b1(j3)
    assert equals(compose(f, IDENTITY), f)
    assert equals(compose(IDENTITY, f), f)


def test_compose_pointwise(j3, nonsimple4):
    rng = random.Random(1)
    for cls in (j3, nonsimple4):
        for _ in range(60):
            wf = random_signed_word(rng, rng.randint(0, 4))
            wg = random_signed_word(rng, rng.randint(0, 4))
            f = evaluate_word(cls, wf)
            g = evaluate_word(cls, wg)
            h = compose(f, g)
            for _ in range(8):
                p = random_point(rng)
                try:
                    expected = evaluate(f, evaluate(g, p))
                except UndefinedAt:
                    assert not in_domain(h, p)
                    continue
                assert evaluate(h, p) == expected


def test_prune_identity_j3(j3):
    # A0^2 = B0 and A1^2 = B1^3
    a0, a1 = generator_map(j3, "A0"), generator_map(j3, "A1")
    b0 = generator_map(j3, "B0")
    assert equals(compose(a0, a0), b0)
    b1_ = b1(j3)
    b13 = compose(b1_, compose(b1_, b1_))
    a12 = compose(a1, a1)
    assert equals(a12, b13)
    assert not equals(a1, b1_)


def test_b1_squared_cleary(cleary2):
    # for the Cleary presentation A1 = B1^2
    f = b1(cleary2)
    assert equals(compose(f, f), generator_map(cleary2, "A1"))


def test_equals_differs(j3):
    assert not equals(b1(j3), generator_map(j3, "A1"))
    assert not equals(generator_map(j3, "A0"), generator_map(j3, "B0"))


def test_group_law_inverses(j3, nonsimple4):
    rng = random.Random(2)
    for cls in (j3, nonsimple4):
        for _ in range(40):
            w = random_signed_word(rng, rng.randint(1, 6))
            f = evaluate_word(cls, w)
            winv = tuple((t, -e) for t, e in reversed(w))
            g = evaluate_word(cls, winv)
            h = compose(g, f)
            assert is_identity_on_domain(h)


def test_compose_associative_extensionally(j3):
    rng = random.Random(3)
    for _ in range(25):
        maps = [
            evaluate_word(j3, random_signed_word(rng, rng.randint(0, 4)))
            for _ in range(3)
        ]
        f, g, h = maps
        assert equals(compose(compose(f, g), h), compose(f, compose(g, h)))


def test_restrict_family_partial_layers(j3):
    f = b1(j3)
    # restricting to the cone below 11 keeps only layers >= 1
    r = restrict(f, "11")
    assert not r.pieces
    assert len(r.families) == 1
    assert r.families[0].dom_base == "11"
    # restricting to 1 splits layer 0 partially
    r = restrict(f, "1")
    assert {p.dom for p in r.pieces} == {"10"}
    assert r.families[0].dom_base == "11"


def test_region_subset_and_total(j3):
    f = b1(j3)
    assert is_total(f)
    assert not is_total(invert(f))
    assert region_subset(invert(f), IDENTITY)
    assert not region_subset(IDENTITY, invert(f))
    assert region_equal(f, IDENTITY)


def test_canonicalize_merges_siblings():
    f = make_eppm(pieces=[Piece("0", "10"), Piece("1", "11")])
    assert canonicalize(f) == make_eppm(pieces=[Piece("", "1")])


def test_canonicalize_absorbs_layer():
    fam = Family("11", "11", 2, 2, (("00", "01"), ("01", "10"), ("10", "1100")))
    pieces = [Piece("00", "01"), Piece("01", "10"), Piece("10", "1100")]
    f = make_eppm(pieces=pieces, families=[fam])
    out = canonicalize(f)
    assert out.families[0].dom_base == ""
    assert not out.pieces


def test_validate_disjoint(j3, nonsimple4):
    rng = random.Random(4)
    for cls in (j3, nonsimple4):
        for _ in range(30):
            w = random_signed_word(rng, rng.randint(0, 5))
            validate_disjoint(evaluate_word(cls, w))


def test_eq_runs():
    assert eq_runs("1", 1, "0", "", 1, "10")
    assert not eq_runs("1", 1, "0", "", 1, "01")
    assert not eq_runs("", 1, "0", "", 2, "0")
    assert eq_runs("", 2, "00", "", 2, "00")


def test_expanded_pieces_family(j3):
    f = b1(j3)
    doms = {p.dom for p in expanded_pieces(f, 6)}
    assert "00" in doms and "1100" in doms and "111100" in doms


def test_canonicalize_preserves_semantics(j3, nonsimple4):
    # the canonical moves (rebalance, merge, collapse, absorb) must not
    # change the represented partial map
    from fskit.dynamics import beta_path
    from fskit.forest import leaf_count

    rng = random.Random(11)
    for cls in (j3, nonsimple4):
        for _ in range(25):
            s = random_tree_local(rng, rng.randint(1, 6))
            t = random_tree_local(rng, leaf_count(s) - 1)
            n = leaf_count(s)
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            pieces, fams, lims = [], [], []
            for j in range(1, n + 1):
                br = compose(
                    beta_path(cls, t, perm[j - 1]), invert(beta_path(cls, s, j))
                )
                pieces += br.pieces
                fams += br.families
                lims += br.limits
            raw = make_eppm(pieces, fams, lims)
            canon = canonicalize(raw)
            pts = [random_point(rng, 7) for _ in range(20)]
            pts += [parse_point("(1)"), parse_point("0(1)"), parse_point("(0)")]
            for p in pts:
                assert in_domain(raw, p) == in_domain(canon, p)
                if in_domain(raw, p):
                    assert evaluate(raw, p) == evaluate(canon, p)


def random_tree_local(rng, carets):
    from conftest import random_tree

    return random_tree(rng, carets)
