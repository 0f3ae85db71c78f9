import itertools

import pytest

from leibniz_gsb.gsb import (gsb_check, irr_basis, quotient_dimension,
                             reduce_poly)
from leibniz_gsb.leibniz import LbPoly, enumerate_words_upto
from leibniz_gsb.presets import (FAMILIES, PREDICATE_FAMILIES, PresetSpec,
                                 basis_predicate, default_bound,
                                 generate_preset)
from leibniz_gsb.scalars import GF, QQ
from leibniz_gsb.terms import Alphabet, Generator

XY = Alphabet.from_names(["x", "y"])
XYZ = Alphabet.from_names(["x", "y", "z"])
MIXED = Alphabet([Generator("a", 0, 1), Generator("b", 1, 1)])
ODD1 = Alphabet([Generator("e", 1, 1)])


def _preset(family, alphabet=XY, field=QQ, bound=7):
    return generate_preset(PresetSpec(family, alphabet, field, bound))


def test_s1_bound_four_is_frozen():
    S1 = _preset("metabelian-leibniz-S1", bound=4)
    assert [str(r) for r in S1.relations] == [
        "[x x y x] - [x x x y]",
        "[x y y x] - [x y x y]",
        "[y x y x] - [y x x y]",
        "[y y y x] - [y y x y]",
    ]


def test_family_sizes_at_default_bound():
    assert len(_preset("metabelian-leibniz-T")) == 176
    assert len(_preset("metabelian-leibniz-S")) == 60
    assert len(_preset("metabelian-leibniz-S1")) == 60
    assert len(_preset("metabelian-leibniz-Sprime")) == 60
    assert len(_preset("metabelian-lie-T")) == 520
    assert len(_preset("metabelian-lie-S")) == 63
    assert len(_preset("free-leibniz-check", bound=0)) == 0


def test_family_set_identities():
    # over an even alphabet the ordered pairs collapse: S == S1 == S'
    s = set(_preset("metabelian-leibniz-S").relations)
    s1 = set(_preset("metabelian-leibniz-S1").relations)
    sp = set(_preset("metabelian-leibniz-Sprime").relations)
    assert s == s1 == sp
    s_gf = set(_preset("metabelian-leibniz-S", field=GF(2)).relations)
    s1_gf = set(_preset("metabelian-leibniz-S1", field=GF(2)).relations)
    assert s_gf == s1_gf

    # with an odd letter the squares survive over the rationals (S == S')
    # and vanish in characteristic 2 (S == S1)
    sm = set(_preset("metabelian-leibniz-S", MIXED).relations)
    s1m = set(_preset("metabelian-leibniz-S1", MIXED).relations)
    spm = set(_preset("metabelian-leibniz-Sprime", MIXED).relations)
    assert sm == spm and sm > s1m
    sm2 = set(_preset("metabelian-leibniz-S", MIXED, GF(2)).relations)
    s1m2 = set(_preset("metabelian-leibniz-S1", MIXED, GF(2)).relations)
    assert sm2 == s1m2


def test_t_and_s_generate_the_same_ideal():
    for fam_t, fam_s, dims in (
            ("metabelian-leibniz-T", "metabelian-leibniz-S",
             [2, 4, 8, 12, 16]),
            ("metabelian-lie-T", "metabelian-lie-S", [2, 1, 2, 3, 4])):
        T = _preset(fam_t)
        S = _preset(fam_s)
        for n, want in zip(range(1, 6), dims):
            assert quotient_dimension(T, n) == want
            assert quotient_dimension(S, n) == want


def test_single_odd_generator_families():
    sp = _preset("metabelian-leibniz-Sprime", ODD1)
    assert [str(r) for r in sp.relations] == [
        "[e e e e]", "[e e e e e]", "[e e e e e e]", "[e e e e e e e]"]
    assert gsb_check(sp, 7).passed
    assert [quotient_dimension(sp, n) for n in range(1, 6)] \
        == [1, 1, 1, 0, 0]

    # in characteristic 2 every product of two long words vanishes already
    assert len(_preset("metabelian-leibniz-T", ODD1, GF(2))) == 0
    assert len(_preset("metabelian-leibniz-S1", ODD1, GF(2))) == 0


def test_irr_equals_closed_form_predicate():
    cases = [
        ("metabelian-leibniz-S1", XY, QQ, 0),
        ("metabelian-leibniz-Sprime", MIXED, QQ, 0),
        ("metabelian-leibniz-S1", MIXED, GF(2), 2),
    ]
    for family, alphabet, field, char in cases:
        S = _preset(family, alphabet, field)
        assert gsb_check(S, 7).passed
        irr = set(irr_basis(S, 7))
        for w in enumerate_words_upto(alphabet, 7):
            assert (w in irr) == basis_predicate(
                "metabelian-leibniz", w, alphabet, characteristic=char), w


def test_lie_irr_counts_and_predicate():
    S = _preset("metabelian-lie-S")
    assert gsb_check(S, 7).passed
    irr = irr_basis(S, 7)
    per_degree = {}
    for w in irr:
        per_degree.setdefault(XY.word_degree(w), []).append(w)
    assert len(per_degree[1]) == 2
    for n in range(2, 8):
        assert len(per_degree[n]) == n - 1
    irr_set = set(irr)
    for w in enumerate_words_upto(XY, 7):
        assert (w in irr_set) == basis_predicate("metabelian-lie", w, XY), w

    S3 = _preset("metabelian-lie-S", XYZ, bound=5)
    assert gsb_check(S3, 5).passed
    irr3 = set(irr_basis(S3, 5))
    for w in enumerate_words_upto(XYZ, 5):
        assert (w in irr3) == basis_predicate("metabelian-lie", w, XYZ), w


def test_lie_basis_swaps_onto_classical_form():
    S = _preset("metabelian-lie-S")
    for w in irr_basis(S, 7):
        if len(w) < 2:
            continue
        swapped = (w[1], w[0]) + w[2:]
        combo = (LbPoly.monomial(XY, QQ, w)
                 + LbPoly.monomial(XY, QQ, swapped))
        assert reduce_poly(combo, S).remainder.is_zero(), w


def test_metabelian_products_vanish_in_quotient():
    S = _preset("metabelian-leibniz-Sprime", MIXED)
    long_words = [w for w in enumerate_words_upto(MIXED, 5) if len(w) >= 2]
    for c, d in itertools.product(long_words, repeat=2):
        if MIXED.word_degree(c) + MIXED.word_degree(d) > 7:
            continue
        prod = (LbPoly.monomial(MIXED, QQ, c)
                * LbPoly.monomial(MIXED, QQ, d))
        assert reduce_poly(prod, S).remainder.is_zero(), (c, d)


def test_default_bound():
    assert default_bound(XY) == 7
    assert default_bound(ODD1) == 7
    assert default_bound(XYZ) == 6


def test_preset_validation():
    with pytest.raises(ValueError):
        _preset("metabelian-leibniz-S2")
    heavy = Alphabet([Generator("a", 0, 2)])
    with pytest.raises(ValueError):
        _preset("metabelian-leibniz-S", heavy)
    with pytest.raises(ValueError):
        _preset("metabelian-lie-S", MIXED)
    with pytest.raises(ValueError):
        _preset("metabelian-leibniz-S", bound=3)
    free = _preset("free-leibniz-check", bound=2)
    assert len(free) == 0 and free.alphabet == XY
    assert "free-leibniz-check" in FAMILIES
    assert PREDICATE_FAMILIES == ("metabelian-leibniz", "metabelian-lie")
    with pytest.raises(ValueError):
        basis_predicate("metabelian-lie", (0, 1), MIXED)
    with pytest.raises(ValueError):
        basis_predicate("nope", (0,), XY)


def test_generated_relations_shape():
    for family in FAMILIES:
        if family.startswith("metabelian-lie"):
            alphabet = XY
        else:
            alphabet = MIXED
        S = generate_preset(PresetSpec(family, alphabet, QQ, 5))
        for r in S.relations:
            assert r.lc == QQ.one
            assert r.homogeneous_degree() is not None
            assert XY.word_degree(r.lead_word) <= 5
        assert S.max_lead_degree() <= 5
