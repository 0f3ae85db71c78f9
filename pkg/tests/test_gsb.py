import itertools
import json
import random

import pytest

from leibniz_gsb.gsb import (CompletionResult, NormalSPolyDescriptor,
                             NotAGSBError, RelationSet, complete,
                             eliminate_unit_leads, express_normal, gsb_check,
                             ideal_membership, inclusion_compositions,
                             irr_basis, is_irreducible, is_trivial_mod,
                             left_mul_compositions, minimal_basis,
                             quotient_dimension, realize, realized_lead,
                             reduce_poly, reduced_basis, validate_reduced)
from leibniz_gsb.leibniz import (LbPoly, enumerate_words,
                                 enumerate_words_upto, lb_product)
from leibniz_gsb.linalg import ResourceCapError, RowReducer
from leibniz_gsb.presets import PresetSpec, generate_preset
from leibniz_gsb.scalars import GF, QQ
from leibniz_gsb.terms import Alphabet, Generator

XY = Alphabet.from_names(["x", "y"])
AB = Alphabet.from_names(["a", "b"])
MIXED = Alphabet([Generator("a", 0, 1), Generator("b", 1, 1)])


def _mono(alphabet, field, word):
    return LbPoly.monomial(alphabet, field, word)


def _sprime(field=QQ):
    return generate_preset(PresetSpec("metabelian-leibniz-Sprime", XY,
                                      field, 7))


def _unit_example():
    m = lambda w: _mono(AB, QQ, w)
    return RelationSet(AB, QQ, [m((1,)) - m((0,)), m((0, 1))])


def _all_descriptors(word, S):
    """Every descriptor whose realized leading word equals the given word."""
    out = []
    for i, r in enumerate(S.relations):
        lw = r.lead_word
        for k in range(1, len(word) + 1):
            if word[:k] == lw:
                out.append(NormalSPolyDescriptor(i, (), word[k:]))
        if len(lw) == 1:
            for t in range(1, len(word)):
                if word[t] == lw[0]:
                    out.append(NormalSPolyDescriptor(i, word[:t],
                                                     word[t + 1:]))
    return out


def _closure_dims(relations, alphabet, field, maxdeg):
    """Graded ideal dimensions by a letter-multiplication fixpoint.

    The span of the relations is closed under right and left multiplication
    by single letters; that already forces closure under multiplication by
    arbitrary elements, so the fixpoint is the whole ideal.  Completely
    independent of the normal S-polynomial calculus.
    """
    key = alphabet.monomial_key
    reducers = {d: RowReducer(field, key=key) for d in range(1, maxdeg + 1)}
    deg = alphabet.word_degree
    queue = []
    for r in relations:
        d = deg(r.lead_word)
        if d <= maxdeg and reducers[d].add_row(dict(r.terms)):
            queue.append((d, r))
    while queue:
        d, f = queue.pop()
        for b in range(len(alphabet)):
            nd = d + alphabet.degrees[b]
            if nd > maxdeg:
                continue
            for g in (f.append_letters((b,)),
                      _mono(alphabet, field, (b,)) * f):
                if g and reducers[nd].add_row(dict(g.terms)):
                    queue.append((nd, g))
    return {d: len(enumerate_words(alphabet, d)) - reducers[d].rank
            for d in range(1, maxdeg + 1)}


def test_relation_set_validation_and_views():
    m = lambda w: _mono(AB, QQ, w)
    S = _unit_example()
    assert len(S) == 2
    assert S.lead_words() == ((1,), (0, 1))
    assert S.unit_lead_letters() == frozenset({1})
    assert S.max_lead_degree() == 2
    assert S.with_relation(m((0, 0))).lead_words()[-1] == (0, 0)
    assert S.without_index(0).lead_words() == ((0, 1),)
    assert S == RelationSet(AB, QQ, [m((1,)).scaled(QQ(3))
                                     - m((0,)).scaled(QQ(3)), m((0, 1))])
    with pytest.raises(AttributeError):
        S.relations = ()
    with pytest.raises(ValueError):
        RelationSet(AB, QQ, [LbPoly.zero(AB, QQ)])
    with pytest.raises(ValueError):
        RelationSet(AB, GF(2), [m((1,))])
    with pytest.raises(ValueError):
        RelationSet(XY, QQ, [m((1,))])
    odd = _mono(MIXED, QQ, (0,)) + _mono(MIXED, QQ, (1,))
    with pytest.raises(ValueError):
        RelationSet(MIXED, QQ, [odd])


def test_realize_and_descriptor_rules():
    S = _unit_example()
    d_unit = NormalSPolyDescriptor(0, (0,), (0,))
    got = realize(d_unit, S)
    m = lambda w: _mono(AB, QQ, w)
    assert got == (m((0,)) * (m((1,)) - m((0,)))).append_letters((0,))
    assert realized_lead(d_unit, S) == (0, 1, 0)
    assert got.lead_word == (0, 1, 0)
    with pytest.raises(ValueError):
        realize(NormalSPolyDescriptor(1, (0,), ()), S)


def test_find_reducer_prefers_prefix_then_leftmost_unit():
    S = _unit_example()
    res = reduce_poly(_mono(AB, QQ, (0, 1)), S)
    assert res.trace[0][1] == NormalSPolyDescriptor(1, (), ())
    res = reduce_poly(_mono(AB, QQ, (0, 0, 1)), S)
    assert res.trace[0][1] == NormalSPolyDescriptor(0, (0, 0), ())


def test_reduce_golden_example_char2():
    S1 = generate_preset(PresetSpec("metabelian-leibniz-S1", XY, GF(2), 7))
    res = reduce_poly(_mono(XY, GF(2), (0, 1, 1, 0)), S1)
    assert res.remainder == _mono(XY, GF(2), (0, 1, 0, 1))
    assert res.trace


def test_reduce_is_linear_and_idempotent():
    S = _sprime()
    f = (_mono(XY, QQ, (0, 1, 1, 0)).scaled(QQ(3))
         + _mono(XY, QQ, (1, 0, 0, 1, 0)))
    r1 = reduce_poly(f, S).remainder
    r2 = reduce_poly(r1, S).remainder
    assert r1 == r2
    assert reduce_poly(r1, S).trace == ()
    g = _mono(XY, QQ, (0, 0, 1, 1))
    sum_rem = reduce_poly(f + g, S).remainder
    assert sum_rem == (reduce_poly(f, S).remainder
                       + reduce_poly(g, S).remainder)


def test_membership_and_triviality_bounds():
    S = _sprime()
    h = S.relations[0].append_letters((0,))
    assert ideal_membership(h, S)
    assert not ideal_membership(_mono(XY, QQ, (0, 1)), S)
    flag, res = is_trivial_mod(h, S, h.lead_word)
    assert not flag and res.remainder.is_zero()
    bigger = h.lead_word[:-1] + (1,)
    assert XY.monomial_key(h.lead_word) < XY.monomial_key(bigger)
    assert is_trivial_mod(h, S, bigger)[0]
    assert is_trivial_mod(h, S, XY.word_degree(h.lead_word))[0]
    assert not is_trivial_mod(h, S, XY.word_degree(h.lead_word) - 1)[0]
    assert not is_trivial_mod(_mono(XY, QQ, (0, 1)), S, 7)[0]


def test_irr_basis_matches_filter_and_frozen_counts():
    S = _sprime()
    words = irr_basis(S, 7)
    key = XY.monomial_key
    assert words == sorted(words, key=key)
    assert words == [w for w in enumerate_words_upto(XY, 7)
                     if is_irreducible(w, S)]
    per_degree = {}
    for w in words:
        d = XY.word_degree(w)
        per_degree[d] = per_degree.get(d, 0) + 1
    assert per_degree == {1: 2, 2: 4, 3: 8, 4: 12, 5: 16, 6: 20, 7: 24}
    for n in range(1, 8):
        assert quotient_dimension(S, n) == per_degree[n]


def test_gsb_check_sprime_passes_and_counts():
    S = _sprime()
    report = gsb_check(S, 7)
    assert report.passed
    assert report.summary() == ("gsb-check verified up to degree 7: PASS "
                                "(20 inclusion, 40 left multiplication "
                                "compositions)")
    assert report.to_text() == report.summary()
    recs = report.to_records()
    assert len(recs) == 60
    for rec in recs:
        json.dumps(rec)
        assert rec["status"] == "trivial"
        assert "certificate_length" in rec
        if rec["kind"] == "inclusion":
            assert set(rec) == {"kind", "f", "status", "g", "u", "v",
                                "certificate_length"}
        else:
            assert set(rec) == {"kind", "f", "status", "mu",
                                "certificate_length"}


def test_gsb_check_failure_reports_witness():
    S = RelationSet(XY, QQ, [_mono(XY, QQ, (0, 1, 1, 0))])
    report = gsb_check(S, 6)
    assert not report.passed
    fails = report.failures()
    assert len(fails) == 6
    assert all(r.kind == "left-mult" for r in report.records)
    assert "FAIL (6 nontrivial)" in report.summary()
    assert "nontrivial left multiplication" in report.to_text()
    rec = fails[0].to_dict(XY)
    assert rec["status"] == "nontrivial" and "witness" in rec


def test_gsb_check_jobs_deterministic():
    S = _sprime()
    assert (gsb_check(S, 6).to_records()
            == gsb_check(S, 6, jobs=3).to_records())


def test_composition_enumeration_bounds():
    S = _sprime()
    for i, j, d, comp in inclusion_compositions(S, 7):
        assert i != j
        assert realized_lead(d, S) == S.relations[i].lead_word
    assert inclusion_compositions(S, 3) == []
    for mu, i, product in left_mul_compositions(S, 7):
        assert XY.word_degree(mu) + XY.word_degree(
            S.relations[i].lead_word) <= 7
        assert not product.is_zero()


def test_complete_square_then_passes():
    S = RelationSet(XY, QQ, [_mono(XY, QQ, (0, 1, 1, 0))])
    result = complete(S, 6)
    assert isinstance(result, CompletionResult)
    assert result.saturated
    assert result.rounds == 2
    assert len(result.added) == 6
    assert len(result.relations) == 7
    poly0, prov0 = result.added[0]
    assert prov0.round == 1
    assert prov0.kind == "left-mult"
    assert prov0.detail == "mu=(0,) f=0"
    assert poly0.lead_word == (0, 1, 0, 1, 0)
    assert gsb_check(result.relations, 6).passed


def test_complete_fixpoint_on_verified_basis():
    S = _sprime()
    result = complete(S, 7)
    assert result.saturated
    assert result.rounds == 1
    assert result.added == ()
    assert result.relations == S


def test_complete_unit_example_and_max_rounds():
    S = _unit_example()
    result = complete(S, 5)
    assert result.saturated
    assert [str(p) for p, _ in result.added] == ["[a a]"]
    prov = result.added[0][1]
    assert prov.kind == "inclusion"
    assert prov.detail == "f=1 g=0 u=(0,) v=()"
    capped = complete(RelationSet(XY, QQ,
                                  [_mono(XY, QQ, (0, 1, 1, 0))]),
                      6, max_rounds=1)
    assert not capped.saturated
    assert capped.rounds == 1


def test_diamond_property_of_completed_sets():
    unit_star = complete(_unit_example(), 5).relations
    sprime = _sprime()
    for S, bound in ((unit_star, 4), (sprime, 6)):
        for w in enumerate_words_upto(S.alphabet, bound):
            descriptors = _all_descriptors(w, S)
            for d in descriptors:
                assert realized_lead(d, S) == w
            for d1, d2 in itertools.combinations(descriptors, 2):
                diff = realize(d1, S) - realize(d2, S)
                flag, _ = is_trivial_mod(diff, S, w)
                assert flag, (w, d1, d2)


def test_minimal_basis_drops_redundant_relations():
    S = _sprime()
    extra = S.relations[0].append_letters((1,))
    augmented = RelationSet(XY, QQ, S.relations + (extra,))
    assert gsb_check(augmented, 7).passed
    minimal = minimal_basis(augmented, 7)
    assert minimal == minimal_basis(S, 7)
    assert extra not in set(minimal.relations)
    for f in minimal.relations:
        others = minimal.without_index(
            minimal.relations.index(f))
        assert is_irreducible(f.lead_word, others)
    with pytest.raises(NotAGSBError) as exc:
        minimal_basis(RelationSet(XY, QQ,
                                  [_mono(XY, QQ, (0, 1, 1, 0))]), 6)
    assert not exc.value.report.passed


def test_reduced_basis_is_canonical():
    S = _sprime()
    R = reduced_basis(S, 7)
    validate_reduced(R)
    key = XY.monomial_key
    leads = [key(r.lead_word) for r in R.relations]
    assert leads == sorted(leads)
    assert reduced_basis(R, 7) == R

    rng = random.Random(5)
    extras = [S.relations[i].append_letters(v)
              for i, v in ((0, (0,)), (2, (1, 0)))]
    extras.append(extras[0] + extras[1].scaled(QQ(2)))
    rels = list(S.relations) + extras
    rng.shuffle(rels)
    augmented = RelationSet(XY, QQ, rels)
    assert reduced_basis(augmented, 7) == R


def test_validate_reduced_rejects_raw_sprime():
    # the raw S' generators carry reducible support words, the reduced
    # basis does not; both present the same ideal
    S = _sprime()
    with pytest.raises(ValueError):
        validate_reduced(S)
    R = reduced_basis(S, 7)
    for n in range(1, 8):
        assert quotient_dimension(R, n) == quotient_dimension(S, n)


def test_eliminate_unit_leads_golden():
    m = lambda w: _mono(AB, QQ, w)
    R = RelationSet(AB, QQ, [m((1,)) - m((0,)), m((0, 0, 0))])
    validate_reduced(R)
    new_alphabet, new_R = eliminate_unit_leads(R)
    assert new_alphabet.names == ("a",)
    assert [str(r) for r in new_R.relations] == ["[a a a]"]
    untouched_alphabet, untouched = eliminate_unit_leads(new_R)
    assert untouched is new_R and untouched_alphabet is new_alphabet

    lone = Alphabet.from_names(["a"])
    bad = RelationSet(lone, QQ, [_mono(lone, QQ, (0,))])
    with pytest.raises(ValueError):
        eliminate_unit_leads(bad)


def test_eliminate_preserves_graded_dimensions():
    S = complete(_unit_example(), 5).relations
    R = reduced_basis(S, 5)
    new_alphabet, new_R = eliminate_unit_leads(R)
    assert new_alphabet.names == ("a",)
    for n in range(1, 5):
        assert (quotient_dimension(R, n, resource_cap=5)
                == quotient_dimension(new_R, n, resource_cap=5))


def test_express_normal_content_is_order_invariant():
    R = reduced_basis(_sprime(), 7)
    h = (R.relations[0].append_letters((0,))
         + R.relations[2].scaled(QQ(-2)))
    trace = express_normal(h, R)
    total = LbPoly.zero(XY, QQ)
    for coeff, d in trace:
        total = total + realize(d, R).scaled(coeff)
    assert total == h
    assert realized_lead(trace[0][1], R) == h.lead_word

    flipped = RelationSet(XY, QQ, tuple(reversed(R.relations)))
    trace2 = express_normal(h, flipped)
    content = [(c.value, d.u, d.v, str(R.relations[d.rel]))
               for c, d in trace]
    content2 = [(c.value, d.u, d.v, str(flipped.relations[d.rel]))
                for c, d in trace2]
    assert content == content2

    with pytest.raises(ValueError):
        express_normal(_mono(XY, QQ, (0, 1)), R)
    with pytest.raises(ValueError):
        express_normal(h, _unit_example())


def test_quotient_dimension_validation():
    S = _sprime()
    with pytest.raises(ResourceCapError):
        quotient_dimension(S, 9)
    with pytest.raises(ResourceCapError):
        quotient_dimension(S, 4, resource_cap=3)
    mixed_degree = _mono(AB, QQ, (0,)) + _mono(AB, QQ, (0, 0, 1))
    with pytest.raises(ValueError):
        quotient_dimension(RelationSet(AB, QQ, [mixed_degree]), 3)


def test_quotient_dimension_matches_closure_oracle():
    m = lambda w: _mono(AB, QQ, w)
    cases = [
        (AB, QQ, [m((0, 1))]),
        (AB, QQ, [m((0, 1)) - m((1, 0))]),
        (AB, QQ, [m((0, 0, 1))]),
        (AB, QQ, [m((1,)) - m((0,)), m((0, 1))]),
    ]
    rng = random.Random(7)
    for field in (QQ, GF(3)):
        for parity in (0, 1):
            words = [w for w in enumerate_words(MIXED, 3)
                     if MIXED.word_parity(w) == parity]
            picks = rng.sample(words, 3)
            poly = LbPoly.zero(MIXED, field)
            for w in picks:
                poly = poly + _mono(MIXED, field, w).scaled(
                    field(rng.randrange(1, 3)))
            cases.append((MIXED, field, [poly]))
    for alphabet, field, rels in cases:
        S = RelationSet(alphabet, field, rels)
        want = _closure_dims(S.relations, alphabet, field, 5)
        for n in range(1, 6):
            assert quotient_dimension(S, n) == want[n], (rels, n)


def test_left_multiple_of_long_lead_is_spanned():
    # [c] (a b) lies in the ideal of [a b] but is not a right multiple;
    # the dimension routine must see it
    S = RelationSet(AB, QQ, [_mono(AB, QQ, (0, 1))])
    assert quotient_dimension(S, 3) == 4
