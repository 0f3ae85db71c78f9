import json
import random

import pytest

from leibniz_gsb.extensions import (AlgebraTable, ExtensionCheckError,
                                    FactorSet, SupermoduleAction,
                                    TableFactorSet, _assemble_table,
                                    _audit_table, abelian_extension_build,
                                    build_extension, check_condition_i,
                                    check_condition_ii, check_leibniz_table,
                                    check_supermodule, cocycle_check,
                                    run_extension_checks, table_relation_set)
from leibniz_gsb.gsb import (RelationSet, gsb_check, reduced_basis,
                             validate_reduced)
from leibniz_gsb.io_formats import AlgebraTableData
from leibniz_gsb.leibniz import LbPoly
from leibniz_gsb.presets import PresetSpec, generate_preset
from leibniz_gsb.scalars import GF, QQ
from leibniz_gsb.terms import Alphabet, Generator

XY = Alphabet.from_names(["x", "y"])
AB = Alphabet.from_names(["a", "b"])


def _atable(names, parities, products, field=QQ):
    gens = [Generator(n, p, 1) for n, p in zip(names, parities)]
    return AlgebraTable(gens, products, field)


def _abelian2(field=QQ):
    return _atable(("a1", "a2"), (0, 0), {}, field)


def _b_zero_square(field=QQ):
    # one even generator b with (b b) = 0
    return _atable(("b",), (0,), {}, field)


def _line_action(a_table, b_table, field=QQ):
    # {b.a1} = -a2 and {a1.b} = a2; a2 acts and is acted on by zero
    return SupermoduleAction(a_table, b_table,
                             {(0, 0): {1: -field.one}},
                             {(0, 0): {1: field.one}})


def test_algebra_table_basics():
    t = _atable(("a", "b"), (0, 1), {(1, 1): {0: 2}})
    assert t.dim == 2
    assert t.names == ("a", "b")
    assert t.parities == (0, 1)
    assert t.product(1, 1) == {0: QQ(2)}
    assert t.product(0, 1) == {}
    assert t.product_vec({1: QQ(3)}, {1: QQ(1)}) == {0: QQ(6)}
    assert not t.is_abelian()
    assert _abelian2().is_abelian()
    assert t.unit(0) == {0: QQ.one}
    assert t.render({0: QQ(1), 1: QQ(-2)}) == "a - 2*b"
    assert t.render({}) == "0"
    alph = t.to_alphabet()
    assert alph.names == ("a", "b")
    assert alph.parities == (0, 1)
    with pytest.raises(AttributeError):
        t.field = GF(5)
    data = AlgebraTableData(("a", "b"), (0, 1), {(1, 1): {0: 2}})
    t2 = AlgebraTable.from_data(data, QQ)
    assert t2.product(1, 1) == {0: QQ(2)}


def test_algebra_table_validation():
    with pytest.raises(ValueError, match="out of range"):
        _atable(("a",), (0,), {(0, 1): {0: 1}})
    with pytest.raises(ValueError, match="parity-graded"):
        _atable(("a", "b"), (0, 1), {(0, 1): {0: 1}})
    with pytest.raises(ValueError, match="parity"):
        _atable(("a",), (2,), {})
    # zero vectors are dropped entirely, keeping is_abelian honest
    assert _atable(("a",), (0,), {(0, 0): {0: 0}}).is_abelian()


def test_check_leibniz_table():
    good = _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})
    rep = check_leibniz_table(good)
    assert rep.passed
    assert len(rep.records) == 8
    assert rep.summary() == "leibniz-table: PASS (8 instances)"

    bad = _atable(("b",), (0,), {(0, 0): {0: 1}})
    rep = check_leibniz_table(bad)
    assert not rep.passed
    assert rep.failures() == [rec for rec in rep.records
                              if rec.status == "residual"]
    assert rep.records[0].check == "leibniz"
    assert rep.records[0].instance == ("b", "b", "b")
    assert rep.records[0].residual == "b"
    assert rep.to_text() == ("leibniz-table: FAIL (1 residuals) (1 instances)\n"
                             "  leibniz at (b, b, b): residual b")


def test_table_relation_set_shape():
    b = _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})
    alphabet, rels, pair_index = table_relation_set(b)
    assert alphabet.names == ("b1", "b2")
    assert len(rels) == 4
    assert pair_index == {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    validate_reduced(rels)
    assert not rels.unit_lead_letters()
    assert str(rels.relations[0]) == "[b1 b1] - [b2]"
    assert str(rels.relations[1]) == "[b1 b2]"
    assert gsb_check(rels, 3).passed


def _random_table(rng, field):
    dim = rng.randrange(1, 4)
    parities = tuple(rng.randrange(2) for _ in range(dim))
    names = tuple("g%d" % i for i in range(dim))
    products = {}
    for i in range(dim):
        for j in range(dim):
            want = (parities[i] + parities[j]) % 2
            vec = {k: c for k in range(dim) if parities[k] == want
                   for c in [rng.choice((0, 0, 1, -1, 2))] if c}
            if vec:
                products[(i, j)] = vec
    return _atable(names, parities, products, field)


def test_leibniz_table_iff_presentation_is_closed():
    # dual route: the superidentity holds on a table exactly when the
    # pair relations form a closed set under composition up to degree 3
    rng = random.Random(20250817)
    tables = [_random_table(rng, QQ) for _ in range(6)]
    tables += [_random_table(rng, GF(5)) for _ in range(6)]
    tables += [_b_zero_square(),
               _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})]
    outcomes = set()
    for table in tables:
        direct = check_leibniz_table(table).passed
        _, rels, _ = table_relation_set(table)
        assert direct == gsb_check(rels, 3).passed
        outcomes.add(direct)
    assert outcomes == {True, False}


def test_supermodule_action_validation():
    a2 = _abelian2()
    b1 = _b_zero_square()
    with pytest.raises(ValueError, match="different fields"):
        SupermoduleAction(_abelian2(GF(5)), b1, {}, {})
    with pytest.raises(TypeError, match="b_structure"):
        SupermoduleAction(a2, "nope", {}, {})
    with pytest.raises(ValueError, match="out of range"):
        SupermoduleAction(a2, b1, {(1, 0): {1: 1}}, {})
    with pytest.raises(ValueError, match="index 5 out of range"):
        SupermoduleAction(a2, b1, {(0, 0): {5: 1}}, {})
    bodd = _atable(("e",), (1,), {})
    with pytest.raises(ValueError, match="parity-graded"):
        SupermoduleAction(a2, bodd, {(0, 0): {0: 1}}, {})
    with pytest.raises(ValueError, match="parity-graded"):
        SupermoduleAction(a2, bodd, {}, {(0, 0): {0: 1}})
    act = SupermoduleAction(a2, b1, {(0, 0): {1: 0}}, {})
    assert act.left == {}
    assert act.is_table_mode
    with pytest.raises(AttributeError):
        act.left = {}


def test_action_folding_follows_signed_recursion():
    # one odd generator e acting on A with basis s (even), t (odd):
    # e.s = t, e.t = s, s.e = t, t.e = s
    a = _atable(("s", "t"), (0, 1), {})
    b = _atable(("e",), (1,), {})
    act = SupermoduleAction(a, b,
                            {(0, 0): {1: 1}, (0, 1): {0: 1}},
                            {(0, 0): {1: 1}, (1, 0): {0: 1}})
    s, t = {0: QQ.one}, {1: QQ.one}
    # {[e e].s} = {e.{e.s}} + {{e.s}.e} = s + s
    assert act.left_word_on_vec((0, 0), s, 0) == {0: QQ(2)}
    # {[e e].t} = {e.{e.t}} - {{e.t}.e} = t - t (sign flip: |t||e| odd)
    assert act.left_word_on_vec((0, 0), t, 1) == {}
    # {v.[e e]} = {{v.e}.e} + {{v.e}.e} for any v: the unfolding sign
    # -(-1)^{|w||b|} is +1 because both the prefix and the letter are odd
    assert act.right_word_on_vec(t, (0, 0)) == {1: QQ(2)}
    assert act.right_word_on_vec(s, (0, 0)) == {0: QQ(2)}
    assert act.iterated_right_letters(s, (0, 0)) == {0: QQ.one}
    assert act.left_element_on_vec({(0, 0): QQ(3)}, s, 0) == {0: QQ(6)}
    assert act.right_element_on_vec(t, {(0, 0): QQ(2)}) == {1: QQ(4)}


def test_b_product_and_elements_both_modes():
    b = _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})
    a = _atable(("f",), (0,), {})
    act = SupermoduleAction(a, b, {}, {})
    assert act.b_product((0,), (0,)) == {(1,): QQ.one}
    assert act.b_product((0,), (1,)) == {}
    with pytest.raises(ValueError, match="single letters"):
        act.b_product((0, 0), (0,))
    assert act.b_elements(9) == [(0,), (1,)]

    _, rels, _ = table_relation_set(b)
    act_p = SupermoduleAction(a, rels, {}, {})
    assert not act_p.is_table_mode
    assert act_p.b_product((0,), (0,)) == {(1,): QQ.one}
    # (b1 b1) b1 reduces to (b2 b1) and then to zero
    assert act_p.b_product((0, 0), (0,)) == {}
    assert act_p.b_elements(3) == [(0,), (1,)]


def test_check_supermodule_passes_in_both_modes():
    a2 = _abelian2()
    b1 = _b_zero_square()
    act = _line_action(a2, b1)
    rep = check_supermodule(a2, act, 3)
    assert rep.passed
    assert len(rep.records) == 18
    assert rep.summary() == "supermodule: PASS (18 instances)"

    _, rels, _ = table_relation_set(b1)
    act_p = _line_action(a2, rels)
    rep_p = check_supermodule(a2, act_p, 3)
    assert rep_p.passed
    assert len(rep_p.records) == 18
    with pytest.raises(ValueError, match="not over the given A table"):
        check_supermodule(_atable(("f",), (0,), {}), act, 3)


def test_check_supermodule_catches_bad_action():
    # f.b2 = f is not a module action over (b1 b1) = b2: acting with the
    # product gives f while the iterated letter actions give zero
    b = _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})
    a = _atable(("f",), (0,), {})
    act = SupermoduleAction(a, b, {}, {(0, 1): {0: 1}})
    rep = check_supermodule(a, act, 3)
    assert not rep.passed
    assert any(rec.check == "supermodule-1"
               and rec.instance == ("f", "[b1]", "[b1]")
               and rec.residual == "f"
               for rec in rep.failures())


def test_factor_set_validation():
    a2 = _abelian2()
    _, rels, pair_index = table_relation_set(_b_zero_square())
    with pytest.raises(ValueError, match="index 5 out of range"):
        FactorSet(rels, a2, {5: {0: 1}})
    with pytest.raises(ValueError, match="field mismatch"):
        FactorSet(rels, _abelian2(GF(5)), {})
    amix = _atable(("s", "t"), (0, 1), {})
    eodd = _atable(("e",), (1,), {})
    _, rels_e, _ = table_relation_set(eodd)
    with pytest.raises(ValueError, match="parity-preserving"):
        FactorSet(rels_e, amix, {0: {1: 1}})
    fs = FactorSet(rels, a2, {0: {1: 0}})
    assert fs.values == {}
    assert fs.value(0) == {}
    with pytest.raises(AttributeError):
        fs.values = {}

    with pytest.raises(ValueError, match=r"pair \(2, 0\) out of range"):
        TableFactorSet(_b_zero_square(), a2, {(2, 0): {0: 1}})
    with pytest.raises(ValueError, match="parity-preserving"):
        TableFactorSet(eodd, amix, {(0, 0): {1: 1}})
    tfs = TableFactorSet(_b_zero_square(), a2, {(0, 0): {1: 1}})
    assert tfs.value(0, 0) == {1: QQ.one}
    assert tfs.bilinear({0: QQ(2)}, {0: QQ(3)}) == {1: QQ(6)}
    fs_idx = tfs.to_indexed(rels, pair_index)
    assert fs_idx.values == {0: {1: QQ.one}}


def test_condition_i_passes_and_fails():
    a2 = _abelian2()
    _, rels, pair_index = table_relation_set(_b_zero_square())
    act_p = _line_action(a2, rels)
    fs = FactorSet(rels, a2, {0: {1: 1}})
    rep = check_condition_i(act_p, fs, rels)
    assert rep.passed
    assert len(rep.records) == 4

    a2n = _atable(("a1", "a2"), (0, 0), {(0, 0): {1: 1}})
    act0 = SupermoduleAction(a2n, rels, {}, {})
    fs_bad = FactorSet(rels, a2n, {0: {0: 1}})
    rep = check_condition_i(act0, fs_bad, rels)
    assert not rep.passed
    assert any(rec.check == "condition-i-right"
               and rec.instance == ("a1", "relation 0")
               and rec.residual == "-a2"
               for rec in rep.failures())


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_condition_ii_agrees_with_cocycle_check(field):
    # on the zero-square B line the six-term identity and the trace-based
    # consistency condition must fail together: both see c1 only
    a2 = _abelian2(field)
    b1 = _b_zero_square(field)
    _, rels, pair_index = table_relation_set(b1)
    act = _line_action(a2, b1, field)
    act_p = _line_action(a2, rels, field)
    rng = random.Random(91 if field is QQ else 92)
    seen = set()
    for _ in range(10):
        c1, c2 = rng.randrange(5), rng.randrange(5)
        vec = {k: c for k, c in ((0, c1), (1, c2)) if c}
        tfs = TableFactorSet(b1, a2, {(0, 0): vec})
        cocycle = cocycle_check(a2, b1, act, tfs)
        cond2 = check_condition_ii(act_p, tfs.to_indexed(rels, pair_index),
                                   rels, 3)
        assert cocycle.passed == cond2.passed == (field(c1) == field.zero)
        seen.add(cocycle.passed)
        if not cocycle.passed:
            assert cocycle.failures()[0].instance == ("b", "b", "b")
            assert cond2.failures()[0].instance == ("[b]", "relation 0")
    assert seen == {True, False}


def test_condition_ii_requires_closed_presentation():
    a1 = _atable(("f",), (0,), {})
    rels = RelationSet(AB, QQ, [LbPoly.monomial(AB, QQ, (0, 1))])
    act = SupermoduleAction(a1, rels, {}, {})
    fs = FactorSet(rels, a1, {})
    with pytest.raises(ValueError, match="Groebner-Shirshov"):
        check_condition_ii(act, fs, rels, 3)

    m = lambda w: LbPoly.monomial(AB, QQ, w)
    rels_u = RelationSet(AB, QQ, [m((1,)) - m((0,))])
    act_u = SupermoduleAction(a1, rels_u, {}, {})
    fs_u = FactorSet(rels_u, a1, {})
    with pytest.raises(ValueError, match="eliminate_unit_leads"):
        check_condition_ii(act_u, fs_u, rels_u, 3)


def test_table_mode_build_golden():
    a2 = _abelian2()
    b1 = _b_zero_square()
    act = _line_action(a2, b1)
    tfs = TableFactorSet(b1, a2, {(0, 0): {1: 1}})
    result = abelian_extension_build(a2, b1, act, tfs)
    assert [name for name, _ in result.stage_reports] == [
        "a-leibniz", "b-leibniz", "supermodule", "condition-i", "cocycle"]
    assert all(rep.passed for _, rep in result.stage_reports)
    assert result.labels == ("a1", "a2", "b")
    assert result.parities == (0, 0, 0)
    assert result.b_degrees == (0, 0, 1)
    assert result.b_monomials == ((0,),)
    assert result.dim == 3
    assert result.a_dim == 2
    assert result.degree_bound == 3
    assert result.product(2, 2) == {1: QQ.one}
    assert result.product(2, 0) == {1: -QQ.one}
    assert result.product(0, 2) == {1: QQ.one}
    assert result.product(0, 1) == {}
    assert result.audit.passed
    assert result.to_text() == "\n".join([
        "extension basis: a1 a2 b",
        "  a1 a1 -> 0",
        "  a1 a2 -> 0",
        "  a1 b -> a2",
        "  a2 a1 -> 0",
        "  a2 a2 -> 0",
        "  a2 b -> 0",
        "  b a1 -> -a2",
        "  b a2 -> 0",
        "  b b -> a2",
        "extension-audit: PASS (27 instances)",
    ])


def test_run_extension_checks_context():
    a2 = _abelian2()
    b1 = _b_zero_square()
    act = _line_action(a2, b1)
    tfs = TableFactorSet(b1, a2, {(0, 0): {1: 1}})
    stages, context = run_extension_checks(a2, b1, act, tfs)
    assert context is not None
    rels, fs_idx, build_act, bound = context
    assert bound == 3
    assert not build_act.is_table_mode
    assert build_act.b_structure is rels
    assert fs_idx.values == {0: {1: QQ.one}}

    bad = TableFactorSet(b1, a2, {(0, 0): {0: 1}})
    stages, context = run_extension_checks(a2, b1, act, bad)
    assert context is None
    assert stages[-1][0] == "cocycle"


def test_build_rejects_each_violation():
    a1 = _atable(("f",), (0,), {})
    a2 = _abelian2()
    b1 = _b_zero_square()

    # B fails its own superidentity
    b_bad = _atable(("b",), (0,), {(0, 0): {0: 1}})
    act = SupermoduleAction(a1, b_bad, {}, {})
    tfs = TableFactorSet(b_bad, a1, {})
    with pytest.raises(ExtensionCheckError) as exc:
        build_extension(a1, b_bad, act, tfs, 3)
    err = exc.value
    assert str(err) == "extension precondition failed at stage 'b-leibniz'"
    assert err.stage == "b-leibniz"
    assert any(rec.instance == ("b", "b", "b") for rec in err.report.failures())

    # action violates a module axiom
    b2n = _atable(("b1", "b2"), (0, 0), {(0, 0): {1: 1}})
    act = SupermoduleAction(a1, b2n, {}, {(0, 1): {0: 1}})
    tfs = TableFactorSet(b2n, a1, {})
    with pytest.raises(ExtensionCheckError) as exc:
        build_extension(a1, b2n, act, tfs, 3)
    assert exc.value.stage == "supermodule"
    assert any(rec.check == "supermodule-1"
               and rec.instance == ("f", "[b1]", "[b1]")
               for rec in exc.value.report.failures())

    # factor set incompatible with the products inside A
    a2n = _atable(("a1", "a2"), (0, 0), {(0, 0): {1: 1}})
    act = SupermoduleAction(a2n, b1, {}, {})
    tfs = TableFactorSet(b1, a2n, {(0, 0): {0: 1}})
    with pytest.raises(ExtensionCheckError) as exc:
        build_extension(a2n, b1, act, tfs, 3)
    assert exc.value.stage == "condition-i"
    assert any(rec.instance == ("a1", "relation 0")
               for rec in exc.value.report.failures())

    # factor set fails the six-term identity against the action
    act = _line_action(a2, b1)
    tfs = TableFactorSet(b1, a2, {(0, 0): {0: 1}})
    with pytest.raises(ExtensionCheckError) as exc:
        build_extension(a2, b1, act, tfs, 3)
    assert exc.value.stage == "cocycle"
    assert any(rec.instance == ("b", "b", "b") and rec.residual == "a2"
               for rec in exc.value.report.failures())

    # the abelian shortcut refuses a non-abelian A outright
    with pytest.raises(ValueError, match="A is not abelian"):
        abelian_extension_build(a2n, b1, SupermoduleAction(a2n, b1, {}, {}),
                                TableFactorSet(b1, a2n, {}))


def test_audit_catches_unchecked_assembly():
    # assemble a table from a factor set that fails the cocycle identity,
    # skipping the checks: the external audit must stand on its own
    a2 = _abelian2()
    b1 = _b_zero_square()
    _, rels, pair_index = table_relation_set(b1)
    act_p = _line_action(a2, rels)
    for c1, passes in ((1, False), (0, True)):
        vec = {k: c for k, c in ((0, c1), (1, 1)) if c}
        fs = FactorSet(rels, a2, {0: vec})
        parts = _assemble_table(a2, rels, act_p, fs, 3)
        audit = _audit_table(a2, *parts, 3, act_p, rels)
        assert audit.passed == passes
        if not passes:
            assert any(rec.check == "leibniz"
                       and rec.instance == ("b", "b", "b")
                       and rec.residual == "-a2"
                       for rec in audit.failures())


def test_presentation_mode_build_over_preset():
    raw = generate_preset(PresetSpec("metabelian-leibniz-Sprime", XY, QQ, 5))
    rels = reduced_basis(raw, 5)
    a = _atable(("c",), (0,), {})
    act = SupermoduleAction(a, rels, {}, {})
    fs = FactorSet(rels, a, {})
    result = build_extension(a, rels, act, fs, 5)
    assert [name for name, _ in result.stage_reports] == [
        "a-leibniz", "b-gsb", "supermodule", "condition-i", "condition-ii"]
    assert all(rep.passed for _, rep in result.stage_reports)
    assert result.audit.passed
    by_degree = {}
    for d in result.b_degrees:
        by_degree[d] = by_degree.get(d, 0) + 1
    assert by_degree == {0: 1, 1: 2, 2: 4, 3: 8, 4: 12, 5: 16}
    assert result.dim == 43

    idx = {w: 1 + i for i, w in enumerate(result.b_monomials)}
    # central copy of A: c multiplies everything to zero
    assert result.product(0, 0) == {}
    assert result.product(0, idx[(0,)]) == {}
    assert result.product(idx[(0,)], 0) == {}
    # the B-part reproduces quotient products
    assert result.product(idx[(0,)], idx[(1,)]) == {idx[(0, 1)]: QQ.one}
    # two derived-subalgebra elements multiply to zero in the quotient
    assert result.product(idx[(0, 1)], idx[(0, 1)]) == {}
    # pairs beyond the degree bound are absent, not zero
    assert result.product(idx[(0, 1, 0)], idx[(0, 1, 0, 1)]) is None
    assert result.labels[:3] == ("c", "x", "y")
    assert "x.y" in result.labels


def test_run_extension_checks_wiring_errors():
    a2 = _abelian2()
    b1 = _b_zero_square()
    act = _line_action(a2, b1)
    tfs = TableFactorSet(b1, a2, {(0, 0): {1: 1}})
    _, rels, pair_index = table_relation_set(b1)
    act_p = _line_action(a2, rels)
    fs_idx = tfs.to_indexed(rels, pair_index)

    with pytest.raises(ValueError, match="not over the given B table"):
        run_extension_checks(a2, b1, act_p, tfs)
    with pytest.raises(TypeError, match="TableFactorSet"):
        run_extension_checks(a2, b1, act, fs_idx)
    with pytest.raises(ValueError, match="not over the given B presentation"):
        run_extension_checks(a2, rels, act, fs_idx, 3)
    with pytest.raises(ValueError, match="degree bound"):
        run_extension_checks(a2, rels, act_p, fs_idx)
    with pytest.raises(TypeError, match="indexed FactorSet"):
        run_extension_checks(a2, rels, act_p, tfs, 3)
    with pytest.raises(TypeError, match="b_input"):
        run_extension_checks(a2, "nope", act, tfs)

    m = lambda w: LbPoly.monomial(AB, QQ, w)
    a1 = _atable(("f",), (0,), {})
    rels_u = RelationSet(AB, QQ, [m((1,)) - m((0,))])
    act_u = SupermoduleAction(a1, rels_u, {}, {})
    fs_u = FactorSet(rels_u, a1, {})
    with pytest.raises(ValueError, match="eliminate_unit_leads"):
        run_extension_checks(a1, rels_u, act_u, fs_u, 3)


def test_reports_serialize_to_json():
    a2 = _abelian2()
    b1 = _b_zero_square()
    act = _line_action(a2, b1)
    tfs = TableFactorSet(b1, a2, {(0, 0): {1: 1}})
    result = abelian_extension_build(a2, b1, act, tfs)
    records = result.to_records()
    assert records[-1] == {"left": "b", "right": "b", "product": "a2"}
    json.dumps(records)
    for _, rep in result.stage_reports:
        dumped = json.loads(json.dumps(rep.to_records()))
        assert all(set(rec) == {"check", "instance", "status", "residual"}
                   for rec in dumped)
    json.dumps(result.audit.to_records())
