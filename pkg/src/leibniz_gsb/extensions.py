"""Extensions of a presented algebra B by a finite-dimensional algebra A.

The data of an extension is a finite-dimensional Leibniz superalgebra A
given by structure constants, an algebra B given either by its own
multiplication table or by a reduced presentation, a supermodule action of
B on A given by generator tables (actions of longer monomials are derived
by folding the generator actions through the module axioms), and a factor
set assigning an element of A to every relation of B.

The checks mirror the construction: the Leibniz superidentity on A and B,
the three supermodule and three compatibility axioms (with B-side products
evaluated in the quotient), the action/factor-set consistency conditions,
and, for table-presented B, the six-term cocycle identity.  When all
checks pass the extension table on A plus the irreducible B-monomials is
assembled and audited: the superidentity is re-evaluated on every
representable triple, the A-span is verified to be an ideal, and the
projection onto B is verified to be multiplicative.
"""

from __future__ import annotations

from typing import NamedTuple

from .gsb import (RelationSet, gsb_check, is_irreducible, irr_basis,
                  reduce_poly, validate_reduced)
from .leibniz import LbPoly, enumerate_words_upto
from .terms import Alphabet, Generator, format_combination, format_word


class ExtensionCheckError(ValueError):
    """A build precondition failed; carries the stage name and its report."""

    def __init__(self, stage, report):
        super().__init__("extension precondition failed at stage %r" % stage)
        self.stage = stage
        self.report = report


def _vadd(u, v):
    out = dict(u)
    for k, c in v.items():
        cur = out.get(k)
        cur = c if cur is None else cur + c
        if cur:
            out[k] = cur
        else:
            out.pop(k, None)
    return out


def _vsub(u, v):
    out = dict(u)
    for k, c in v.items():
        cur = out.get(k)
        cur = -c if cur is None else cur - c
        if cur:
            out[k] = cur
        else:
            out.pop(k, None)
    return out


def _vscale(v, c):
    if not c:
        return {}
    return {k: cv * c for k, cv in v.items()}


def _coerce_vec(vec, field, dim, what):
    out = {}
    for k, c in vec.items():
        if not isinstance(k, int) or not 0 <= k < dim:
            raise ValueError("%s: index %r out of range" % (what, k))
        c = field(c)
        if c:
            out[k] = c
    return out


class AlgebraTable:
    """Finite-dimensional superalgebra given by sparse structure constants."""

    __slots__ = ("generators", "products", "field")

    def __init__(self, generators, products, field):
        gens = tuple(
            g if isinstance(g, Generator) else Generator(*g)
            for g in generators
        )
        for g in gens:
            if g.parity not in (0, 1):
                raise ValueError("parity of %r must be 0 or 1" % (g.name,))
        dim = len(gens)
        table = {}
        for (i, j), vec in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError("product pair (%d, %d) out of range" % (i, j))
            vec = _coerce_vec(vec, field, dim, "product (%d, %d)" % (i, j))
            want = (gens[i].parity + gens[j].parity) % 2
            for k in vec:
                if gens[k].parity != want:
                    raise ValueError(
                        "product (%s %s) is not parity-graded"
                        % (gens[i].name, gens[j].name))
            if vec:
                table[(i, j)] = vec
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "products", table)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraTable is immutable")

    @classmethod
    def from_data(cls, data, field):
        gens = [Generator(n, p, 1) for n, p in zip(data.names, data.parities)]
        return cls(gens, data.products, field)

    @property
    def dim(self):
        return len(self.generators)

    @property
    def names(self):
        return tuple(g.name for g in self.generators)

    @property
    def parities(self):
        return tuple(g.parity for g in self.generators)

    def product(self, i, j):
        return self.products.get((i, j), {})

    def product_vec(self, u, v):
        """Bilinear product of two coefficient vectors."""
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                c = ci * cj
                if not c:
                    continue
                for k, ck in self.product(i, j).items():
                    cur = out.get(k)
                    inc = c * ck
                    cur = inc if cur is None else cur + inc
                    if cur:
                        out[k] = cur
                    else:
                        out.pop(k, None)
        return out

    def is_abelian(self):
        return not self.products

    def to_alphabet(self):
        return Alphabet(Generator(g.name, g.parity, 1)
                        for g in self.generators)

    def unit(self, i):
        return {i: self.field.one}

    def render(self, vec):
        items = [(c.value, self.generators[k].name)
                 for k, c in sorted(vec.items())]
        return format_combination(items)


class ExtRecord(NamedTuple):
    check: str
    instance: tuple   # of strings naming the evaluation point
    status: str       # "ok" or "residual"
    residual: str     # rendered residual vector

    def to_dict(self):
        return {
            "check": self.check,
            "instance": list(self.instance),
            "status": self.status,
            "residual": self.residual,
        }


class ExtReport:
    """Outcome of one check family: every evaluated instance, residuals named."""

    def __init__(self, name, records):
        self.name = name
        self.records = tuple(records)

    @property
    def passed(self):
        return all(r.status == "ok" for r in self.records)

    def failures(self):
        return [r for r in self.records if r.status != "ok"]

    def summary(self):
        fails = len(self.failures())
        verdict = "PASS" if fails == 0 else "FAIL (%d residuals)" % fails
        return "%s: %s (%d instances)" % (self.name, verdict,
                                          len(self.records))

    def to_text(self):
        lines = [self.summary()]
        for r in self.failures():
            lines.append("  %s at (%s): residual %s"
                         % (r.check, ", ".join(r.instance), r.residual))
        return "\n".join(lines)

    def to_records(self):
        return [r.to_dict() for r in self.records]


def check_leibniz_table(table):
    """Superidentity residuals x(yz) - ((xy)z) + (-1)^{|y||z|}((xz)y)."""
    field = table.field
    minus = -field.one
    records = []
    for i in range(table.dim):
        x = table.unit(i)
        for j in range(table.dim):
            y = table.unit(j)
            pj = table.generators[j].parity
            for k in range(table.dim):
                z = table.unit(k)
                sign = minus if pj and table.generators[k].parity \
                    else field.one
                res = table.product_vec(x, table.product_vec(y, z))
                res = _vsub(res, table.product_vec(table.product_vec(x, y),
                                                   z))
                res = _vadd(res, _vscale(
                    table.product_vec(table.product_vec(x, z), y), sign))
                names = (table.generators[i].name, table.generators[j].name,
                         table.generators[k].name)
                if res:
                    records.append(ExtRecord("leibniz", names, "residual",
                                             table.render(res)))
                else:
                    records.append(ExtRecord("leibniz", names, "ok", "0"))
    return ExtReport("leibniz-table", records)


def table_relation_set(b_table):
    """Present a table algebra by relations (b b') - {b.b'}.

    Returns (alphabet, relation_set, pair_index) with one relation per
    ordered basis pair in row-major order.  The relations are reduced:
    leading words are the distinct length-2 words, supports are single
    letters.  They form a Groebner-Shirshov basis exactly when the table
    satisfies the superidentity.
    """
    alphabet = b_table.to_alphabet()
    field = b_table.field
    rels = []
    pair_index = {}
    for i in range(b_table.dim):
        for j in range(b_table.dim):
            data = {(i, j): field.one}
            for k, c in b_table.product(i, j).items():
                data[(k,)] = -c
            pair_index[(i, j)] = len(rels)
            rels.append(LbPoly.from_dict(alphabet, field, data))
    return alphabet, RelationSet(alphabet, field, rels), pair_index


class SupermoduleAction:
    """Generator-level action tables of B on A, extended by folding.

    left maps (b_index, a_index) to the coefficient vector of {b.a} over
    A; right maps (a_index, b_index) to {a.b}.  Monomial actions are
    derived: {a.(w b)} unfolds through the first module axiom and
    {(w b).a} through the second, so the generator tables are the only
    independent data.  b_structure is either an AlgebraTable or a
    RelationSet presenting B.
    """

    __slots__ = ("a_table", "b_structure", "b_alphabet", "left", "right",
                 "field")

    def __init__(self, a_table, b_structure, left, right):
        field = a_table.field
        if isinstance(b_structure, AlgebraTable):
            if b_structure.field != field:
                raise ValueError("A and B tables over different fields")
            b_alphabet = b_structure.to_alphabet()
        elif isinstance(b_structure, RelationSet):
            if b_structure.field != field:
                raise ValueError("A table and B relations over different "
                                 "fields")
            b_alphabet = b_structure.alphabet
        else:
            raise TypeError("b_structure must be an AlgebraTable or a "
                            "RelationSet")
        a_dim = a_table.dim
        b_dim = len(b_alphabet)
        lt = {}
        for (b, a), vec in left.items():
            if not (0 <= b < b_dim and 0 <= a < a_dim):
                raise ValueError("left action pair (%d, %d) out of range"
                                 % (b, a))
            vec = _coerce_vec(vec, field, a_dim,
                              "left action (%d, %d)" % (b, a))
            want = (b_alphabet.parities[b]
                    + a_table.generators[a].parity) % 2
            for k in vec:
                if a_table.generators[k].parity != want:
                    raise ValueError(
                        "left action (%s %s) is not parity-graded"
                        % (b_alphabet.names[b], a_table.names[a]))
            if vec:
                lt[(b, a)] = vec
        rt = {}
        for (a, b), vec in right.items():
            if not (0 <= a < a_dim and 0 <= b < b_dim):
                raise ValueError("right action pair (%d, %d) out of range"
                                 % (a, b))
            vec = _coerce_vec(vec, field, a_dim,
                              "right action (%d, %d)" % (a, b))
            want = (a_table.generators[a].parity
                    + b_alphabet.parities[b]) % 2
            for k in vec:
                if a_table.generators[k].parity != want:
                    raise ValueError(
                        "right action (%s %s) is not parity-graded"
                        % (a_table.names[a], b_alphabet.names[b]))
            if vec:
                rt[(a, b)] = vec
        object.__setattr__(self, "a_table", a_table)
        object.__setattr__(self, "b_structure", b_structure)
        object.__setattr__(self, "b_alphabet", b_alphabet)
        object.__setattr__(self, "left", lt)
        object.__setattr__(self, "right", rt)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("SupermoduleAction is immutable")

    @property
    def is_table_mode(self):
        return isinstance(self.b_structure, AlgebraTable)

    def left_letter_on_vec(self, b, avec):
        """{b . v} for a single B-generator, linearly in v."""
        out = {}
        for a, c in avec.items():
            for k, ck in self.left.get((b, a), {}).items():
                cur = out.get(k)
                inc = c * ck
                cur = inc if cur is None else cur + inc
                if cur:
                    out[k] = cur
                else:
                    out.pop(k, None)
        return out

    def right_letter_on_vec(self, avec, b):
        """{v . b} for a single B-generator, linearly in v."""
        out = {}
        for a, c in avec.items():
            for k, ck in self.right.get((a, b), {}).items():
                cur = out.get(k)
                inc = c * ck
                cur = inc if cur is None else cur + inc
                if cur:
                    out[k] = cur
                else:
                    out.pop(k, None)
        return out

    def left_word_on_vec(self, word, avec, avec_parity):
        """{[w b].v} = {w.{b.v}} + (-1)^{|v||b|}{{w.v}.b} recursively."""
        if len(word) == 1:
            return self.left_letter_on_vec(word[0], avec)
        w, bn = word[:-1], word[-1]
        pb = self.b_alphabet.parities[bn]
        part1 = self.left_word_on_vec(w, self.left_letter_on_vec(bn, avec),
                                      (avec_parity + pb) % 2)
        part2 = self.right_letter_on_vec(
            self.left_word_on_vec(w, avec, avec_parity), bn)
        if avec_parity and pb:
            part2 = _vscale(part2, -self.field.one)
        return _vadd(part1, part2)

    def right_word_on_vec(self, avec, word):
        """{v.[w b]} = {{v.w}.b} - (-1)^{|w||b|}{{v.b}.w} recursively."""
        if len(word) == 1:
            return self.right_letter_on_vec(avec, word[0])
        w, b = word[:-1], word[-1]
        part1 = self.right_letter_on_vec(self.right_word_on_vec(avec, w), b)
        part2 = self.right_word_on_vec(self.right_letter_on_vec(avec, b), w)
        if self.b_alphabet.word_parity(w) and self.b_alphabet.parities[b]:
            return _vadd(part1, part2)
        return _vsub(part1, part2)

    def left_element_on_vec(self, element, avec, avec_parity):
        """Action of a B-element given as {word: coefficient}."""
        out = {}
        for word, c in element.items():
            out = _vadd(out, _vscale(
                self.left_word_on_vec(word, avec, avec_parity), c))
        return out

    def right_element_on_vec(self, avec, element):
        out = {}
        for word, c in element.items():
            out = _vadd(out, _vscale(self.right_word_on_vec(avec, word), c))
        return out

    def iterated_right_letters(self, avec, letters):
        """{{{v.b1}.b2}...}: plain left-normed letter iteration, no folding."""
        for b in letters:
            avec = self.right_letter_on_vec(avec, b)
        return avec

    def b_product(self, x_word, y_word):
        """Product of two B-monomials in the quotient, as {word: coeff}."""
        if self.is_table_mode:
            if len(x_word) != 1 or len(y_word) != 1:
                raise ValueError("table-mode products take single letters")
            return {(k,): c for k, c in
                    self.b_structure.product(x_word[0], y_word[0]).items()}
        prod = (LbPoly.monomial(self.b_alphabet, self.field, x_word)
                * LbPoly.monomial(self.b_alphabet, self.field, y_word))
        return dict(reduce_poly(prod, self.b_structure).remainder.terms)

    def b_elements(self, bound):
        """Irreducible B-monomials within the degree bound, as words."""
        if self.is_table_mode:
            return [(i,) for i in range(len(self.b_alphabet))]
        return [w for w in irr_basis(self.b_structure, bound)]


def check_supermodule(a_table, act, bound):
    """All six axiom families on basis triples, quotient products inside.

    The three module axioms run over pairs of irreducible B-monomials
    within the degree bound and every A-generator; the three compatibility
    axioms run over A-generator pairs and single B-monomials within the
    bound.  B-side products are evaluated in the quotient (table product,
    or reduction modulo the presentation), so the axioms are genuine
    identities of the actions rather than restatements of the folding.
    """
    if act.a_table is not a_table and act.a_table != a_table:
        raise ValueError("action is not over the given A table")
    field = act.field
    minus = -field.one
    balph = act.b_alphabet
    deg = balph.word_degree
    records = []

    def render_word(w):
        return format_word(w, balph)

    elems = act.b_elements(bound)
    a_units = [(a, a_table.unit(a), a_table.generators[a].parity)
               for a in range(a_table.dim)]
    for x in elems:
        px = balph.word_parity(x)
        for y in elems:
            if not act.is_table_mode and deg(x) + deg(y) > bound:
                continue
            py = balph.word_parity(y)
            sxy = minus if px and py else field.one
            prod = act.b_product(x, y)
            for a, unit, pa in a_units:
                sfy = minus if pa and py else field.one
                fx = act.right_word_on_vec(unit, x)
                fy = act.right_word_on_vec(unit, y)
                res = act.right_element_on_vec(unit, prod)
                res = _vsub(res, act.right_word_on_vec(fx, y))
                res = _vadd(res, _vscale(act.right_word_on_vec(fy, x), sxy))
                inst = (a_table.names[a], render_word(x), render_word(y))
                records.append(ExtRecord(
                    "supermodule-1", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
                xf = act.left_word_on_vec(x, unit, pa)
                yf = act.left_word_on_vec(y, unit, pa)
                res = act.left_word_on_vec(x, yf, (pa + py) % 2)
                res = _vsub(res, act.left_element_on_vec(prod, unit, pa))
                res = _vadd(res, _vscale(act.right_word_on_vec(xf, y), sfy))
                records.append(ExtRecord(
                    "supermodule-2", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
                fy_r = act.right_word_on_vec(unit, y)
                res = act.left_word_on_vec(x, fy_r, (pa + py) % 2)
                res = _vsub(res, act.right_word_on_vec(xf, y))
                res = _vadd(res, _vscale(
                    act.left_element_on_vec(prod, unit, pa), sfy))
                records.append(ExtRecord(
                    "supermodule-3", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
    for x in elems:
        if not act.is_table_mode and deg(x) > bound:
            continue
        px = balph.word_parity(x)
        for a, unit_f, pf in a_units:
            for a2, unit_f2, pf2 in a_units:
                sff = minus if pf and pf2 else field.one
                sxf2 = minus if px and pf2 else field.one
                ff2 = a_table.product(a, a2)
                xf = act.left_word_on_vec(x, unit_f, pf)
                xf2 = act.left_word_on_vec(x, unit_f2, pf2)
                fx = act.right_word_on_vec(unit_f, x)
                f2x = act.right_word_on_vec(unit_f2, x)
                inst = (render_word(x), a_table.names[a], a_table.names[a2])
                res = act.left_word_on_vec(x, ff2, (pf + pf2) % 2)
                res = _vsub(res, a_table.product_vec(xf, unit_f2))
                res = _vadd(res, _vscale(
                    a_table.product_vec(xf2, unit_f), sff))
                records.append(ExtRecord(
                    "compatibility-1", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
                res = a_table.product_vec(unit_f, f2x)
                res = _vsub(res, act.right_word_on_vec(ff2, x))
                res = _vadd(res, _vscale(
                    a_table.product_vec(fx, unit_f2), sxf2))
                records.append(ExtRecord(
                    "compatibility-2", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
                res = a_table.product_vec(unit_f, xf2)
                res = _vsub(res, a_table.product_vec(fx, unit_f2))
                res = _vadd(res, _vscale(act.right_word_on_vec(ff2, x),
                                         sxf2))
                records.append(ExtRecord(
                    "compatibility-3", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
    return ExtReport("supermodule", records)


class FactorSet:
    """Assignment of an A-element to every relation of a presented B."""

    __slots__ = ("relation_set", "values", "a_table")

    def __init__(self, relation_set, a_table, values):
        field = a_table.field
        if relation_set.field != field:
            raise ValueError("factor set field mismatch")
        vals = {}
        for idx, vec in values.items():
            if not 0 <= idx < len(relation_set):
                raise ValueError("factor set index %r out of range" % (idx,))
            vec = _coerce_vec(vec, field, a_table.dim,
                              "factor set %d" % idx)
            want = relation_set.relations[idx].homogeneous_parity()
            for k in vec:
                if a_table.generators[k].parity != want:
                    raise ValueError(
                        "factor set value for relation %d is not "
                        "parity-preserving" % idx)
            if vec:
                vals[idx] = vec
        object.__setattr__(self, "relation_set", relation_set)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "a_table", a_table)

    def __setattr__(self, name, value):
        raise AttributeError("FactorSet is immutable")

    def value(self, idx):
        return self.values.get(idx, {})


class TableFactorSet:
    """Bilinear assignment of A-elements to B-basis pairs."""

    __slots__ = ("b_table", "values", "a_table")

    def __init__(self, b_table, a_table, values):
        field = a_table.field
        if b_table.field != field:
            raise ValueError("factor set field mismatch")
        vals = {}
        for (i, j), vec in values.items():
            if not (0 <= i < b_table.dim and 0 <= j < b_table.dim):
                raise ValueError("factor set pair (%d, %d) out of range"
                                 % (i, j))
            vec = _coerce_vec(vec, field, a_table.dim,
                              "factor set (%d, %d)" % (i, j))
            want = (b_table.generators[i].parity
                    + b_table.generators[j].parity) % 2
            for k in vec:
                if a_table.generators[k].parity != want:
                    raise ValueError(
                        "factor set value (%s, %s) is not parity-preserving"
                        % (b_table.names[i], b_table.names[j]))
            if vec:
                vals[(i, j)] = vec
        object.__setattr__(self, "b_table", b_table)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "a_table", a_table)

    def __setattr__(self, name, value):
        raise AttributeError("TableFactorSet is immutable")

    def value(self, i, j):
        return self.values.get((i, j), {})

    def bilinear(self, bvec1, bvec2):
        out = {}
        for i, c1 in bvec1.items():
            for j, c2 in bvec2.items():
                c = c1 * c2
                if c:
                    out = _vadd(out, _vscale(self.value(i, j), c))
        return out

    def to_indexed(self, relation_set, pair_index):
        values = {pair_index[pair]: vec for pair, vec in self.values.items()}
        return FactorSet(relation_set, self.a_table, values)


def check_condition_i(act, fs, R):
    """a.f = {a.|f|} and f.a = {|f|.a} for every A-generator and relation.

    The left sides act with the relation polynomial through the folded
    monomial actions; the right sides multiply inside A against the factor
    set value |f|.
    """
    a_table = act.a_table
    records = []
    for idx, rel in enumerate(R.relations):
        element = dict(rel.terms)
        fvec = fs.value(idx)
        for a in range(a_table.dim):
            unit = a_table.unit(a)
            pa = a_table.generators[a].parity
            lhs = act.right_element_on_vec(unit, element)
            rhs = a_table.product_vec(unit, fvec)
            res = _vsub(lhs, rhs)
            inst = (a_table.names[a], "relation %d" % idx)
            records.append(ExtRecord(
                "condition-i-right", inst,
                "ok" if not res else "residual",
                "0" if not res else a_table.render(res)))
            lhs = act.left_element_on_vec(element, unit, pa)
            rhs = a_table.product_vec(fvec, unit)
            res = _vsub(lhs, rhs)
            records.append(ExtRecord(
                "condition-i-left", inst,
                "ok" if not res else "residual",
                "0" if not res else a_table.render(res)))
    return ExtReport("condition-i", records)


def check_condition_ii(act, fs, R, degree_bound):
    """mu.|f| must match the factor-set realization of the product (mu f).

    For every relation f and every monomial mu with deg(mu) + deg(f-bar)
    within the bound, the product (mu f) lies in the ideal; its certificate
    trace expresses it through normal polynomials [s v], and each trace
    entry contributes the iterated letter action of v on |s|.  The sum must
    equal the folded action mu.|f|.  Requires a reduced presentation with
    leading lengths above one.
    """
    validate_reduced(R)
    if R.unit_lead_letters():
        raise ValueError(
            "condition-ii needs leading monomials of length > 1; run "
            "eliminate_unit_leads first")
    a_table = act.a_table
    balph = act.b_alphabet
    deg = balph.word_degree
    records = []
    for idx, rel in enumerate(R.relations):
        room = degree_bound - deg(rel.lead_word)
        if room < 1:
            continue
        parity_f = rel.homogeneous_parity()
        fvec = fs.value(idx)
        for mu in enumerate_words_upto(balph, room):
            prod = LbPoly.monomial(balph, act.field, mu) * rel
            res = reduce_poly(prod, R)
            if not res.remainder.is_zero():
                raise ValueError(
                    "(mu f) does not reduce to zero; the presentation is "
                    "not a Groebner-Shirshov basis at this degree")
            total = {}
            for coeff, d in res.trace:
                if d.u:
                    raise AssertionError("unexpected left word in trace")
                h = act.iterated_right_letters(fs.value(d.rel), d.v)
                total = _vadd(total, _vscale(h, coeff))
            lhs = act.left_word_on_vec(mu, fvec, parity_f)
            residual = _vsub(lhs, total)
            inst = (format_word(mu, balph), "relation %d" % idx)
            records.append(ExtRecord(
                "condition-ii", inst,
                "ok" if not residual else "residual",
                "0" if not residual else a_table.render(residual)))
    return ExtReport("condition-ii", records)


def cocycle_check(a_table, b_table, act, fs_table):
    """The six-term identity tying the factor set to the actions.

    For all basis triples (b'', b, b') of B:
    {|b'',b|.b'} - (-1)^{|b||b'|}{|b'',b'|.b} - {b''.|b,b'|}
    + |{b''.b},b'| - (-1)^{|b||b'|}|{b''.b'},b| - |b'',{b.b'}| = 0.
    """
    field = a_table.field
    minus = -field.one
    records = []
    dim = b_table.dim
    for i in range(dim):
        unit_i = {i: field.one}
        for j in range(dim):
            pj = b_table.generators[j].parity
            for k in range(dim):
                # terms 2 and 5 carry -(-1)^{|b||b'|}
                neg_sign = field.one if pj and b_table.generators[k].parity \
                    else minus
                res = act.right_letter_on_vec(fs_table.value(i, j), k)
                res = _vadd(res, _vscale(
                    act.right_letter_on_vec(fs_table.value(i, k), j),
                    neg_sign))
                res = _vsub(res, act.left_letter_on_vec(
                    i, fs_table.value(j, k)))
                res = _vadd(res, fs_table.bilinear(
                    b_table.product(i, j), {k: field.one}))
                res = _vadd(res, _vscale(fs_table.bilinear(
                    b_table.product(i, k), {j: field.one}), neg_sign))
                res = _vsub(res, fs_table.bilinear(
                    unit_i, b_table.product(j, k)))
                inst = (b_table.names[i], b_table.names[j],
                        b_table.names[k])
                records.append(ExtRecord(
                    "cocycle", inst,
                    "ok" if not res else "residual",
                    "0" if not res else a_table.render(res)))
    return ExtReport("cocycle", records)


class ExtensionResult:
    """Constructed extension table plus all reports.

    Basis labels are the A-generator names followed by the irreducible
    B-monomials rendered with dots (so "b1.b2" is the class of the
    left-normed word).  table maps label-index pairs to coefficient
    vectors; pairs whose B-degrees overflow the bound are absent in
    presentation mode (the table is exact in table mode).
    """

    def __init__(self, a_table, b_alphabet, b_monomials, labels, parities,
                 b_degrees, table, degree_bound, stage_reports, audit):
        self.a_table = a_table
        self.b_alphabet = b_alphabet
        self.b_monomials = tuple(b_monomials)
        self.labels = tuple(labels)
        self.parities = tuple(parities)
        self.b_degrees = tuple(b_degrees)
        self.table = table
        self.degree_bound = degree_bound
        self.stage_reports = tuple(stage_reports)
        self.audit = audit

    @property
    def dim(self):
        return len(self.labels)

    @property
    def a_dim(self):
        return self.a_table.dim

    def product(self, i, j):
        """Table entry, or None when the pair is not representable."""
        return self.table.get((i, j))

    def render(self, vec):
        items = [(c.value, self.labels[k]) for k, c in sorted(vec.items())]
        return format_combination(items)

    def to_records(self):
        out = []
        for (i, j), vec in sorted(self.table.items()):
            out.append({
                "left": self.labels[i],
                "right": self.labels[j],
                "product": self.render(vec),
            })
        return out

    def to_text(self):
        lines = ["extension basis: %s" % " ".join(self.labels)]
        for rec in self.to_records():
            lines.append("  %s %s -> %s"
                         % (rec["left"], rec["right"], rec["product"]))
        lines.append(self.audit.summary())
        return "\n".join(lines)


def _dot_label(word, alphabet):
    return ".".join(alphabet.names[b] for b in word)


def _assemble_table(a_table, R, act, fs, degree_bound):
    """Raw extension table on A plus Irr(R) monomials; no checks here.

    Separated from build_extension so tests can assemble tables from
    unchecked data and confirm that the audit fails exactly when the
    checks would have failed.
    """
    balph = act.b_alphabet
    field = act.field
    deg = balph.word_degree
    b_mons = [w for w in irr_basis(R, degree_bound)]
    a_dim = a_table.dim
    labels = list(a_table.names) + [_dot_label(w, balph) for w in b_mons]
    parities = list(a_table.parities) + [balph.word_parity(w)
                                         for w in b_mons]
    b_degrees = [0] * a_dim + [deg(w) for w in b_mons]
    mon_index = {w: a_dim + i for i, w in enumerate(b_mons)}
    table = {}

    # every representable pair gets an entry, zero or not, so that absence
    # from the table always means "beyond the degree bound"
    def put(i, j, vec):
        table[(i, j)] = vec

    for i in range(a_dim):
        for j in range(a_dim):
            put(i, j, dict(a_table.product(i, j)))
    for i in range(a_dim):
        unit = a_table.unit(i)
        pa = a_table.generators[i].parity
        for w in b_mons:
            put(i, mon_index[w], act.right_word_on_vec(unit, w))
            put(mon_index[w], i, act.left_word_on_vec(w, unit, pa))
    for v in b_mons:
        for w in b_mons:
            if deg(v) + deg(w) > degree_bound:
                continue
            prod = (LbPoly.monomial(balph, field, v)
                    * LbPoly.monomial(balph, field, w))
            res = reduce_poly(prod, R)
            if not res.remainder.is_zero() and any(
                    not is_irreducible(word, R)
                    for word, _ in res.remainder.terms):
                raise AssertionError("remainder left a reducible word")
            vec = {}
            for word, c in res.remainder.terms:
                vec[mon_index[word]] = c
            for coeff, d in res.trace:
                if d.u:
                    raise AssertionError("unexpected left word in trace")
                h = act.iterated_right_letters(fs.value(d.rel), d.v)
                for k, c in _vscale(h, coeff).items():
                    cur = vec.get(k)
                    cur = c if cur is None else cur + c
                    if cur:
                        vec[k] = cur
                    else:
                        vec.pop(k, None)
            put(mon_index[v], mon_index[w], vec)
    return b_mons, labels, parities, b_degrees, table


def _audit_table(a_table, b_mons, labels, parities, b_degrees, table,
                 degree_bound, act, R):
    """Re-verify the assembled table from the outside.

    Evaluates the superidentity on every triple whose B-degrees fit the
    bound (so all needed entries exist), checks that products against A
    stay in the A-span, and checks that dropping the A-components is a
    homomorphism onto the quotient of B.
    """
    field = a_table.field
    minus = -field.one
    a_dim = a_table.dim
    n = len(labels)
    records = []

    def mul(i, j):
        return table.get((i, j), {})

    def mul_vec(i, vec):
        out = {}
        for k, c in vec.items():
            out = _vadd(out, _vscale(mul(i, k), c))
        return out

    def mul_vec_right(vec, j):
        out = {}
        for k, c in vec.items():
            out = _vadd(out, _vscale(mul(k, j), c))
        return out

    for i in range(n):
        for j in range(n):
            vec = mul(i, j)
            if (i < a_dim or j < a_dim) and any(k >= a_dim for k in vec):
                records.append(ExtRecord(
                    "ideal", (labels[i], labels[j]), "residual",
                    "product escapes the A-span"))
    for i in range(n):
        for j in range(n):
            if b_degrees[i] + b_degrees[j] > degree_bound:
                continue
            vec = mul(i, j)
            b_part = {k: c for k, c in vec.items() if k >= a_dim}
            if i >= a_dim and j >= a_dim:
                prod = (LbPoly.monomial(act.b_alphabet, field,
                                        b_mons[i - a_dim])
                        * LbPoly.monomial(act.b_alphabet, field,
                                          b_mons[j - a_dim]))
                expect = reduce_poly(prod, R).remainder
            elif i >= a_dim or j >= a_dim:
                expect = LbPoly.zero(act.b_alphabet, field)
            else:
                expect = LbPoly.zero(act.b_alphabet, field)
            got = {b_mons[k - a_dim]: c for k, c in b_part.items()}
            if got != dict(expect.terms):
                records.append(ExtRecord(
                    "projection", (labels[i], labels[j]), "residual",
                    "B-part differs from the quotient product"))
    for i in range(n):
        for j in range(n):
            dj = b_degrees[j]
            pj = parities[j]
            for k in range(n):
                if b_degrees[i] + dj + b_degrees[k] > degree_bound:
                    continue
                sign = minus if pj and parities[k] else field.one
                res = mul_vec(i, mul(j, k))
                res = _vsub(res, mul_vec_right(mul(i, j), k))
                res = _vadd(res, _vscale(mul_vec_right(mul(i, k), j), sign))
                inst = (labels[i], labels[j], labels[k])
                if res:
                    items = [(c.value, labels[m])
                             for m, c in sorted(res.items())]
                    records.append(ExtRecord("leibniz", inst, "residual",
                                             format_combination(items)))
                else:
                    records.append(ExtRecord("leibniz", inst, "ok", "0"))
    return ExtReport("extension-audit", records)


def run_extension_checks(a_table, b_input, act, fs, degree_bound=None):
    """The ordered precondition stages, stopping at the first failure.

    Returns (stages, context): stages is a list of (name, ExtReport);
    context is None when a stage failed, otherwise the prepared data
    (relation_set, indexed factor set, presentation-mode action, bound)
    for table assembly.
    """
    stages = []

    def run(name, report):
        stages.append((name, report))
        return report.passed

    if not run("a-leibniz", check_leibniz_table(a_table)):
        return stages, None
    if isinstance(b_input, AlgebraTable):
        if not act.is_table_mode or act.b_structure != b_input:
            raise ValueError("action is not over the given B table")
        if not isinstance(fs, TableFactorSet):
            raise TypeError("table mode needs a TableFactorSet")
        if not run("b-leibniz", check_leibniz_table(b_input)):
            return stages, None
        _, R, pair_index = table_relation_set(b_input)
        fs_idx = fs.to_indexed(R, pair_index)
        bound_eff = 3
        if not run("supermodule", check_supermodule(a_table, act,
                                                    bound_eff)):
            return stages, None
        if not run("condition-i", check_condition_i(act, fs_idx, R)):
            return stages, None
        if not run("cocycle", cocycle_check(a_table, b_input, act, fs)):
            return stages, None
        build_act = SupermoduleAction(a_table, R, act.left, act.right)
    elif isinstance(b_input, RelationSet):
        if act.is_table_mode or act.b_structure != b_input:
            raise ValueError("action is not over the given B presentation")
        if degree_bound is None:
            raise ValueError("presentation mode needs a degree bound")
        validate_reduced(b_input)
        if b_input.unit_lead_letters():
            raise ValueError(
                "presentation mode needs leading monomials of length > 1; "
                "run eliminate_unit_leads first")
        if not isinstance(fs, FactorSet):
            raise TypeError("presentation mode needs an indexed FactorSet")
        R = b_input
        if not run("b-gsb", _gsb_as_ext_report(gsb_check(R, degree_bound))):
            return stages, None
        bound_eff = degree_bound
        if not run("supermodule", check_supermodule(a_table, act,
                                                    bound_eff)):
            return stages, None
        if not run("condition-i", check_condition_i(act, fs, R)):
            return stages, None
        if not run("condition-ii", check_condition_ii(act, fs, R,
                                                      bound_eff)):
            return stages, None
        fs_idx = fs
        build_act = act
    else:
        raise TypeError("b_input must be an AlgebraTable or a RelationSet")
    return stages, (R, fs_idx, build_act, bound_eff)


def build_extension(a_table, b_input, act, fs, degree_bound):
    """Run every applicable check, then assemble and audit the extension.

    b_input is an AlgebraTable (table mode; the check suite is exact) or a
    reduced RelationSet with long leading monomials (presentation mode;
    checks and table are degree-capped).  fs is a TableFactorSet in table
    mode and an indexed FactorSet otherwise.  Any failing precondition
    raises ExtensionCheckError carrying the offending report; the returned
    result includes all stage reports and the final audit.
    """
    stages, context = run_extension_checks(a_table, b_input, act, fs,
                                           degree_bound)
    if context is None:
        name, report = stages[-1]
        raise ExtensionCheckError(name, report)
    R, fs_idx, build_act, bound_eff = context
    b_mons, labels, parities, b_degrees, table = _assemble_table(
        a_table, R, build_act, fs_idx, bound_eff)
    audit = _audit_table(a_table, b_mons, labels, parities, b_degrees,
                         table, bound_eff, build_act, R)
    return ExtensionResult(a_table, build_act.b_alphabet, b_mons, labels,
                           parities, b_degrees, table, bound_eff, stages,
                           audit)


def _gsb_as_ext_report(report):
    records = []
    for rec in report.records:
        inst = ("relation %d" % rec.f_index,)
        ok = rec.status == "trivial"
        records.append(ExtRecord("gsb-composition", inst,
                                 "ok" if ok else "residual",
                                 "0" if ok else str(rec.witness)))
    return ExtReport("b-gsb", records)


def abelian_extension_build(a_table, b_table, act, fs_table):
    """Extension of a table algebra by an abelian A.

    With all A-products zero the compatibility axioms and the A-sides of
    the consistency conditions hold automatically, so the build reduces to
    the module axioms plus the cocycle identity; the audit then passes
    exactly when the cocycle check does.
    """
    if not a_table.is_abelian():
        raise ValueError("A is not abelian")
    return build_extension(a_table, b_table, act, fs_table, 3)
