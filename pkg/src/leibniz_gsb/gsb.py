"""The Groebner-Shirshov engine for presented free Leibniz superalgebras.

Relations are monic parity-homogeneous polynomials over NF(X).  A normal
S-polynomial is [u s v]_L with s a relation and u a generator word that is
nonempty only when s has a single-letter leading monomial; its leading
monomial is [u s-bar v]_L.  Reduction eliminates, at each step, the largest
monomial of the current polynomial that is such a leading word, choosing
the reducer with the shortest left word u and then the lowest relation
index; the certificate trace therefore has strictly decreasing realized
leading monomials.

Both composition families are infinite, so every check and the completion
loop take a mandatory degree cap and report results as verified up to that
degree, never as a proof.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from .leibniz import LbPoly, enumerate_words, enumerate_words_upto
from .linalg import ResourceCapError, matrix_rank
from .terms import format_word

# When set (the test suite turns it on), every reduction re-checks its own
# certificate: the input must reconstruct exactly from remainder plus trace,
# with strictly decreasing realized leading monomials.
_VERIFY_TRACES = False


class NotAGSBError(ValueError):
    """The relation set failed gsb_check within the working degree cap."""

    def __init__(self, report):
        super().__init__(
            "relation set is not a Groebner-Shirshov basis within degree %d"
            % report.bound
        )
        self.report = report


class NormalSPolyDescriptor(NamedTuple):
    """[u s v]_L for relation index rel; u nonempty needs a unit lead."""

    rel: int
    u: tuple
    v: tuple


class ReductionResult(NamedTuple):
    remainder: LbPoly
    trace: tuple  # of (coefficient, NormalSPolyDescriptor)


class RelationSet:
    """Alphabet, field, and an ordered tuple of monic homogeneous relations."""

    __slots__ = ("alphabet", "field", "relations", "_lead_map", "_unit_map")

    def __init__(self, alphabet, field, relations):
        rels = []
        for r in relations:
            if r.alphabet != alphabet:
                raise ValueError("relation over a different alphabet")
            if r.field != field:
                raise ValueError("relation over a different field")
            if r.is_zero():
                raise ValueError("zero relation")
            if r.homogeneous_parity() is None:
                raise ValueError(
                    "relation %s is not parity-homogeneous" % (r,)
                )
            rels.append(r.monic())
        rels = tuple(rels)
        lead_map = {}
        unit_map = {}
        for i, r in enumerate(rels):
            w = r.lead_word
            lead_map.setdefault(w, []).append(i)
            if len(w) == 1:
                unit_map.setdefault(w[0], []).append(i)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "_lead_map",
                           {w: tuple(v) for w, v in lead_map.items()})
        object.__setattr__(self, "_unit_map",
                           {b: tuple(v) for b, v in unit_map.items()})

    def __setattr__(self, name, value):
        raise AttributeError("RelationSet is immutable")

    def __len__(self):
        return len(self.relations)

    def __eq__(self, other):
        return (isinstance(other, RelationSet)
                and self.alphabet == other.alphabet
                and self.field == other.field
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.alphabet, self.field, self.relations))

    def __repr__(self):
        return "RelationSet(%d relations over %r)" % (len(self.relations),
                                                      self.field)

    def lead_words(self):
        return tuple(r.lead_word for r in self.relations)

    def unit_lead_letters(self):
        return frozenset(self._unit_map)

    def with_relation(self, poly):
        return RelationSet(self.alphabet, self.field,
                           self.relations + (poly,))

    def without_index(self, index):
        rels = self.relations[:index] + self.relations[index + 1:]
        return RelationSet(self.alphabet, self.field, rels)

    def max_lead_degree(self):
        deg = self.alphabet.word_degree
        return max((deg(w) for w in self.lead_words()), default=0)


def realize(descriptor, S):
    """The normal S-polynomial [u s v]_L as an LbPoly."""
    s = S.relations[descriptor.rel]
    if descriptor.u:
        if len(s.lead_word) != 1:
            raise ValueError(
                "descriptor with nonempty left word needs a unit leading "
                "monomial"
            )
        base = LbPoly.monomial(S.alphabet, S.field, descriptor.u) * s
    else:
        base = s
    return base.append_letters(descriptor.v)


def realized_lead(descriptor, S):
    """Leading word of realize(descriptor, S), which is [u s-bar v]."""
    return descriptor.u + S.relations[descriptor.rel].lead_word + descriptor.v


def _find_reducer(word, S):
    """Best descriptor whose realized leading word equals `word`, or None.

    Candidates: a relation lead that is a prefix of the word (left word u
    empty), or a unit lead at a position >= 1.  The winner minimizes
    (len(u), relation index).
    """
    lead_map = S._lead_map
    best = None
    for k in range(1, len(word) + 1):
        idxs = lead_map.get(word[:k])
        if idxs and (best is None or idxs[0] < best[0]):
            best = (idxs[0], k)
    if best is not None:
        i, k = best
        return NormalSPolyDescriptor(i, (), word[k:])
    unit_map = S._unit_map
    for t in range(1, len(word)):
        idxs = unit_map.get(word[t])
        if idxs:
            return NormalSPolyDescriptor(idxs[0], word[:t], word[t + 1:])
    return None


def is_irreducible(word, S):
    """True iff the word lies in Irr(S): it is no realized leading word."""
    word = tuple(word)
    lead_map = S._lead_map
    for k in range(1, len(word) + 1):
        if word[:k] in lead_map:
            return False
    unit_map = S._unit_map
    if unit_map:
        for t in range(1, len(word)):
            if word[t] in unit_map:
                return False
    return True


def irr_basis(S, degree_bound):
    """Irr(S) monomials of degree <= bound, in deg-length-lex order."""
    return [w for w in enumerate_words_upto(S.alphabet, degree_bound)
            if is_irreducible(w, S)]


def reduce_poly(f, S):
    """Full reduction of f modulo S with a certificate trace.

    Repeatedly eliminates the largest reducible monomial in the support.
    Deterministic for a fixed relation ordering; the realized leading
    monomials recorded in the trace strictly decrease.
    """
    if f.alphabet != S.alphabet or f.field != S.field:
        raise ValueError("polynomial and relation set do not match")
    key = S.alphabet.monomial_key
    data = dict(f.terms)
    trace = []
    irreducible = set()
    while True:
        target = None
        for w in sorted(data, key=key, reverse=True):
            if w in irreducible:
                continue
            d = _find_reducer(w, S)
            if d is None:
                irreducible.add(w)
            else:
                target = (w, d)
                break
        if target is None:
            break
        w, d = target
        coeff = data[w]
        h = realize(d, S)
        if _VERIFY_TRACES and h.lead_word != w:
            raise AssertionError("realized lead %s != target %s"
                                 % (h.lead_word, w))
        for hw, hc in h.terms:
            cur = data.get(hw)
            dec = coeff * hc
            cur = -dec if cur is None else cur - dec
            if cur:
                data[hw] = cur
            else:
                data.pop(hw, None)
        trace.append((coeff, d))
    remainder = LbPoly.from_dict(S.alphabet, S.field, data)
    result = ReductionResult(remainder, tuple(trace))
    if _VERIFY_TRACES:
        _verify_reduction(f, S, result)
    return result


def _verify_reduction(f, S, result):
    total = result.remainder
    prev_key = None
    key = S.alphabet.monomial_key
    for coeff, d in result.trace:
        h = realize(d, S)
        total = total + h.scaled(coeff)
        k = key(h.lead_word)
        if prev_key is not None and not (k < prev_key):
            raise AssertionError("trace leads not strictly decreasing")
        prev_key = k
    if total != f:
        raise AssertionError("reduction certificate does not reconstruct input")
    if result.trace and f:
        first = realized_lead(result.trace[0][1], S)
        if key(first) > key(f.lead_word):
            raise AssertionError("trace lead exceeds input lead")


def ideal_membership(f, S):
    """True iff f reduces to zero; trustworthy when S is a verified GSB."""
    return reduce_poly(f, S).remainder.is_zero()


def is_trivial_mod(h, S, bound):
    """Triviality of h modulo (S, bound): bound is a word or a degree.

    Returns (flag, reduction).  When the flag is true the trace of the
    reduction is the certificate: h equals the traced combination of normal
    S-polynomials with realized leading monomials below the word bound
    (strictly) or with degrees at most the integer bound.
    """
    res = reduce_poly(h, S)
    if not res.remainder.is_zero():
        return False, res
    if h.is_zero():
        return True, res
    key = S.alphabet.monomial_key
    if isinstance(bound, int):
        ok = S.alphabet.word_degree(h.lead_word) <= bound
    else:
        ok = key(h.lead_word) < key(tuple(bound))
    return ok, res


def inclusion_compositions(S, degree_bound=None):
    """All inclusion compositions (f, g)_{f-bar} = f - [u g v]_L.

    Yields (f_index, g_index, descriptor, composition) for every ordered
    pair of distinct relations and every decomposition of f's leading word
    over g's leading word (as a prefix, or at a position >= 1 for unit
    leads); equal leading words are included.
    """
    out = []
    deg = S.alphabet.word_degree
    for i, f in enumerate(S.relations):
        w = f.lead_word
        if degree_bound is not None and deg(w) > degree_bound:
            continue
        for k in range(1, len(w) + 1):
            for j in S._lead_map.get(w[:k], ()):
                if j == i:
                    continue
                d = NormalSPolyDescriptor(j, (), w[k:])
                out.append((i, j, d, f - realize(d, S)))
        for t in range(1, len(w)):
            for j in S._unit_map.get(w[t], ()):
                if j == i:
                    continue
                d = NormalSPolyDescriptor(j, w[:t], w[t + 1:])
                out.append((i, j, d, f - realize(d, S)))
    return out


def left_mul_compositions(S, degree_bound):
    """All nonzero products (mu f) with a long-lead f within the degree cap.

    Yields (mu_word, f_index, product) for every mu in NF(X) with
    deg(mu) + deg(f-bar) <= degree_bound and every relation f whose leading
    monomial has length > 1.
    """
    out = []
    deg = S.alphabet.word_degree
    for i, f in enumerate(S.relations):
        w = f.lead_word
        if len(w) <= 1:
            continue
        room = degree_bound - deg(w)
        if room < 1:
            continue
        for mu in enumerate_words_upto(S.alphabet, room):
            product = LbPoly.monomial(S.alphabet, S.field, mu) * f
            if product:
                out.append((mu, i, product))
    return out


class CompositionRecord(NamedTuple):
    kind: str                 # "inclusion" or "left-mult"
    f_index: int              # relation being decomposed / multiplied
    g_index: object           # second relation index, None for left-mult
    descriptor: object        # NormalSPolyDescriptor, None for left-mult
    multiplier: object        # mu word for left-mult, None for inclusion
    status: str               # "trivial" or "nontrivial"
    certificate: tuple        # reduction trace
    witness: object           # irreducible remainder when nontrivial

    def to_dict(self, alphabet):
        rec = {
            "kind": self.kind,
            "f": self.f_index,
            "status": self.status,
        }
        if self.kind == "inclusion":
            rec["g"] = self.g_index
            rec["u"] = " ".join(alphabet.generators[b].name
                                for b in self.descriptor.u)
            rec["v"] = " ".join(alphabet.generators[b].name
                                for b in self.descriptor.v)
        else:
            rec["mu"] = " ".join(alphabet.generators[b].name
                                 for b in self.multiplier)
        if self.status == "nontrivial":
            rec["witness"] = str(self.witness)
        else:
            rec["certificate_length"] = len(self.certificate)
        return rec


class GsbReport:
    """Outcome of a bounded composition check; honest about the cap."""

    def __init__(self, relation_set, bound, records):
        self.relation_set = relation_set
        self.bound = bound
        self.records = tuple(records)

    @property
    def passed(self):
        return all(r.status == "trivial" for r in self.records)

    def failures(self):
        return [r for r in self.records if r.status == "nontrivial"]

    def summary(self):
        inc = sum(1 for r in self.records if r.kind == "inclusion")
        left = len(self.records) - inc
        fails = len(self.failures())
        verdict = "PASS" if fails == 0 else "FAIL (%d nontrivial)" % fails
        return ("gsb-check verified up to degree %d: %s "
                "(%d inclusion, %d left multiplication compositions)"
                % (self.bound, verdict, inc, left))

    def to_text(self):
        lines = [self.summary()]
        alphabet = self.relation_set.alphabet
        for r in self.failures():
            if r.kind == "inclusion":
                lines.append(
                    "  nontrivial inclusion (f=%d, g=%d, u=[%s], v=[%s]): "
                    "remainder %s"
                    % (r.f_index, r.g_index,
                       " ".join(alphabet.generators[b].name
                                for b in r.descriptor.u),
                       " ".join(alphabet.generators[b].name
                                for b in r.descriptor.v),
                       r.witness))
            else:
                lines.append(
                    "  nontrivial left multiplication (mu=%s, f=%d): "
                    "remainder %s"
                    % (format_word(r.multiplier, alphabet), r.f_index,
                       r.witness))
        return "\n".join(lines)

    def to_records(self):
        alphabet = self.relation_set.alphabet
        return [r.to_dict(alphabet) for r in self.records]


def _check_one_composition(S, task):
    kind = task[0]
    if kind == "inclusion":
        _, i, j, d, comp = task
        res = reduce_poly(comp, S)
        trivial = res.remainder.is_zero()
        return CompositionRecord("inclusion", i, j, d, None,
                                 "trivial" if trivial else "nontrivial",
                                 res.trace, None if trivial else res.remainder)
    _, mu, i, product = task
    res = reduce_poly(product, S)
    trivial = res.remainder.is_zero()
    return CompositionRecord("left-mult", i, None, None, mu,
                             "trivial" if trivial else "nontrivial",
                             res.trace, None if trivial else res.remainder)


def gsb_check(S, degree_bound, jobs=None):
    """Check all compositions within the degree cap; report with witnesses.

    Inclusion compositions with deg(f-bar) <= bound are checked for
    triviality mod (S, f-bar); left multiplication compositions (mu f) with
    deg(mu) + deg(f-bar) <= bound for triviality mod (S, that degree).  By
    the composition-diamond lemma a nonzero irreducible remainder certifies
    that S is not a Groebner-Shirshov basis; a clean pass is verification
    up to the cap only.
    """
    tasks = []
    for i, j, d, comp in inclusion_compositions(S, degree_bound):
        tasks.append(("inclusion", i, j, d, comp))
    for mu, i, product in left_mul_compositions(S, degree_bound):
        tasks.append(("left-mult", mu, i, product))
    if jobs is not None and jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(
                lambda t: _check_one_composition(S, t), tasks))
    else:
        records = [_check_one_composition(S, t) for t in tasks]
    records.sort(key=_record_sort_key)
    return GsbReport(S, degree_bound, records)


def _record_sort_key(record):
    if record.kind == "inclusion":
        return (0, record.f_index, record.g_index,
                len(record.descriptor.u), record.descriptor.u,
                record.descriptor.v)
    return (1, record.f_index, len(record.multiplier), record.multiplier)


class Provenance(NamedTuple):
    round: int
    kind: str
    detail: str


class CompletionResult(NamedTuple):
    relations: RelationSet
    added: tuple          # of (LbPoly, Provenance)
    rounds: int
    saturated: bool
    degree_cap: int


def complete(S, degree_cap, max_rounds=None):
    """Degree-capped saturation: adjoin reduced nontrivial compositions.

    Compositions within the cap are processed in ascending order of their
    leading monomial (ties by relation index and descriptor); each nonzero
    reduced remainder is monic-normalized and adjoined immediately, so
    later compositions in the same round already see it.  Rounds repeat
    until a full round adds nothing (saturated: every composition within
    the cap is trivial) or max_rounds is exhausted.
    """
    current = S
    added = []
    rounds = 0
    saturated = False
    key = S.alphabet.monomial_key
    while True:
        rounds += 1
        tasks = []
        for i, j, d, comp in inclusion_compositions(current, degree_cap):
            lead = comp.lead_word if comp else ()
            tasks.append(((key(lead), 0, i, j, d.u, d.v),
                          "inclusion", "f=%d g=%d u=%s v=%s" % (i, j, d.u, d.v),
                          comp))
        for mu, i, product in left_mul_compositions(current, degree_cap):
            lead = product.lead_word
            tasks.append(((key(lead), 1, i, mu, (), ()),
                          "left-mult", "mu=%s f=%d" % (mu, i), product))
        tasks.sort(key=lambda t: t[0])
        progress = False
        for _, kind, detail, comp in tasks:
            res = reduce_poly(comp, current)
            if res.remainder.is_zero():
                continue
            newrel = res.remainder.monic()
            current = current.with_relation(newrel)
            added.append((newrel, Provenance(rounds, kind, detail)))
            progress = True
        if not progress:
            saturated = True
            break
        if max_rounds is not None and rounds >= max_rounds:
            break
    return CompletionResult(current, tuple(added), rounds, saturated,
                            degree_cap)


def _word_reducible_by_leads(word, lead_words, unit_letters):
    for k in range(1, len(word) + 1):
        if word[:k] in lead_words:
            return True
    for t in range(1, len(word)):
        if word[t] in unit_letters:
            return True
    return False


def minimal_basis(S, degree_bound, jobs=None):
    """One relation per leading monomial, none reducible by the others.

    Requires S to pass gsb_check at the given bound (NotAGSBError
    otherwise).  Among relations sharing a leading monomial the first
    declared is kept.
    """
    report = gsb_check(S, degree_bound, jobs)
    if not report.passed:
        raise NotAGSBError(report)
    seen = set()
    stage0 = []
    for r in S.relations:
        if r.lead_word not in seen:
            seen.add(r.lead_word)
            stage0.append(r)
    kept = []
    for f in stage0:
        other_leads = set()
        other_units = set()
        for g in stage0:
            if g is f:
                continue
            other_leads.add(g.lead_word)
            if len(g.lead_word) == 1:
                other_units.add(g.lead_word[0])
        if not _word_reducible_by_leads(f.lead_word, other_leads,
                                        other_units):
            kept.append(f)
    return RelationSet(S.alphabet, S.field, kept)


def reduced_basis(S, degree_bound, jobs=None):
    """The unique reduced form: minimal, with every support irreducible.

    Each minimal relation is fully reduced against the others (its leading
    monomial is untouched by minimality), and the result is emitted sorted
    by ascending leading monomial, which makes the output canonical: it is
    invariant under reordering the input and under adjoining redundant
    ideal elements.
    """
    stage1 = minimal_basis(S, degree_bound, jobs)
    rels = list(stage1.relations)
    out = []
    for idx, s in enumerate(rels):
        others = RelationSet(S.alphabet, S.field,
                             rels[:idx] + rels[idx + 1:])
        res = reduce_poly(s, others)
        r = res.remainder
        if r.lead_word != s.lead_word:
            raise AssertionError("reduction disturbed a minimal leading word")
        out.append(r.monic())
    key = S.alphabet.monomial_key
    out.sort(key=lambda p: key(p.lead_word))
    return RelationSet(S.alphabet, S.field, out)


def validate_reduced(R):
    """Structural reducedness: distinct leads, supports mutually irreducible."""
    leads = R.lead_words()
    if len(set(leads)) != len(leads):
        raise ValueError("not reduced: duplicate leading monomials")
    for idx, s in enumerate(R.relations):
        other_leads = set()
        other_units = set()
        for jdx, g in enumerate(R.relations):
            if jdx == idx:
                continue
            other_leads.add(g.lead_word)
            if len(g.lead_word) == 1:
                other_units.add(g.lead_word[0])
        for w, _ in s.terms:
            if _word_reducible_by_leads(w, other_leads, other_units):
                raise ValueError(
                    "not reduced: support word %s of relation %d is "
                    "reducible by another relation"
                    % (format_word(w, R.alphabet), idx))


def eliminate_unit_leads(R):
    """Split off single-letter leading monomials, shrinking the alphabet.

    For a reduced R, every relation with a leading monomial of length one
    eliminates its leading letter; the remaining relations cannot mention
    the dropped letters (their supports avoid the others' leading words),
    so they present the same algebra over the smaller alphabet.  Returns
    (new_alphabet, new_relation_set).
    """
    validate_reduced(R)
    dropped = set()
    keep_rels = []
    for r in R.relations:
        if len(r.lead_word) == 1:
            dropped.add(r.lead_word[0])
        else:
            keep_rels.append(r)
    if not dropped:
        return R.alphabet, R
    keep_gens = [g for i, g in enumerate(R.alphabet.generators)
                 if i not in dropped]
    if not keep_gens:
        raise ValueError("elimination would empty the alphabet")
    from .terms import Alphabet

    new_alphabet = Alphabet(keep_gens)
    remap = {}
    j = 0
    for i in range(len(R.alphabet)):
        if i not in dropped:
            remap[i] = j
            j += 1
    new_rels = []
    for r in keep_rels:
        data = {}
        for w, c in r.terms:
            if any(b in dropped for b in w):
                raise ValueError(
                    "support of %s mentions an eliminated letter; input is "
                    "not a reduced Groebner-Shirshov basis" % (r,))
            data[tuple(remap[b] for b in w)] = c
        new_rels.append(LbPoly.from_dict(new_alphabet, R.field, data))
    return new_alphabet, RelationSet(new_alphabet, R.field, new_rels)


def express_normal(h, R):
    """The unique expression of h as a combination of normal R-polynomials.

    Requires R reduced with all leading monomials of length > 1 (and, for
    the uniqueness guarantee, a verified Groebner-Shirshov basis), and h in
    the ideal.  Returns the trace: (coefficient, descriptor) pairs with
    strictly decreasing realized leading monomials, the first equal to the
    leading monomial of h.
    """
    validate_reduced(R)
    if R.unit_lead_letters():
        raise ValueError(
            "express_normal needs leading monomials of length > 1; run "
            "eliminate_unit_leads first")
    res = reduce_poly(h, R)
    if not res.remainder.is_zero():
        raise ValueError(
            "polynomial is not in the ideal within the reduced span; "
            "irreducible remainder %s" % (res.remainder,))
    return res.trace


def quotient_dimension(S, degree, resource_cap=None):
    """Graded dimension of the quotient by brute-force row reduction.

    Spans the degree-graded piece of the ideal with every product
    (u s) v1 v2 ... : a left multiplication by one word followed by right
    multiplications by letters.  One left factor suffices: the span of
    these products is closed under multiplication by words on either side,
    so it is the whole ideal.  The dimension is the NF(X) word count minus
    the rank.  Needs degree-homogeneous relations; independent of any
    Groebner-Shirshov property, so it serves as an oracle.
    """
    cap = resource_cap
    if cap is None:
        cap = 8 if len(S.alphabet) <= 2 else 6
    if degree > cap:
        raise ResourceCapError(
            "degree %d exceeds the resource cap %d" % (degree, cap))
    deg = S.alphabet.word_degree
    for r in S.relations:
        if r.homogeneous_degree() is None:
            raise ValueError(
                "quotient_dimension needs degree-homogeneous relations; "
                "%s mixes degrees" % (r,))
    words = enumerate_words(S.alphabet, degree)
    if not words:
        return 0
    rows = []
    for s in S.relations:
        d = deg(s.lead_word)
        if d > degree:
            continue
        room = degree - d
        u_choices = [()]
        if room >= 1:
            u_choices.extend(enumerate_words_upto(S.alphabet, room))
        for u in u_choices:
            rest = room - deg(u)
            if rest < 0:
                continue
            base = (LbPoly.monomial(S.alphabet, S.field, u) * s if u
                    else s)
            if not base:
                continue
            v_choices = [()] if rest == 0 else enumerate_words(
                S.alphabet, rest)
            for v in v_choices:
                poly = base.append_letters(v)
                if poly:
                    rows.append(dict(poly.terms))
    key = S.alphabet.monomial_key
    rank = matrix_rank(rows, S.field, key=key, columns=sorted(
        words, key=key))
    return len(words) - rank
