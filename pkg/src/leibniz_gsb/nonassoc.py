"""The free non-associative superalgebra kX**: trees, compositions, checks.

Polynomials live on the basis of all binary trees over the alphabet,
ordered by the tree order (length first, then the left-spine factors from
the outside in, then the head letter).  Relations act through star terms:
a pattern with a single star leaf whose substitution instance mu_{*->s}
has leading term mu_{*->s-bar}, because the tree order is compatible with
multiplication on either side.

The module provides the inclusion-composition enumeration and a bounded
Groebner-Shirshov check for kX**, plus a brute-force graded dimension
oracle; the Leibniz relation family generator lives here as well so that
the left-normed basis of the quotient can be cross-checked from scratch.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import NamedTuple

from .linalg import ResourceCapError, matrix_rank
from .terms import (STAR, format_combination, format_term, substitute_star,
                    term_degree, term_length, term_parity, tree_key)


class NAPoly:
    """Polynomial over tree monomials: sorted pairs, leading term first."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet, field, terms):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("NAPoly is immutable")

    @classmethod
    def from_dict(cls, alphabet, field, data):
        terms = tuple(
            (t, c) for t, c in sorted(data.items(),
                                      key=lambda tc: tree_key(tc[0]),
                                      reverse=True) if c
        )
        return cls(alphabet, field, terms)

    @classmethod
    def zero(cls, alphabet, field):
        return cls(alphabet, field, ())

    @classmethod
    def monomial(cls, alphabet, field, term, coeff=None):
        c = field.one if coeff is None else field(coeff)
        if not c:
            return cls.zero(alphabet, field)
        return cls(alphabet, field, ((term, c),))

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("mixed alphabets")
        if self.field != other.field:
            raise ValueError("mixed coefficient fields")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, NAPoly) and self.alphabet == other.alphabet
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.field, self.terms))

    def leading(self):
        return self.terms[0] if self.terms else None

    @property
    def lead_term(self):
        return self.terms[0][0] if self.terms else None

    @property
    def lc(self):
        return self.terms[0][1] if self.terms else None

    def support(self):
        return tuple(t for t, _ in self.terms)

    def coefficient(self, term):
        for t, c in self.terms:
            if t == term:
                return c
        return self.field.zero

    def as_dict(self):
        return dict(self.terms)

    def max_length(self):
        return max((term_length(t) for t, _ in self.terms), default=0)

    def homogeneous_degree(self):
        """Common degree of the support, or None if degrees are mixed."""
        if not self.terms:
            return 0
        first = term_degree(self.terms[0][0], self.alphabet)
        for t, _ in self.terms[1:]:
            if term_degree(t, self.alphabet) != first:
                return None
        return first

    def __add__(self, other):
        self._check(other)
        data = dict(self.terms)
        for t, c in other.terms:
            v = data.get(t)
            v = c if v is None else v + c
            if v:
                data[t] = v
            else:
                data.pop(t, None)
        return NAPoly.from_dict(self.alphabet, self.field, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NAPoly(self.alphabet, self.field,
                      tuple((t, -c) for t, c in self.terms))

    def scaled(self, coeff):
        c = self.field(coeff)
        if not c:
            return NAPoly.zero(self.alphabet, self.field)
        return NAPoly(self.alphabet, self.field,
                      tuple((t, ct * c) for t, ct in self.terms))

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == self.field.one:
            return self
        return self.scaled(lc.inverse())

    def __mul__(self, other):
        return na_multiply(self, other)

    def __str__(self):
        items = []
        for t, c in self.terms:
            items.append((c.value, format_term(t, self.alphabet)))
        return format_combination(items)

    def __repr__(self):
        return "NAPoly(%s)" % self


def na_multiply(f, g):
    """Bilinear product; on monomials it just forms the tree (mu nu)."""
    f._check(g)
    data = {}
    for t1, c1 in f.terms:
        for t2, c2 in g.terms:
            c = c1 * c2
            if not c:
                continue
            t = (t1, t2)
            v = data.get(t)
            v = c if v is None else v + c
            if v:
                data[t] = v
            else:
                data.pop(t, None)
    return NAPoly.from_dict(f.alphabet, f.field, data)


def subterm_paths(term):
    """Preorder list of (path, subterm); paths are tuples of 0/1 steps."""
    out = []
    stack = [((), term)]
    while stack:
        path, t = stack.pop()
        out.append((path, t))
        if isinstance(t, tuple):
            stack.append((path + (1,), t[1]))
            stack.append((path + (0,), t[0]))
    out.sort(key=lambda item: item[0])
    return out


def subterm_at(term, path):
    for step in path:
        term = term[step]
    return term


def occurrences(hay, needle):
    """All paths at which the needle term occurs as a subterm."""
    return tuple(p for p, t in subterm_paths(hay) if t == needle)


def star_pattern_at(term, path):
    """The star term obtained by carving out the subterm at the path."""
    if not path:
        return STAR
    head, rest = path[0], path[1:]
    if head == 0:
        return (star_pattern_at(term[0], rest), term[1])
    return (term[0], star_pattern_at(term[1], rest))


def substitute_star_poly(pattern, poly):
    """mu_{*->f}: substitute each term of the polynomial into the pattern.

    Substitution into a fixed single-star pattern is injective on terms and
    order-preserving (the tree order is a monomial order), so the leading
    term of the result is the pattern applied to the leading term.
    """
    data = {}
    for t, c in poly.terms:
        data[substitute_star(pattern, t)] = c
    return NAPoly.from_dict(poly.alphabet, poly.field, data)


def _prepare_relations(S):
    rels = []
    alphabet = None
    field = None
    for r in S:
        if alphabet is None:
            alphabet, field = r.alphabet, r.field
        elif r.alphabet != alphabet or r.field != field:
            raise ValueError("relations over mixed alphabets or fields")
        if r.is_zero():
            raise ValueError("zero relation")
        rels.append(r.monic())
    return rels


def _lead_index(rels):
    index = {}
    for i, r in enumerate(rels):
        index.setdefault(tree_key(r.lead_term), []).append(i)
    return index


def _poly_support_key(poly):
    return tuple(tree_key(t) for t, _ in poly.terms)


def _reduce_prepared(f, rels, index):
    data = dict(f.terms)
    while data:
        lead = max(data, key=tree_key)
        candidates = []
        for path, sub in subterm_paths(lead):
            for i in index.get(tree_key(sub), ()):
                candidates.append((i, path))
        if not candidates:
            break
        realized = {}
        for i, path in candidates:
            pattern = star_pattern_at(lead, path)
            realized[(i, path)] = (pattern,
                                   substitute_star_poly(pattern, rels[i]))
        best_key = max(_poly_support_key(p) for _, p in realized.values())
        pool = [c for c in candidates
                if _poly_support_key(realized[c][1]) == best_key]
        pool.sort(key=lambda c: (term_length(realized[c][0]), c[0], c[1]))
        choice = pool[0]
        h = realized[choice][1]
        coeff = data[lead]
        for t, c in h.terms:
            cur = data.get(t)
            dec = coeff * c
            cur = -dec if cur is None else cur - dec
            if cur:
                data[t] = cur
            else:
                data.pop(t, None)
    return NAPoly.from_dict(f.alphabet, f.field, data)


def na_reduce(f, S):
    """Head reduction of f modulo S until the leading term is irreducible.

    At each step the leading term is cancelled by the substitution instance
    mu_{*->s} whose polynomial is largest in the term order, ties broken by
    smallest star-term size, then lowest relation index, then smallest
    path.  Each step strictly lowers the leading term, and substitution
    never raises lengths, so the loop terminates.
    """
    rels = _prepare_relations(S)
    if not rels:
        return f
    return _reduce_prepared(f, rels, _lead_index(rels))


class NAComposition(NamedTuple):
    f_index: int
    g_index: int
    star_term: object
    composition: object

    def path(self):
        stars = [p for p, t in subterm_paths(self.star_term) if t is STAR]
        return stars[0]


def na_inclusion_compositions(S):
    """All inclusion compositions f - mu_{*->g} over ordered pairs.

    A composition arises whenever g's leading term occurs as a subterm of
    f's leading term; for f = g only the occurrence at the root is skipped
    (it gives the zero composition).
    """
    rels = _prepare_relations(S)
    index = _lead_index(rels)
    out = []
    for i, f in enumerate(rels):
        for path, sub in subterm_paths(f.lead_term):
            for j in index.get(tree_key(sub), ()):
                if j == i and not path:
                    continue
                pattern = star_pattern_at(f.lead_term, path)
                comp = f - substitute_star_poly(pattern, rels[j])
                out.append(NAComposition(i, j, pattern, comp))
    return out


class NACompositionRecord(NamedTuple):
    f_index: int
    g_index: int
    star_term: object
    overlap: object       # the leading term of f, where the overlap sits
    status: str
    remainder: object

    def to_dict(self, alphabet):
        rec = {
            "kind": "inclusion",
            "f": self.f_index,
            "g": self.g_index,
            "star_term": format_term(self.star_term, alphabet),
            "status": self.status,
        }
        if self.status == "nontrivial":
            rec["witness"] = format_term(self.overlap, alphabet)
            rec["remainder"] = str(self.remainder)
        return rec


class NAGsbReport:
    def __init__(self, relations, bound, records):
        self.relations = tuple(relations)
        self.bound = bound
        self.records = tuple(records)

    @property
    def passed(self):
        return all(r.status == "trivial" for r in self.records)

    def failures(self):
        return [r for r in self.records if r.status == "nontrivial"]

    def summary(self):
        fails = len(self.failures())
        verdict = "PASS" if fails == 0 else "FAIL (%d nontrivial)" % fails
        return ("na-gsb-check verified up to length %d: %s "
                "(%d inclusion compositions)"
                % (self.bound, verdict, len(self.records)))

    def to_text(self):
        lines = [self.summary()]
        if self.relations:
            alphabet = self.relations[0].alphabet
            for r in self.failures():
                lines.append(
                    "  nontrivial inclusion (f=%d, g=%d) at %s: remainder %s"
                    % (r.f_index, r.g_index,
                       format_term(r.overlap, alphabet), r.remainder))
        return "\n".join(lines)

    def to_records(self):
        if not self.relations:
            return []
        alphabet = self.relations[0].alphabet
        return [r.to_dict(alphabet) for r in self.records]


def na_gsb_check(S, length_bound, jobs=None):
    """Check inclusion compositions whose overlap has length <= the bound.

    Each composition is head-reduced modulo S; a nonzero irreducible
    remainder is a witness that S is not a Groebner-Shirshov basis in
    kX**.  A pass is verification up to the length bound only.
    """
    rels = _prepare_relations(S)
    index = _lead_index(rels)
    comps = [c for c in na_inclusion_compositions(rels)
             if term_length(rels[c.f_index].lead_term) <= length_bound]

    def check(comp):
        remainder = _reduce_prepared(comp.composition, rels, index)
        trivial = remainder.is_zero()
        return NACompositionRecord(
            comp.f_index, comp.g_index, comp.star_term,
            rels[comp.f_index].lead_term,
            "trivial" if trivial else "nontrivial",
            None if trivial else remainder)

    if jobs is not None and jobs > 1 and len(comps) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(check, comps))
    else:
        records = [check(c) for c in comps]
    records.sort(key=lambda r: (r.f_index, r.g_index,
                                _star_shape_key(r.star_term)))
    return NAGsbReport(rels, length_bound, records)


def _star_shape_key(term):
    if term is STAR:
        return (0, -1)
    if not isinstance(term, tuple):
        return (0, term)
    return (1, _star_shape_key(term[0]), _star_shape_key(term[1]))


@lru_cache(maxsize=None)
def enumerate_terms(alphabet, degree):
    """All tree monomials of the exact degree, sorted by the term order."""
    out = [i for i in range(len(alphabet))
           if alphabet.degrees[i] == degree]
    for d1 in range(1, degree):
        for left in enumerate_terms(alphabet, d1):
            for right in enumerate_terms(alphabet, degree - d1):
                out.append((left, right))
    out.sort(key=tree_key)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_terms_by_length(alphabet, length):
    """All tree monomials with the exact number of leaves."""
    if length == 1:
        return tuple(range(len(alphabet)))
    out = []
    for l1 in range(1, length):
        for left in enumerate_terms_by_length(alphabet, l1):
            for right in enumerate_terms_by_length(alphabet, length - l1):
                out.append((left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_star_terms(alphabet, degree):
    """Single-star patterns whose generator leaves sum to the given degree."""
    if degree == 0:
        base = [STAR]
    else:
        base = []
    out = list(base)
    for d1 in range(0, degree + 1):
        d2 = degree - d1
        if d2 >= 1:
            for star_part in enumerate_star_terms(alphabet, d1):
                for plain in enumerate_terms(alphabet, d2):
                    out.append((star_part, plain))
                    out.append((plain, star_part))
    out.sort(key=_star_shape_key)
    return tuple(out)


def na_quotient_dimension(S, degree, resource_cap=None, alphabet=None):
    """Graded dimension of kX**/Id(S) by brute-force row reduction.

    The degree component of the ideal is spanned by all substitution
    instances mu_{*->s}; the dimension is the tree count minus the rank.
    Needs degree-homogeneous relations.  Independent of any
    Groebner-Shirshov property, so it serves as an oracle.  An empty S
    needs an explicit alphabet and yields the free dimension.
    """
    rels = _prepare_relations(S)
    if not rels:
        if alphabet is None:
            raise ValueError("an empty relation set needs an alphabet")
        return len(enumerate_terms(alphabet, degree))
    alphabet = rels[0].alphabet
    field = rels[0].field
    cap = resource_cap
    if cap is None:
        cap = 6 if len(alphabet) <= 3 else 5
    if degree > cap:
        raise ResourceCapError(
            "degree %d exceeds the resource cap %d" % (degree, cap))
    for r in rels:
        if r.homogeneous_degree() is None:
            raise ValueError(
                "na_quotient_dimension needs degree-homogeneous relations")
    columns = enumerate_terms(alphabet, degree)
    if not columns:
        return 0
    rows = []
    for r in rels:
        d = r.homogeneous_degree()
        if d > degree:
            continue
        for pattern in enumerate_star_terms(alphabet, degree - d):
            poly = substitute_star_poly(pattern, r)
            if poly:
                rows.append(dict(poly.terms))
    rank = matrix_rank(rows, field, key=tree_key, columns=list(columns))
    return len(columns) - rank


def free_na_dimension(alphabet, degree):
    """Dimension of the degree component of the free algebra kX**."""
    return len(enumerate_terms(alphabet, degree))


def leibniz_family(alphabet, field, total_length_bound):
    """The Leibniz relation family, truncated by total leaf count.

    One relation (mu(nu tau)) - ((mu nu)tau) + (-1)^{|nu||tau|}((mu tau)nu)
    for every triple of tree monomials with combined length at most the
    bound; duplicates are emitted once.  Every relation is monic with
    leading term (mu(nu tau)), because the rightmost spine factor of that
    term is the longest.
    """
    if total_length_bound < 3:
        return []
    seen = set()
    out = []
    for lm in range(1, total_length_bound - 1):
        for ln in range(1, total_length_bound - lm):
            for lt in range(1, total_length_bound - lm - ln + 1):
                for mu in enumerate_terms_by_length(alphabet, lm):
                    for nu in enumerate_terms_by_length(alphabet, ln):
                        for tau in enumerate_terms_by_length(alphabet, lt):
                            sign = -1 if (term_parity(nu, alphabet)
                                          and term_parity(tau, alphabet)) \
                                else 1
                            data = {}
                            for t, k in (((mu, (nu, tau)), 1),
                                         (((mu, nu), tau), -1),
                                         (((mu, tau), nu), sign)):
                                c = field(k)
                                v = data.get(t)
                                v = c if v is None else v + c
                                if v:
                                    data[t] = v
                                else:
                                    data.pop(t, None)
                            poly = NAPoly.from_dict(alphabet, field, data)
                            if poly and poly not in seen:
                                seen.add(poly)
                                out.append(poly)
    out.sort(key=_poly_support_key)
    return out
