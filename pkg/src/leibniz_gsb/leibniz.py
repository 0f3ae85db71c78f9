"""Arithmetic of the free Leibniz superalgebra on the left-normed word basis.

Elements are polynomials over NF(X), the left-normed words, ordered by
deg-length-lex.  The product of two basis words is computed through the
superidentity expansion table of the right factor (see _kernel_py); the
structure constants are integers, so one expansion serves every coefficient
field by reduction.

Conventions for the zero polynomial: its leading data is None, its degree
and length are 0, and it sorts below every monomial.
"""

from __future__ import annotations

from functools import lru_cache

from . import _kernel
from .scalars import FieldElement, FieldMismatchError
from .terms import format_word, format_combination, tree_key, term_order_prime

# A monomial is a plain tuple of generator indices: the left-normed word.
Monomial = tuple


@lru_cache(maxsize=None)
def _tail_table(word, parities):
    return _kernel.expand_tail(word, parities)


def tail_table(word, parities):
    """Signed permutation table of a right factor word (memoized kernel)."""
    return _tail_table(tuple(word), tuple(parities))


def lb_product_words(mu, nu, alphabet):
    """Integer-coefficient expansion of [mu]*[nu] as {word: coefficient}.

    Every word in the result is mu followed by a permutation of nu, so
    degree and length are additive.
    """
    out = {}
    for sigma, c in tail_table(nu, alphabet.word_parities(nu)):
        out[mu + sigma] = c
    return out


def _scale_residue(coeff, k, char):
    v = coeff.value * k
    return FieldElement(coeff.field, v % char if char else v)


class LbPoly:
    """Polynomial over NF(X): sorted (word, coefficient) pairs, leading first."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet, field, terms):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("LbPoly is immutable")

    @classmethod
    def from_dict(cls, alphabet, field, data):
        key = alphabet.monomial_key
        terms = tuple(
            (w, c) for w, c in sorted(data.items(), key=lambda wc: key(wc[0]),
                                      reverse=True) if c
        )
        return cls(alphabet, field, terms)

    @classmethod
    def zero(cls, alphabet, field):
        return cls(alphabet, field, ())

    @classmethod
    def monomial(cls, alphabet, field, word, coeff=None):
        word = tuple(word)
        if not word:
            raise ValueError("monomial words are nonempty")
        c = field.one if coeff is None else field(coeff)
        if not c:
            return cls.zero(alphabet, field)
        return cls(alphabet, field, ((word, c),))

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("mixed alphabets")
        if self.field != other.field:
            raise FieldMismatchError("mixed coefficient fields")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, LbPoly) and self.alphabet == other.alphabet
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.field, self.terms))

    def leading(self):
        """(word, coefficient) of the leading monomial, or None for zero."""
        return self.terms[0] if self.terms else None

    @property
    def lead_word(self):
        return self.terms[0][0] if self.terms else None

    @property
    def lc(self):
        return self.terms[0][1] if self.terms else None

    def support(self):
        return tuple(w for w, _ in self.terms)

    def coefficient(self, word):
        for w, c in self.terms:
            if w == word:
                return c
        return self.field.zero

    def as_dict(self):
        return dict(self.terms)

    def max_degree(self):
        deg = self.alphabet.word_degree
        return max((deg(w) for w, _ in self.terms), default=0)

    def homogeneous_parity(self):
        """Common parity of the support, or None if parities are mixed."""
        if not self.terms:
            return 0
        par = self.alphabet.word_parity
        first = par(self.terms[0][0])
        for w, _ in self.terms[1:]:
            if par(w) != first:
                return None
        return first

    def homogeneous_degree(self):
        """Common degree of the support, or None if degrees are mixed."""
        if not self.terms:
            return 0
        deg = self.alphabet.word_degree
        first = deg(self.terms[0][0])
        for w, _ in self.terms[1:]:
            if deg(w) != first:
                return None
        return first

    def __add__(self, other):
        self._check(other)
        data = dict(self.terms)
        for w, c in other.terms:
            v = data.get(w)
            v = c if v is None else v + c
            if v:
                data[w] = v
            else:
                data.pop(w, None)
        return LbPoly.from_dict(self.alphabet, self.field, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LbPoly(self.alphabet, self.field,
                      tuple((w, -c) for w, c in self.terms))

    def scaled(self, coeff):
        c = self.field(coeff)
        if not c:
            return LbPoly.zero(self.alphabet, self.field)
        return LbPoly(self.alphabet, self.field,
                      tuple((w, cw * c) for w, cw in self.terms))

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == self.field.one:
            return self
        return self.scaled(lc.inverse())

    def __mul__(self, other):
        """Bilinear extension of the superalgebra product of basis words."""
        self._check(other)
        alphabet = self.alphabet
        char = self.field.char
        data = {}
        for u, cu in self.terms:
            for w, cw in other.terms:
                c = cu * cw
                if not c:
                    continue
                for word, k in lb_product_words(u, w, alphabet).items():
                    v = data.get(word)
                    inc = _scale_residue(c, k, char)
                    v = inc if v is None else v + inc
                    if v:
                        data[word] = v
                    else:
                        data.pop(word, None)
        return LbPoly.from_dict(self.alphabet, self.field, data)

    def append_letters(self, letters):
        """Right-multiply by single generators in order: f -> [f a1 ... ak]_L.

        Right multiplication by a letter concatenates, so the term order
        and leading monomial position are preserved.
        """
        suffix = tuple(letters)
        if not suffix:
            return self
        return LbPoly(self.alphabet, self.field,
                      tuple((w + suffix, c) for w, c in self.terms))

    def __str__(self):
        items = []
        for w, c in self.terms:
            items.append((c.value, format_word(w, self.alphabet)))
        return format_combination(items)

    def __repr__(self):
        return "LbPoly(%s)" % self


def term_to_lbpoly(term, alphabet, field):
    """Normalize a bracketed term to the NF(X) basis."""
    if not isinstance(term, tuple):
        if term is None:
            raise ValueError("star terms cannot be normalized")
        return LbPoly.monomial(alphabet, field, (term,))
    left = term_to_lbpoly(term[0], alphabet, field)
    right = term_to_lbpoly(term[1], alphabet, field)
    return left * right


def lb_product(mu, nu, alphabet, field):
    """Product of two basis monomials as an LbPoly."""
    data = {}
    for word, k in lb_product_words(tuple(mu), tuple(nu), alphabet).items():
        c = field(k)
        if c:
            data[word] = c
    return LbPoly.from_dict(alphabet, field, data)


def monomial_key(word, alphabet):
    return alphabet.monomial_key(word)


def enumerate_words(alphabet, degree):
    """All NF(X) words of exactly the given degree, in deg-length-lex order."""
    degs = alphabet.degrees
    n = len(alphabet)
    out = []

    def extend(prefix, remaining):
        if remaining == 0:
            if prefix:
                out.append(tuple(prefix))
            return
        for i in range(n):
            if degs[i] <= remaining:
                prefix.append(i)
                extend(prefix, remaining - degs[i])
                prefix.pop()

    extend([], degree)
    out.sort(key=alphabet.monomial_key)
    return out


def enumerate_words_upto(alphabet, degree_bound):
    """All NF(X) words of degree <= bound, in deg-length-lex order."""
    out = []
    for d in range(1, degree_bound + 1):
        out.extend(enumerate_words(alphabet, d))
    return out
