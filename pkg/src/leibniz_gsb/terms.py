"""Alphabets, bracketed terms, star terms, left-normed monomials, and both orders.

Terms over an alphabet are nested 2-tuples: a leaf is an int (generator
index), a binary node is a pair (left, right), and the star placeholder is
None.  A monomial is the flat word (a1, ..., an) of generator indices,
denoting the left-normed bracketing ((...((a1 a2) a3)...) an).

Two orders live here.  term_order_prime is the recursive order on all
bracketed terms that compares (length, last factor, ..., first factor, head)
lexicographically along the left spine.  monomial_key realizes the
deg-length-lex order on left-normed words: (degree, length, a1, ..., an).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")

STAR = None


class ParseError(ValueError):
    """Syntax or lookup error in term text, with a character position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.message = message
        self.position = position


class Generator(NamedTuple):
    name: str
    parity: int = 0
    degree: int = 1


class Alphabet:
    """Finite ordered alphabet; list position defines the well order on X."""

    __slots__ = ("generators", "parities", "degrees", "_index")

    def __init__(self, generators):
        gens = tuple(
            g if isinstance(g, Generator) else Generator(*g) for g in generators
        )
        if not gens:
            raise ValueError("alphabet must be nonempty")
        index = {}
        for i, g in enumerate(gens):
            if not IDENT_RE.fullmatch(g.name):
                raise ValueError("invalid generator name %r" % (g.name,))
            if g.name in index:
                raise ValueError("duplicate generator name %r" % (g.name,))
            if g.parity not in (0, 1):
                raise ValueError("parity of %r must be 0 or 1" % (g.name,))
            if not isinstance(g.degree, int) or g.degree < 1:
                raise ValueError("degree of %r must be a positive integer" % (g.name,))
            index[g.name] = i
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "parities", tuple(g.parity for g in gens))
        object.__setattr__(self, "degrees", tuple(g.degree for g in gens))
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    @classmethod
    def from_names(cls, names, parities=None, degrees=None):
        n = len(names)
        parities = parities or (0,) * n
        degrees = degrees or (1,) * n
        return cls(
            Generator(names[i], parities[i], degrees[i]) for i in range(n)
        )

    @property
    def names(self):
        return tuple(g.name for g in self.generators)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown generator %r" % (name,)) from None

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "Alphabet(%s)" % (", ".join(
            "%s|%d|%d" % (g.name, g.parity, g.degree) for g in self.generators
        ))

    def word_degree(self, word):
        degs = self.degrees
        return sum(degs[i] for i in word)

    def word_parity(self, word):
        pars = self.parities
        total = 0
        for i in word:
            total ^= pars[i]
        return total

    def word_parities(self, word):
        pars = self.parities
        return tuple(pars[i] for i in word)

    def monomial_key(self, word):
        """deg-length-lex sort key of the left-normed word."""
        return (self.word_degree(word), len(word)) + tuple(word)


def is_leaf(term):
    return not isinstance(term, tuple)


def term_leaves(term):
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, tuple):
            stack.append(t[1])
            stack.append(t[0])
        else:
            yield t


@lru_cache(maxsize=None)
def term_length(term):
    if not isinstance(term, tuple):
        return 1
    return term_length(term[0]) + term_length(term[1])


def term_degree(term, alphabet):
    total = 0
    for leaf in term_leaves(term):
        if leaf is STAR:
            raise ValueError("degree of a star term is undefined")
        total += alphabet.degrees[leaf]
    return total


def term_parity(term, alphabet):
    total = 0
    for leaf in term_leaves(term):
        if leaf is STAR:
            raise ValueError("parity of a star term is undefined")
        total ^= alphabet.parities[leaf]
    return total


def star_count(term):
    return sum(1 for leaf in term_leaves(term) if leaf is STAR)


def left_normed(seq):
    """Left-normed bracketing of a nonempty sequence of terms."""
    seq = list(seq)
    if not seq:
        raise ValueError("left_normed of empty sequence")
    t = seq[0]
    for x in seq[1:]:
        t = (t, x)
    return t


def term_from_word(word):
    return left_normed(word)


def flatten_word(term):
    """The generator word if term is a left-normed word of leaves, else None."""
    letters = []
    t = term
    while isinstance(t, tuple):
        if not is_leaf(t[1]) or t[1] is STAR:
            return None
        letters.append(t[1])
        t = t[0]
    if t is STAR:
        return None
    letters.append(t)
    letters.reverse()
    return tuple(letters)


def spine(term):
    """Decompose mu = ((...((a mu1) mu2)...) mun) into (head a, [mun, ..., mu1]).

    The factor list is collected outermost-first, which is the comparison
    order of the term order.
    """
    factors = []
    t = term
    while isinstance(t, tuple):
        factors.append(t[1])
        t = t[0]
    return t, factors


@lru_cache(maxsize=None)
def tree_key(term):
    """Flat integer tuple whose lexicographic order realizes the term order.

    key(leaf a) = (1, a); key(mu) = (length(mu),) + key(mun) + ... + key(mu1)
    + key(a) along the left spine.  For terms of equal length the component
    tuples can never be proper prefixes of one another (the leaf head forces
    a strict difference first), so flat concatenation is order-faithful.
    """
    if term is STAR:
        raise ValueError("star terms are not ordered")
    if not isinstance(term, tuple):
        return (1, term)
    key = [term_length(term)]
    t = term
    while isinstance(t, tuple):
        key.extend(tree_key(t[1]))
        t = t[0]
    key.extend(tree_key(t))
    return tuple(key)


def term_order_prime(mu, nu):
    """-1, 0, or 1 as mu is below, equal to, or above nu in the term order."""
    a, b = tree_key(mu), tree_key(nu)
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def monomial_compare(mu, nu, alphabet):
    """-1, 0, or 1 comparing left-normed words in deg-length-lex."""
    a, b = alphabet.monomial_key(mu), alphabet.monomial_key(nu)
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def substitute_star(pattern, replacement):
    """Replace the star leaf of a star term by a term."""
    if pattern is STAR:
        return replacement
    if not isinstance(pattern, tuple):
        return pattern
    return (substitute_star(pattern[0], replacement),
            substitute_star(pattern[1], replacement))


# ---------------------------------------------------------------------------
# Text syntax.
#
# term      := name | '*' | '(' term term ')' | '[' term+ ']'
# poly      := ['-'] summand (('+'|'-') summand)*
# summand   := coefficient '*' term | term | '0'
# coefficient := integer or integer/integer
#
# '[t1 t2 ... tn]' is sugar for the left-normed bracketing.

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<lparen>\()|(?P<rparen>\))|(?P<lbrack>\[)|(?P<rbrack>\])"
    r"|(?P<plus>\+)|(?P<minus>-)|(?P<star>[*⋆]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError("unexpected character %r" % rest[0],
                             len(text) - len(rest))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", self.length)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %s, found %r" % (what, tok[1] or "end of input"),
                             tok[2])
        return tok


def _parse_atom(stream, alphabet, allow_star):
    kind, value, pos = stream.next()
    if kind == "name":
        try:
            return alphabet.index(value)
        except KeyError:
            raise ParseError("unknown generator %r" % value, pos) from None
    if kind == "star":
        if not allow_star:
            raise ParseError("star placeholder not allowed here", pos)
        return STAR
    if kind == "lparen":
        left = _parse_atom(stream, alphabet, allow_star)
        right = _parse_atom(stream, alphabet, allow_star)
        stream.expect("rparen", "')'")
        return (left, right)
    if kind == "lbrack":
        parts = [_parse_atom(stream, alphabet, allow_star)]
        while stream.peek()[0] not in ("rbrack", "end"):
            parts.append(_parse_atom(stream, alphabet, allow_star))
        stream.expect("rbrack", "']'")
        return left_normed(parts)
    raise ParseError("expected a term, found %r" % (value or "end of input"), pos)


def parse_term(text, alphabet, allow_star=False):
    """Parse a single bracketed term; '[a b c]' means the left-normed word."""
    stream = _TokenStream(_tokenize(text), len(text))
    term = _parse_atom(stream, alphabet, allow_star)
    tok = stream.peek()
    if tok[0] != "end":
        raise ParseError("trailing input %r" % tok[1], tok[2])
    return term


def parse_linear_combination(text, alphabet, allow_star=False):
    """Parse 'c1*t1 +- c2*t2 +- ...' into a list of (Fraction, term) pairs.

    A bare '0' summand is accepted and contributes nothing.  Coefficients
    are nonnegative literals; signs come from the +- separators.
    """
    stream = _TokenStream(_tokenize(text), len(text))
    pairs = []
    sign = 1
    if stream.peek()[0] == "minus":
        stream.next()
        sign = -1
    elif stream.peek()[0] == "plus":
        stream.next()
    while True:
        kind, value, pos = stream.peek()
        if kind == "number":
            stream.next()
            coeff = Fraction(value)
            if stream.peek()[0] == "star":
                stream.next()
                term = _parse_atom(stream, alphabet, allow_star)
                pairs.append((sign * coeff, term))
            elif coeff == 0:
                pass
            else:
                raise ParseError("bare scalar %r (only 0 is allowed)" % value, pos)
        else:
            term = _parse_atom(stream, alphabet, allow_star)
            pairs.append((Fraction(sign), term))
        kind, value, pos = stream.next()
        if kind == "end":
            return pairs
        if kind == "plus":
            sign = 1
        elif kind == "minus":
            sign = -1
        else:
            raise ParseError("expected '+', '-', or end, found %r" % value, pos)


def format_term(term, alphabet):
    """Render a term; left-normed words of leaves use the bracket sugar."""
    if term is STAR:
        return "*"
    if not isinstance(term, tuple):
        return alphabet.generators[term].name
    word = flatten_word(term)
    if word is not None:
        return "[%s]" % " ".join(alphabet.generators[i].name for i in word)
    return "(%s %s)" % (format_term(term[0], alphabet),
                        format_term(term[1], alphabet))


def format_word(word, alphabet):
    """Render a monomial word with brackets, e.g. [x y x]."""
    return "[%s]" % " ".join(alphabet.generators[i].name for i in word)


def format_combination(items):
    """Render a list of (coefficient, term_text) with signs folded in.

    Coefficients are Fractions or ints; prime-field residues arrive as
    plain nonnegative ints.  Returns '0' for an empty list.
    """
    if not items:
        return "0"
    chunks = []
    for coeff, text in items:
        negative = coeff < 0
        mag = -coeff if negative else coeff
        body = text if mag == 1 else "%s*%s" % (mag, text)
        if not chunks:
            chunks.append("-" + body if negative else body)
        else:
            chunks.append(("- " if negative else "+ ") + body)
    return " ".join(chunks)
