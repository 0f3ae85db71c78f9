"""Generators for the metabelian relation families, truncated by degree.

A metabelian quotient imposes that products of two length->=2 monomials
vanish.  The T families state exactly that; the S families are the
equivalent rewriting-friendly forms whose leading monomials are plain
words: tail transpositions [c1..cp a1 a2] - (-1)^{|a1||a2|}[c1..cp a2 a1],
tail squares [c1..cp a a] for odd a, and, in the Lie case, antisymmetry
and the degree-3 Jacobi consequences.  Closed-form predicates for the
resulting Irr bases are provided so enumerated Irr sets can be checked
against them independently.

All preset alphabets must have unit degrees; the Lie families additionally
require a purely even alphabet.
"""

from __future__ import annotations

from typing import NamedTuple

from .gsb import RelationSet
from .leibniz import LbPoly, enumerate_words_upto

FAMILIES = (
    "metabelian-leibniz-T",
    "metabelian-leibniz-S",
    "metabelian-leibniz-S1",
    "metabelian-leibniz-Sprime",
    "metabelian-lie-T",
    "metabelian-lie-S",
    "free-leibniz-check",
)

PREDICATE_FAMILIES = ("metabelian-leibniz", "metabelian-lie")


class PresetSpec(NamedTuple):
    family: str
    alphabet: object
    field: object
    degree_bound: int


def default_bound(alphabet):
    """Degree bound giving second-scale runtimes: 7 below 3 letters, else 6."""
    return 7 if len(alphabet) <= 2 else 6


def _require_unit_degrees(alphabet):
    if any(d != 1 for d in alphabet.degrees):
        raise ValueError("presets require all generators to have degree 1")


def _require_even(alphabet):
    if any(p for p in alphabet.parities):
        raise ValueError("the Lie families require a purely even alphabet")


def _collect(polys):
    """Monic-normalize, drop zeros, and deduplicate preserving order."""
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        p = p.monic()
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _long_words(alphabet, max_degree):
    return [w for w in enumerate_words_upto(alphabet, max_degree)
            if len(w) >= 2]


def _leibniz_T(alphabet, field, bound):
    out = []
    for c in _long_words(alphabet, bound - 2):
        mono_c = LbPoly.monomial(alphabet, field, c)
        for d in _long_words(alphabet, bound - alphabet.word_degree(c)):
            out.append(mono_c * LbPoly.monomial(alphabet, field, d))
    return out


def _tail_transposition(alphabet, field, w, a1, a2, signed):
    sign = -1
    if signed and alphabet.parities[a1] and alphabet.parities[a2]:
        sign = 1
    data = {}
    for word, k in ((w + (a1, a2), 1), (w + (a2, a1), sign)):
        c = field(k)
        v = data.get(word)
        v = c if v is None else v + c
        if v:
            data[word] = v
        else:
            data.pop(word, None)
    return LbPoly.from_dict(alphabet, field, data)


def _leibniz_S(alphabet, field, bound):
    out = []
    n = len(alphabet)
    for w in _long_words(alphabet, bound - 2):
        for a1 in range(n):
            for a2 in range(n):
                out.append(_tail_transposition(alphabet, field, w, a1, a2,
                                               signed=True))
    return out


def _leibniz_S1(alphabet, field, bound):
    out = []
    n = len(alphabet)
    for w in _long_words(alphabet, bound - 2):
        for a1 in range(n):
            for a2 in range(a1):
                out.append(_tail_transposition(alphabet, field, w, a1, a2,
                                               signed=True))
    return out


def _leibniz_S2(alphabet, field, bound):
    out = []
    for w in _long_words(alphabet, bound - 2):
        for a in range(len(alphabet)):
            if alphabet.parities[a]:
                out.append(LbPoly.monomial(alphabet, field, w + (a, a)))
    return out


def _leibniz_Sprime(alphabet, field, bound):
    return (_leibniz_S1(alphabet, field, bound)
            + _leibniz_S2(alphabet, field, bound))


def _lie_T(alphabet, field, bound):
    out = []
    words = enumerate_words_upto(alphabet, bound - 1)
    deg = alphabet.word_degree
    for mu in words:
        if len(mu) >= 2 and deg(mu) <= bound - 2:
            mono = LbPoly.monomial(alphabet, field, mu)
            for nu in _long_words(alphabet, bound - deg(mu)):
                out.append(mono * LbPoly.monomial(alphabet, field, nu))
    for mu in words:
        mono = LbPoly.monomial(alphabet, field, mu)
        for nu in words:
            if deg(mu) + deg(nu) > bound:
                continue
            mono_nu = LbPoly.monomial(alphabet, field, nu)
            out.append(mono * mono_nu + mono_nu * mono)
    for mu in words:
        if 2 * deg(mu) <= bound:
            mono = LbPoly.monomial(alphabet, field, mu)
            out.append(mono * mono)
    return out


def _lie_S(alphabet, field, bound):
    out = []
    n = len(alphabet)
    for w in _long_words(alphabet, bound - 2):
        for a1 in range(n):
            for a2 in range(a1):
                out.append(_tail_transposition(alphabet, field, w, a1, a2,
                                               signed=False))
    if bound >= 3:
        for a in range(n):
            for b in range(a):
                for c in range(b):
                    data = {
                        (b, a, c): field.one,
                        (c, a, b): -field.one,
                        (c, b, a): field.one,
                    }
                    out.append(LbPoly.from_dict(alphabet, field, data))
    for a1 in range(n):
        for a2 in range(a1):
            data = {(a1, a2): field.one, (a2, a1): field.one}
            out.append(LbPoly.from_dict(alphabet, field, data))
    for d in range(n):
        out.append(LbPoly.monomial(alphabet, field, (d, d)))
    return out


_BUILDERS = {
    "metabelian-leibniz-T": _leibniz_T,
    "metabelian-leibniz-S": _leibniz_S,
    "metabelian-leibniz-S1": _leibniz_S1,
    "metabelian-leibniz-Sprime": _leibniz_Sprime,
    "metabelian-lie-T": _lie_T,
    "metabelian-lie-S": _lie_S,
}


def generate_preset(spec):
    """All family members with leading degree within the bound, deduplicated.

    Members that vanish over the coefficient field (even tail squares, or
    the S pair collisions in characteristic 2) are dropped; the survivors
    are monic.  The S2 tail squares are emitted in every characteristic,
    including 2 where they are redundant consequences.
    """
    family = spec.family
    if family not in FAMILIES:
        raise ValueError("unknown preset family %r" % (family,))
    _require_unit_degrees(spec.alphabet)
    if family == "free-leibniz-check":
        return RelationSet(spec.alphabet, spec.field, ())
    if spec.degree_bound < 4:
        raise ValueError("metabelian families need a degree bound of at "
                         "least 4")
    if family.startswith("metabelian-lie"):
        _require_even(spec.alphabet)
    polys = _BUILDERS[family](spec.alphabet, spec.field, spec.degree_bound)
    return RelationSet(spec.alphabet, spec.field, _collect(polys))


def basis_predicate(family, word, alphabet, characteristic=0):
    """Closed-form membership test for the metabelian quotient bases.

    "metabelian-leibniz": tail sorted, a3 <= a4 <= ... <= an; outside
    characteristic 2 additionally no repeated odd letter from position 3
    on.  "metabelian-lie": single letters, or a1 < a2 with
    a1 <= a3 <= ... <= an.  The word is given by generator indices, whose
    order is the alphabet order.
    """
    if family not in PREDICATE_FAMILIES:
        raise ValueError("unknown basis predicate family %r" % (family,))
    word = tuple(word)
    if family == "metabelian-lie":
        _require_even(alphabet)
        if len(word) <= 1:
            return True
        if not word[0] < word[1]:
            return False
        chain = (word[0],) + word[2:]
        return all(chain[i] <= chain[i + 1] for i in range(len(chain) - 1))
    tail = word[2:]
    if any(tail[i] > tail[i + 1] for i in range(len(tail) - 1)):
        return False
    if characteristic != 2:
        for i in range(len(tail) - 1):
            if tail[i] == tail[i + 1] and alphabet.parities[tail[i]]:
                return False
    return True
