"""Text formats for presentations, algebra tables, actions, factor sets.

All formats share one shape: `#` starts a comment, blank lines are
ignored, `[section]` headers group the content.  A presentation file has
an `[alphabet]` section (one generator per line: name, optional parity,
optional degree) and a `[relations]` section (one polynomial per line).
Structure-constant files list a `[basis]` (name, optional parity) and
`[products]` as `a b -> combination` lines; actions and factor sets use
the same arrow syntax with the name universes supplied by the caller.

Parsing is strict: unknown sections, duplicate entries, and unknown names
raise ParseError with a line number, so the command line can report
malformed input distinctly from failed checks.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .leibniz import LbPoly, term_to_lbpoly
from .nonassoc import NAPoly
from .terms import Alphabet, Generator, ParseError, parse_linear_combination

_SECTION_RE = re.compile(r"^\[([a-z-]+)\]$")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_PIECE_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*")


def _logical_lines(text):
    """(line_number, content) pairs with comments and blanks removed."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def split_sections(text, allowed):
    """Map section name -> list of (line_number, line); strict on headers.

    Only the allowed section names act as headers; other bracketed lines
    inside a section are ordinary content (a lone unit relation such as
    `[x]` must round trip).  At the top level a bracketed line is still
    reported as an unknown section, which catches misspelled headers.
    """
    sections = {}
    current = None
    for lineno, line in _logical_lines(text):
        m = _SECTION_RE.match(line)
        if m and m.group(1) in allowed:
            name = m.group(1)
            if name in sections:
                raise ParseError("duplicate section [%s]" % name, lineno)
            current = sections.setdefault(name, [])
            continue
        if current is None:
            if m:
                raise ParseError("unknown section [%s]" % m.group(1), lineno)
            raise ParseError("content before any section header", lineno)
        current.append((lineno, line))
    return sections


def _parse_alphabet(lines):
    gens = []
    for lineno, line in lines:
        parts = line.split()
        if not 1 <= len(parts) <= 3:
            raise ParseError("expected `name [parity] [degree]`", lineno)
        name = parts[0]
        if not _NAME_RE.fullmatch(name):
            raise ParseError("bad generator name %r" % name, lineno)
        try:
            parity = int(parts[1]) if len(parts) > 1 else 0
            degree = int(parts[2]) if len(parts) > 2 else 1
        except ValueError:
            raise ParseError("parity and degree must be integers",
                             lineno) from None
        gens.append(Generator(name, parity, degree))
    if not gens:
        raise ParseError("empty [alphabet] section", 0)
    try:
        return Alphabet(gens)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


class Presentation(NamedTuple):
    alphabet: Alphabet
    relations: list   # LbPoly in "lb" mode, NAPoly in "na" mode


def parse_alphabet(text):
    """Read just the [alphabet] section; a [relations] section is ignored."""
    sections = split_sections(text, ("alphabet", "relations"))
    if "alphabet" not in sections:
        raise ParseError("missing [alphabet] section", 0)
    return _parse_alphabet(sections["alphabet"])


def parse_lb_polynomial(text, alphabet, field):
    """One linear combination of bracketed terms, normalized into NF(X)."""
    combo = parse_linear_combination(text, alphabet)
    poly = LbPoly.zero(alphabet, field)
    for frac, term in combo:
        poly = poly + term_to_lbpoly(term, alphabet, field).scaled(
            field(frac))
    return poly


def parse_presentation(text, field, mode="lb"):
    """Read an alphabet and relation list; trees are normalized in lb mode.

    In "lb" mode every parsed term is rewritten into the left-normed NF(X)
    basis, so the relation file may use arbitrary bracketings.  In "na"
    mode terms stay as trees in the free non-associative algebra.
    """
    if mode not in ("lb", "na"):
        raise ValueError("mode must be 'lb' or 'na'")
    sections = split_sections(text, ("alphabet", "relations"))
    if "alphabet" not in sections:
        raise ParseError("missing [alphabet] section", 0)
    alphabet = _parse_alphabet(sections["alphabet"])
    relations = []
    for lineno, line in sections.get("relations", ()):
        try:
            combo = parse_linear_combination(line, alphabet)
        except ParseError as exc:
            raise ParseError("line %d: %s" % (lineno, exc.message),
                             exc.position) from None
        if mode == "lb":
            poly = LbPoly.zero(alphabet, field)
            for frac, term in combo:
                poly = poly + term_to_lbpoly(term, alphabet, field).scaled(
                    field(frac))
        else:
            data = {}
            for frac, term in combo:
                c = field(frac)
                v = data.get(term)
                v = c if v is None else v + c
                if v:
                    data[term] = v
                else:
                    data.pop(term, None)
            poly = NAPoly.from_dict(alphabet, field, data)
        relations.append(poly)
    return Presentation(alphabet, relations)


def format_presentation(alphabet, relations, comments=()):
    """Render a presentation file that parse_presentation reads back."""
    lines = ["# " + c for c in comments]
    lines.append("[alphabet]")
    for g in alphabet.generators:
        lines.append("%s %d %d" % (g.name, g.parity, g.degree))
    lines.append("")
    lines.append("[relations]")
    for r in relations:
        lines.append(str(r))
    return "\n".join(lines) + "\n"


def parse_name_combination(text, index, field, lineno=0):
    """A linear combination of known names as {index: coefficient}.

    Accepts `3/2*e1 - e2 + f`, a bare `0` for zero; unknown names and
    trailing junk are errors.
    """
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _PIECE_RE.match(text, pos)
        if not m or (not first and m.group("sign") is None):
            raise ParseError("line %d: bad combination near %r"
                             % (lineno, text[pos:pos + 20]), pos)
        coeff = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        name = m.group("name")
        if name not in index:
            raise ParseError("line %d: unknown name %r" % (lineno, name),
                             pos)
        i = index[name]
        c = field(coeff)
        v = out.get(i)
        v = c if v is None else v + c
        if v:
            out[i] = v
        else:
            out.pop(i, None)
        pos = m.end()
        first = False
    return out


def _parse_arrow_line(line, lineno):
    if "->" not in line:
        raise ParseError("line %d: expected `lhs -> combination`" % lineno,
                         0)
    lhs, rhs = line.split("->", 1)
    return lhs.split(), rhs.strip()


class AlgebraTableData(NamedTuple):
    names: tuple
    parities: tuple
    products: dict    # (i, j) -> {k: coefficient}; missing pairs are zero


def parse_algebra_table(text, field):
    """Read a finite-dimensional algebra given by structure constants."""
    sections = split_sections(text, ("basis", "products"))
    if "basis" not in sections:
        raise ParseError("missing [basis] section", 0)
    names = []
    parities = []
    for lineno, line in sections["basis"]:
        parts = line.split()
        if not 1 <= len(parts) <= 2:
            raise ParseError("expected `name [parity]`", lineno)
        if not _NAME_RE.fullmatch(parts[0]):
            raise ParseError("bad basis name %r" % parts[0], lineno)
        if parts[0] in names:
            raise ParseError("duplicate basis name %r" % parts[0], lineno)
        names.append(parts[0])
        parity = int(parts[1]) if len(parts) > 1 else 0
        if parity not in (0, 1):
            raise ParseError("parity must be 0 or 1", lineno)
        parities.append(parity)
    index = {n: i for i, n in enumerate(names)}
    products = {}
    for lineno, line in sections.get("products", ()):
        lhs, rhs = _parse_arrow_line(line, lineno)
        if len(lhs) != 2 or lhs[0] not in index or lhs[1] not in index:
            raise ParseError("line %d: product lhs must be two basis names"
                             % lineno, 0)
        pair = (index[lhs[0]], index[lhs[1]])
        if pair in products:
            raise ParseError("line %d: duplicate product entry" % lineno, 0)
        products[pair] = parse_name_combination(rhs, index, field, lineno)
    return AlgebraTableData(tuple(names), tuple(parities), products)


def parse_action(text, field, b_names, a_names):
    """Read left and right action tables.

    `[left]` lines are `b a -> combination over A`; `[right]` lines are
    `a b -> combination over A`.  Missing entries are zero.
    """
    sections = split_sections(text, ("left", "right"))
    b_index = {n: i for i, n in enumerate(b_names)}
    a_index = {n: i for i, n in enumerate(a_names)}
    left = {}
    for lineno, line in sections.get("left", ()):
        lhs, rhs = _parse_arrow_line(line, lineno)
        if len(lhs) != 2 or lhs[0] not in b_index or lhs[1] not in a_index:
            raise ParseError(
                "line %d: left action lhs must be `b a`" % lineno, 0)
        key = (b_index[lhs[0]], a_index[lhs[1]])
        if key in left:
            raise ParseError("line %d: duplicate left entry" % lineno, 0)
        left[key] = parse_name_combination(rhs, a_index, field, lineno)
    right = {}
    for lineno, line in sections.get("right", ()):
        lhs, rhs = _parse_arrow_line(line, lineno)
        if len(lhs) != 2 or lhs[0] not in a_index or lhs[1] not in b_index:
            raise ParseError(
                "line %d: right action lhs must be `a b`" % lineno, 0)
        key = (a_index[lhs[0]], b_index[lhs[1]])
        if key in right:
            raise ParseError("line %d: duplicate right entry" % lineno, 0)
        right[key] = parse_name_combination(rhs, a_index, field, lineno)
    return left, right


def parse_factor_set_table(text, field, b_names, a_names):
    """Factor set for a table-presented quotient: `b b' -> combination`."""
    sections = split_sections(text, ("factor-set",))
    b_index = {n: i for i, n in enumerate(b_names)}
    a_index = {n: i for i, n in enumerate(a_names)}
    out = {}
    for lineno, line in sections.get("factor-set", ()):
        lhs, rhs = _parse_arrow_line(line, lineno)
        if len(lhs) != 2 or lhs[0] not in b_index or lhs[1] not in b_index:
            raise ParseError(
                "line %d: factor set lhs must be `b b'`" % lineno, 0)
        key = (b_index[lhs[0]], b_index[lhs[1]])
        if key in out:
            raise ParseError("line %d: duplicate factor set entry" % lineno,
                             0)
        out[key] = parse_name_combination(rhs, a_index, field, lineno)
    return out


def parse_factor_set_indexed(text, field, relation_count, a_names):
    """Factor set keyed by relation index: `0 -> combination` (0-based)."""
    sections = split_sections(text, ("factor-set",))
    a_index = {n: i for i, n in enumerate(a_names)}
    out = {}
    for lineno, line in sections.get("factor-set", ()):
        lhs, rhs = _parse_arrow_line(line, lineno)
        if len(lhs) != 1 or not lhs[0].isdigit():
            raise ParseError(
                "line %d: factor set lhs must be a relation index" % lineno,
                0)
        idx = int(lhs[0])
        if not 0 <= idx < relation_count:
            raise ParseError(
                "line %d: relation index %d out of range" % (lineno, idx), 0)
        if idx in out:
            raise ParseError("line %d: duplicate factor set entry" % lineno,
                             0)
        out[idx] = parse_name_combination(rhs, a_index, field, lineno)
    return out
