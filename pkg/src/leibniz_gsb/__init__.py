"""Grobner-Shirshov bases for free Leibniz superalgebras.

Exact symbolic computation in free Leibniz superalgebras presented by
generators and relations: left-normed normal forms, superalgebra products,
composition checking, completion, reduced bases, linear bases of metabelian
quotients, and a constructive extension calculus.  All arithmetic is exact
(rationals or a prime field); every verification that enumerates an infinite
family is bounded by an explicit degree cap and reported as such.
"""

from .scalars import Field, FieldElement, FieldMismatchError, QQ, GF
from .terms import (
    Alphabet,
    Generator,
    ParseError,
    format_term,
    format_word,
    left_normed,
    parse_term,
    tree_key,
)
from .leibniz import (
    LbPoly,
    Monomial,
    enumerate_words,
    lb_product,
    monomial_key,
    term_to_lbpoly,
)
from .linalg import ResourceCapError
from .gsb import (
    CompletionResult,
    GsbReport,
    NotAGSBError,
    ReductionResult,
    RelationSet,
    complete,
    eliminate_unit_leads,
    express_normal,
    gsb_check,
    irr_basis,
    is_irreducible,
    minimal_basis,
    quotient_dimension,
    reduce_poly,
    reduced_basis,
)
from .nonassoc import (
    NAPoly,
    free_na_dimension,
    leibniz_family,
    na_gsb_check,
    na_quotient_dimension,
    na_reduce,
)
from .io_formats import (
    Presentation,
    format_presentation,
    parse_alphabet,
    parse_lb_polynomial,
    parse_presentation,
)
from . import extensions
from . import presets

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldElement",
    "FieldMismatchError",
    "QQ",
    "GF",
    "Alphabet",
    "Generator",
    "ParseError",
    "format_term",
    "format_word",
    "left_normed",
    "parse_term",
    "tree_key",
    "LbPoly",
    "Monomial",
    "enumerate_words",
    "lb_product",
    "monomial_key",
    "term_to_lbpoly",
    "ResourceCapError",
    "CompletionResult",
    "GsbReport",
    "NotAGSBError",
    "ReductionResult",
    "RelationSet",
    "complete",
    "eliminate_unit_leads",
    "express_normal",
    "gsb_check",
    "irr_basis",
    "is_irreducible",
    "minimal_basis",
    "quotient_dimension",
    "reduce_poly",
    "reduced_basis",
    "NAPoly",
    "free_na_dimension",
    "leibniz_family",
    "na_gsb_check",
    "na_quotient_dimension",
    "na_reduce",
    "Presentation",
    "format_presentation",
    "parse_alphabet",
    "parse_lb_polynomial",
    "parse_presentation",
    "extensions",
    "presets",
]
