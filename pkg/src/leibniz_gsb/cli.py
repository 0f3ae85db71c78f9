"""Command line front end.

Every subcommand reads plain text files (see io_formats) and prints either
human-readable text or one JSON object per line with --format records.
Exit codes: 0 for success or a passing check, 1 for a failing check or a
false answer, 2 for malformed input or an ill-posed request.  All output
is deterministic for fixed inputs, independent of --jobs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .extensions import (AlgebraTable, ExtensionCheckError, FactorSet,
                         SupermoduleAction, TableFactorSet, build_extension,
                         run_extension_checks)
from .gsb import (NotAGSBError, RelationSet, complete, eliminate_unit_leads,
                  gsb_check, irr_basis, quotient_dimension, realized_lead,
                  reduce_poly, reduced_basis)
from .io_formats import (format_presentation, parse_action,
                         parse_algebra_table, parse_alphabet,
                         parse_factor_set_indexed, parse_factor_set_table,
                         parse_lb_polynomial, parse_presentation)
from .nonassoc import na_gsb_check
from .presets import FAMILIES, PresetSpec, default_bound, generate_preset
from .scalars import Field
from .terms import ParseError, format_word


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(args, text, records):
    if getattr(args, "format", "text") == "records":
        payload = "\n".join(json.dumps(r, sort_keys=True) for r in records)
    else:
        payload = text
    if payload and not payload.endswith("\n"):
        payload += "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _relation_set(args, field):
    pres = parse_presentation(_read(args.rel), field)
    return RelationSet(pres.alphabet, field, pres.relations)


def _relation_records(relation_set):
    alphabet = relation_set.alphabet
    return [{"relation": str(r), "lead": format_word(r.lead_word, alphabet)}
            for r in relation_set.relations]


def cmd_normalize(args):
    field = Field(args.char)
    alphabet = parse_alphabet(_read(args.alphabet))
    poly = parse_lb_polynomial(args.expr, alphabet, field)
    _emit(args, str(poly), [{"poly": str(poly)}])
    return 0


def cmd_product(args):
    field = Field(args.char)
    alphabet = parse_alphabet(_read(args.alphabet))
    f = parse_lb_polynomial(args.left, alphabet, field)
    g = parse_lb_polynomial(args.right, alphabet, field)
    h = f * g
    _emit(args, str(h), [{"poly": str(h)}])
    return 0


def _trace_records(trace, S):
    alphabet = S.alphabet
    out = []
    for coeff, d in trace:
        out.append({
            "coefficient": str(coeff),
            "u": " ".join(alphabet.names[b] for b in d.u),
            "relation": d.rel,
            "v": " ".join(alphabet.names[b] for b in d.v),
            "lead": format_word(realized_lead(d, S), alphabet),
        })
    return out


def cmd_reduce(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    f = parse_lb_polynomial(args.expr, S.alphabet, field)
    res = reduce_poly(f, S)
    lines = [str(res.remainder)]
    records = [{"remainder": str(res.remainder)}]
    if args.trace:
        steps = _trace_records(res.trace, S)
        for s in steps:
            lines.append("  coeff=%s u=[%s] relation=%d v=[%s] lead=%s"
                         % (s["coefficient"], s["u"], s["relation"],
                            s["v"], s["lead"]))
        records.extend(steps)
    _emit(args, "\n".join(lines), records)
    return 0


def cmd_member(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    f = parse_lb_polynomial(args.expr, S.alphabet, field)
    res = reduce_poly(f, S)
    member = res.remainder.is_zero()
    text = "in ideal" if member \
        else "not in ideal: remainder %s" % res.remainder
    _emit(args, text, [{"member": member, "remainder": str(res.remainder)}])
    return 0 if member else 1


def cmd_irr(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    words = irr_basis(S, args.bound)
    alphabet = S.alphabet
    lines = [format_word(w, alphabet) for w in words]
    records = [{"word": format_word(w, alphabet),
                "degree": alphabet.word_degree(w)} for w in words]
    _emit(args, "\n".join(lines), records)
    return 0


def cmd_dim(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    d = quotient_dimension(S, args.degree, resource_cap=args.cap)
    _emit(args, str(d), [{"degree": args.degree, "dimension": d}])
    return 0


def cmd_gsb_check(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    report = gsb_check(S, args.bound, jobs=args.jobs)
    head = {"check": "gsb-check", "bound": args.bound,
            "passed": report.passed}
    _emit(args, report.to_text(), [head] + report.to_records())
    return 0 if report.passed else 1


def cmd_complete(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    result = complete(S, args.bound, max_rounds=args.max_rounds)
    status = "saturated" if result.saturated else "not saturated"
    comments = ["completion up to degree %d: %s after %d round(s), "
                "%d relation(s) added"
                % (result.degree_cap, status, result.rounds,
                   len(result.added))]
    for poly, prov in result.added:
        comments.append("round %d %s %s adds %s"
                        % (prov.round, prov.kind, prov.detail, poly))
    text = format_presentation(result.relations.alphabet,
                               result.relations.relations, comments)
    head = {"saturated": result.saturated, "rounds": result.rounds,
            "added": len(result.added), "bound": result.degree_cap}
    records = [head] + _relation_records(result.relations)
    _emit(args, text, records)
    return 0 if result.saturated else 1


def cmd_reduced(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    try:
        R = reduced_basis(S, args.bound, jobs=args.jobs)
    except NotAGSBError as exc:
        _emit(args, exc.report.to_text(),
              [{"check": "gsb-check", "bound": args.bound, "passed": False}]
              + exc.report.to_records())
        return 1
    comments = ["reduced basis, compositions verified up to degree %d"
                % args.bound]
    text = format_presentation(R.alphabet, R.relations, comments)
    _emit(args, text, _relation_records(R))
    return 0


def cmd_eliminate_units(args):
    field = Field(args.char)
    S = _relation_set(args, field)
    alphabet, R = eliminate_unit_leads(S)
    comments = ["unit leading monomials eliminated; %d generator(s) remain"
                % len(alphabet)]
    text = format_presentation(alphabet, R.relations, comments)
    _emit(args, text, _relation_records(R))
    return 0


def cmd_na_check(args):
    field = Field(args.char)
    pres = parse_presentation(_read(args.rel), field, mode="na")
    report = na_gsb_check(pres.relations, args.bound, jobs=args.jobs)
    head = {"check": "na-gsb-check", "bound": args.bound,
            "passed": report.passed}
    _emit(args, report.to_text(), [head] + report.to_records())
    return 0 if report.passed else 1


def cmd_preset(args):
    field = Field(args.char)
    alphabet = parse_alphabet(_read(args.alphabet))
    bound = args.bound if args.bound is not None else default_bound(alphabet)
    S = generate_preset(PresetSpec(args.family, alphabet, field, bound))
    comments = ["preset %s, characteristic %d, degree bound %d"
                % (args.family, args.char, bound)]
    text = format_presentation(S.alphabet, S.relations, comments)
    _emit(args, text, _relation_records(S))
    return 0


def _load_extension_inputs(args):
    field = Field(args.char)
    a_table = AlgebraTable.from_data(
        parse_algebra_table(_read(args.a_table), field), field)
    a_names = a_table.names
    if args.b_table is not None:
        b_table = AlgebraTable.from_data(
            parse_algebra_table(_read(args.b_table), field), field)
        b_names = b_table.names
        left, right = parse_action(_read(args.action), field, b_names,
                                   a_names)
        act = SupermoduleAction(a_table, b_table, left, right)
        fs = TableFactorSet(b_table, a_table, parse_factor_set_table(
            _read(args.factor_set), field, b_names, a_names))
        return a_table, b_table, act, fs, None
    if args.bound is None:
        raise ValueError("--bound is required with --b-rel")
    pres = parse_presentation(_read(args.b_rel), field)
    R = RelationSet(pres.alphabet, field, pres.relations)
    left, right = parse_action(_read(args.action), field,
                               pres.alphabet.names, a_names)
    act = SupermoduleAction(a_table, R, left, right)
    fs = FactorSet(R, a_table, parse_factor_set_indexed(
        _read(args.factor_set), field, len(R.relations), a_names))
    return a_table, R, act, fs, args.bound


def _stage_records(stages, passed):
    records = [{"check": "extension", "passed": passed}]
    for name, report in stages:
        for rec in report.to_records():
            rec["stage"] = name
            records.append(rec)
    return records


def cmd_ext_check(args):
    a_table, b_input, act, fs, bound = _load_extension_inputs(args)
    stages, context = run_extension_checks(a_table, b_input, act, fs, bound)
    passed = context is not None
    lines = [report.to_text() for _, report in stages]
    lines.append("ext-check: PASS" if passed
                 else "ext-check: FAIL at stage %s" % stages[-1][0])
    _emit(args, "\n".join(lines), _stage_records(stages, passed))
    return 0 if passed else 1


def cmd_ext_build(args):
    a_table, b_input, act, fs, bound = _load_extension_inputs(args)
    try:
        result = build_extension(a_table, b_input, act, fs, bound)
    except ExtensionCheckError as exc:
        text = "%s\next-build: FAIL at stage %s" % (exc.report.to_text(),
                                                    exc.stage)
        records = [{"check": "extension", "passed": False,
                    "stage": exc.stage}]
        for rec in exc.report.to_records():
            rec["stage"] = exc.stage
            records.append(rec)
        _emit(args, text, records)
        return 1
    head = {"check": "extension", "passed": result.audit.passed,
            "dimension": result.dim, "bound": result.degree_bound}
    _emit(args, result.to_text(), [head] + result.to_records())
    return 0 if result.audit.passed else 1


def _add_char(p):
    p.add_argument("--char", type=int, default=0, metavar="P",
                   help="field characteristic: 0 or a prime (default 0)")


def _add_format(p):
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="text output or one JSON object per line")


def _add_rel(p):
    p.add_argument("--rel", required=True, metavar="FILE",
                   help="presentation file with [alphabet] and [relations]")


def _add_alphabet(p):
    p.add_argument("--alphabet", required=True, metavar="FILE",
                   help="file with an [alphabet] section")


def _add_jobs(p):
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   metavar="N", help="worker threads (output is identical "
                   "for any value)")


def _add_output(p):
    p.add_argument("--output", metavar="FILE",
                   help="write output to FILE instead of stdout")


def _add_bound(p, help_text, required=True):
    p.add_argument("--bound", type=int, required=required, default=None,
                   metavar="N", help=help_text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="leibniz-gsb",
        description="Groebner-Shirshov bases for free Leibniz superalgebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize",
                       help="rewrite a bracketed expression into the "
                       "left-normed basis")
    p.add_argument("expr", help="linear combination of bracketed terms")
    _add_alphabet(p)
    _add_char(p)
    _add_format(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("product", help="multiply two elements")
    p.add_argument("left")
    p.add_argument("right")
    _add_alphabet(p)
    _add_char(p)
    _add_format(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("reduce",
                       help="fully reduce an element modulo relations")
    p.add_argument("expr")
    _add_rel(p)
    _add_char(p)
    _add_format(p)
    p.add_argument("--trace", action="store_true",
                   help="also print the elimination steps")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("member",
                       help="test ideal membership by reduction (exit 1 "
                       "when not a member)")
    p.add_argument("expr")
    _add_rel(p)
    _add_char(p)
    _add_format(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("irr",
                       help="list irreducible words up to a degree bound")
    _add_rel(p)
    _add_char(p)
    _add_bound(p, "list words of degree <= N")
    _add_format(p)
    p.set_defaults(func=cmd_irr)

    p = sub.add_parser("dim",
                       help="graded quotient dimension by row reduction")
    _add_rel(p)
    _add_char(p)
    p.add_argument("--degree", type=int, required=True, metavar="N",
                   help="degree component to measure")
    p.add_argument("--cap", type=int, default=None, metavar="N",
                   help="override the resource cap on the degree")
    _add_format(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("gsb-check",
                       help="check all compositions up to a degree bound")
    _add_rel(p)
    _add_char(p)
    _add_bound(p, "check compositions of degree <= N")
    _add_jobs(p)
    _add_format(p)
    p.set_defaults(func=cmd_gsb_check)

    p = sub.add_parser("complete",
                       help="saturate by adjoining reduced compositions "
                       "below a degree cap")
    _add_rel(p)
    _add_char(p)
    _add_bound(p, "adjoin compositions of degree <= N")
    p.add_argument("--max-rounds", type=int, default=None, metavar="K",
                   help="stop after K rounds even if not saturated")
    _add_output(p)
    _add_format(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("reduced",
                       help="canonical reduced basis of a verified "
                       "Groebner-Shirshov basis")
    _add_rel(p)
    _add_char(p)
    _add_bound(p, "verify compositions up to degree N first")
    _add_jobs(p)
    _add_output(p)
    _add_format(p)
    p.set_defaults(func=cmd_reduced)

    p = sub.add_parser("eliminate-units",
                       help="remove generators that are leading monomials "
                       "of relations")
    _add_rel(p)
    _add_char(p)
    _add_output(p)
    _add_format(p)
    p.set_defaults(func=cmd_eliminate_units)

    p = sub.add_parser("na-check",
                       help="composition check in the free non-associative "
                       "algebra")
    _add_rel(p)
    _add_char(p)
    _add_bound(p, "check overlaps of length <= N")
    _add_jobs(p)
    _add_format(p)
    p.set_defaults(func=cmd_na_check)

    p = sub.add_parser("preset",
                       help="write a generated relation family as a "
                       "presentation file")
    p.add_argument("family", choices=FAMILIES)
    _add_alphabet(p)
    _add_char(p)
    _add_bound(p, "truncation degree (defaults by alphabet size)",
               required=False)
    _add_output(p)
    _add_format(p)
    p.set_defaults(func=cmd_preset)

    for name, func, with_output in (("ext-check", cmd_ext_check, False),
                                    ("ext-build", cmd_ext_build, True)):
        p = sub.add_parser(name,
                           help="run the extension checks"
                           if name == "ext-check"
                           else "check, assemble, and audit an extension")
        p.add_argument("--a-table", required=True, metavar="FILE",
                       help="multiplication table of the algebra A")
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--b-table", metavar="FILE",
                           help="multiplication table of B (exact mode)")
        group.add_argument("--b-rel", metavar="FILE",
                           help="reduced presentation of B (degree-capped "
                           "mode; needs --bound)")
        p.add_argument("--action", required=True, metavar="FILE",
                       help="generator action tables of B on A")
        p.add_argument("--factor-set", required=True, metavar="FILE",
                       help="factor set values over A")
        _add_char(p)
        _add_bound(p, "degree cap for presentation mode", required=False)
        if with_output:
            _add_output(p)
        _add_format(p)
        p.set_defaults(func=func)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
