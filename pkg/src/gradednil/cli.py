"""Command-line front end.

Exit codes: 0 every check passed or was proved, 1 a refutation or failure,
2 a capped or unknown verdict, 3 an input or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import specfile, zoo
from .fcomm import scalar_action, scalar_f_search
from .grading import (
    GradedRing,
    component_indices,
    elementary_grading,
    neutral_ring,
    support,
    trivial_grading,
)
from .monoid import Congruence, Monoid
from .nil import Status, bounded_nil_index_auto, nilpotency_index, ring_is_nil, s_nil_check
from .ringcore import parse_domain
from .theorems import (
    Caps,
    CheckStatus,
    full_report,
    verify_diagonal_power_reduction,
    verify_empty_neutral_bound,
    verify_field_bounded_index_bound,
    verify_generated_neutral_bound,
    verify_generated_nil_ring_bound,
    verify_homogeneous_power_vanishing,
    verify_index2_char_bound,
    verify_matrix_nil_transfer,
    verify_neutral_nil_fcomm_bound,
    verify_nilpotent_neutral_bounds,
    verify_product_length_vanishing,
    verify_quotient_grading_transfer,
)
from .words import (
    DegreeWord,
    ProductVerdict,
    neutral_split,
    neutral_split_bruteforce,
    small_gap_blocks,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_CAPPED = 2
EXIT_INPUT = 3

ENV_CAPS = {
    "GRADEDNIL_ELEM_CAP": "elem_cap",
    "GRADEDNIL_TUPLE_CAP": "tuple_cap",
    "GRADEDNIL_POWER_CAP": "power_cap",
    "GRADEDNIL_PAIR_CAP": "pair_cap",
    "GRADEDNIL_SAMPLES": "samples",
    "GRADEDNIL_SEED": "seed",
}


def _caps_from(args) -> Caps:
    caps = Caps()
    for env, attr in ENV_CAPS.items():
        if env in os.environ:
            setattr(caps, attr, int(os.environ[env]))
    for attr in ("elem_cap", "tuple_cap", "power_cap", "pair_cap", "samples", "seed"):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(caps, attr, v)
    return caps


def _add_caps(parser):
    parser.add_argument("--elem-cap", dest="elem_cap", type=int)
    parser.add_argument("--tuple-cap", dest="tuple_cap", type=int)
    parser.add_argument("--power-cap", dest="power_cap", type=int)
    parser.add_argument("--pair-cap", dest="pair_cap", type=int)
    parser.add_argument("--samples", dest="samples", type=int)
    parser.add_argument("--seed", dest="seed", type=int)


def _load(path):
    try:
        return specfile.parse_spec(path)
    except FileNotFoundError:
        raise SystemExit(_input_error(f"no such file: {path}"))
    except Exception as exc:
        raise SystemExit(_input_error(str(exc)))


def _input_error(msg):
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _graded_or_trivial(parsed) -> GradedRing:
    return parsed.graded if parsed.graded is not None else trivial_grading(parsed.ring)


def _parse_classes(text, monoid):
    try:
        classes = [
            [int(x) for x in part.split()] for part in text.split("|")
        ]
        return Congruence(monoid, classes)
    except Exception as exc:
        raise SystemExit(_input_error(f"bad congruence classes: {exc}"))


def _verdict_exit(statuses):
    if any(s in (Status.REFUTED,) or s == CheckStatus.FAIL for s in statuses):
        return EXIT_REFUTED
    if any(s in (Status.CAPPED,) or s == CheckStatus.CAPPED for s in statuses):
        return EXIT_CAPPED
    return EXIT_OK


def cmd_analyze(args):
    parsed = _load(args.file)
    caps = _caps_from(args)
    gr = _graded_or_trivial(parsed)
    r = gr.ring
    supp = sorted(support(gr), key=repr)
    out = {
        "rank": r.rank,
        "coeff": r.coeff.label(),
        "support": [str(g) for g in supp],
        "support_size": len(supp),
        "components": {
            str(g): len(component_indices(gr, g)) for g in supp
        },
    }
    nilv = ring_is_nil(r, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
                       seed=caps.seed)
    ndv = nilpotency_index(r, cap=caps.power_cap)
    sv = bounded_nil_index_auto(r, elem_cap=caps.elem_cap,
                                power_cap=caps.power_cap)
    out["nil"] = repr(nilv)
    out["nilpotency"] = repr(ndv)
    out["bounded_nil_index"] = repr(sv)
    comp = s_nil_check(gr, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
                       seed=caps.seed)
    out["component_nil"] = {str(g): repr(v) for g, v in comp.items()}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    statuses = [nilv.status, ndv.status, sv.status] + [v.status for v in comp.values()]
    return _verdict_exit(statuses)


def _run_check(check_id, parsed, caps, congruence_text):
    gr = _graded_or_trivial(parsed)
    f, act = parsed.fmap, parsed.action
    if f is None:
        m0, _ = neutral_ring(gr)
        if m0.rank:
            f, _w = scalar_f_search(m0, pair_cap=caps.pair_cap, seed=caps.seed)
            act = scalar_action(m0) if f is not None else None
    m0, _ = neutral_ring(gr)
    if check_id == "P3.03":
        return verify_empty_neutral_bound(gr, caps)
    if check_id == "P3.17":
        return verify_index2_char_bound(gr, caps)
    if check_id == "P3.31":
        return verify_homogeneous_power_vanishing(gr, caps)
    if check_id == "T3.15":
        return verify_neutral_nil_fcomm_bound(gr, f, act, caps)
    if check_id == "T3.18":
        return verify_nilpotent_neutral_bounds(gr, caps)
    if check_id == "T3.19":
        target = m0 if parsed.graded is not None else parsed.ring
        return verify_generated_nil_ring_bound(target, f, act, caps)
    if check_id == "T3.20":
        return verify_generated_neutral_bound(gr, f, act, caps)
    if check_id == "T3.24":
        return verify_field_bounded_index_bound(gr, caps)
    if check_id == "C3.28":
        return verify_product_length_vanishing(gr, caps)
    if check_id == "T3.26":
        target = m0 if parsed.graded is not None else parsed.ring
        return verify_matrix_nil_transfer(target, f, act, caps)
    if check_id == "T3.29-REDUCTION":
        target = m0 if parsed.graded is not None else parsed.ring
        return verify_diagonal_power_reduction(target, 2, caps)
    if check_id == "C3.04":
        if congruence_text is None:
            raise SystemExit(_input_error("C3.04 needs --classes"))
        if gr.monoid.kind != "table":
            raise SystemExit(_input_error("C3.04 needs a table monoid grading"))
        cong = _parse_classes(congruence_text, gr.monoid)
        return verify_quotient_grading_transfer(gr, cong, caps)
    raise SystemExit(_input_error(f"unknown check id {check_id!r}"))


def cmd_verify(args):
    parsed = _load(args.file)
    caps = _caps_from(args)
    check = _run_check(args.check_id, parsed, caps, args.classes)
    if args.json:
        print(json.dumps(check.to_dict(), indent=2))
    else:
        print(f"{check.id}: {check.status.value}")
        if check.bound is not None:
            print(f"bound: {check.bound}")
        if check.observed is not None:
            print(f"observed: {check.observed}")
        if check.reason:
            print(f"reason: {check.reason}")
    if check.status == CheckStatus.FAIL:
        return EXIT_REFUTED
    if check.status == CheckStatus.CAPPED:
        return EXIT_CAPPED
    return EXIT_OK


def cmd_report(args):
    parsed = _load(args.file)
    caps = _caps_from(args)
    gr = _graded_or_trivial(parsed)
    cong = None
    if args.classes:
        if gr.monoid.kind != "table":
            raise SystemExit(_input_error("--classes needs a table monoid grading"))
        cong = _parse_classes(args.classes, gr.monoid)
    report = full_report(gr, parsed.fmap, parsed.action, caps, congruence=cong)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text())
    worst = report.worst()
    if worst == CheckStatus.FAIL:
        return EXIT_REFUTED
    if worst == CheckStatus.CAPPED:
        return EXIT_CAPPED
    return EXIT_OK


def cmd_oracle(args):
    if args.which != "lemma-3-5":
        raise SystemExit(_input_error(f"unknown oracle {args.which!r}"))
    if args.cyclic is not None:
        monoid = Monoid.cyclic(args.cyclic)
    elif args.file:
        parsed = _load(args.file)
        if parsed.monoid is None or parsed.monoid.kind != "table":
            raise SystemExit(_input_error("oracle needs a table monoid"))
        monoid = parsed.monoid
    else:
        raise SystemExit(_input_error("oracle needs --cyclic N or --file SPEC"))
    try:
        supp = {int(t) for t in args.supp.replace(",", " ").split()}
    except ValueError:
        raise SystemExit(_input_error("bad --supp"))
    r = args.r
    disagreements = 0

    def compare(letters):
        nonlocal disagreements
        w = DegreeWord(monoid, tuple(letters))
        got = neutral_split(w, r, supp)
        ref = neutral_split_bruteforce(w, r, supp)
        got_zero = got == ProductVerdict.FORCED_ZERO
        ref_zero = ref == ProductVerdict.FORCED_ZERO
        agree = got_zero == ref_zero and ref is not None
        if not agree:
            disagreements += 1
            print(f"DISAGREE word={letters} split={got} oracle={ref}")
        elif not got_zero:
            blocks = small_gap_blocks(got, len(supp))
            print(f"word={letters} cuts={got.cuts} small-gap blocks={blocks}")
        else:
            print(f"word={letters} FORCED_ZERO (both)")

    if args.word:
        letters = [int(t) for t in args.word.replace(",", " ").split()]
        if len(letters) != r * len(supp):
            raise SystemExit(
                _input_error(f"word length must be r*d = {r * len(supp)}")
            )
        compare(letters)
    elif args.exhaustive:
        import itertools

        length = args.len or r * len(supp)
        if length != r * len(supp):
            raise SystemExit(_input_error(f"--len must equal r*d = {r * len(supp)}"))
        for letters in itertools.product(range(monoid.size), repeat=length):
            compare(list(letters))
    else:
        raise SystemExit(_input_error("oracle needs --word or --exhaustive"))
    print(f"disagreements: {disagreements}")
    return EXIT_OK if disagreements == 0 else EXIT_REFUTED


def cmd_construct(args):
    if args.which != "elementary":
        raise SystemExit(_input_error(f"unknown construction {args.which!r}"))
    parsed = _load(args.file)
    gr = elementary_grading(parsed.ring, args.n)
    text = specfile.emit_graded(
        gr, header=f"elementary Z_{args.n} grading of the {args.n}x{args.n} matrices"
    )
    _write_out(text, args.out)
    return EXIT_OK


def _write_out(text, out):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_zoo(args):
    name = args.name.replace("_", "-")
    try:
        if name == "sut":
            gr = zoo.sut(args.n, parse_domain(args.domain))
            text = specfile.emit_graded(gr, header=f"strictly upper triangular {args.n}x{args.n}")
        elif name == "truncated-nagata":
            r = zoo.truncated_nagata(args.k, args.p)
            text = specfile.emit_spec(r, header=f"truncated commutative nil ring, {args.k} generators mod {args.p}")
            text += f"# note: {r.note}\n"
        elif name == "grassmann-star":
            gr = zoo.grassmann_star(args.k, parse_domain(args.domain))
            text = specfile.emit_graded(gr, fmap_mode="auto", header=f"unitless exterior algebra on {args.k} generators")
            text += f"# note: {gr.ring.note}\n"
        elif name == "two-z-2k":
            r = zoo.two_z_2k(args.k)
            text = specfile.emit_spec(r, fmap_mode="constant 1", header=f"even residues modulo 2^{args.k}")
        elif name == "truncated-poly":
            gr = zoo.truncated_poly_positive(args.n, parse_domain(args.domain))
            text = specfile.emit_graded(gr, header=f"positive-degree polynomials truncated at x^{args.n}")
            text += f"# note: {gr.ring.note}\n"
        elif name == "list":
            for key, note in zoo.NON_CONSTRUCTIBLE.items():
                print(f"{key}: not constructible; {note}")
            print("constructible: sut, truncated-nagata, grassmann-star, two-z-2k, truncated-poly")
            return EXIT_OK
        else:
            raise SystemExit(_input_error(f"unknown zoo ring {args.name!r}"))
    except SystemExit:
        raise
    except Exception as exc:
        raise SystemExit(_input_error(str(exc)))
    _write_out(text, args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gradednil",
        description="Exact analysis of monoid-graded rings and their nilpotency bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="support, components, nil and nilpotency verdicts")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    _add_caps(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="run one bound check by id (e.g. P3.03, T3.18)")
    p.add_argument("check_id")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--classes", help="congruence classes for C3.04, e.g. '0 2 | 1 3'")
    _add_caps(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", help="run every applicable check")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--classes", help="optional congruence classes for C3.04")
    _add_caps(p)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("oracle", help="cross-validate the neutral-split construction")
    p.add_argument("which", choices=["lemma-3-5"])
    p.add_argument("--cyclic", type=int, help="use the cyclic monoid Z_N")
    p.add_argument("--file", help="take the monoid from a spec file")
    p.add_argument("--supp", required=True, help="support element ids, e.g. '0,1'")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--word", help="degree word, e.g. '1,1,1,1'")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--len", type=int)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("construct", help="emit a derived spec file")
    p.add_argument("which", choices=["elementary"])
    p.add_argument("file")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("zoo", help="emit a spec file for a built-in example ring")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--domain", default="fp 2")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_zoo)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except (ValueError, KeyError) as exc:
        return _input_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
