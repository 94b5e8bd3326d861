"""Command-line front end.

Subcommands: sumset, cn, audit, verify, enumerate. Exit codes: 0 success or
clean result, 1 mathematical failure, 2 input parse error, 3 hypothesis
violation, 4 resource guard tripped. Structured output (--format records)
is one self-describing record per line so sweeps can stream; human output
formats the same data.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import audit_sigma_chain
from .errors import (
    CeilingExceeded,
    CompositeModulus,
    HypothesisViolation,
    ModulusMismatch,
    NotVanishing,
    SumsetLabError,
)
from .field import Prime
from .nullstellensatz import cn_decompose, verify_witness
from .poly import BiPoly, build_locus_poly
from .sets import FpSet, classify_pair, restricted_sumset, sumset
from .sweep import (
    DEFAULT_BOUNDS_CEILING,
    DEFAULT_THEOREM_CEILING,
    report_to_json,
    verify_bounds,
    verify_karolyi_inverse,
    verify_main_theorem,
)

EXIT_OK = 0
EXIT_MATH = 1
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_GUARD = 4


class _ParseFailure(Exception):
    pass


def _parse_prime(value: int) -> Prime:
    try:
        return Prime(value)
    except CompositeModulus as exc:
        raise _ParseFailure(str(exc)) from None


def _parse_set(text: str, prime: Prime) -> FpSet:
    residues = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise _ParseFailure(f"malformed set literal {text!r}")
        try:
            residues.append(int(part))
        except ValueError:
            raise _ParseFailure(f"malformed set literal {text!r}") from None
    p = prime.value
    reduced = []
    for r in residues:
        if not 0 <= r < p:
            print(
                f"warning: residue {r} reduced to {r % p} (mod {p})", file=sys.stderr
            )
        reduced.append(r % p)
    if len(set(reduced)) != len(reduced):
        print(f"warning: duplicate residues dropped from {text!r}", file=sys.stderr)
    return FpSet.of(prime, reduced)


def _emit(line: str, sink):
    sink.write(line + "\n")


def cmd_sumset(args) -> int:
    prime = _parse_prime(args.prime)
    a = _parse_set(args.set_a, prime)
    b = _parse_set(args.set_b, prime)
    s = sumset(a, b)
    r = restricted_sumset(a, b)
    cls = classify_pair(a, b)
    if args.format == "records":
        record = {
            "type": "sumset",
            "p": prime.value,
            "a": a.literal(),
            "b": b.literal(),
            "sumset": s.literal(),
            "sumset_size": len(s),
            "restricted": r.literal(),
            "restricted_size": len(r),
            "labels": sorted(cls.labels),
        }
        print(json.dumps(record))
    else:
        print(f"p = {prime.value}")
        print(f"A ({len(a)}): {a.literal()}")
        print(f"B ({len(b)}): {b.literal()}")
        print(f"A+B  ({len(s)}): {s.literal()}")
        print(f"A∔B ({len(r)}): {r.literal()}")
        print(f"labels: {', '.join(sorted(cls.labels)) or '(none)'}")
    return EXIT_OK


def cmd_cn(args) -> int:
    prime = _parse_prime(args.prime)
    a = _parse_set(args.set_a, prime)
    b = _parse_set(args.set_b, prime)
    if args.f_file:
        try:
            if args.f_file == "-":
                text = sys.stdin.read()
            else:
                with open(args.f_file) as handle:
                    text = handle.read()
            f = BiPoly.from_text(prime, text)
        except (OSError, ValueError) as exc:
            raise _ParseFailure(f"cannot read polynomial: {exc}") from None
    else:
        f = build_locus_poly(restricted_sumset(a, b))
    try:
        witness = cn_decompose(f, a, b)
    except NotVanishing as exc:
        x, y = exc.point
        print(f"no witness: f({x}, {y}) = {exc.value} != 0", file=sys.stderr)
        return EXIT_MATH
    verdict = verify_witness(f, witness)
    out = sys.stdout
    if args.out:
        out = open(args.out, "w")
    try:
        _emit(f"# f: degree {f.total_degree} over p={prime.value}", out)
        _emit("h_A:", out)
        _emit(witness.h_a.to_text(), out)
        _emit("h_B:", out)
        _emit(witness.h_b.to_text(), out)
        da = witness.h_a.total_degree
        db = witness.h_b.total_degree
        _emit(f"deg(h_A) = {da} (bound {witness.degree_bound_a})", out)
        _emit(f"deg(h_B) = {db} (bound {witness.degree_bound_b})", out)
        _emit(f"verdict: {'valid' if verdict.ok else 'INVALID: ' + verdict.failure}", out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK if verdict.ok else EXIT_MATH


def cmd_audit(args) -> int:
    prime = _parse_prime(args.prime)
    a = _parse_set(args.set_a, prime)
    b = _parse_set(args.set_b, prime)
    try:
        trace = audit_sigma_chain(a, b)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    out = sys.stdout
    if args.out:
        out = open(args.out, "w")
    try:
        if trace.warning:
            _emit(f"# warning: {trace.warning}", out)
        for line in trace.iter_lines():
            _emit(line, out)
        if args.show_closed_forms:
            for step in trace.steps:
                if step.parity == "even":
                    _emit(
                        f"closed-form step={step.index} denominator: "
                        f"direct={step.denominator} "
                        f"closed={step.denominator_closed_form}",
                        out,
                    )
                else:
                    agrees = step.pivot_closed_form_agrees
                    _emit(
                        f"closed-form step={step.index} pivot: "
                        f"direct={step.pivot} closed={step.pivot_closed_form} "
                        f"agrees={'n/a' if agrees is None else str(agrees).lower()}",
                        out,
                    )
        failed = trace.failed_records()
        _emit(
            f"# trace: {'clean' if trace.clean else f'{len(failed)} failed checks'}; "
            f"A == B: {str(trace.sets_equal).lower()}",
            out,
        )
    finally:
        if args.out:
            out.close()
    return EXIT_OK if trace.clean else EXIT_MATH


def cmd_verify(args) -> int:
    prime = _parse_prime(args.prime)
    ceiling = args.ceiling
    if args.theorem == "bounds":
        if ceiling is None:
            ceiling = DEFAULT_BOUNDS_CEILING
        try:
            report = verify_bounds(prime, workers=args.workers, ceiling=ceiling)
        except CeilingExceeded as exc:
            print(f"guard: {exc} (raise with --ceiling)", file=sys.stderr)
            return EXIT_GUARD
        summary = (
            f"bounds p={report.p}: {len(report.violations)} violations "
            f"over {report.pairs_scanned} ordered pairs "
            f"[{report.wall_time:.2f}s]"
        )
    else:
        if ceiling is None:
            ceiling = DEFAULT_THEOREM_CEILING
        if prime.value > ceiling:
            print(
                f"guard: p = {prime.value} above the exhaustive ceiling {ceiling} "
                "(raise with --ceiling)",
                file=sys.stderr,
            )
            return EXIT_GUARD
        if args.k is None:
            raise _ParseFailure("-k is required for this sweep")
        runner = verify_main_theorem if args.theorem == "main" else verify_karolyi_inverse
        report = runner(
            prime,
            args.k,
            workers=args.workers,
            prune=not args.no_prune,
            target=args.target,
        )
        name = "counterexamples" if args.theorem == "main" else "exceptions"
        qualifier = "" if report.expectation_checked else " (hypotheses unmet; recorded only)"
        summary = (
            f"{args.theorem} p={report.p} k={report.k}: "
            f"{len(report.counterexamples)} {name}{qualifier}; "
            f"{len(report.extremal_pairs)} extremal orbits, "
            f"{report.pairs_scanned} ordered pairs scanned "
            f"[{report.wall_time:.2f}s]"
        )
    out_path = args.out
    if out_path is None:
        kpart = f"-k{args.k}" if args.theorem != "bounds" else ""
        out_path = f"sweep-{args.theorem}-p{prime.value}{kpart}.json"
    with open(out_path, "w") as handle:
        handle.write(report_to_json(report))
    if args.format == "records":
        for rec in report.extremal_pairs:
            print(json.dumps({"type": "extremal", **rec.to_dict()}))
        for rec in report.counterexamples:
            print(json.dumps({"type": "counterexample", **rec.to_dict()}))
        for v in report.violations:
            print(json.dumps({"type": "violation", **v}))
    print(summary)
    print(f"report written to {out_path}")
    return EXIT_OK if report.passed else EXIT_MATH


def cmd_enumerate(args) -> int:
    from .sweep import enumerate_k_subsets

    prime = _parse_prime(args.prime)
    if args.k is None:
        raise _ParseFailure("-k is required for enumerate")
    count = 0
    for s in enumerate_k_subsets(prime, args.k, start=args.start):
        print(s.literal())
        count += 1
        if args.limit is not None and count >= args.limit:
            break
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Exact sumset arithmetic and exhaustive verification over Z/pZ",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, sets=False, k=False):
        sp.add_argument("-p", "--prime", type=int, required=True, help="prime modulus")
        if sets:
            sp.add_argument("-A", dest="set_a", required=True, help="set literal, e.g. 0,1,2")
            sp.add_argument("-B", dest="set_b", required=True, help="set literal")
        if k:
            sp.add_argument("-k", type=int, default=None, help="subset size")
        sp.add_argument(
            "--format", choices=("human", "records"), default="human",
            help="human tables or one structured record per line",
        )

    sp = sub.add_parser("sumset", help="print A+B and the restricted sumset with labels")
    add_common(sp, sets=True)
    sp.set_defaults(func=cmd_sumset)

    sp = sub.add_parser("cn", help="canonical grid-vanishing witness for f on A x B")
    add_common(sp, sets=True)
    sp.add_argument("--f", dest="f_file", default=None,
                    help="polynomial file ('c:i,j' lines; '-' for stdin); "
                         "defaults to the locus polynomial of the restricted sumset")
    sp.add_argument("--out", default=None, help="write the witness to a file")
    sp.set_defaults(func=cmd_cn)

    sp = sub.add_parser("audit", help="replay the coefficient-identity chain on one pair")
    add_common(sp, sets=True)
    sp.add_argument("--show-closed-forms", action="store_true",
                    help="print direct vs closed-form values side by side")
    sp.add_argument("--out", default=None, help="write the trace to a file")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("verify", help="run an exhaustive sweep and write a report")
    sp.add_argument("theorem", choices=("main", "karolyi", "bounds"))
    add_common(sp, k=True)
    sp.add_argument("--target", type=int, default=None,
                    help="override the extremal restricted-sumset size")
    sp.add_argument("--workers", type=int, default=1, help="parallel shard count")
    sp.add_argument("--out", default=None, help="report file path")
    sp.add_argument("--ceiling", type=int, default=None,
                    help="exhaustive ceiling override for p")
    sp.add_argument("--no-prune", action="store_true",
                    help="disable affine canonical pruning")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="stream k-subsets in lexicographic order")
    add_common(sp, k=True)
    sp.add_argument("--start", type=int, default=0, help="restart index")
    sp.add_argument("--limit", type=int, default=None, help="stop after this many sets")
    sp.set_defaults(func=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ModulusMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CeilingExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SumsetLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


def console_entry():
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
