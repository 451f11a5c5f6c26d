"""Command-line entry point.

Every subcommand has a ``--json`` mode emitting exactly one document with a
deterministic ordering.  Exit codes: 0 for success or a passing
certificate, 1 for a failing certificate or verification, 2 for usage
errors (argparse's own convention included).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import certify, cyclo, midconv, series, tracefield
from .hyper import (
    HypergeometricDatum,
    classify_rank2,
    is_irreducible,
    is_kummer_induced,
    monodromy_triple,
    triangle_signature,
)
from .ratcore import format_rational, parse_rational

USAGE_ERROR = 2


def _usage_error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _parse_rational_list(text: str) -> list[Fraction]:
    try:
        return [parse_rational(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        _usage_error(str(exc))
        raise SystemExit(USAGE_ERROR)


def _emit(payload: dict, as_json: bool, human_lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _datum(args) -> HypergeometricDatum:
    return HypergeometricDatum.from_fractions(
        _parse_rational_list(args.a), _parse_rational_list(args.b)
    )


def _cmd_series_solve(args) -> int:
    sol = _solve_from_args(args)
    payload = {"coefficients": sol.serialize(), "terms": sol.truncation}
    _emit(
        payload,
        args.json,
        [f"a_{n} = {c}" for n, c in enumerate(sol.serialize())],
    )
    return 0


def _solve_from_args(args) -> series.SeriesSolution:
    if args.operator == "krammer":
        op = series.krammer_operator()
    else:
        if not args.a or not args.b:
            _usage_error("--operator hyp needs --a and --b")
            raise SystemExit(USAGE_ERROR)
        op = series.hyp_operator(
            _parse_rational_list(args.a), _parse_rational_list(args.b)
        )
    initial = _parse_rational_list(args.init)
    try:
        return series.solve_at_ordinary_point(op, initial, args.terms)
    except series.SolveError as exc:
        _usage_error(str(exc))
        raise SystemExit(USAGE_ERROR)


def _cmd_series_audit(args) -> int:
    sol = _solve_from_args(args)
    audit = series.denominator_audit(sol, (args.window_from, args.window_to))
    payload = audit.serialize()
    _emit(
        payload,
        args.json,
        [
            f"window [{args.window_from}, {args.window_to}]",
            f"max d_n^(1/n) <= {format_rational(audit.window_root_max)}",
            f"root at window start {format_rational(audit.root_start)}, end {format_rational(audit.root_end)}",
            f"unbounded growth flagged: {audit.unbounded_flag}",
        ],
    )
    return 0


def _cmd_hyper_classify(args) -> int:
    h = _datum(args)
    tag = classify_rank2(h)
    payload = {
        "classification": tag,
        "irreducible": is_irreducible(h),
        "kummer_induced_degree": is_kummer_induced(h),
        "conductor": h.conductor,
    }
    if tag not in ("reducible",):
        payload["signature"] = list(triangle_signature(h).orders)
    _emit(payload, args.json, [f"{k}: {v}" for k, v in payload.items()])
    return 0


def _cmd_hyper_monodromy(args) -> int:
    h = _datum(args)
    triple = monodromy_triple(h)
    payload = {
        "conductor": triple.field.conductor,
        "g0": triple.g0.serialize(),
        "g1": triple.g1.serialize(),
        "gInf": triple.gInf.serialize(),
        "verified": {
            "product_identity": True,
            "char_poly_alpha": True,
            "char_poly_beta": True,
            "pseudoreflection": True,
            "det_g1": True,
            "unique_jordan_blocks": True,
        },
    }
    _emit(
        payload,
        args.json,
        [
            f"conductor {payload['conductor']}",
            f"g0 = {payload['g0']}",
            f"g1 = {payload['g1']}",
            f"gInf = {payload['gInf']}",
            "all local-monodromy identities verified",
        ],
    )
    return 0


def _field_payload(descriptor) -> dict:
    payload = descriptor.describe()
    payload["quadratic_subfields"] = cyclo.quadratic_subfields(descriptor)
    return payload


def _cmd_field(args, adjoint: bool) -> int:
    h = _datum(args)
    if adjoint:
        descriptor = tracefield.adjoint_trace_field_rank2(h)
    else:
        descriptor = tracefield.trace_field_rigid(h)
    payload = _field_payload(descriptor)
    _emit(payload, args.json, [f"{k}: {v}" for k, v in sorted(payload.items())])
    return 0


def _cmd_midconv_verify(args) -> int:
    report = midconv.verify_family(args.m, args.s, args.t)
    payload = report.to_dict()
    lines = [f"family member m={args.m}, character ({args.s}, {args.t})"]
    for item in payload["items"]:
        lines.append(
            f"  [{'pass' if item['passed'] else 'FAIL'}] {item['check']}"
            + (f" ({item['detail']})" if item["detail"] else "")
        )
    lines.append(f"verdict: {'pass' if report.passed else 'fail'}")
    _emit(payload, args.json, lines)
    return 0 if report.passed else 1


def _report_result(report, as_json: bool) -> int:
    payload = report.to_dict()
    lines = [f"claim: {payload['claim']}"]
    for step in payload["steps"]:
        lines.append(f"  [{'pass' if step['passed'] else 'FAIL'}] {step['statement']}")
        if step["witness"]:
            lines.append(f"         {step['witness']}")
    lines.append(f"verdict: {payload['verdict']}")
    _emit(payload, as_json, lines)
    return 0 if report.verdict else 1


def _cmd_enumerate(args) -> int:
    rows = certify.enumerate_rank2(args.conductor_max, workers=args.workers)
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.classification] = counts.get(row.classification, 0) + 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row.to_dict(), sort_keys=True) + "\n")
    payload = {
        "conductor_max": args.conductor_max,
        "rows": len(rows),
        "classification_counts": dict(sorted(counts.items())),
        "out": args.out,
        "all_fields_abelian": True,
    }
    _emit(payload, args.json, [f"{k}: {v}" for k, v in payload.items()])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypertrace",
        description="exact hypergeometric monodromy, trace fields, and G-series audits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_series = sub.add_parser("series", help="series solving and growth audits")
    series_sub = p_series.add_subparsers(dest="subcommand", required=True)
    for name in ("solve", "audit"):
        sp = series_sub.add_parser(name)
        sp.add_argument("--operator", choices=("krammer", "hyp"), default="krammer")
        sp.add_argument("--a", default="")
        sp.add_argument("--b", default="")
        sp.add_argument("--init", required=True, help="comma-separated initial coefficients")
        sp.add_argument("--terms", type=int, default=400)
        sp.add_argument("--json", action="store_true")
        if name == "audit":
            sp.add_argument("--from", dest="window_from", type=int, required=True)
            sp.add_argument("--to", dest="window_to", type=int, required=True)
            sp.set_defaults(func=_cmd_series_audit)
        else:
            sp.set_defaults(func=_cmd_series_solve)

    p_hyper = sub.add_parser("hyper", help="hypergeometric data")
    hyper_sub = p_hyper.add_subparsers(dest="subcommand", required=True)
    for name, func in (("classify", _cmd_hyper_classify), ("monodromy", _cmd_hyper_monodromy)):
        sp = hyper_sub.add_parser(name)
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=func)

    p_field = sub.add_parser("field", help="trace fields")
    field_sub = p_field.add_subparsers(dest="subcommand", required=True)
    for name, adjoint in (("trace", False), ("adjoint", True)):
        sp = field_sub.add_parser(name)
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=lambda a, adj=adjoint: _cmd_field(a, adj))

    p_mid = sub.add_parser("midconv", help="middle convolution family")
    mid_sub = p_mid.add_subparsers(dest="subcommand", required=True)
    sp = mid_sub.add_parser("verify")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_midconv_verify)

    p_cert = sub.add_parser("certify", help="exclusion certificates")
    cert_sub = p_cert.add_subparsers(dest="subcommand", required=True)
    sp = cert_sub.add_parser("quadratic")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=lambda a: _report_result(certify.certify_quadratic_exclusion(a.d), a.json))
    sp = cert_sub.add_parser("cubic")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=lambda a: _report_result(certify.certify_nonabelian_cubic(a.disc), a.json))
    sp = cert_sub.add_parser("krammer")
    sp.add_argument("--primes", default="", help="comma-separated ramified primes")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(
        func=lambda a: _report_result(
            certify.certify_krammer_route(
                {int(tok) for tok in a.primes.split(",") if tok.strip()}
            ),
            a.json,
        )
    )
    sp = cert_sub.add_parser("singularities")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=lambda a: _report_result(certify.audit_krammer_singularities(), a.json))

    sp = sub.add_parser("enumerate", help="rank-2 enumeration database")
    sp.add_argument("--conductor-max", type=int, required=True)
    sp.add_argument("--out", default=None, help="write rows as JSON lines")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except (ValueError, ZeroDivisionError) as exc:
        _usage_error(str(exc))
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
