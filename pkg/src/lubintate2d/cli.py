"""Command line driver.

Subcommands
    log        build a logarithm pair and verify its functional equation
    group      build a formal group (logarithm, exponential, group law)
    mult       build a multiplication endomorphism [a]
    copolygon  vertices, tie loci and pictures of Newton copolygons
    torsion    torsion-point valuations, sweeps and ramification data
    verify     run the verification battery on parameters or a fixture

Exit codes: 0 success, 1 a verification failed, 2 bad usage or inputs.
Failures print a single JSON line {"error": ..., "detail": ...} on stderr.
Outputs are deterministic byte-for-byte for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .copolygon import Copolygon, emit_svg, fraction_str, parse_support_text
from .fixtures import FIXTURE_NAMES, load_fixture
from .lubintate import (
    build_group,
    build_logarithm,
    gamma_endomorphism,
    group_axioms_report,
    group_to_text,
    height_of,
    multiplication,
    recursion_defects,
    verify_p_congruences,
)
from .padics import DEFAULT_PRECISION, UnramifiedRing, teichmuller
from .series import SeriesPair, dump_sections
from .torsion import (
    hypothesis_status,
    profile_report,
    ramification_csv,
    ramification_report,
    torsion_valuations,
    torsion_valuations_via_minplus,
)


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


def _fail(code: str, detail) -> None:
    sys.stderr.write(json.dumps({"error": code, "detail": detail},
                                sort_keys=True) + "\n")


def _env_precision() -> int:
    raw = os.environ.get("LT2D_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        prec = int(raw)
    except ValueError:
        raise UsageError(f"LT2D_PRECISION must be an integer, got {raw!r}")
    if prec < 1:
        raise UsageError("LT2D_PRECISION must be at least 1")
    return prec


def _write_text(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _series_header(args, **extra):
    header = {"p": args.p, "h1": args.h1, "h2": args.h2,
              "D": args.degree, "N": args.precision}
    header.update(extra)
    return header


def _add_params(sub, degree_default=None):
    sub.add_argument("-p", type=int, required=True, help="prime")
    sub.add_argument("--h1", type=int, required=True, help="first height")
    sub.add_argument("--h2", type=int, required=True, help="second height")
    sub.add_argument("-D", "--degree", type=int, default=degree_default,
                     required=degree_default is None,
                     help="total-degree truncation")


def cmd_log(args) -> int:
    log = build_logarithm(args.p, (args.h1, args.h2), args.degree, args.precision)
    defects = recursion_defects(log, args.p, (args.h1, args.h2))
    if defects:
        raise VerificationError(
            f"logarithm functional equation fails at {defects[:3]}")
    text = dump_sections(_series_header(args),
                         {"logarithm.1": log.first, "logarithm.2": log.second})
    _write_text(args, text)
    return 0


def cmd_group(args) -> int:
    group = build_group(args.p, (args.h1, args.h2), args.degree, args.precision)
    assoc = args.assoc_degree or min(8, args.degree)
    report = group_axioms_report(group, assoc_degree=assoc)
    if not report.ok:
        raise VerificationError([str(v) for v in report.violations])
    _write_text(args, group_to_text(group))
    return 0


def cmd_mult(args) -> int:
    group = build_group(args.p, (args.h1, args.h2), args.degree, args.precision)
    m = multiplication(args.a, group)
    mv = m.min_valuation()
    if mv is not None and mv < 0:
        raise VerificationError(f"[{args.a}] has a negative-valuation coefficient")
    text = dump_sections(_series_header(args, a=args.a),
                         {"mult.1": m.first, "mult.2": m.second})
    _write_text(args, text)
    return 0


def _copolygon_from_args(args) -> tuple:
    if args.fixture and args.support:
        raise UsageError("choose either --fixture or --support, not both")
    if args.fixture:
        data = load_fixture(args.fixture, args.degree)
        if isinstance(data, SeriesPair):
            comp = data.first if args.component == 1 else data.second
        else:
            if args.component == 2:
                raise UsageError(f"fixture {args.fixture} has a single component")
            comp = data
        return comp.p, comp.degree, Copolygon.from_series(comp)
    if args.support:
        try:
            with open(args.support) as f:
                return parse_support_text(f.read())
        except OSError as exc:
            raise UsageError(str(exc))
    raise UsageError("copolygon needs --fixture or --support")


def cmd_copolygon(args) -> int:
    p, degree, poly = _copolygon_from_args(args)
    if args.svg:
        with open(args.svg, "wb") as f:
            f.write(emit_svg(poly).encode("utf-8"))
    payload = {
        "p": p,
        "degree": degree,
        "functionals": [[i, j, fraction_str(v)] for i, j, v in poly.functionals],
        "vertices": [[fraction_str(x1), fraction_str(x2), fraction_str(val)]
                     for x1, x2, val in poly.vertices()],
        "tie_segments": [
            {"pair": [[s.first[0], s.first[1]], [s.second[0], s.second[1]]],
             "line": [s.line[0], s.line[1], fraction_str(s.line[2])],
             "t_lo": None if s.t_lo is None else fraction_str(s.t_lo),
             "t_hi": None if s.t_hi is None else fraction_str(s.t_hi)}
            for s in poly.tie_segments()],
    }
    if args.json:
        _emit_json(payload)
    else:
        lines = [f"copolygon over Z_{p}, degree {degree}"]
        for i, j, v in poly.functionals:
            lines.append(f"functional: {i} {j} {fraction_str(v)}")
        for x1, x2, val in poly.vertices():
            lines.append(f"vertex: {fraction_str(x1)} {fraction_str(x2)} "
                         f"value {fraction_str(val)}")
        lines.append(f"tie segments: {len(payload['tie_segments'])}")
        _write_text(args, "\n".join(lines) + "\n")
    return 0


def cmd_torsion(args) -> int:
    p, heights = args.p, (args.h1, args.h2)
    if args.csv and not args.ramification:
        raise UsageError("--csv applies to --ramification output")
    if args.ramification:
        report = ramification_report(p, heights)
        if args.csv:
            sys.stdout.write(ramification_csv([(p, heights)]))
        else:
            _emit_json({
                "p": report.p, "h1": report.h1, "h2": report.h2,
                "degree": report.degree,
                "v_xi": fraction_str(report.v_xi),
                "v_eta": fraction_str(report.v_eta),
                "witness_h1": report.witness_h1,
                "witness_h2": report.witness_h2,
            })
        return 0
    if args.sweep:
        rows = profile_report(p, heights, args.sweep)
        if not all(row["agree"] for row in rows):
            raise VerificationError("closed form and min-plus disagree")
        _emit_json([
            {"n": row["n"],
             "v_xi": fraction_str(row["v_xi"]),
             "v_eta": fraction_str(row["v_eta"]),
             "agree": row["agree"],
             "hypothesis_status": row["hypothesis_status"]}
            for row in rows])
        return 0
    if args.method == "closed":
        profile = torsion_valuations(p, heights, args.n)
    elif args.method == "minplus":
        profile = torsion_valuations_via_minplus(p, heights, args.n)
    else:
        profile = torsion_valuations(p, heights, args.n)
        other = torsion_valuations_via_minplus(p, heights, args.n)
        if profile != other:
            raise VerificationError(
                f"methods disagree at n={args.n}: {profile} vs {other}")
    _emit_json({
        "p": p, "h1": args.h1, "h2": args.h2, "n": args.n,
        "v_xi": fraction_str(profile.v_xi),
        "v_eta": fraction_str(profile.v_eta),
        "method": args.method,
        "hypothesis_status": hypothesis_status(p, heights),
    })
    return 0


def cmd_verify(args) -> int:
    from .lubintate import congruence_report
    from .fixtures import frobenius_profile, stored_mult45

    if args.fixture:
        if args.fixture != "mult45":
            raise UsageError("verify supports the stored fixture mult45")
        header, pair = stored_mult45()
        profile = frobenius_profile(pair, header["p"])
        report = congruence_report(pair, header["p"], (header["h1"], header["h2"]))
        payload = {
            "fixture": args.fixture,
            "linear_ok": profile["linear_ok"],
            "cross": profile["cross"],
            "exponents": profile["exponents"],
            "congruences_ok": report.ok,
            "violations": [str(v) for v in report.violations],
        }
        _emit_json(payload)
        return 0 if report.ok else 1
    checks = {}
    group = build_group(args.p, (args.h1, args.h2), args.degree, args.precision)
    defects = recursion_defects(group.logarithm, args.p, (args.h1, args.h2))
    checks["logarithm_recursion"] = not defects
    assoc = args.assoc_degree or min(8, args.degree)
    axioms = group_axioms_report(group, assoc_degree=assoc)
    checks["group_axioms"] = axioms.ok
    congruences = verify_p_congruences(group)
    checks["p_congruences"] = congruences.ok
    height = height_of(group)
    checks["height"] = height
    checks["height_ok"] = height == args.h1 + args.h2
    if args.unramified_degree:
        ring = UnramifiedRing(args.p, args.unramified_degree, prec=args.precision)
        gamma = teichmuller(ring, ring.generator())
        checks["gamma_endomorphism"] = gamma_endomorphism(gamma, group).ok
    ok = all(v is True for k, v in checks.items() if k != "height")
    checks["ok"] = ok
    _emit_json(checks)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lt2d",
        description="two-dimensional Lubin-Tate formal groups, Newton "
                    "copolygons and torsion-point valuations")
    parser.add_argument("-N", "--precision", type=int, default=None,
                        help="p-adic working precision "
                             "(default: LT2D_PRECISION or 64)")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("log", help="build and verify a logarithm pair")
    _add_params(s)
    s.add_argument("--out", help="write the series container to a file")
    s.set_defaults(func=cmd_log)

    s = sub.add_parser("group", help="build a formal group and check axioms")
    _add_params(s)
    s.add_argument("--assoc-degree", type=int, default=None,
                   help="degree for the associativity check (default min(8, D))")
    s.add_argument("--out", help="write the group container to a file")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("mult", help="build a multiplication endomorphism")
    _add_params(s)
    s.add_argument("-a", type=int, required=True, help="the multiplier")
    s.add_argument("--out", help="write the series container to a file")
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("copolygon", help="copolygon geometry of a series")
    s.add_argument("--fixture", choices=FIXTURE_NAMES,
                   help="named example input")
    s.add_argument("--support", help="path to a support file (p D header, "
                                     "then i j num/den lines)")
    s.add_argument("--component", type=int, choices=(1, 2), default=1,
                   help="component when the fixture is a pair")
    s.add_argument("-D", "--degree", type=int, default=None,
                   help="truncation degree for series fixtures")
    s.add_argument("--json", action="store_true", help="machine-readable output")
    s.add_argument("--svg", help="write a picture to this file")
    s.add_argument("--out", help="write the text report to a file")
    s.set_defaults(func=cmd_copolygon)

    s = sub.add_parser("torsion", help="torsion valuations and ramification")
    s.add_argument("-p", type=int, required=True, help="prime")
    s.add_argument("--h1", type=int, required=True, help="first height")
    s.add_argument("--h2", type=int, required=True, help="second height")
    s.add_argument("-n", type=int, default=1, help="torsion level")
    s.add_argument("--method", choices=("closed", "minplus", "both"),
                   default="both")
    s.add_argument("--sweep", type=int, default=None,
                   help="report levels 1..N with both methods")
    s.add_argument("--ramification", action="store_true",
                   help="report the ramification degree instead")
    s.add_argument("--csv", action="store_true",
                   help="CSV output for --ramification")
    s.set_defaults(func=cmd_torsion)

    s = sub.add_parser("verify", help="run the verification battery")
    s.add_argument("--fixture", help="verify a stored fixture instead")
    s.add_argument("-p", type=int, help="prime")
    s.add_argument("--h1", type=int, help="first height")
    s.add_argument("--h2", type=int, help="second height")
    s.add_argument("-D", "--degree", type=int, help="total-degree truncation")
    s.add_argument("--assoc-degree", type=int, default=None)
    s.add_argument("--unramified-degree", type=int, default=None,
                   help="also check the Teichmueller endomorphism over the "
                        "unramified extension of this degree")
    s.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.precision = args.precision or _env_precision()
        if args.func is cmd_verify and not args.fixture:
            missing = [n for n in ("p", "h1", "h2", "degree")
                       if getattr(args, n) is None]
            if missing:
                raise UsageError(f"verify needs --fixture or {missing}")
        return args.func(args)
    except UsageError as exc:
        _fail("usage", str(exc))
        return 2
    except VerificationError as exc:
        detail = exc.args[0] if exc.args else str(exc)
        _fail("verification", detail)
        return 1
    except (ValueError, ArithmeticError) as exc:
        _fail("usage", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
