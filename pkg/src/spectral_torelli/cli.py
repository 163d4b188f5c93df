"""Command-line front end.

Every command assembles an envelope {"command", "inputs", "outputs"};
--json prints exactly that on stdout (logs go to stderr), otherwise a
terse human rendering is shown. Exit codes: 0 success (for
certify-endo this means a TRIVIAL verdict), 1 an identity check that
came back false, 2 input errors, 3 degenerate curve or bad reduction,
4 inconclusive.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

from .curve_catalog import catalog_entries, catalog_get, load_curve_file, reduce_mod_p
from .endo_pipeline import (
    certify_endomorphisms,
    frobenius_verdict,
    resolve_curve,
    verify_painleve_divisor_gar92,
)
from .errors import (
    DegenerateCurveError,
    InconclusiveError,
    PolyParseError,
    ReducibleQuarticError,
    UndefinedChartError,
)
from .finite_arithmetic import (
    PointCount,
    count_points,
    is_prime,
    point_counts,
    weil_polynomial,
    zeta_rational_form,
)
from .galois_certificates import galois_group
from .igusa_invariants import DEFAULT_SEED, igusa, independence_rank

_log = logging.getLogger("spectral_torelli.cli")


def _rat(value):
    frac = Fraction(value)
    return {"num": str(frac.numerator), "den": str(frac.denominator)}


def _parse_point(text):
    """Parse 'h1=12,h2=17/3,s=29' into a name -> Fraction dict."""
    point = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, value = chunk.partition("=")
        if not sep or not name.strip():
            raise PolyParseError(f"expected name=value, got {chunk!r}")
        try:
            point[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise PolyParseError(f"bad rational value {value!r}") from None
    if not point:
        raise PolyParseError("--at carries no assignments")
    return point


def _curve_source(args):
    """(source, point) from --family/--file/--at flags."""
    point = _parse_point(args.at) if args.at else None
    source = load_curve_file(args.file) if args.file else args.family
    return source, point


def _source_inputs(args, point):
    inputs = {}
    if getattr(args, "family", None):
        inputs["family"] = args.family
    if getattr(args, "file", None):
        inputs["file"] = args.file
    if point:
        inputs["at"] = {k: _rat(v) for k, v in sorted(point.items())}
    return inputs


def _weil_payload(weil, counts):
    return {
        "p": weil.p,
        "N1": counts.n1,
        "N2": counts.n2,
        "a1": weil.a1,
        "a2": weil.a2,
        "L": list(weil.l_coefficients),
        "P": list(weil.frobenius_coefficients),
    }


def _cmd_catalog(args):
    return {}, {"families": catalog_entries()}, 0


def _cmd_invariants(args):
    source, point = _curve_source(args)
    curve, label, point_used, _ = resolve_curve(source, point)
    inputs = _source_inputs(args, point_used)
    inv = igusa(curve)
    outputs = {
        "source": label,
        "J2": _rat(inv.j2),
        "J4": _rat(inv.j4),
        "J6": _rat(inv.j6),
        "J8": _rat(inv.j8),
        "J10": _rat(inv.j10),
    }
    try:
        i1, i2, i3 = inv.absolute()
        outputs["absolute"] = {"I1": _rat(i1), "I2": _rat(i2), "I3": _rat(i3)}
    except UndefinedChartError:
        outputs["absolute"] = None
    return inputs, outputs, 0


def _cmd_independence(args):
    family = catalog_get(args.family)
    report = independence_rank(family, trials=args.trials, seed=args.seed)
    inputs = {"family": args.family, "trials": args.trials, "seed": args.seed}
    outputs = {
        "family": report.identifier,
        "rank": report.rank,
        "trials_used": report.trials,
        "rejected": report.rejected,
        "seed": report.seed,
        "witness": {k: _rat(v) for k, v in sorted(report.witness.items())},
    }
    return inputs, outputs, 0


def _cmd_count_points(args):
    source, point = _curve_source(args)
    curve, label, point_used, _ = resolve_curve(source, point)
    inputs = _source_inputs(args, point_used)
    inputs.update({"p": args.p, "ext": args.ext, "threads": args.threads})
    reduction = reduce_mod_p(curve, args.p)
    _log.info("counting points of %s modulo %d", label, args.p)
    if args.ext == 2:
        counts = point_counts(reduction, args.p, threads=args.threads)
        outputs = _weil_payload(weil_polynomial(counts), counts)
    else:
        n1 = count_points(reduction, args.p, extension=1, threads=args.threads)
        outputs = {
            "p": args.p,
            "N1": n1,
            "N2": None,
            "a1": None,
            "a2": None,
            "L": None,
            "P": None,
        }
    return inputs, outputs, 0


def _require_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _cmd_zeta(args):
    _require_prime(args.p)
    counts = PointCount(args.p, args.n1, args.n2)
    weil = weil_polynomial(counts)
    inputs = {"p": args.p, "n1": args.n1, "n2": args.n2}
    outputs = _weil_payload(weil, counts)
    outputs["zeta"] = zeta_rational_form(weil)
    return inputs, outputs, 0


def _cmd_galois(args):
    try:
        descending = [int(chunk) for chunk in args.poly.split(",")]
    except ValueError:
        raise PolyParseError(
            f"--poly wants integer coefficients, got {args.poly!r}"
        ) from None
    if len(descending) != 5:
        raise PolyParseError("--poly wants 5 coefficients c4,c3,c2,c1,c0")
    if descending[0] != 1:
        raise PolyParseError("the quartic must be monic (c4 = 1)")
    inputs = {"poly": descending}
    ascending = tuple(reversed(descending))
    try:
        analysis = galois_group(ascending)
    except ReducibleQuarticError as exc:
        outputs = {
            "poly": descending,
            "irreducible": False,
            "group": None,
            "factors": [list(f) for f in exc.factors],
            "note": str(exc),
        }
        return inputs, outputs, 0
    outputs = {
        "poly": descending,
        "irreducible": True,
        "group": analysis.group,
        "discriminant": analysis.discriminant,
        "resolvent": list(analysis.resolvent),
        "resolvent_roots": list(analysis.resolvent_roots),
        "factors": None,
    }
    return inputs, outputs, 0


def _cmd_frobenius(args):
    _require_prime(args.p)
    counts = PointCount(args.p, args.n1, args.n2)
    weil = weil_polynomial(counts)
    inputs = {"p": args.p, "n1": args.n1, "n2": args.n2}
    outputs = _weil_payload(weil, counts)
    outputs.update(frobenius_verdict(weil, ratios=True))
    return inputs, outputs, 0


def _cmd_certify(args):
    source, point = _curve_source(args)
    cert = certify_endomorphisms(
        source,
        point,
        args.p1,
        args.p2,
        geometric=args.geometric,
        threads=args.threads,
    )
    inputs = _source_inputs(args, cert.point)
    inputs.update(
        {
            "p1": args.p1,
            "p2": args.p2,
            "geometric": args.geometric,
            "threads": args.threads,
        }
    )
    return inputs, cert.as_dict(), 0 if cert.trivial else 4


def _cmd_verify_divisor(args):
    report = verify_painleve_divisor_gar92()
    outputs = {
        "flow": args.flow,
        "identical": report.identical,
        "stages": [
            {"name": name, "ok": ok, "note": note}
            for name, ok, note in report.stages
        ],
    }
    if report.difference is not None:
        outputs["difference"] = str(report.difference)
    return {"flow": args.flow}, outputs, 0 if report.identical else 1


def _add_curve_source(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help="catalog family identifier")
    group.add_argument("--file", help="path to a curve JSON file")
    parser.add_argument(
        "--at",
        help="parameter point, e.g. h1=12,h2=17,s=29 (rationals allowed)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spectral-torelli",
        description=(
            "Exact genus-2 spectral-curve toolkit: Igusa invariants, "
            "point counts, Weil data, and endomorphism certificates."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit a JSON envelope on stdout"
    )
    common.add_argument(
        "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    q = sub.add_parser(
        "catalog", parents=[common], help="list the registered spectral families"
    )
    q.set_defaults(handler=_cmd_catalog)

    q = sub.add_parser(
        "invariants",
        parents=[common],
        help="Igusa invariants of a curve or of a family member",
    )
    _add_curve_source(q)
    q.set_defaults(handler=_cmd_invariants)

    q = sub.add_parser(
        "independence",
        parents=[common],
        help="rank of the absolute-invariant map of a family",
    )
    q.add_argument("--family", required=True)
    q.add_argument("--trials", type=int, default=16)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.set_defaults(handler=_cmd_independence)

    q = sub.add_parser(
        "count-points",
        parents=[common],
        help="point counts of a curve reduced modulo p",
    )
    _add_curve_source(q)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--ext", type=int, choices=(1, 2), default=2)
    q.add_argument("--threads", type=int, default=None)
    q.set_defaults(handler=_cmd_count_points)

    q = sub.add_parser(
        "zeta",
        parents=[common],
        help="Weil data and zeta numerator from two point counts",
    )
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--n1", type=int, required=True)
    q.add_argument("--n2", type=int, required=True)
    q.set_defaults(handler=_cmd_zeta)

    q = sub.add_parser(
        "galois",
        parents=[common],
        help="Galois class of a monic integer quartic",
    )
    q.add_argument(
        "--poly",
        required=True,
        help="descending coefficients c4,c3,c2,c1,c0 with c4=1",
    )
    q.set_defaults(handler=_cmd_galois)

    q = sub.add_parser(
        "frobenius",
        parents=[common],
        help="endomorphism-field verdict from counts at one prime",
    )
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--n1", type=int, required=True)
    q.add_argument("--n2", type=int, required=True)
    q.set_defaults(handler=_cmd_frobenius)

    q = sub.add_parser(
        "certify-endo",
        parents=[common],
        help="two-prime endomorphism-triviality certificate",
    )
    _add_curve_source(q)
    q.add_argument("--p1", type=int, required=True)
    q.add_argument("--p2", type=int, required=True)
    q.add_argument(
        "--geometric",
        action="store_true",
        help="also run the root-of-unity ratio tests and, when they "
        "pass, upgrade the verdict to the geometric one",
    )
    q.add_argument("--threads", type=int, default=None)
    q.set_defaults(handler=_cmd_certify)

    q = sub.add_parser(
        "verify-divisor",
        parents=[common],
        help="replay the divisor/spectral-curve identity",
    )
    q.add_argument("flow", choices=("gar92",))
    q.set_defaults(handler=_cmd_verify_divisor)
    return parser


def _fmt(value):
    if isinstance(value, dict) and set(value.keys()) == {"num", "den"}:
        num, den = value["num"], value["den"]
        return num if den == "1" else f"{num}/{den}"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def _print_human(envelope):
    print(f"[{envelope['command']}]")
    for key, value in envelope["outputs"].items():
        if isinstance(value, list) and value and isinstance(value[0], (dict, str)):
            print(f"{key}:")
            for item in value:
                print(f"  - {_fmt(item)}")
        else:
            print(f"{key} = {_fmt(value)}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        inputs, outputs, code = args.handler(args)
    except DegenerateCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InconclusiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    envelope = {"command": args.command, "inputs": inputs, "outputs": outputs}
    if args.json:
        print(json.dumps(envelope, indent=2))
    else:
        _print_human(envelope)
    return code


if __name__ == "__main__":
    sys.exit(main())
