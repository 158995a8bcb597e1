"""Command-line front end.

Exit codes: 0 pass, 1 check failed, 2 usage error, 3 mathematical domain
error (pole or moment guard).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from .algebra import UniPoly, format_rational, parse_rational
from .derive import LITERATURE_KINDS, check_grid, closed_form, derive, grid_specs, literature_reduction
from .ensemble import PARAM_NAMES, TAGS, EnsembleSpec
from .errors import GuardError, PoleError
from .jack import FAMILIES as DENSITY_FAMILIES, EigenDensity, jack_average, jack_average_normalized
from .mc import antispherical_from_k, default_workers, induced_from_m, mc_estimate, spherical_from_m1
from .symfunc import Partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

SAMPLER_ALIASES = {"induced": "m", "spherical": "m1", "antispherical": "k"}


class UsageError(Exception):
    pass


def poly_record(p: UniPoly) -> list:
    return [[k, format_rational(c)] for k, c in sorted(p.terms.items())]


def poly_from_record(rec) -> UniPoly:
    return UniPoly({int(k): parse_rational(c) for k, c in rec})


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=RATIONAL, got {text!r}")
    return name.strip(), _rational(value)


def _grid(text: str) -> tuple[str, list[Fraction]]:
    name, sep, values = text.partition("=")
    if not sep or not values:
        raise argparse.ArgumentTypeError(f"expected NAME=v1,v2,..., got {text!r}")
    return name.strip(), [_rational(v) for v in values.split(",")]


def _kappa(text: str) -> Partition:
    try:
        return Partition(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _spec_from_args(args, allow_sampler_params=False) -> EnsembleSpec:
    params = dict(args.param or [])
    family, _, suffix = args.ensemble.rpartition("-")
    field_kind = "real" if suffix == "r" else "quaternion"
    alias = SAMPLER_ALIASES.get(family)
    try:
        if allow_sampler_params and alias and alias in params:
            size = params.pop(alias)
            if size.denominator != 1:
                raise ValueError(f"{alias} must be an integer")
            fixed = {"induced": {}, "spherical": {"a1": 0}, "antispherical": {"b1": 0}}[family]
            for name, value in params.items():
                if name not in fixed or value != fixed[name]:
                    raise ValueError(f"parameter {name}={value} cannot be combined with {alias}")
            build = {"induced": induced_from_m, "spherical": spherical_from_m1,
                     "antispherical": antispherical_from_k}[family]
            return build(field_kind, args.n, int(size))
        return EnsembleSpec.from_tag(args.ensemble, args.n, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["poly", "degree", "coefficient"])
        for key in ("q_even", "q_odd"):
            for deg, c in record.get(key) or []:
                w.writerow([key, deg, c])
        if "value" in record:
            w.writerow(["value", "", record["value"]])
    else:
        for key, value in record.items():
            if key in ("q_even", "q_odd") and value is not None:
                value = str(poly_from_record(value))
            elif isinstance(value, (dict, list)):
                value = json.dumps(value)
            out.write(f"{key}: {value}\n")


def _pair_record(command, spec, pair, status="ok", mc=None) -> dict:
    return {
        "command": command,
        "ensemble": spec.tag,
        "n": spec.n,
        "params": {k: format_rational(v) for k, v in spec.params.items()},
        "q_even": poly_record(pair.q_even),
        "q_odd": poly_record(pair.q_odd),
        "mc": mc,
        "status": status,
    }


def cmd_derive(args, out) -> int:
    spec = _spec_from_args(args)
    _emit(_pair_record("derive", spec, derive(spec)), args.format, out)
    return EXIT_OK


def cmd_closed_form(args, out) -> int:
    spec = _spec_from_args(args)
    _emit(_pair_record("closed-form", spec, closed_form(spec)), args.format, out)
    return EXIT_OK


def cmd_check_symbolic(args, out) -> int:
    grid = {}
    for name, values in args.grid or []:
        if name not in ("alpha", "a1", "a2", "a2-offset", "b1", "b2"):
            raise UsageError(f"unknown grid parameter {name!r}")
        grid[name] = values
    tags = args.ensemble or None
    specs = grid_specs(args.n_max, grid, tags)
    report = check_grid(specs, closed=closed_form)
    record = {
        "command": "check-symbolic",
        "n_max": args.n_max,
        "checked": len(report.checked),
        "failures": [c.describe() for c in report.failures],
        "excluded": [
            {"ensemble": s.tag, "n": s.n,
             "params": {k: format_rational(v) for k, v in s.params.items()}, "reason": why}
            for s, why in report.excluded
        ],
        "status": "pass" if report.passed else "fail",
    }
    _emit(record, "json" if args.format == "csv" else args.format, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check_literature(args, out) -> int:
    params = dict(args.param or [])
    try:
        res = literature_reduction(args.kind, params, args.n)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, PoleError):
            raise
        raise UsageError(f"bad parameters for {args.kind}: {exc}") from None
    record = _pair_record("check-literature", res.spec, res.closed, "pass" if res.equal else "fail")
    record["kind"] = args.kind
    record["expected_q_odd"] = poly_record(res.expected_odd)
    _emit(record, args.format, out)
    return EXIT_OK if res.equal else EXIT_FAIL


def cmd_jack_average(args, out) -> int:
    try:
        density = EigenDensity(args.family, args.l1, args.l2, args.alpha, args.nvars, args.scale)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(args.kappa) > args.nvars:
        raise UsageError(f"kappa {list(args.kappa)} has more than {args.nvars} rows")
    record = {
        "command": "jack-average",
        "family": args.family,
        "alpha": format_rational(density.jack_alpha),
        "l1": format_rational(density.lambda1),
        "l2": format_rational(density.lambda2),
        "nvars": density.n_vars,
        "kappa": list(args.kappa),
        "scale": format_rational(density.scale),
        "normalized": format_rational(jack_average_normalized(density, args.kappa)),
        "value": None,
        "status": "ok",
    }
    if args.kappa.is_column():
        record["value"] = format_rational(jack_average(density, args.kappa))
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_verify_mc(args, out) -> int:
    spec = _spec_from_args(args, allow_sampler_params=True)
    which = {"even": ["charpoly"], "odd": ["charpoly-times-trace"],
             "both": ["charpoly", "charpoly-times-trace"]}[args.which]
    reports = {}
    try:
        for w in which:
            reports["even" if w == "charpoly" else "odd"] = mc_estimate(
                spec, w, args.samples, args.seed, args.sigma, args.workers or default_workers(),
                allow_quaternion_spherical=args.allow_quaternion_spherical,
            )
    except GuardError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    passed = all(r.passed for r in reports.values())
    record = _pair_record("verify-mc", spec, derive(spec), "pass" if passed else "fail",
                          {k: r.to_dict() for k, r in reports.items()})
    _emit(record, "json" if args.format == "csv" else args.format, out)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewop", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def ensemble_args(p):
        p.add_argument("--ensemble", required=True, choices=TAGS)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--param", type=_param, action="append", metavar="NAME=RATIONAL",
                       help="; ".join(f"{f}: {', '.join(v) or '-'}" for f, v in PARAM_NAMES.items()))

    def fmt(p, choices=("json", "csv", "pretty")):
        p.add_argument("--format", choices=choices, default="json")

    p = sub.add_parser("derive", help="derive Q_2n, Q_2n+1 through the Schur/Jack pipeline")
    ensemble_args(p); fmt(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("closed-form", help="evaluate the explicit formulas")
    ensemble_args(p); fmt(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("check-symbolic", help="compare derivation and closed forms on a grid")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--grid", type=_grid, action="append", metavar="NAME=v1,v2,...",
                   help="alpha, a1, a2 (absolute), a2-offset (a2 = 2n + a1 + offset), b1, b2")
    p.add_argument("--ensemble", action="append", choices=TAGS)
    fmt(p)
    p.set_defaults(func=cmd_check_symbolic)

    p = sub.add_parser("check-literature", help="check reductions to earlier parametrisations")
    p.add_argument("--kind", required=True, choices=LITERATURE_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--param", type=_param, action="append", metavar="NAME=RATIONAL",
                   help="spherical-induced: L, m; antispherical: L; antispherical-induced: L1, L2")
    fmt(p)
    p.set_defaults(func=cmd_check_literature)

    p = sub.add_parser("jack-average", help="exact Jack average over a Selberg-type density")
    p.add_argument("--family", required=True, choices=DENSITY_FAMILIES)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--l1", type=_rational, required=True)
    p.add_argument("--l2", type=_rational, default=Fraction(0))
    p.add_argument("--nvars", type=int, required=True)
    p.add_argument("--kappa", type=_kappa, default=Partition())
    p.add_argument("--scale", type=_rational, default=Fraction(1))
    fmt(p)
    p.set_defaults(func=cmd_jack_average)

    p = sub.add_parser("verify-mc", help="Monte Carlo check against sampled matrices")
    ensemble_args(p)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--sigma", type=float, default=4.0)
    p.add_argument("--which", choices=("even", "odd", "both"), default="both")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default from $SKEWOP_THREADS, else 1)")
    p.add_argument("--allow-quaternion-spherical", action="store_true",
                   help="opt in to the advisory quaternion spherical sampler")
    fmt(p)
    p.set_defaults(func=cmd_verify_mc)
    return ap


_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?$")


def _join_negative_values(argv):
    # argparse only recognises "-3" or "-0.5" as negative numbers, not "-1/2"
    joined = []
    for item in argv:
        if joined and joined[-1].startswith("--") and "=" not in joined[-1] and _NEGATIVE_VALUE.match(item):
            joined[-1] = f"{joined[-1]}={item}"
        else:
            joined.append(item)
    return joined


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleError, GuardError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run(argv=None) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout; argparse exits map to codes."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
