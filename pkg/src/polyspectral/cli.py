"""Command-line front end.

Every command prints one canonical JSON report on standard output. Exit
codes separate tool failure from mathematical outcome: 0 means the
computation ran and the checked condition holds (or there was nothing to
check), 2 means the computation ran and the condition is violated
(violations found, a certificate exists, a verdict is negative, or a
verification failed), and 1 means an input or usage error.

Rationals are serialized as "p/q" strings and reals as their shortest
round-tripping decimal form, so reports re-serialize byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .asymptotics import verify_main_term
from .equidecomp import equidecomposable_to_cube, translation_equidecomposable
from .fourier import Frequency, PrecisionError, ft_flag_measure, ft_indicator
from .geometry import Flag, GeometryError, Polytope, parse_polytope, polytope_volume
from .hadwiger import invariant_profile
from .spectral import (
    DEFAULT_TOLERANCE,
    SpectrumCandidate,
    non_spectrality_certificate,
    orthogonality_report,
)


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise CLIError(message)


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _real(x) -> str:
    return repr(float(x))


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh, parse_float=Fraction)


def _load_polytope(path: str, seed: int = 0) -> Polytope:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polytope(fh.read(), seed=seed)


def _load_flag(path: str, ambient: int) -> Flag:
    return Flag.from_dict(_load_json(path), ambient)


def _parse_xi(text: str, dim: int) -> Frequency:
    parts = [p.strip() for p in text.split(",")]
    try:
        coords = tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError(f"bad --xi value {text!r}: {exc}") from None
    if len(coords) != dim:
        raise CLIError(f"--xi has {len(coords)} coordinates, polytope has dimension {dim}")
    return Frequency.exact_mode(coords)


def _flag_payload(flag: Flag) -> dict:
    return {"r": flag.r, "normals": [list(u) for u in reversed(flag.normals)]}


def _cmd_validate(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    _emit(
        {
            "valid": True,
            "dim": poly.dim,
            "simplex_count": len(poly.simplices),
            "volume": _rat(polytope_volume(poly)),
        }
    )
    return 0


def _cmd_invariants(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    profile = invariant_profile(poly)
    entries = []
    all_zero = True
    for flag, value in profile.items():
        if not value.is_zero:
            all_zero = False
        entries.append(
            {
                **_flag_payload(flag),
                "rational_part": _rat(value.rational_part),
                "scale": _real(value.scale),
                "value": _real(value.float_value),
                "zero": value.is_zero,
            }
        )
    _emit({"all_zero": all_zero, "dim": poly.dim, "entries": entries})
    return 0 if all_zero else 2


def _cmd_ft(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    xi = _parse_xi(args.xi, poly.dim)
    if args.flag:
        flag = _load_flag(args.flag, poly.dim)
        value = ft_flag_measure(poly, flag, xi, args.precision)
    else:
        value = ft_indicator(poly, xi, args.precision)
    _emit({"re": value.re_str(), "im": value.im_str(), "precision_bits": value.precision_bits})
    return 0


def _cmd_spectrum_check(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    candidate = SpectrumCandidate.from_dict(_load_json(args.spectrum))
    report = orthogonality_report(poly, candidate, args.tol, args.precision)
    _emit(
        {
            "tol": _real(report.tol),
            "checked_pairs": report.checked_pairs,
            "min_separation": None if report.min_separation is None else _real(report.min_separation),
            "violations": [
                {
                    "lambda": [_rat(c) for c in lam.coords],
                    "lambda_prime": [_rat(c) for c in lam2.coords],
                    "modulus": _real(modulus),
                }
                for lam, lam2, modulus in report.violations
            ],
        }
    )
    return 2 if report.violations else 0


def _cmd_certify(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    cert = non_spectrality_certificate(poly)
    if cert is None:
        _emit({"certificate": None})
        return 0
    _emit(
        {
            "certificate": {
                **_flag_payload(cert.flag),
                "rational_part": _rat(cert.value.rational_part),
                "scale": _real(cert.value.scale),
                "value": _real(cert.value.float_value),
                "statement": cert.statement,
            }
        }
    )
    return 2


def _cmd_equidecomp(args) -> int:
    poly_a = _load_polytope(args.polytope_a, args.seed)
    if args.to_cube:
        if args.polytope_b is not None:
            raise CLIError("--to-cube takes a single polytope")
        verdict = equidecomposable_to_cube(poly_a)
    else:
        if args.polytope_b is None:
            raise CLIError("equidecomp needs two polytopes (or --to-cube)")
        poly_b = _load_polytope(args.polytope_b, args.seed)
        verdict = translation_equidecomposable(poly_a, poly_b)
    _emit(
        {
            "equidecomposable": verdict.equidecomposable,
            "volume_a": _rat(verdict.volume_a),
            "volume_b": _rat(verdict.volume_b),
            "witnesses": [
                {
                    **_flag_payload(flag),
                    "value_a": _rat(va.rational_part),
                    "value_b": _rat(vb.rational_part),
                    "scale": _real(va.scale),
                }
                for flag, va, vb in verdict.witnesses
            ],
        }
    )
    return 0 if verdict.equidecomposable else 2


def _cmd_asymptotics(args) -> int:
    poly = _load_polytope(args.polytope, args.seed)
    flag = _load_flag(args.flag, poly.dim)
    report = verify_main_term(
        poly, flag, args.eta, samples=args.samples, seed=args.seed, precision=args.precision
    )
    _emit(
        {
            "eta": _real(report.eta),
            "delta_used": _real(report.delta_used),
            "L_used": _real(report.L_used),
            "alpha_used": _real(report.alpha_used),
            "samples": report.samples,
            "max_residual": _real(report.max_residual),
            "pass": report.passed,
            "empirical_c": None if report.empirical_c is None else _real(report.empirical_c),
            "witness_xi": None
            if report.witness_xi is None
            else [_real(x) for x in report.witness_xi],
        }
    )
    return 0 if report.passed else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="polyspectral", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p, precision=True):
        p.add_argument("--seed", type=int, default=0, help="seed for any randomized step")
        if precision:
            p.add_argument("--precision", type=int, default=53, help="working precision in bits")

    p = sub.add_parser("validate", help="parse and validate a polytope file")
    p.add_argument("polytope")
    common(p, precision=False)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("invariants", help="full invariant profile over all flag levels")
    p.add_argument("polytope")
    common(p, precision=False)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("ft", help="Fourier transform of the indicator or a flag measure")
    p.add_argument("polytope")
    p.add_argument("--xi", required=True, help="comma-separated rationals or decimals")
    p.add_argument("--flag", help="flag JSON file; if given, transform its flag measure")
    common(p)
    p.set_defaults(handler=_cmd_ft)

    p = sub.add_parser("spectrum-check", help="orthogonality of a candidate spectrum window")
    p.add_argument("polytope")
    p.add_argument("spectrum", help='JSON file {"points": [[...], ...]}')
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    common(p)
    p.set_defaults(handler=_cmd_spectrum_check)

    p = sub.add_parser("certify", help="non-spectrality certificate, if one exists")
    p.add_argument("polytope")
    common(p, precision=False)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("equidecomp", help="translational equidecomposability verdict")
    p.add_argument("polytope_a")
    p.add_argument("polytope_b", nargs="?")
    p.add_argument("--to-cube", action="store_true", help="compare against an abstract cube")
    common(p, precision=False)
    p.set_defaults(handler=_cmd_equidecomp)

    p = sub.add_parser("asymptotics", help="verify the cone-domain main-term approximation")
    p.add_argument("polytope")
    p.add_argument("--flag", required=True, help="flag JSON file")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--samples", type=int, default=1000)
    common(p)
    p.set_defaults(handler=_cmd_asymptotics)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GeometryError, PrecisionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
