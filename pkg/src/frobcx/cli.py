"""Command-line front end.

Exit codes: 0 on success (or a verified claim), 1 on a verification
mismatch, 2 on invalid input.

    frobcx betti --gens 2,3 --cap 20 --format tsv
    frobcx verify-extension --base-gens 2 --rho 6 --r 2 --cap 12
    frobcx compare-series --family two_gen --a 2 --b 3 --cap 24
"""

from __future__ import annotations

import argparse
import json
import sys

from .complexes import Field
from .errors import InvalidInputError
from .extension import adjoin
from .extension import from_spec as ext_from_spec
from .frobenius import betti_table, check_suspension_prop, default_jobs, verify_extension
from .monoid import AffineMonoid
from .series import (
    closed_form,
    direct_series,
    expand_closed_form,
    family_monoid,
    geometric_p2_form,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidInputError(message)


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from None


def _cap(text: str):
    vals = _int_list(text)
    if not vals:
        raise InvalidInputError("--cap must not be empty")
    return tuple(vals)


def _load_spec(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"--spec: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"--spec: invalid JSON in {path}: {exc.msg}") from None


def _monoid_or_extension(args, allow_plain=True):
    """Resolve the object to compute on from --spec / --gens / --base-gens."""
    if getattr(args, "spec", None):
        spec = _load_spec(args.spec)
        if isinstance(spec, dict) and "base" in spec:
            return ext_from_spec(spec)
        if not allow_plain:
            raise InvalidInputError("--spec: an extension spec with 'base', 'rho', 'r' is required")
        return AffineMonoid.from_spec(spec)
    if getattr(args, "base_gens", None):
        if args.rho is None or args.r is None:
            raise InvalidInputError("--base-gens needs --rho and --r")
        base = AffineMonoid.from_generators(_int_list(args.base_gens))
        return adjoin(base, _int_list(args.rho), args.r)
    if allow_plain and getattr(args, "gens", None):
        return AffineMonoid.from_generators(_int_list(args.gens))
    need = "--gens, --base-gens or --spec" if allow_plain else "--base-gens or --spec"
    raise InvalidInputError(f"one of {need} is required")


def _add_source(p, plain=True):
    if plain:
        p.add_argument("--gens", help="generators of a submonoid of N, e.g. 2,3")
    p.add_argument("--spec", help="JSON file with a monoid or extension spec")
    p.add_argument("--base-gens", help="generators of the base monoid of an extension")
    p.add_argument("--rho", help="element rho of the base monoid")
    p.add_argument("--r", type=int, help="adjoin the r-th part of rho")


def _add_common(p, formats):
    p.add_argument("--cap", type=_cap, required=True, help="grade bound, e.g. 20 or 3,4")
    p.add_argument("--field", default="gf2", help="gf2 (default), gf3, gf5, gfP, rational")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--no-reduce", action="store_true", help="skip the poset core reduction")


def _add_family(p):
    p.add_argument("--family", required=True, choices=["two_gen", "pqr", "arithmetic", "geometric"])
    for name in ("a", "b", "d", "p", "q", "r", "n"):
        p.add_argument(f"--{name}", type=int)


def _family_params(args) -> dict:
    names = {
        "two_gen": ("a", "b"),
        "pqr": ("p", "q", "r"),
        "arithmetic": ("a", "d"),
        "geometric": ("p", "q", "n"),
    }[args.family]
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidInputError(f"family {args.family} needs {', '.join(missing)}")
    return {n: getattr(args, n) for n in names}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frobcx", description="Frobenius complexes and Poincare series of affine monoids.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", help="Betti table (grade, i, betti)")
    _add_source(p)
    _add_common(p, ["tsv", "json"])

    p = sub.add_parser("verify-extension", help="check the wedge formula for Lambda[rho/r]")
    _add_source(p, plain=False)
    _add_common(p, ["text", "json"])

    p = sub.add_parser("suspension-check", help="check the r = 2 suspension identity")
    _add_source(p, plain=False)
    _add_common(p, ["text", "json"])

    p = sub.add_parser("poincare", help="truncated Poincare series by direct homology")
    _add_source(p)
    _add_common(p, ["text", "json"])

    p = sub.add_parser("closed-form", help="closed-form series of a family")
    _add_family(p)
    p.add_argument("--cap", type=_cap, help="also print the expansion up to this grade")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")

    p = sub.add_parser("compare-series", help="direct series vs closed form")
    _add_family(p)
    _add_common(p, ["text", "json"])
    return parser


def _emit(text: str, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(report, label):
    lines = [f"{'PASS' if report.passed else 'FAIL'}"]
    lines.append(f"{label}: {report.n_checked} grades checked, {report.n_failed} failed, field {report.field}")
    for c in report.failures():
        lines.append(f"  mismatch at {c.grade!r}: direct {c.direct!r} expected {c.predicted!r}")
    return "\n".join(lines)


def _run(args) -> int:
    jobs = default_jobs()
    cmd = args.command
    if cmd == "closed-form":
        expr = closed_form(args.family, **_family_params(args))
        if args.format == "json":
            payload = {"numerator": [[a, list(g)] for a, g in expr.numerator],
                       "denominator": [[a, list(g)] for a, g in expr.denominator]}
            if args.cap:
                payload["expansion"] = json.loads(expand_closed_form(expr, args.cap).to_json())
            _emit(json.dumps(payload), args.out)
        else:
            text = str(expr)
            if args.cap:
                text += "\n" + expand_closed_form(expr, args.cap).to_string()
            _emit(text, args.out)
        return 0

    field = Field.parse(args.field)
    reduce = not args.no_reduce

    if cmd == "compare-series":
        params = _family_params(args)
        expr = closed_form(args.family, **params)
        direct = direct_series(family_monoid(args.family, **params), args.cap, field, reduce, jobs)
        forms = {"closed_form": expand_closed_form(expr, args.cap)}
        if args.family == "geometric" and params["p"] == 2:
            forms["p2_form"] = expand_closed_form(geometric_p2_form(params["q"], params["n"]), args.cap)
        equal = {k: v == direct for k, v in forms.items()}
        ok = all(equal.values())
        if args.format == "json":
            _emit(json.dumps({"equal": ok, "forms": equal, "direct": json.loads(direct.to_json())}), args.out)
        else:
            _emit("EQUAL" if ok else "DIFFER: " + ", ".join(k for k, v in equal.items() if not v), args.out)
        return 0 if ok else 1

    target = _monoid_or_extension(args, allow_plain=cmd in ("betti", "poincare"))
    if cmd == "betti":
        table = betti_table(target, args.cap, field, reduce, jobs)
        _emit(table.to_tsv() if args.format == "tsv" else table.to_json(), args.out)
        return 0
    if cmd == "poincare":
        s = direct_series(target, args.cap, field, reduce, jobs)
        _emit(s.to_json() if args.format == "json" else s.to_string(), args.out)
        return 0
    if cmd == "verify-extension":
        report = verify_extension(target, args.cap, field, reduce, jobs)
        label = "wedge formula"
    else:
        report = check_suspension_prop(target, args.cap, field, reduce, jobs)
        label = "suspension identity"
    _emit(report.to_json() if args.format == "json" else _report_text(report, label), args.out)
    return 0 if report.passed else 1


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except InvalidInputError as exc:
        print(f"frobcx: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
