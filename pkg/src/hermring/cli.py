"""Command-line front end: ``hermring expand|verify|congruence|cache``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .cache import ENV_VAR, SeriesStore, atomic_write, default_cache_dir
from .checks import Check, check, summary
from .eisenlift import (
    RECIPES,
    NeedsMoreTermsError,
    WeightMismatchError,
    plus_space_check,
    published_table,
    recipe_expand,
    table_mismatch,
)
from .expr import ExprSyntaxError, ExprTypeError, UnknownIdentifierError, evaluate
from .genring import GeneratorLedger, LedgerBuildError
from .igusa import IgusaLedger, verify_restriction_proposition, verify_two_path
from .series import HermitianSeries, NotPIntegralError, SiegelSeries, multiplication_count, reset_multiplication_count
from .sturm import check_congruence_hermitian, check_congruence_siegel

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TRUNC = 3
ELLIPTIC_TRUNC = 68


class UsageError(Exception):
    pass


def _store(args) -> SeriesStore | None:
    root = args.cache_dir or default_cache_dir()
    return SeriesStore(root) if root else None


def _ledger(args) -> GeneratorLedger:
    if args.trunc < 1:
        raise UsageError("--trunc must be at least 1")
    return GeneratorLedger(args.trunc, _store(args))


def _report(checks: list[Check], out) -> int:
    for c in checks:
        print(c.line(), file=out)
    print(summary(checks), file=out)
    return EXIT_FAIL if any(c.status == "FAIL" for c in checks) else EXIT_OK


# -- subcommands -------------------------------------------------------------


def cmd_expand(args, out) -> int:
    text = args.expr if args.expr is not None else args.name
    label = args.name or "expr"
    if args.name in RECIPES:
        series = recipe_expand(RECIPES[args.name], args.trunc)
    else:
        series = evaluate(text, _ledger(args), elliptic_trunc=args.trunc)
        if not hasattr(series, "to_text"):
            raise UsageError("the expression evaluates to a scalar, not a series")
    rendered = series.to_text(label)
    if args.out:
        atomic_write(Path(args.out), rendered)
    else:
        out.write(rendered)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suite = args.suite
    if suite == "plus-space":
        checks = []
        for name, recipe in RECIPES.items():
            h = recipe_expand(recipe, args.elliptic_trunc)
            verdict = plus_space_check(h, recipe.weight)
            detail = f"bound {verdict.bound}" if verdict.passed else str(verdict)
            checks.append(Check(f"plus-space {name}", "PASS" if verdict.passed else "FAIL",
                                detail, True if verdict.passed else None))
            diff = table_mismatch(h, published_table(name))
            detail = "" if diff is None else f"first difference at q^{diff[0]}: {diff[1]} != {diff[2]}"
            checks.append(check(f"table {name}", diff is None, detail))
        return _report(checks, out)
    ledger = _ledger(args)
    if suite == "integrality":
        checks = ledger.verify_integrality() + IgusaLedger(ledger).verify_integrality()
    elif suite == "identities":
        checks = ledger.verify_identities() + [ledger.lemma_modulus_report()]
    else:
        igusa = IgusaLedger(ledger)
        checks = verify_restriction_proposition(ledger, igusa) + verify_two_path(ledger, igusa)
    return _report(checks, out)


def cmd_congruence(args, out) -> int:
    if args.prime < 2 or any(args.prime % d == 0 for d in range(2, int(args.prime**0.5) + 1)):
        raise UsageError(f"{args.prime} is not prime")
    f = evaluate(args.expr, _ledger(args))
    if isinstance(f, HermitianSeries):
        verdict = check_congruence_hermitian(f, args.weight, args.prime)
    elif isinstance(f, SiegelSeries):
        verdict = check_congruence_siegel(f, args.weight, args.prime)
    else:
        raise UsageError("congruence needs a Hermitian or Siegel expression")
    if f.weight is not None and f.weight != args.weight:
        raise UsageError(f"expression has weight {f.weight}, not {args.weight}")
    cert = f"# expr={args.expr}\n" + verdict.certificate()
    if args.out:
        atomic_write(Path(args.out), cert)
    out.write(cert)
    return EXIT_OK if verdict.passed and not verdict.alarm else EXIT_FAIL


def cmd_cache(args, out) -> int:
    store = _store(args)
    if store is None:
        raise UsageError(f"no cache directory: pass --cache-dir or set {ENV_VAR}")
    if args.action == "list":
        for line in store.listing():
            print(line, file=out)
    else:
        print(f"removed {store.clear()} files", file=out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", type=Path, help="series cache (default: $HERMRING_CACHE)")
    common.add_argument("--stats", action="store_true", help="report the number of series multiplications")

    parser = argparse.ArgumentParser(prog="hermring", description="Exact Fourier expansions of Hermitian modular forms over Q(i).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="compute and serialize a form")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--name", help="a ledger name, Eisenstein series E<k>, or h13/h15/h17")
    which.add_argument("--expr", help="an expression over ledger names")
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNC,
                   help="truncation M (for h13/h15/h17: highest q exponent)")
    p.add_argument("--out", help="write to FILE instead of stdout")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("integrality", "identities", "restrictions", "plus-space"))
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    p.add_argument("--elliptic-trunc", type=int, default=ELLIPTIC_TRUNC, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("congruence", parents=[common], help="Sturm-bound congruence certificate")
    p.add_argument("--expr", required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNC)
    p.add_argument("--out", help="also write the certificate to FILE")
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the series cache")
    p.add_argument("action", choices=("list", "clear"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    reset_multiplication_count()
    try:
        code = args.func(args, out)
    except (UsageError, ExprSyntaxError, UnknownIdentifierError, ExprTypeError, WeightMismatchError,
            NeedsMoreTermsError, NotPIntegralError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LedgerBuildError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.stats:
        print(f"multiplications={multiplication_count()}", file=sys.stderr)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
