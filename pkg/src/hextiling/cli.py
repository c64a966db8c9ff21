"""Command line front end.

Exit codes: 0 ok, 1 verification failure, 2 usage or parameter error,
3 I/O failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import analysis, construction, files, verify
from .geometry import DEFAULT_TOLERANCE, GeometryError, TolerancePolicy

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tolerance(args) -> TolerancePolicy:
    overrides = {}
    if getattr(args, "eps_snap", None) is not None:
        overrides["eps_snap"] = args.eps_snap
    if getattr(args, "eps_area", None) is not None:
        overrides["eps_area"] = args.eps_area
    return replace(DEFAULT_TOLERANCE, **overrides)


def _write(path, text) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path):
    try:
        return files.read_tiling(path), None
    except OSError as exc:
        return None, (EXIT_IO, f"cannot read {path}: {exc}")
    except files.TilingFileError as exc:
        return None, (EXIT_USAGE, f"malformed tiling file {path}: {exc}")


def cmd_construct(args) -> int:
    try:
        tol = _tolerance(args)
        patch = construction.construct(args.family, args.k, args.rings, tol)
    except (construction.InvalidParameterError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        files.write_tiling(patch, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    patch, err = _load(args.input)
    if err:
        print(f"error: {err[1]}", file=sys.stderr)
        return err[0]
    if args.eps_snap is not None or args.eps_area is not None:
        patch = replace(patch, tolerance=replace(patch.tolerance, **{
            k: v for k, v in (("eps_snap", args.eps_snap), ("eps_area", args.eps_area)) if v is not None
        }))
    try:
        report = verify.full_report(patch)
        claims = verify.family_claims(report, patch.family, patch.k, patch.tolerance.eps_area)
        status = EXIT_OK if all(claims.values()) else EXIT_FAIL
    except verify.ValidationError as exc:
        report = verify.VerificationReport(valid=False, error=str(exc))
        claims = {"valid": False}
        status = EXIT_FAIL
    text = files.encode_report(report, claims)
    if args.report:
        try:
            _write(args.report, text)
        except OSError as exc:
            print(f"error: cannot write {args.report}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    if status != EXIT_OK:
        failed = [name for name, ok in claims.items() if not ok]
        print(f"verification failed: {', '.join(failed)}" + (f" ({report.error})" if report.error else ""),
              file=sys.stderr)
    return status


def cmd_render(args) -> int:
    patch, err = _load(args.input)
    if err:
        print(f"error: {err[1]}", file=sys.stderr)
        return err[0]
    points = []
    if args.highlight_irregular:
        try:
            points = [inc.location for inc in verify.find_irregular_vertices(patch)]
        except verify.ValidationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    try:
        _write(args.out, files.render_svg(patch, points))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _parse_k_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from exc


def cmd_asymptote(args) -> int:
    if args.k_list is not None:
        ks = args.k_list
    elif args.k_max is not None:
        ks = list(range(2, args.k_max + 1))
    else:
        print("error: give --k-list or --k-max", file=sys.stderr)
        return EXIT_USAGE
    if not ks or any(k < 2 for k in ks):
        print("error: every k must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    text = files.encode_table(analysis.asymptotic_table(ks))
    if args.out:
        try:
            _write(args.out, text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hextiling", description="Hexagon tilings with prescribed irregular vertices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def eps_flags(p):
        p.add_argument("--eps-snap", type=float, default=None, help="vertex identification distance")
        p.add_argument("--eps-area", type=float, default=None, help="area tolerance")

    p = sub.add_parser("construct", help="build a tiling patch and write it as JSON")
    p.add_argument("--family", required=True, choices=construction.FAMILIES)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rings", type=int, default=4)
    p.add_argument("--out", required=True)
    eps_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a tiling file and write a JSON report")
    p.add_argument("input")
    p.add_argument("--report", default=None, help="report path (default: stdout)")
    eps_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a tiling file as SVG")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--highlight-irregular", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("asymptote", help="CSV table of the bound-to-index ratio")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k-list", type=_parse_k_list, default=None)
    group.add_argument("--k-max", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_asymptote)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
