"""Command-line interface: ``lyapspec {analyze,spectrum,inflections,verify,plot}``.

Exit codes: 0 success, 1 parse/validation error, 2 degenerate spectrum,
3 I/O error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .errors import DegenerateSpectrum, LyapSpecError
from .inflection import DEFAULT_GRID, find_inflections
from .mapspec import PRESETS, construct_tn, make_two_branch, parse_spec, preset
from .plotting import render_svg
from .report import analyze, to_jsonable
from .spectrum import sample_alphas, spectrum_arrays
from .verify import ALL_TARGETS, run_all

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3, 4

PLOT_SAMPLES = 2000
PLOT_MARGIN = 1e-4


class _IOFailure(Exception):
    pass


def _add_input(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=[p.lower() for p in PRESETS], type=str.lower)
    group.add_argument("--spec", metavar="PATH", help="spec file, one '<mult> <length>' per line")
    group.add_argument("--two-branch", nargs=2, metavar="LEN", help="two interval lengths")
    group.add_argument("--tn", type=int, metavar="N", help="the map T_N")


def _resolve(args):
    if args.preset:
        return preset(args.preset)
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _IOFailure(f"cannot read {args.spec}: {exc.strerror}") from None
        return parse_spec(text, label=args.spec)
    if args.two_branch:
        return make_two_branch(*args.two_branch)
    return construct_tn(args.tn)


def _emit(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror}") from None


def _json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def cmd_analyze(args):
    report = analyze(_resolve(args), args.grid)
    _emit(_json(report), None)
    return EXIT_OK


def cmd_inflections(args):
    roots = find_inflections(_resolve(args), args.grid)
    _emit(_json(roots), None)
    return EXIT_OK


def cmd_spectrum(args):
    spec = _resolve(args)
    alphas = sample_alphas(spec, args.samples, args.margin)
    _, L, dL, d2L = spectrum_arrays(spec, alphas)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "L", "dL", "d2L"])
    for row in zip(alphas, L, dL, d2L):
        writer.writerow([repr(float(v)) for v in row])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_plot(args):
    spec = _resolve(args)
    alphas = sample_alphas(spec, args.samples, args.margin)
    _, L, _, _ = spectrum_arrays(spec, alphas)
    roots = find_inflections(spec, args.grid)
    marks = []
    if roots:
        _, root_L, _, _ = spectrum_arrays(spec, [r.alpha for r in roots])
        marks = [(r.alpha, float(v)) for r, v in zip(roots, root_L)]
    _emit(render_svg(alphas, L, marks, title=spec.label), args.out)
    return EXIT_OK


def cmd_verify(args):
    targets = ALL_TARGETS if args.target == "all" else (args.target,)
    reports = run_all(targets)
    for report in reports:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(
                f"[{status}] {report.target}: {c.name}: claimed={c.claimed} "
                f"computed={c.computed} tol={c.tolerance}",
                file=sys.stderr,
            )
    _emit(_json([{"target": r.target, "passed": r.passed, "checks": r.checks} for r in reports]), None)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyapspec",
        description="Lyapunov spectra and inflections of piecewise linear expanding maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="dimension, domain, critical point and inflections (JSON)")
    _add_input(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("inflections", help="roots of the inflection equation (JSON)")
    _add_input(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.set_defaults(func=cmd_inflections)

    p = sub.add_parser("spectrum", help="sampled spectrum as CSV")
    _add_input(p)
    p.add_argument("-n", "--samples", type=int, default=PLOT_SAMPLES)
    p.add_argument("--margin", type=float, default=PLOT_MARGIN)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("plot", help="spectrum with marked inflections as SVG")
    _add_input(p)
    p.add_argument("-n", "--samples", type=int, default=PLOT_SAMPLES)
    p.add_argument("--margin", type=float, default=PLOT_MARGIN)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="reproduce reference results; exit 4 on any failure")
    p.add_argument("target", help="s4, s6, s8, fig4, fig6, two-branch-threshold, tn:<N>, phi or all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateSpectrum as exc:
        print(f"lyapspec: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except _IOFailure as exc:
        print(f"lyapspec: {exc}", file=sys.stderr)
        return EXIT_IO
    except (LyapSpecError, ValueError) as exc:
        print(f"lyapspec: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
