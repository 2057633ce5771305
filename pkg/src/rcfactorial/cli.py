"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 invalid input or parameters,
3 classifier/oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .agm import DEFAULT_CELL_CAP, defining_subgroup, expand, resolution, roman, word_to_label
from .confounding import classify, format_decimal, report_to_dict
from .constructions import Kind, build
from .errors import DesignError
from .fileio import design_to_csv, design_to_json, format_agm, parse_agm
from .oracle import DEFAULT_SEARCH_CAP, exhaustive_optimum, oracle_for

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2, 3


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_construct(args) -> int:
    kind = Kind.FRAC1 if args.frac1 else Kind.FULL
    if args.transpose:
        agm = build(args.s, args.q, args.p, kind).transposed()
    else:
        agm = build(args.s, args.p, args.q, kind)
    _write(args.output, format_agm(agm))
    if args.expand:
        design = expand(agm, args.cell_cap)
        if args.format == "json":
            text = json.dumps(design_to_json(design)) + "\n"
        else:
            text = design_to_csv(design)
        _write(args.expand, text)
    return EXIT_OK


def _summary(agm) -> dict:
    words = defining_subgroup(agm)
    return {
        "resolution": resolution(agm),
        "words": [word_to_label(w) for w in words],
    }


def cmd_analyze(args) -> int:
    agm = parse_agm(Path(args.input).read_text())
    report = classify(agm)
    summary = _summary(agm)
    if args.json:
        payload = report_to_dict(report)
        payload.update(summary)
        payload["version"] = __version__
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    out = [f"s={agm.s} p={agm.p} q={agm.q} n={agm.n} k={agm.k}"]
    out.append(f"resolution: {roman(summary['resolution'])}")
    out.append("defining words: " + (" ".join(summary["words"]) or "(none)"))
    out.append("")
    out.append(f"{'effect':<12}{'status':<20}witness")
    for e in report.effects():
        out.append(f"{e.label:<12}{e.status:<20}{e.witness or ''}")
    out.append("")
    labels = lambda pairs: " ".join(report.pair_label(pr) for pr in pairs) or "(none)"
    out.append(f"main effects unconfounded: {'yes' if report.main_effects_clean else 'no'}")
    out.append(f"unconfounded 2fi: {labels(report.unconfounded_2fi)}")
    out.append(f"row-confounded 2fi: {labels(report.row_confounded_2fi)}")
    out.append(f"column-confounded 2fi: {labels(report.column_confounded_2fi)}")
    out.append(f"t_D: {report.t_D}")
    out.append(f"phi: {report.phi}")
    eff = report.efficiency
    if eff is None:
        out.append("efficiency: undefined (confounded main effects)")
    else:
        out.append(f"efficiency: {eff} = {format_decimal(eff)}")
    out.append(f"certificate: {report.certificate or 'none'}")
    print("\n".join(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    agm = parse_agm(Path(args.input).read_text())
    report = classify(agm)
    oracle = oracle_for(agm, args.cell_cap)
    diffs = []
    for e in report.effects():
        o = oracle[e.word]
        if o.unconfounded != e.unconfounded:
            diffs.append(f"{e.label}: classifier={e.status} oracle={'Unconfounded' if o.unconfounded else 'Confounded'}")
    if diffs:
        print("DISAGREE")
        print("\n".join(diffs))
        return EXIT_DISAGREE
    print(f"AGREE ({len(report.effects())} effects, {agm.s ** (agm.p + agm.q)} cells)")
    return EXIT_OK


def cmd_search(args) -> int:
    res = exhaustive_optimum(args.s, args.p, args.q, args.n, args.cap)
    print(f"candidates: {res.candidates}")
    print(f"phi: {res.phi}")
    if not res.feasible:
        print("Infeasible: every candidate has a confounded main effect")
        return EXIT_OK
    print(f"max t_D: {res.max_t}")
    print("witness:")
    sys.stdout.write(format_agm(res.witness))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcfactorial", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rcfactorial {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a 2fi-optimal generator matrix")
    c.add_argument("-s", type=int, required=True, help="prime number of levels")
    c.add_argument("-p", type=int, required=True, help="rows of the design are s^p")
    c.add_argument("-q", type=int, required=True, help="columns of the design are s^q")
    kind = c.add_mutually_exclusive_group(required=True)
    kind.add_argument("--full", action="store_true", help="full factorial, n = p + q")
    kind.add_argument("--frac1", action="store_true", help="one-step fraction, n = p + q + 1")
    c.add_argument("--transpose", action="store_true", help="build for (q, p) and exchange rows and columns")
    c.add_argument("-o", "--output", help="generator matrix file (default: stdout)")
    c.add_argument("--expand", metavar="PATH", help="also write the expanded design")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="confounding report for a generator matrix file")
    a.add_argument("input")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="compare the classifier with the brute-force oracle")
    v.add_argument("input")
    v.add_argument("--oracle", action="store_true", default=True, help="(default) use the partition oracle")
    v.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exhaustive optimum for tiny parameters")
    s.add_argument("-s", type=int, required=True)
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-q", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)
    s.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
