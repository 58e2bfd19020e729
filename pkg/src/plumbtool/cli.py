"""Command-line front end: ``plumbtool <subcommand> [args] [--format F]``.

Exit status is 0 on success, 1 when a verification claim fails and 2 for
usage, parse or domain errors.  Graph arguments are file paths in the text
or JSON graph format, or ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .calculus import reduce_to_normal_form, same_boundary
from .errors import PlumbingError
from .families import Family, FamilySpec, generate, parse_family, verify_claims
from .form import form_summary, graph_determinant
from .io import dumps_json, dumps_text, load_graph, to_dict
from .seifert import brieskorn_plumbing, central_weight_obstruction, seifert_data_from_star

EXIT_OK, EXIT_CLAIM, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit_record(rec: dict, fmt: str) -> str:
    """One flat record in the requested format."""
    if fmt == "json":
        return json.dumps(rec) + "\n"
    if fmt == "text":
        return "".join(f"{k}: {_scalar(v)}\n" for k, v in rec.items())
    return _csv([list(rec)], [[_scalar(v) for v in rec.values()]])


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_scalar(x) for x in v)
    if v is None:
        return ""
    return str(v)


def _csv(header_rows, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in header_rows:
        w.writerow(r)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _emit_graph(g, fmt: str, labels: bool = False) -> str:
    if fmt == "text":
        return dumps_text(g)
    if fmt == "csv":
        raise UsageError("graphs cannot be written as CSV; use json or text")
    return dumps_json(g, labels=labels) + "\n"


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return range(int(lo), int(lo) + 1)
        r = range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected LO..HI") from None
    if len(r) == 0:
        raise UsageError(f"empty range {text!r}")
    return r


# -- subcommands ---------------------------------------------------------------


def cmd_det(args) -> tuple[int, str]:
    s = form_summary(load_graph(args.graph))
    return EXIT_OK, _emit_record({"det": s["det"], "unimodular": s["unimodular"]}, args.format)


def cmd_sig(args) -> tuple[int, str]:
    s = form_summary(load_graph(args.graph))
    rec = {"signature": s["signature"], "negative_definite": s["negative_definite"]}
    return EXIT_OK, _emit_record(rec, args.format)


def cmd_is_hs(args) -> tuple[int, str]:
    s = form_summary(load_graph(args.graph))
    return EXIT_OK, _emit_record({"homology_sphere": s["homology_sphere"], "det": s["det"]}, args.format)


def cmd_normalize(args) -> tuple[int, str]:
    rep = reduce_to_normal_form(load_graph(args.graph))
    if args.moves:
        if args.format != "json":
            raise UsageError("--moves output is JSON only")
        # the graph keys stay at top level so the output still parses as a graph
        out = to_dict(rep.final_graph)
        out["moves"] = [m.to_json() for m in rep.moves]
        out["reached_fixed_point"] = rep.reached_fixed_point
        return EXIT_OK, json.dumps(out) + "\n"
    return EXIT_OK, _emit_graph(rep.final_graph, args.format)


def cmd_compare(args) -> tuple[int, str]:
    g1, g2 = load_graph(args.first), load_graph(args.second)
    v = same_boundary(g1, g2)
    if args.format != "json":
        return EXIT_OK, _emit_record({"verdict": v.value}, args.format)
    rec = {
        "verdict": v.value,
        "first": to_dict(reduce_to_normal_form(g1).final_graph),
        "second": to_dict(reduce_to_normal_form(g2).final_graph),
    }
    return EXIT_OK, json.dumps(rec) + "\n"


def cmd_gen(args) -> tuple[int, str]:
    if args.family.lower() == "brieskorn":
        if len(args.params) != 3:
            raise UsageError("gen brieskorn needs three exponents")
        g = brieskorn_plumbing(*args.params)
    else:
        g = generate(FamilySpec(parse_family(args.family), tuple(args.params)))
    return EXIT_OK, _emit_graph(g, args.format, labels=args.labels)


def cmd_obstruct(args) -> tuple[int, str]:
    v = central_weight_obstruction(load_graph(args.graph))
    return EXIT_OK, _emit_record({"verdict": v.value}, args.format)


def cmd_seifert_data(args) -> tuple[int, str]:
    sd = seifert_data_from_star(load_graph(args.graph))
    if args.format == "json":
        return EXIT_OK, json.dumps(sd.to_json()) + "\n"
    rec = sd.to_json()
    rec["arms"] = [f"{a}/{b}" for a, b in sd.arms]
    return EXIT_OK, _emit_record(rec, args.format)


def cmd_verify(args) -> tuple[int, str]:
    claims = args.claims.split(",") if args.claims else None
    reports = verify_claims(args.bound, claims=claims)
    status = EXIT_OK if all(r.passed for r in reports) else EXIT_CLAIM
    if args.format == "json":
        return status, json.dumps([r.to_json() for r in reports], indent=1) + "\n"
    if args.format == "csv":
        rows = [[r.claim_id, r.checked, _scalar(r.passed), json.dumps(r.witness) if r.witness else "", r.note] for r in reports]
        return status, _csv([["claim", "checked", "pass", "witness", "note"]], rows)
    lines = []
    for r in reports:
        tail = f"  witness={json.dumps(r.witness)}" if r.witness else ""
        note = f"  ({r.note})" if r.note else ""
        lines.append(f"{r.claim_id} {'PASS' if r.passed else 'FAIL'}  [{r.checked}]{note}{tail}\n")
    return status, "".join(lines)


def cmd_scan(args) -> tuple[int, str]:
    if args.target != "xprime":
        raise UsageError(f"unknown scan target {args.target!r}")
    rows = []
    for a in _parse_range(args.a):
        for b in _parse_range(args.b):
            g = generate(FamilySpec(Family.X_PRIME_TWO_PARAM, (a, b)))
            d = graph_determinant(g)
            rows.append({"a": a, "b": b, "det": d, "is_hs": abs(d) == 1})
    fmt = args.format or "csv"
    if fmt == "json":
        return EXIT_OK, json.dumps(rows) + "\n"
    if fmt == "text":
        return EXIT_OK, "".join(f"a={r['a']} b={r['b']} det={r['det']} is_hs={_scalar(r['is_hs'])}\n" for r in rows)
    return EXIT_OK, _csv([["a", "b", "det", "is_hs"]], [[r["a"], r["b"], r["det"], _scalar(r["is_hs"])] for r in rows])


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "text"), default=None, help="output format (default json)")

    p = argparse.ArgumentParser(prog="plumbtool", description="Invariants and moves for plumbing graphs.")
    p.add_argument("--version", action="version", version=f"plumbtool {__version__}")
    sub = p.add_subparsers(dest="command", metavar="<subcommand>")
    sub.required = True

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[fmt], help=help_)
        sp.add_argument("graph", help="graph file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    graph_cmd("det", cmd_det, "determinant of the intersection form")
    graph_cmd("sig", cmd_sig, "signature (n+, n-, n0) of the intersection form")
    graph_cmd("is-hs", cmd_is_hs, "is the boundary an integral homology sphere")
    sp = graph_cmd("normalize", cmd_normalize, "reduce to normal form by blow-downs and 0-chain absorption")
    sp.add_argument("--moves", action="store_true", help="emit the full move log as JSON")
    graph_cmd("obstruct", cmd_obstruct, "central-weight obstruction verdict")
    graph_cmd("seifert-data", cmd_seifert_data, "Seifert data of a reduced star-shaped graph")

    sp = sub.add_parser("compare", parents=[fmt], help="compare boundaries through normal forms")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_compare)

    families = ", ".join(["brieskorn"] + [f.value for f in Family])
    sp = sub.add_parser("gen", parents=[fmt], help="generate a family member or Brieskorn plumbing")
    sp.add_argument("family", help=f"one of: {families}")
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--labels", action="store_true", help="include vertex labels in JSON output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", parents=[fmt], help="check claims C1..C7 up to a parameter bound")
    sp.add_argument("--bound", type=int, default=8)
    sp.add_argument("--claims", default=None, help="comma-separated claim ids, e.g. C1,C3")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", parents=[fmt], help="tabulate det over a parameter grid (CSV by default)")
    sp.add_argument("target", help="xprime")
    sp.add_argument("--a", required=True, help="range LO..HI")
    sp.add_argument("--b", required=True, help="range LO..HI")
    sp.set_defaults(func=cmd_scan)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format is None and args.command != "scan":
        args.format = "json"
    try:
        status, out = args.func(args)
    except UsageError as exc:
        print(f"plumbtool {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except (PlumbingError, OSError) as exc:
        print(f"plumbtool {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(out)
    return status


def main() -> None:
    sys.exit(run())

