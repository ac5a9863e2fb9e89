"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data or validation error,
3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .alexander import AlexanderSpec, alexander_tribracket, presentation_matrix, specialize
from .classify import classify
from .coloring import count_colorings_backtracking, count_colorings_linear, invariant_table
from .core import (
    Flavor,
    dumps_tensor,
    dumps_tensor_line,
    horizontal_to_vertical,
    load_tensor,
    verify,
    vertical_to_horizontal,
)
from .diagram import link_table, load_link, load_pd_file, regions, resolve_links
from .errors import TribracketError
from .search import FLAG_NAMES, SearchConfig, enumerate_tribrackets

EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _spec(text):
    try:
        return AlexanderSpec.parse(text)
    except TribracketError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _diagram_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--link", help="name in the bundled link table")
    g.add_argument("--pd", type=Path, help="file with a PD code or a link file")


def _get_diagram(args):
    if args.link:
        entry = load_link(args.link)
        return entry.name, regions(entry.pd)
    pd = load_pd_file(args.pd)
    return pd.name or args.pd.stem, regions(pd)


def build_parser():
    parser = _Parser(prog="tribrackets", description="Finite tribrackets and their link invariants.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check the axioms of a tensor file")
    p.add_argument("--tensor", type=Path, required=True)
    p.add_argument("--flavor", choices=[f.value for f in Flavor], help="override the file's flavor")
    p.add_argument("--limit", type=int, default=100, help="maximum violations reported")

    p = sub.add_parser("classify", help="membership in the trivializing families")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tensor", type=Path)
    g.add_argument("--alexander", type=_spec, metavar="N,T,S")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("convert", help="horizontal <-> vertical duality")
    p.add_argument("--tensor", type=Path, required=True)
    p.add_argument("--output", type=Path)

    p = sub.add_parser("matrix", help="presentation matrix of a diagram")
    _diagram_args(p)
    p.add_argument("--alexander", type=_spec, metavar="N,T,S", help="specialize at (n, t, s)")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("count", help="number of colorings")
    _diagram_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alexander", type=_spec, metavar="N,T,S")
    g.add_argument("--tensor", type=Path)
    p.add_argument("--method", choices=["auto", "linear", "backtrack"], default="auto")

    p = sub.add_parser("enumerate", help="all tribrackets of a small order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default="horizontal")
    for flag in FLAG_NAMES:
        p.add_argument("--" + flag.replace("_", "-"), dest=flag, action="store_true")
    p.add_argument("--canonical", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--output-dir", type=Path, help="write one tensor file per result")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("table", help="counting invariants over a set of links")
    p.add_argument("--links", default="all7", help="names or groups (all, all7, knots, unlinks), comma separated")
    p.add_argument("--alexander", type=_spec, action="append", default=[], metavar="N,T,S")
    p.add_argument("--tensor", type=Path, action="append", default=[])
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--compare", type=Path, help="expected TSV; rows marked EXPECTED? are reported only")

    p = sub.add_parser("links", help="list the bundled link table")
    p.add_argument("--group", default="all")
    return parser


def _cmd_verify(args, out):
    X = load_tensor(args.tensor, validate=False)
    if args.flavor:
        X = X.with_flavor(args.flavor)
    bad = verify(X, limit=args.limit)
    if not bad:
        print(f"valid {X.flavor.value} tribracket", file=out)
        return 0
    print(f"invalid {X.flavor.value} tribracket: {len(bad)} violation(s) shown", file=out)
    for v in bad:
        where = f" {v.position.value}" if v.position else ""
        print(f"{v.axiom.value}{where}\t{' '.join(str(e + 1) for e in v.witness)}", file=out)
    return EXIT_DATA


def _cmd_classify(args, out):
    # witnesses are printed 1-indexed, like tensor files
    X = alexander_tribracket(args.alexander) if args.alexander else load_tensor(args.tensor)
    report = classify(X)
    if args.format == "json":
        doc = report.to_dict()
        doc["witnesses"] = {k: [e + 1 for e in v] for k, v in doc["witnesses"].items()}
        print(json.dumps(doc, sort_keys=True), file=out)
        return 0
    print(f"flavor\t{report.flavor.value}", file=out)
    for name, value in report.flags().items():
        shown = "n/a" if value is None else str(value).lower()
        wit = report.witnesses.get(name)
        extra = "\t" + ",".join(str(e + 1) for e in wit) if wit else ""
        print(f"{name}\t{shown}{extra}", file=out)
    return 0


def _cmd_convert(args, out):
    X = load_tensor(args.tensor)
    Y = horizontal_to_vertical(X) if X.flavor is Flavor.HORIZONTAL else vertical_to_horizontal(X)
    text = dumps_tensor(Y)
    if args.output:
        args.output.write_text(text)
    else:
        out.write(text)
    return 0


def _cmd_matrix(args, out):
    _, D = _get_diagram(args)
    M = presentation_matrix(D)
    if args.alexander:
        A = specialize(M, args.alexander)
        if args.format == "json":
            print(json.dumps({"modulus": args.alexander.modulus, "entries": A}), file=out)
        else:
            out.write("".join("\t".join(map(str, row)) + "\n" for row in A))
        return 0
    if args.format == "json":
        print(M.to_json(), file=out)
    else:
        out.write(M.to_text())
    return 0


def _cmd_count(args, out):
    _, D = _get_diagram(args)
    if args.tensor:
        if args.method == "linear":
            raise UsageError("--method linear needs --alexander")
        X = load_tensor(args.tensor)
        if X.flavor is Flavor.VERTICAL:
            X = vertical_to_horizontal(X)
        print(count_colorings_backtracking(D, X), file=out)
        return 0
    if args.method == "backtrack":
        print(count_colorings_backtracking(D, alexander_tribracket(args.alexander)), file=out)
    else:
        print(count_colorings_linear(D, args.alexander), file=out)
    return 0


def _cmd_enumerate(args, out):
    flags = {f for f in FLAG_NAMES if getattr(args, f)}
    cfg = SearchConfig(args.order, args.flavor, flags, args.canonical, args.max_order)
    if args.output_dir:
        args.output_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for X in enumerate_tribrackets(cfg, jobs=args.jobs):
        count += 1
        if args.output_dir:
            (args.output_dir / f"order{args.order}_{count:05d}.json").write_text(dumps_tensor(X))
        else:
            print(dumps_tensor_line(X), file=out)
    if args.output_dir:
        print(f"{count} tensor(s) written to {args.output_dir}", file=sys.stderr)
    return 0


def read_expected(path):
    """Rows ``(link, tribracket) -> (values, disputed)`` from an expected TSV."""
    rows = {}
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[:3] == ["link", "tribracket", "count"]:
            continue
        link, trib, values = fields[:3]
        disputed = len(fields) > 3 and fields[3] == "EXPECTED?"
        rows[(link, trib)] = ({int(v) for v in values.split("|")}, disputed)
    return rows


def format_tsv(records):
    return "link\ttribracket\tcount\n" + "".join(
        f"{r.link}\t{r.tribracket}\t{r.count}\n" for r in records
    )


def _cmd_table(args, out):
    names = resolve_links(args.links)
    tribs = list(args.alexander)
    for path in args.tensor:
        X = load_tensor(path)
        tribs.append(vertical_to_horizontal(X) if X.flavor is Flavor.VERTICAL else X)
    if not tribs:
        raise UsageError("table needs at least one --alexander or --tensor")
    records = invariant_table(names, tribs, jobs=args.jobs)
    if args.format == "json":
        doc = [{"link": r.link, "tribracket": r.tribracket, "count": r.count} for r in records]
        print(json.dumps(doc, indent=1), file=out)
    else:
        out.write(format_tsv(records))
    if not args.compare:
        return 0
    expected = read_expected(args.compare)
    failures = 0
    for r in records:
        key = (r.link, r.tribracket)
        if key not in expected:
            continue
        values, disputed = expected[key]
        if disputed:
            print(f"report\t{r.link}\t{r.tribracket}\tcomputed {r.count}\texpected one of "
                  f"{'|'.join(map(str, sorted(values)))}", file=sys.stderr)
        elif r.count not in values:
            failures += 1
            print(f"MISMATCH\t{r.link}\t{r.tribracket}\tcomputed {r.count}\texpected "
                  f"{'|'.join(map(str, sorted(values)))}", file=sys.stderr)
    return EXIT_DATA if failures else 0


def _cmd_links(args, out):
    from .diagram import link_names

    table = link_table()
    for name in link_names(args.group):
        e = table[name]
        print(f"{name}\t{e.component_count}\t{len(e.pd.crossings)}", file=out)
    return 0


COMMANDS = {
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "convert": _cmd_convert,
    "matrix": _cmd_matrix,
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "table": _cmd_table,
    "links": _cmd_links,
}


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TribracketError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
