"""Command-line front end.

Exit codes: 0 ok, 2 usage, 3 size cap exceeded, 4 file format,
5 input is not a daisy cube, 6 verification failed.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

from . import formats
from .bench import ALGORITHMS, CSV_HEADER, run_bench
from .daisy import DEFAULT_CAP, FAMILIES, GeneratorSet, LabeledDaisyCube, build, family, strip
from .embedder import embed_isometric, proper_embed_detailed
from .errors import CapExceededError, FormatError, GraphError, NotDaisyCubeError
from .verifier import DEFAULT_VERIFY_CAP, is_isometric, is_proper, maximal_labels, structural_audit
from .words import Word

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_FORMAT, EXIT_NOT_DAISY, EXIT_VERIFY = 0, 2, 3, 4, 5, 6


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return formats.read_text(path)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None


def _info(args: argparse.Namespace, text: str) -> None:
    # keep stdout clean when labels are streamed there
    stream = sys.stderr if getattr(args, "out_labels", None) == "-" else sys.stdout
    print(text, file=stream)


def cmd_gen(args: argparse.Namespace) -> int:
    if (args.family is None) == (args.words is None):
        raise UsageError("give exactly one of --family or --words")
    if args.family is not None:
        if args.h is None:
            raise UsageError("--family needs --h")
        if args.family == "random-antichain" and args.seed is None:
            raise UsageError("random-antichain needs --seed")
        try:
            gens = family(args.family, args.h, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        gens = formats.parse_words(_read(args.words))
    dc = build(gens, cap=args.cap)
    formats.write_text(args.out_graph, formats.format_graph(dc.graph))
    if args.out_labels:
        formats.write_text(args.out_labels, formats.format_labels(dc.labels))
    return EXIT_OK


def _graph_and_labels(graph_path: str, labels_path: str):
    g = formats.parse_graph(_read(graph_path))
    e = formats.parse_labels(_read(labels_path))
    if len(e) != g.n:
        raise FormatError(f"graph has {g.n} vertices but labels file has {len(e)}")
    return g, e


def cmd_strip(args: argparse.Namespace) -> int:
    g, e = _graph_and_labels(args.graph, args.labels)
    gens = GeneratorSet(e.width, frozenset(Word(e.width, b) for b in maximal_labels(e)))
    stripped, truth = strip(LabeledDaisyCube(g, e, gens), args.seed)
    formats.write_text(args.out_graph, formats.format_graph(stripped))
    formats.write_text(args.out_truth, formats.format_labels(truth))
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    g = formats.parse_graph(_read(args.graph))
    beta, root = embed_isometric(g)
    formats.write_text(args.out_labels, formats.format_labels(beta))
    _info(args, f"root {root}")
    return EXIT_OK


def cmd_proper(args: argparse.Namespace) -> int:
    g = formats.parse_graph(_read(args.graph))
    res = proper_embed_detailed(g)
    formats.write_text(args.out_labels, formats.format_labels(res.embedding))
    _info(args, f"minimal-vertex {res.minimal_vertex}\nshift {res.shift}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g, e = _graph_and_labels(args.graph, args.labels)
    if args.mode == "isometric":
        report = is_isometric(g, e, cap=args.cap)
    elif args.mode == "proper":
        report = is_proper(g, e)
    else:
        gens = GeneratorSet(e.width, frozenset(Word(e.width, b) for b in maximal_labels(e)))
        report = structural_audit(LabeledDaisyCube(g, e, gens), cap=args.cap)
    print(report.render())
    return EXIT_OK if report.passed else EXIT_VERIFY


def _orders(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        orders = _orders(args.h)
    except ValueError:
        raise UsageError(f"bad --h range {args.h!r}; use e.g. 14..20 or 3,5,7") from None
    algos = args.algo.split(",")
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise UsageError(f"unknown algorithm(s) {unknown}; choose from {sorted(ALGORITHMS)}")
    if args.reps < 1:
        raise UsageError("--reps must be positive")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in run_bench(args.family, orders, algos, reps=args.reps, seed=args.seed, cap=args.cap):
        writer.writerow(rec.row())
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="daisycube", description="Daisy cube generation, embedding and verification.")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a labelled daisy cube")
    gen.add_argument("--family", choices=FAMILIES)
    gen.add_argument("--words", help="generator words file")
    gen.add_argument("--h", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out-graph", default="-")
    gen.add_argument("--out-labels")
    gen.add_argument("--cap", type=int, default=DEFAULT_CAP)
    gen.set_defaults(func=cmd_gen)

    st = sub.add_parser("strip", help="renumber vertices and withhold labels")
    st.add_argument("--graph", required=True)
    st.add_argument("--labels", required=True)
    st.add_argument("--seed", type=int, default=1)
    st.add_argument("--out-graph", required=True)
    st.add_argument("--out-truth", required=True)
    st.set_defaults(func=cmd_strip)

    for name, func, text in (
        ("embed", cmd_embed, "isometric embedding rooted at a maximum-degree vertex"),
        ("proper", cmd_proper, "proper embedding"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--graph", required=True)
        sp.add_argument("--out-labels", default="-")
        sp.set_defaults(func=func)

    ver = sub.add_parser("verify", help="check labels against a graph")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--labels", required=True)
    ver.add_argument("--mode", choices=("isometric", "proper", "audit"), default="proper")
    ver.add_argument("--cap", type=int, default=DEFAULT_VERIFY_CAP)
    ver.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="time the embedding algorithms, CSV on stdout")
    bench.add_argument("--family", choices=FAMILIES, required=True)
    bench.add_argument("--h", required=True, help="orders, e.g. 14..20 or 10,12")
    bench.add_argument("--algo", default="linear", help="comma list of: linear, baseline")
    bench.add_argument("--reps", type=int, default=5)
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--cap", type=int, default=DEFAULT_CAP)
    bench.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"daisycube: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"daisycube: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FormatError, GraphError) as exc:
        print(f"daisycube: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except NotDaisyCubeError as exc:
        print(f"daisycube: input is not a daisy cube or algorithm invariant violated ({exc})", file=sys.stderr)
        return EXIT_NOT_DAISY


if __name__ == "__main__":
    sys.exit(main())
