"""Batch command-line front end.

Commands: construct, verify, search, rates, tournament, survey-orientations.
Exit status: 0 success, 1 verification failure, 2 budget exhaustion, 3 usage
error. Errors are also emitted as one JSON object on standard error. Output
files contain no timestamps and are byte-stable for identical configurations.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from math import ceil
from pathlib import Path

from .constructions import (
    alternating_family,
    block_embedding_family,
    gadget_power_clique,
    pigeonhole_bound,
    robust_family,
    thrupath_bound,
    thrupath_family,
    verify_ternary_clique,
)
from .difference import DiffMode, verify_family
from .digraphs import (
    AlternatingPath,
    DigraphSpec,
    Explicit,
    FiniteDigraph,
    OrientedPath,
    SymmetricComplete,
    SymmetricPath,
    Thrupath,
    block_gadget_digraph,
    cyclic_triangle,
    cyclic_triangle_count,
    is_regular_tournament,
    lex_power,
    regular_cyclic_triangle_reference,
)
from .errors import BudgetError, GraphSpecParseError
from .permutations import fibonacci, read_family, write_family
from .search import SearchBudget, max_family_exact, middle_binomial, rate

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

DEFAULT_RATES_END = 12
DEFAULT_RATES_EXACT_LIMIT = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); route to our status table
        raise UsageError(message)


def parse_graph_spec(s: str) -> DigraphSpec:
    """Grammar: Lsym | La | Lc | K | B | path:<UD-word> | file:<path> | C3^<t>."""
    if s == "Lsym":
        return SymmetricPath()
    if s == "La":
        return AlternatingPath()
    if s == "Lc":
        return Thrupath()
    if s == "K":
        return SymmetricComplete()
    if s == "B":
        return Explicit(block_gadget_digraph())
    if s.startswith("path:"):
        word = s[5:]
        if not word:
            raise GraphSpecParseError(s, 5, "empty orientation word")
        for i, ch in enumerate(word):
            if ch not in "UD":
                raise GraphSpecParseError(s, 5 + i, f"expected 'U' or 'D', found {ch!r}")
        return OrientedPath(word)
    if s.startswith("file:"):
        path = s[5:]
        if not path:
            raise GraphSpecParseError(s, 5, "empty file path")
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise GraphSpecParseError(s, 5, f"cannot read {path}: {exc}") from exc
        try:
            return Explicit(FiniteDigraph.from_json(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphSpecParseError(s, 5, f"bad digraph JSON in {path}: {exc}") from exc
    if s.startswith("C3^"):
        try:
            t = int(s[3:])
        except ValueError:
            raise GraphSpecParseError(s, 3, "expected an integer power") from None
        if t < 1:
            raise GraphSpecParseError(s, 3, "power must be >= 1")
        return Explicit(lex_power(cyclic_triangle(), t))
    raise GraphSpecParseError(s, 0, "unknown graph spec")


def _emit(payload, out: Path | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out is not None:
        out.write_text(text)
    print(text, end="")


def _emit_rows(rows: list[dict], fieldnames: list[str], fmt: str, out: Path | None) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buffer.getvalue()
    else:
        widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fieldnames}
        lines = ["  ".join(f.ljust(widths[f]) for f in fieldnames)]
        lines += [
            "  ".join(str(r[f]).ljust(widths[f]) for f in fieldnames) for r in rows
        ]
        text = "\n".join(lines) + "\n"
    if out is not None:
        out.write_text(text)
    else:
        print(text, end="")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def cmd_construct(args) -> int:
    _require(args.out is not None, "construct requires --out for the family file")
    out = Path(args.out)
    graph = args.graph
    if graph == "B":
        _require(args.n is not None, "construct --graph B requires --n")
        words = gadget_power_clique(args.n)
        out.write_text("\n".join(words) + "\n")
        _emit(
            {
                "graph": graph,
                "n": args.n,
                "size": len(words),
                "pigeonhole_bound": pigeonhole_bound(args.n),
                "out": str(out),
            },
            None,
        )
        return EXIT_OK
    if graph == "La":
        _require(args.n is not None, "construct --graph La requires --n")
        family = alternating_family(args.n)
    elif graph == "Lc":
        _require(args.n is not None, "construct --graph Lc requires --n")
        family = thrupath_family(args.n)
    elif graph == "Lsym":
        _require(args.n is not None, "construct --graph Lsym requires --n")
        family = robust_family(args.n)
    elif graph.startswith("path:"):
        spec = parse_graph_spec(graph)
        blocks = args.blocks if args.blocks is not None else (len(spec.word) + 1) // 3
        _require(blocks >= 1, "word too short for a single block")
        family = block_embedding_family(spec.word, blocks)
    else:
        raise UsageError(
            f"construct supports La, Lc, Lsym, B, path:<word>; got {graph!r}"
        )
    write_family(family, out)
    _emit(
        {
            "graph": graph,
            "n": family.n,
            "size": len(family),
            "rate": round(rate(len(family), family.n), 6),
            "out": str(out),
        },
        None,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    _require(args.family is not None, "verify requires --family")
    path = Path(args.family)
    if args.graph == "B":
        words = [line.strip() for line in path.read_text().splitlines() if line.strip()]
        report = verify_ternary_clique(words)
    else:
        spec = parse_graph_spec(args.graph)
        family = read_family(path)
        report = verify_family(family, spec, DiffMode(args.mode))
    _emit(report.to_json_dict(), Path(args.out) if args.out else None)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_search(args) -> int:
    _require(args.n is not None, "search requires --n")
    spec = parse_graph_spec(args.graph)
    budget = SearchBudget(
        max_n=args.max_n if args.max_n is not None else 7,
        time_limit=args.time_limit if args.time_limit is not None else 600.0,
    )
    result = max_family_exact(spec, args.n, DiffMode(args.mode), budget)
    witness_file = None
    if args.out is not None:
        write_family(result.witness, Path(args.out))
        witness_file = str(args.out)
    _emit(
        {
            "graph": args.graph,
            "n": result.n,
            "mode": result.mode.value,
            "value": result.value,
            "optimal": result.optimal,
            "rate": round(rate(result.value, result.n), 6),
            "witness_file": witness_file,
            "nodes": result.nodes,
            "elapsed_s": round(result.elapsed, 3),
        },
        None,
    )
    return EXIT_OK if result.optimal else EXIT_BUDGET


def _rates_reference(graph: str, mode: DiffMode, n: int) -> tuple[int, str]:
    if graph == "La":
        return fibonacci(n), "bound"
    if graph == "Lc":
        return thrupath_bound(n), "bound"
    if mode is DiffMode.ROBUST:
        return 2 ** (n // 2), "bound"
    return middle_binomial(n), "conjecture"


def cmd_rates(args) -> int:
    graph = args.graph
    mode = DiffMode(args.mode)
    _require(
        graph in ("La", "Lc", "Lsym"),
        f"rates supports La, Lc, Lsym; got {graph!r}",
    )
    _require(
        mode is not DiffMode.ROBUST or graph == "Lsym",
        "robust mode requires the symmetric path (Lsym)",
    )
    spec = parse_graph_spec(graph)
    end = args.n if args.n is not None else DEFAULT_RATES_END
    exact_limit = args.max_n if args.max_n is not None else DEFAULT_RATES_EXACT_LIMIT
    constructions = {
        "La": alternating_family,
        "Lc": thrupath_family,
        "Lsym": robust_family,
    }
    rows = []
    start = 2 if graph == "Lc" else 1
    for n in range(start, end + 1):
        family = constructions[graph](n)
        exact = ""
        if n <= exact_limit:
            budget = SearchBudget(
                max_n=exact_limit,
                time_limit=args.time_limit if args.time_limit is not None else 600.0,
            )
            result = max_family_exact(spec, n, mode, budget)
            if result.optimal:
                exact = result.value
        reference, kind = _rates_reference(graph, mode, n)
        rows.append(
            {
                "n": n,
                "size": len(family),
                "exact": exact,
                "rate": f"{rate(len(family), n):.6f}",
                "reference": reference,
                "reference_kind": kind,
            }
        )
    _emit_rows(
        rows,
        ["n", "size", "exact", "rate", "reference", "reference_kind"],
        args.format or "csv",
        Path(args.out) if args.out else None,
    )
    return EXIT_OK


def cmd_tournament(args) -> int:
    spec = parse_graph_spec(args.graph)
    _require(
        isinstance(spec, Explicit),
        "tournament requires an explicit graph (C3^<t> or file:<path>)",
    )
    g = spec.graph
    if not g.is_tournament():
        raise UsageError(f"{args.graph!r} is not a tournament")
    regular = is_regular_tournament(g)
    reference = (
        regular_cyclic_triangle_reference(g.n) if g.n % 2 == 1 else None
    )
    _emit(
        {
            "graph": args.graph,
            "vertices": g.n,
            "regular": regular,
            "cyclic_triangles": cyclic_triangle_count(g),
            "regular_reference": reference,
        },
        Path(args.out) if args.out else None,
    )
    return EXIT_OK


def cmd_survey_orientations(args) -> int:
    _require(args.len is not None, "survey-orientations requires --len")
    length = args.len
    _require(length >= 1, "--len must be positive")
    blocks = args.blocks if args.blocks is not None else (length + 1) // 3
    _require(blocks >= 1, "word too short for a single block")
    _require(
        3 * blocks - 1 <= length,
        f"--blocks {blocks} needs a word of length at least {3 * blocks - 1}",
    )
    rows = []
    all_ok = True
    for bits in itertools.product("UD", repeat=length):
        word = "".join(bits)
        family = block_embedding_family(word, blocks)
        report = verify_family(family, OrientedPath(word), DiffMode.SYMMETRIC)
        rows.append({"word": word, "size": len(family), "ok": report.ok})
        all_ok = all_ok and report.ok
    _emit_rows(
        rows,
        ["word", "size", "ok"],
        args.format or "json",
        Path(args.out) if args.out else None,
    )
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def build_parser() -> _Parser:
    parser = _Parser(
        prog="permcap",
        description="Constructions, verification, and exact search for families "
        "of pairwise graph-different permutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--graph", help="graph spec-string (Lsym, La, Lc, K, B, path:<UD>, file:<path>, C3^<t>)")
        p.add_argument("--n", type=int, help="permutation length / word length")
        p.add_argument("--blocks", type=int, help="number of 3-element blocks")
        p.add_argument("--mode", choices=["symmetric", "onesided", "robust"], default="symmetric")
        p.add_argument("--len", type=int, help="orientation word length")
        p.add_argument("--family", help="family file to verify")
        p.add_argument("--out", help="output file path")
        p.add_argument("--format", choices=["json", "csv", "text"], help="table format")
        p.add_argument(
            "--time-limit", type=float, help="search time limit in seconds (default 600)"
        )
        p.add_argument(
            "--max-n",
            type=int,
            help="largest n the search budget allows (search: 7, rates: 5)",
        )
        return p

    add("construct", cmd_construct, "build a family and write it to --out")
    add("verify", cmd_verify, "pairwise-check a family file")
    add("search", cmd_search, "exact maximum family size by clique search")
    add("rates", cmd_rates, "size/rate table over a range of n")
    add("tournament", cmd_tournament, "cyclic-triangle count and regularity report")
    add("survey-orientations", cmd_survey_orientations, "verify the block embedding for every orientation word")
    return parser


def _emit_error(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return EXIT_USAGE
    try:
        return args.handler(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return EXIT_USAGE
    except GraphSpecParseError as exc:
        _emit_error("parse", str(exc))
        return EXIT_USAGE
    except BudgetError as exc:
        _emit_error("budget", str(exc))
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        _emit_error("usage", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
