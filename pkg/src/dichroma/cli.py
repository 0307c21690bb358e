"""``dichroma`` command line.

Exit codes: 0 success, 1 parse or validation error, 2 budget exceeded,
3 verification failed (or a failing theorem check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import checks
from .digraph import (
    FAMILIES,
    Digraph,
    GraphFormatError,
    UndirectedGraph,
    VertexColoring,
    make_family,
    symmetric_of,
    underlying,
)
from .exact import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    ColoringCertificate,
    SolveBudget,
    decide_exact,
    dichromatic_exact,
    make_certificate,
    verify_certificate,
)
from .fpt import DEFAULT_STATE_BUDGET, StateBudgetExceeded, fpt_dichromatic, run_dp, write_table_csv
from .io import format_graph, read_graph, read_json, write_json
from .products import ProductKind, ProductTooLarge, product
from .treewidth import (
    InvalidDecomposition,
    dumps_nice,
    exact_treewidth_small,
    format_pace,
    heuristic_decomposition,
    make_nice,
    nice_decomposition,
    nice_from_parts,
    parse_pace,
    validate_decomposition,
)

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3
AUTO_WIDTH_THRESHOLD = 6
BUDGET_ENV = "DICHROMA_BUDGET_NODES"


class CliError(Exception):
    def __init__(self, msg, code=EXIT_PARSE):
        super().__init__(msg)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors (1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}")


def budgets() -> tuple[SolveBudget, int]:
    """Search budget and per-node state cap, overridden by the environment."""
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_BUDGET, DEFAULT_STATE_BUDGET
    try:
        nodes = int(raw)
        budget = SolveBudget(max_nodes_expanded=nodes)
    except ValueError as exc:
        raise CliError(f"{BUDGET_ENV}={raw!r} is not a positive integer") from exc
    return budget, nodes


def _emit(text: str, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _as_digraph(g) -> Digraph:
    return symmetric_of(g) if isinstance(g, UndirectedGraph) else g


def _sidecar(path, suffix) -> Path:
    return Path(str(path) + suffix)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    try:
        d = make_family(args.family, args.n, args.p, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(format_graph(d), args.output)
    return EXIT_OK


def cmd_product(args) -> int:
    G, H = _as_digraph(read_graph(args.left)), _as_digraph(read_graph(args.right))
    d, idx = product(args.kind, G, H)
    _emit(format_graph(d), args.output)
    if args.output not in (None, "-"):
        write_json({**idx.to_json(), "kind": args.kind}, _sidecar(args.output, ".index.json"))
    return EXIT_OK


def load_decomposition(path, g: UndirectedGraph, kinds=None):
    td, n = parse_pace(Path(path).read_text())
    if n != g.n:
        raise InvalidDecomposition(f"decomposition is for {n} vertices, graph has {g.n}")
    kinds_path = Path(kinds) if kinds else _sidecar(path, ".kinds.json")
    if kinds_path.exists():
        return nice_from_parts(td, read_json(kinds_path))
    ok, report = validate_decomposition(g, td)
    if not ok:
        raise InvalidDecomposition(report)
    return make_nice(td, g)


def cmd_solve(args) -> int:
    budget, state_limit = budgets()
    if args.time_limit is not None:
        budget = SolveBudget(budget.max_vertices, budget.max_nodes_expanded, args.time_limit)
    d = _as_digraph(read_graph(args.graph))
    g = underlying(d)
    nd = load_decomposition(args.decomposition, g, args.kinds) if args.decomposition else None
    algo = args.algo
    if algo == "auto":
        width = nd.width if nd is not None else heuristic_decomposition(g).width
        algo = "fpt" if width <= args.width_threshold else "exact"
    if args.dump_tables and algo != "fpt":
        raise CliError("--dump-tables needs the fpt algorithm")
    if algo == "fpt" and nd is None:
        nd = nice_decomposition(g)
    stats = []
    result = {"algo": algo}
    if args.k is not None:
        if args.k < 1:
            raise CliError("--k must be positive")
        if algo == "fpt":
            run = run_dp(d, nd, args.k, state_limit=state_limit)
            stats = run.stats(nd)
            colors = run.coloring if run.decided else None
        else:
            colors = decide_exact(d, args.k, budget)
        cert = None if colors is None else make_certificate(d, VertexColoring(colors, args.k))
        result.update({"k": args.k, "colorable": cert is not None})
        print("yes" if cert is not None else "no")
    else:
        if algo == "fpt":
            k, cert = fpt_dichromatic(d, nd, state_limit=state_limit,
                                      on_run=lambda run: stats.extend(run.stats(nd)))
        else:
            k, cert = dichromatic_exact(d, budget)
        result["k"] = k
        print(k)
    if cert is not None:
        result["certificate"] = cert.to_json()
        if args.output:
            write_json(cert.to_json(), args.output)
    if args.dump_tables:
        write_table_csv(stats, args.dump_tables)
    if args.json:
        write_json(result, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    d = _as_digraph(read_graph(args.graph))
    try:
        cert = ColoringCertificate.from_json(read_json(args.certificate))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed certificate: {exc}") from exc
    ok, reason, cycle = verify_certificate(d, cert)
    out = {"ok": ok, "reason": reason, "k": cert.k}
    if cycle is not None:
        out["cycle"] = cycle
    print(json.dumps(out))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_decompose(args) -> int:
    g = underlying(_as_digraph(read_graph(args.graph)))
    if args.strategy == "exact":
        budget, _ = budgets()
        _, td = exact_treewidth_small(g, budget)
    else:
        td = heuristic_decomposition(g, args.strategy)
    if args.nice:
        nd = make_nice(td, g)
        pace, kinds = dumps_nice(nd, g.n)
        _emit(pace, args.output)
        if args.output not in (None, "-"):
            _sidecar(args.output, ".kinds.json").write_text(kinds + "\n")
        else:
            sys.stderr.write(kinds + "\n")
    else:
        _emit(format_pace(td, g.n), args.output)
    return EXIT_OK


def _parse_sizes(items) -> dict:
    out = {}
    for item in items or ():
        name, _, val = item.partition("=")
        if name not in checks.DEFAULT_SIZES or not val.isdigit():
            raise CliError(f"bad --size {item!r}; names: {', '.join(checks.DEFAULT_SIZES)}")
        out[name] = int(val)
    return out


def cmd_check_theorems(args) -> int:
    budget, _ = budgets()
    try:
        report = checks.check_theorems(args.seed, _parse_sizes(args.size), only=args.only,
                                       jobs=args.jobs, budget=budget)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(checks.format_table(report))
    if args.json:
        write_json(report, args.json)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dichroma", description="Acyclic colorings of digraphs and their products.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="write a digraph from a standard family")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("product", help="product of two graph files, plus an index sidecar")
    s.add_argument("--kind", required=True, choices=[k.value for k in ProductKind])
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_product)

    s = sub.add_parser("solve", help="dichromatic number (or a k-colorability decision)")
    s.add_argument("graph")
    s.add_argument("--algo", choices=["exact", "fpt", "auto"], default="auto")
    s.add_argument("--k", type=int)
    s.add_argument("--decomposition", help="PACE decomposition file; a .kinds.json sidecar marks it nice")
    s.add_argument("--kinds", help="nice-kinds sidecar, if not next to the decomposition")
    s.add_argument("--dump-tables", metavar="CSV", help="per-node state counts (fpt only)")
    s.add_argument("--width-threshold", type=int, default=AUTO_WIDTH_THRESHOLD,
                   help="auto uses fpt up to this heuristic width (default %(default)s)")
    s.add_argument("--time-limit", type=float)
    s.add_argument("-o", "--output", help="certificate JSON")
    s.add_argument("--json", help="result summary JSON")
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("verify", help="check a certificate against a graph")
    s.add_argument("certificate")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("decompose", help="tree decomposition in PACE format")
    s.add_argument("graph")
    s.add_argument("--strategy", choices=["min_fill", "min_degree", "exact"], default="min_fill")
    s.add_argument("--nice", action="store_true", help="nice form, kinds written to OUTPUT.kinds.json")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("check-theorems", help="run the property harness")
    s.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    s.add_argument("--size", action="append", metavar="NAME=COUNT")
    s.add_argument("--only", action="append", choices=checks.CHECK_NAMES)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", help="write the JSON report here")
    s.set_defaults(fn=cmd_check_theorems)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except (GraphFormatError, InvalidDecomposition, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, StateBudgetExceeded, ProductTooLarge) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
