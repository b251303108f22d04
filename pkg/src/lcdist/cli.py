"""``lcdist`` command line: distance, clusters, exponents, gen, validate.

Exit status: 0 success, 1 invalid input, 2 budget exhausted (census
timeout, or no exact distance under ``--require-exact``), 3 engines
disagree.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from pathlib import Path

from lcdist import __version__
from lcdist.algebra import BinaryMatrix
from lcdist.clusters import count_clusters, fit_growth
from lcdist.codes import (
    CodeError,
    CssCode,
    GenerationError,
    SparsityProfile,
    StabilizerCode,
    circulant_check,
    five_qubit_code,
    from_css,
    hypergraph_product,
    poly_from_string,
    random_stabilizer_code,
    steane_code,
    toric_code,
    validate,
)
from lcdist.complexity import (
    CSV_HEADER,
    ExponentPoint,
    gv_delta,
    gv_exponent_curve,
    lc_exponent,
    rate_grid,
)
from lcdist.engines import (
    DistanceResult,
    KernelOverflowError,
    SearchBudget,
    bipartition_distance,
    brute_force_distance,
    linked_cluster_distance,
    random_window_distance,
)
from lcdist.formats import FormatError, format_matrix, format_pauli, load_code, read_alist
from lcdist.graph import code_graph, degree_bound, sector_graph, sector_profile, write_edge_list

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _config_header(args: argparse.Namespace, argv: list[str]) -> list[str]:
    """Comment lines that echo the command and every effective option."""
    items = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    config = " ".join(f"{k}={v}" for k, v in items.items())
    return [
        f"lcdist {__version__}",
        f"command: lcdist {shlex.join(argv)}",
        f"config: {config}",
    ]


def _comment_block(lines) -> str:
    return "".join(f"# {line}\n" for line in lines)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(paths: list[str]) -> StabilizerCode | CssCode:
    try:
        return load_code(paths)
    except OSError as exc:
        raise InputError(f"cannot read {exc.filename}: {exc.strerror}") from None
    except (FormatError, CodeError, ValueError) as exc:
        raise InputError(str(exc)) from None


# --------------------------------------------------------------------------
# distance


def _run_engine(name: str, code, budget: SearchBudget, args) -> DistanceResult:
    if name == "oracle":
        return brute_force_distance(code, budget)
    if name == "lc":
        return linked_cluster_distance(code, budget, workers=args.workers, generic=args.generic)
    if name == "bip":
        return bipartition_distance(code, budget, generic=args.generic)
    return random_window_distance(code, budget, generic=args.generic)


def results_agree(results: list[DistanceResult]) -> bool:
    """True when no result contradicts another.

    Exact values must coincide, an upper bound may not undercut an exact
    value or an exhausted weight, and a lower bound may not reach past one.
    """
    exact = {r.d for r in results if r.kind == "exact"}
    if len(exact) > 1:
        return False
    uppers = [r.d for r in results if r.kind == "upper_bound" and r.d is not None]
    exhausted = [r.w_exhausted for r in results if r.kind != "exact" and r.w_exhausted is not None]
    d = next(iter(exact), None)
    if d is not None:
        if any(u < d for u in uppers) or any(w >= d for w in exhausted):
            return False
    return not any(w >= u for w in exhausted for u in uppers)


def _comparison_table(results: list[DistanceResult]) -> str:
    rows = ["engine kind d w_exhausted"]
    for r in results:
        d = "-" if r.d is None else r.d
        w = "-" if r.w_exhausted is None else r.w_exhausted
        rows.append(f"{r.engine} {r.kind} {d} {w}")
    return "\n".join(rows) + "\n"


def cmd_distance(args, argv) -> int:
    code = _load(args.code)
    if isinstance(code, CssCode):
        try:
            from_css(code)
        except CodeError as exc:
            raise InputError(str(exc)) from None
    else:
        report = validate(code)
        if not report.valid:
            raise InputError(f"stabilizer rows do not commute: {report.violations[:10]}")
    try:
        budget = SearchBudget(
            w_max=args.wmax,
            kernel_cap=args.kernel_cap,
            trial_factor=args.trial_factor,
            seed=args.seed,
            wall_clock_limit=args.time_limit,
            max_table=args.max_table,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None

    engines = args.engine or ["lc"]
    results = []
    for name in engines:
        try:
            results.append(_run_engine(name, code, budget, args))
        except KernelOverflowError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
    out = _comment_block(_config_header(args, argv))
    out += "".join(r.to_text() + "\n" for r in results)
    agree = True
    if len(results) > 1:
        agree = results_agree(results)
        out += _comparison_table(results)
        out += f"agree={'true' if agree else 'false'}\n"
    _emit(out, args.output)
    if args.output:
        sys.stdout.write(out)
    if not agree:
        print("error: engines disagree", file=sys.stderr)
        return EXIT_DISAGREE
    if args.require_exact and not any(r.kind == "exact" for r in results):
        print("error: no exact distance within the budget", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# --------------------------------------------------------------------------
# clusters


def cmd_clusters(args, argv) -> int:
    code = _load(args.code)
    if isinstance(code, CssCode):
        sector = args.sector or "x"
        if sector == "generic":
            stab = from_css(code)
            graph, profile = code_graph(stab), stab.profile
        else:
            graph, profile = sector_graph(code, sector), sector_profile(code, sector)
    else:
        if args.sector not in (None, "generic"):
            raise InputError("--sector x/z needs a CSS gx/gz pair")
        graph, profile = code_graph(code), code.profile
    if args.root is not None and not 0 <= args.root < graph.n:
        raise InputError(f"--root {args.root} outside [0, {graph.n})")
    if args.wmax < 1:
        raise InputError("--wmax must be positive")

    header = _config_header(args, argv)
    if args.edges:
        write_edge_list(graph, args.edges, header)

    census = count_clusters(graph, args.wmax, root=args.root, time_limit=args.time_limit, workers=args.workers)
    info = [
        f"n={graph.n} max_degree={graph.max_degree} degree_bound={degree_bound(profile)}",
        f"mode={'per_vertex root=' + str(args.root) if census.per_vertex else 'total'}",
        f"complete={'true' if census.complete else 'false'} elapsed={census.elapsed:.3f}",
    ]
    csv = _comment_block(header + info) + census.to_csv()

    w_hi = args.whi if args.whi is not None else args.wmax
    fit_text = f"w_lo={args.wlo}\nw_hi={w_hi}\n"
    if census.complete:
        try:
            fit = fit_growth(census, args.wlo, w_hi)
            fit_text = fit.to_text()
        except ValueError as exc:
            fit_text += f"fit=none reason={exc}\n"
    else:
        fit_text += "fit=none reason=incomplete census\n"
    record = _comment_block(header + info) + fit_text

    if args.output:
        _emit(csv, args.output)
        sys.stdout.write(record)
    else:
        sys.stdout.write(csv + fit_text)
    if args.fit_output:
        _emit(record, args.fit_output)
    if not census.complete:
        print("error: census timed out; partial counts written", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# --------------------------------------------------------------------------
# exponents


def cmd_exponents(args, argv) -> int:
    if args.points < 2:
        raise InputError("--points must be at least 2")
    grid = rate_grid(args.points)
    points: list[ExponentPoint] = []
    for tech in ("A_sliding", "B_random_window", "C_bipartition", "D_punctured"):
        points += gv_exponent_curve(tech, args.family, grid)
    if args.lc_z_eff is not None:
        if args.lc_z_eff <= 2:
            raise InputError("--lc-z-eff must exceed 2")
        for R in grid:
            delta = gv_delta(args.family, R)
            if args.lc_delta_min <= delta <= args.lc_delta_max:
                F = lc_exponent(delta, args.lc_z_eff)[0]
                points.append(ExponentPoint("LC_linked_cluster", args.family, R, delta, F, z_eff=args.lc_z_eff))
    text = _comment_block(_config_header(args, argv) + ["binary units (base 2)"])
    text += CSV_HEADER + "\n" + "".join(p.csv_row() + "\n" for p in points)
    _emit(text, args.output)
    return EXIT_OK


# --------------------------------------------------------------------------
# gen


def _hgp_factor(alist: str | None, circ_n: int | None, poly: str | None) -> BinaryMatrix:
    if alist:
        try:
            return read_alist(alist)
        except OSError as exc:
            raise InputError(f"cannot read {alist}: {exc.strerror}") from None
        except FormatError as exc:
            raise InputError(str(exc)) from None
    if circ_n is None or poly is None:
        raise InputError("hgp needs --alist or both --circulant-n and --poly")
    try:
        return circulant_check(circ_n, poly_from_string(poly))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_gen(args, argv) -> int:
    kind = args.kind
    try:
        if kind == "hgp":
            h1 = _hgp_factor(args.alist, args.circulant_n, args.poly)
            if args.alist2 or args.poly2 or args.circulant_n2:
                h2 = _hgp_factor(args.alist2, args.circulant_n2 or args.circulant_n, args.poly2 or args.poly)
            else:
                h2 = h1
            code = hypergraph_product(h1, h2, name="hgp")
        elif kind == "toric":
            if args.L < 2:
                raise InputError("--L must be at least 2")
            code = toric_code(args.L)
        elif kind == "random":
            profile = None
            if args.j is not None or args.l is not None:
                profile = SparsityProfile(args.j or args.n, args.l or args.n)
            code = random_stabilizer_code(args.n, args.r, profile=profile, seed=args.seed)
        elif kind == "steane":
            code = steane_code()
        else:
            code = five_qubit_code()
    except (GenerationError, CodeError, ValueError) as exc:
        raise InputError(str(exc)) from None

    stab = from_css(code) if isinstance(code, CssCode) else code
    header = _config_header(args, argv) + [f"n={stab.n} k={stab.k} r_eff={stab.r_eff}"]
    if kind == "hgp" and not args.alist:
        header.append("circulant factors keep all n cyclic shifts (redundant rows included)")

    if args.format == "css":
        if not isinstance(code, CssCode):
            raise InputError(f"{kind} codes are not CSS; use --format pauli")
        if not args.output:
            raise InputError("--format css needs -o PREFIX (writes PREFIX.gx and PREFIX.gz)")
        Path(args.output + ".gx").write_text(format_matrix(code.gx, header), encoding="utf-8")
        Path(args.output + ".gz").write_text(format_matrix(code.gz, header), encoding="utf-8")
        return EXIT_OK
    _emit(format_pauli(stab, header), args.output)
    return EXIT_OK


# --------------------------------------------------------------------------
# validate


def cmd_validate(args, argv) -> int:
    code = _load(args.code)
    out = _comment_block(_config_header(args, argv))
    if isinstance(code, CssCode):
        bad = code.orthogonality_violations()
        if bad:
            pairs = " ".join(f"(gx{a},gz{b})" for a, b in bad)
            sys.stdout.write(out + f"invalid violations={pairs}\n")
            return EXIT_INPUT
        code = from_css(code)
    report = validate(code)
    sys.stdout.write(out + f"n={code.n} " + report.summary() + "\n")
    return EXIT_OK if report.valid else EXIT_INPUT


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcdist", description="Distance of sparse stabilizer codes.")
    parser.add_argument("--version", action="version", version=f"lcdist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    code_help = "Pauli code file, or a gx gz pair of 0/1 matrix files"

    p = sub.add_parser("distance", help="compute or bound the minimum distance")
    p.add_argument("code", nargs="+", help=code_help)
    p.add_argument("--engine", action="append", choices=["oracle", "lc", "bip", "rw"],
                   help="engine to run (repeat to cross-check; default lc)")
    p.add_argument("--wmax", type=int, default=None, help="largest weight to examine")
    p.add_argument("--kernel-cap", type=int, default=20)
    p.add_argument("--trial-factor", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None, help="wall clock limit in seconds")
    p.add_argument("--max-table", type=int, default=4_000_000, help="bipartition table size cap")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--generic", action="store_true", help="search CSS codes over the full Pauli space")
    p.add_argument("--require-exact", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("clusters", help="cluster census of the connectivity graph")
    p.add_argument("code", nargs="+", help=code_help)
    p.add_argument("--wmax", type=int, default=8)
    p.add_argument("--root", type=int, default=None, help="count clusters containing this vertex")
    p.add_argument("--sector", choices=["x", "z", "generic"], default=None)
    p.add_argument("--wlo", type=int, default=3)
    p.add_argument("--whi", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--edges", help="write the graph as an edge list")
    p.add_argument("-o", "--output", help="CSV census path")
    p.add_argument("--fit-output", help="fit record path")
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("exponents", help="complexity exponents on the GV bound")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--family", choices=["quantum_generic", "quantum_css"], default="quantum_generic")
    p.add_argument("--lc-z-eff", type=float, default=None)
    p.add_argument("--lc-delta-min", type=float, default=0.0)
    p.add_argument("--lc-delta-max", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("gen", help="write a code file")
    p.add_argument("kind", choices=["hgp", "toric", "random", "steane", "five"])
    p.add_argument("--circulant-n", type=int)
    p.add_argument("--poly", help="check polynomial coefficients, constant term first (110 = 1+x)")
    p.add_argument("--alist")
    p.add_argument("--circulant-n2", type=int)
    p.add_argument("--poly2")
    p.add_argument("--alist2")
    p.add_argument("--L", type=int, default=3)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--r", type=int, default=8)
    p.add_argument("--j", type=int, default=None, help="max rows per qubit")
    p.add_argument("--l", type=int, default=None, help="max row weight")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["pauli", "css"], default="pauli")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check commutation and report parameters")
    p.add_argument("code", nargs="+", help=code_help)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
