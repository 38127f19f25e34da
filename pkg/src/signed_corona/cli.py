"""Command-line entry point: ``corona <subcommand> ...``.

Exit status is 0 on success, 1 when the library rejects the input or a file
cannot be read, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import spectra
from .corona import balance_of_corona, corona_product, predicted_edge_stats
from .errors import CoronaError, DomainError
from .growth import (
    branch_spectrum,
    conflict_report,
    cumulative,
    degree_distribution,
    divergence_report,
    grow,
    marginal,
    trace,
)
from .ingest import load_profile, network_profile, read_signed_edge_list
from .marking import marking
from .seedfit import FitTarget, recommend_seed
from .sgformat import read_sg, write_sg

HELP_WIDTH = 88


class _Formatter(argparse.HelpFormatter):
    def __init__(self, prog):
        super().__init__(prog, width=HELP_WIDTH, max_help_position=32)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    return p


def _writable(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    parent = p.parent if str(p.parent) else Path(".")
    if not parent.is_dir():
        raise FileNotFoundError(f"output directory does not exist: {parent}")
    return p


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit(payload, path: Path | None) -> None:
    if path is None:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _write_json(path, payload)


# -- subcommands ---------------------------------------------------------


def _cmd_product(args) -> int:
    g1_path, g2_path = _existing(args.g1), _existing(args.g2)
    out, stats_path = _writable(args.out), _writable(args.stats)
    g1, g2 = read_sg(g1_path), read_sg(g2_path)
    mu1, mu2 = marking(g1, args.marking), marking(g2, args.marking)
    prod = corona_product(g1, mu1, g2, mu2)
    st = predicted_edge_stats(g1, mu1, g2, mu2)
    bal = balance_of_corona(g1, mu1, g2, mu2)
    summary = {
        "nodes": st.nodes,
        "edges": st.edges,
        "positive_edges": st.positive_edges,
        "negative_edges": st.negative_edges,
        "triads": list(st.triads),
        "balance": bal.status,
        "edge_types": list(bal.edge_types),
    }
    if out is not None:
        write_sg(prod, out, comment=f"corona product, {args.marking} marking")
    else:
        write_sg(prod, sys.stdout)
    if stats_path is not None:
        _write_json(stats_path, summary)
    return 0


def _cmd_grow(args) -> int:
    seed_path = _existing(args.seed)
    out, trace_path = _writable(args.out), _writable(args.trace)
    seed = read_sg(seed_path)
    tr = trace(seed, args.steps, label=seed_path.name)
    if out is not None:
        g = grow(seed, args.steps, budget=args.budget)
        write_sg(g, out, comment=f"G^({args.steps}) of {seed_path.name}")
    if trace_path is not None:
        _write_json(trace_path, tr.to_dict())
    f = tr.final
    print(f"nodes {f.nodes} edges {f.edges} e_plus {f.e_plus} triads {' '.join(map(str, f.triads))}")
    return 0


def _cmd_trace(args) -> int:
    seed_path = _existing(args.seed)
    out = _writable(args.json)
    tr = trace(read_sg(seed_path), args.steps, label=seed_path.name)
    _emit(tr.to_dict(), out)
    return 0 if tr.agrees else 1


def _spectrum_report(args):
    if args.method == "oracle":
        if args.graph is None:
            raise DomainError("--method oracle needs --graph")
        g = read_sg(_existing(args.graph))
        return spectra.graph_spectrum(g, args.kind).to_json()
    if args.seed is not None:
        if args.kind != "laplacian":
            raise DomainError("the grown-graph closed form covers the signed Laplacian only")
        return branch_spectrum(read_sg(_existing(args.seed)), args.steps).to_json()
    if args.g1 is None or args.g2 is None:
        raise DomainError("--method closed-form needs --g1 and --g2, or --seed and --steps")
    g1, g2 = read_sg(_existing(args.g1)), read_sg(_existing(args.g2))
    mu1, mu2 = marking(g1, args.marking), marking(g2, args.marking)
    if args.kind == "adjacency":
        rep = spectra.adjacency_spectrum_corona(g1, mu1, g2, mu2, vectors=False)
    else:
        rep = _laplacian_closed_form(args.kind, g1, mu1, g2, mu2, args.form)
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if not rep.complete:
        print(f"warning: spectrum is partial, {rep.missing} eigenvalues missing", file=sys.stderr)
    return rep.to_json()


def _laplacian_closed_form(kind, g1, mu1, g2, mu2, form):
    """Equal-negative-degree quadratic when it yields every eigenvalue, else the secular form."""
    signless = kind == "signless"
    try:
        if signless:
            rep = spectra.signless_spectrum(g1, mu1, g2, mu2, vectors=False)
        else:
            rep = spectra.laplacian_equal_negdeg_spectrum(g1, mu1, g2, mu2, vectors=False)
        if rep.complete and not rep.warnings:
            return rep
    except CoronaError:
        pass
    if signless:
        return spectra.signless_spectrum(g1, mu1, g2, mu2, theorem="secular", form=form, vectors=False)
    return spectra.laplacian_secular_spectrum(g1, mu1, g2, mu2, form=form, vectors=False)


def _cmd_spectrum(args) -> int:
    out = _writable(args.json)
    entries = _spectrum_report(args)
    _emit(entries, out)
    if out is not None and entries:
        print(f"min {min(e['value'] for e in entries):.12g}")
    return 0


def _cmd_conflict(args) -> int:
    seed_path = _existing(args.seed)
    out = _writable(args.json)
    rep = conflict_report(read_sg(seed_path), args.steps, method=args.method)
    _emit(rep.to_dict(), out)
    return 0


def _cmd_census(args) -> int:
    path = _existing(args.file)
    out = _writable(args.json)
    if args.format == "snap":
        parsed = read_signed_edge_list(path, conflict=args.conflict)
        g = parsed.graph
        extra = {
            "conflicts": parsed.conflicts,
            "self_loops": parsed.self_loops,
            "zero_weight": parsed.zero_weight,
            "duplicates": parsed.duplicates,
        }
    else:
        g = read_sg(path)
        extra = {}
    prof = network_profile(g, label=path.name, spectral_budget=args.spectral_budget, workers=args.threads)
    prof.extra.update(extra)
    _emit(prof.to_dict(), out)
    return 0


def _cmd_fit(args) -> int:
    target_path = _existing(args.target)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None and not out_dir.parent.is_dir():
        raise FileNotFoundError(f"output directory does not exist: {out_dir.parent}")
    profile = load_profile(target_path)
    nodes = args.nodes if args.nodes is not None else profile.nodes
    target = FitTarget(
        nodes=nodes,
        p_e_plus=profile.p_e_plus,
        p_t=profile.p_t,
        n_max=args.n_max,
        m_max=args.m_max,
        randomized=args.randomized,
        rng_seed=args.rng_seed,
        restarts=args.restarts,
        iterations=args.iterations,
    )
    result = recommend_seed(target, constrained=args.constrained, top=args.top)
    payload = result.to_dict()
    if out_dir is not None:
        out_dir.mkdir(exist_ok=True)
        for rank, cand in enumerate(result.candidates, start=1):
            name = f"seed_{rank:02d}.sg"
            write_sg(cand.seed, out_dir / name, comment=f"rank {rank} m {cand.m} score {cand.score:.6g}")
            payload["candidates"][rank - 1]["file"] = name
        _write_json(out_dir / "ranking.json", payload)
    else:
        _emit(payload, None)
    if not result.feasible:
        print(f"infeasible: {result.reason}", file=sys.stderr)
        return 1
    return 0


def _cmd_degree_dist(args) -> int:
    seed_path = _existing(args.seed)
    out, report_path = _writable(args.csv), _writable(args.report)
    seed = read_sg(seed_path)
    dist = degree_distribution(seed, args.steps)
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        if args.which == "joint":
            w.writerow(["d_plus", "d_minus", "count"])
            w.writerows(dist)
        else:
            pairs = marginal(dist, args.which)
            if args.cumulative:
                w.writerow(["degree", "fraction_at_least"])
                w.writerows((d, f"{x:.12g}") for d, x in cumulative(pairs))
            else:
                w.writerow(["degree", "count"])
                w.writerows(pairs)
    finally:
        if out:
            fh.close()
    if report_path is not None:
        _write_json(report_path, divergence_report(seed, args.steps).to_dict())
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="corona",
        description="Corona products of signed graphs: construction, growth, statistics, spectra.",
        formatter_class=_Formatter,
    )
    p.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker processes for parallel steps (results do not depend on it)",
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, helptext):
        return sub.add_parser(name, help=helptext, description=helptext, formatter_class=_Formatter)

    s = add("product", "build the corona product G1 o G2 of two .sg graphs")
    s.add_argument("--g1", required=True, help="first factor (.sg)")
    s.add_argument("--g2", required=True, help="second factor (.sg)")
    s.add_argument("--marking", choices=("canonical", "plurality"), default="canonical", help="marking scheme for both factors")
    s.add_argument("--out", help="output .sg path (default: stdout)")
    s.add_argument("--stats", help="write predicted edge/triad counts and balance as JSON")
    s.set_defaults(func=_cmd_product)

    s = add("grow", "grow G^(m) from a seed with canonical marking")
    s.add_argument("--seed", required=True, help="seed graph (.sg)")
    s.add_argument("--steps", type=int, required=True, help="number of corona steps m")
    s.add_argument("--out", help="write the explicit graph as .sg")
    s.add_argument("--trace", help="write the per-step counters as JSON")
    s.add_argument("--budget", type=int, help="node cap for explicit construction (default: CORONA_NODE_BUDGET or 10^7)")
    s.set_defaults(func=_cmd_grow)

    s = add("trace", "per-step marked-node, edge and triad counters of G^(0..m)")
    s.add_argument("--seed", required=True, help="seed graph (.sg)")
    s.add_argument("--steps", type=int, required=True, help="number of corona steps m")
    s.add_argument("--json", help="output path (default: stdout)")
    s.set_defaults(func=_cmd_trace)

    s = add("spectrum", "eigenvalues by dense solver or closed form")
    s.add_argument("--graph", help="graph for --method oracle (.sg)")
    s.add_argument("--g1", help="first corona factor for --method closed-form")
    s.add_argument("--g2", help="second corona factor for --method closed-form")
    s.add_argument("--seed", help="seed graph: closed form of the grown graph G^(m)")
    s.add_argument("--steps", type=int, default=1, help="steps m with --seed (default 1)")
    s.add_argument("--marking", choices=("canonical", "plurality"), default="canonical", help="marking scheme for --g1/--g2")
    s.add_argument("--kind", choices=spectra.KINDS, default="laplacian", help="matrix kind")
    s.add_argument("--method", choices=("closed-form", "oracle"), default="oracle", help="how to obtain the spectrum")
    s.add_argument("--form", choices=("exact", "diagonal"), default="exact", help="secular equation poles when degrees differ")
    s.add_argument("--json", help="output path (default: stdout)")
    s.set_defaults(func=_cmd_spectrum)

    s = add("conflict", "algebraic conflict of G^(m) and the seed-plus-one check")
    s.add_argument("--seed", required=True, help="seed graph (.sg)")
    s.add_argument("--steps", type=int, required=True, help="number of corona steps m")
    s.add_argument("--method", choices=("auto", "branch", "oracle"), default="auto", help="branch closed form or dense solver")
    s.add_argument("--json", help="output path (default: stdout)")
    s.set_defaults(func=_cmd_conflict)

    s = add("census", "profile of a signed network: counts, fractions, balance")
    s.add_argument("file", help="edge list")
    s.add_argument("--format", choices=("snap", "sg"), default="snap", help="input format")
    s.add_argument("--conflict", choices=("neg", "pos", "drop"), default="neg", help="sign kept for pairs seen with both signs")
    s.add_argument("--spectral-budget", type=int, default=3000, help="largest node count for the conflict eigenvalue")
    s.add_argument("--json", help="output path (default: stdout)")
    s.set_defaults(func=_cmd_census)

    s = add("fit", "rank seed graphs whose corona graphs match a target profile")
    s.add_argument("--target", required=True, help="profile or trace JSON")
    s.add_argument("--nodes", type=int, help="desired node count (default: from the target)")
    s.add_argument("--n-max", type=int, default=6, help="largest seed size")
    s.add_argument("--m-max", type=int, default=30, help="largest number of steps")
    s.add_argument("--constrained", action="store_true", help="restrict to the constrained seed family")
    s.add_argument("--randomized", action="store_true", help="local search for every seed size")
    s.add_argument("--restarts", type=int, default=8, help="local search restarts per size")
    s.add_argument("--iterations", type=int, default=400, help="local search moves per restart")
    s.add_argument("--rng-seed", type=int, default=0, help="random search seed")
    s.add_argument("--top", type=int, default=10, help="number of seeds to return")
    s.add_argument("--out", help="directory for seed_NN.sg files and ranking.json")
    s.set_defaults(func=_cmd_fit)

    s = add("degree-dist", "degree distribution of G^(m) as CSV")
    s.add_argument("--seed", required=True, help="seed graph (.sg)")
    s.add_argument("--steps", type=int, required=True, help="number of corona steps m")
    s.add_argument("--which", choices=("joint", "positive", "negative"), default="joint", help="joint or marginal distribution")
    s.add_argument("--cumulative", action="store_true", help="fraction of nodes with degree at least d")
    s.add_argument("--csv", help="output path (default: stdout)")
    s.add_argument("--report", help="build G^(m) and write the degree divergence report as JSON")
    s.set_defaults(func=_cmd_degree_dist)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.threads < 1:
        print("corona: error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"corona: {exc}", file=sys.stderr)
        return 1
    except CoronaError as exc:
        print(f"corona: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"corona: {exc}", file=sys.stderr)
        return 1


def _entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    _entry()
