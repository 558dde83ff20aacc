"""Command line front end.

Subcommands: analyze (enumerate minimal siphons/traps of a model file),
gen (write benchmark nets), sweep (random 3-SAT reduction hardness sweep),
stats (summary over a directory of models). Exit codes: 0 on success
(timeouts are reported in-band), 1 on usage errors, 2 on file format errors.
"""

import argparse
import csv
import io
import json
import statistics
import sys
from pathlib import Path

from .analysis import (canonical_order, enumerate_minimal_siphons,
                       enumerate_minimal_traps, filter_containing, siphon_trap_report)
from .branch_bound import Strategy
from .generators import gen_3sat_reduction, gen_chain, gen_random_3sat, gen_random_net
from .encoding import encode_siphon
from .net import PetriNet, format_place_set
from .pnml import export_pnml, parse_pnml
from .reactions import ParseError, export_reactions, parse_reactions
from .search import Budget

DEFAULT_TIMEOUT_MS = 2000.0
SWEEP_ALPHAS = "0,1,2,3,4,4.2,4.4,4.6,5,6,8,10"
MODEL_SUFFIXES = (".rxn", ".pnml", ".xml")


def _budget(args) -> Budget | None:
    max_ms = args.timeout if args.timeout > 0 else None
    max_conflicts = getattr(args, "max_conflicts", None)
    if max_ms is None and max_conflicts is None:
        return None
    return Budget(max_conflicts=max_conflicts, max_ms=max_ms)


def _load_model(path: Path, fmt: str | None) -> tuple[PetriNet, tuple[int, ...], str]:
    if fmt is None:
        if path.suffix == ".rxn":
            fmt = "rxn"
        elif path.suffix in (".pnml", ".xml"):
            fmt = "pnml"
        else:
            raise ValueError(f"cannot infer format of {path.name!r}; pass --format")
    text = path.read_text()
    if fmt == "rxn":
        net, marking = parse_reactions(text)
    else:
        net, marking = parse_pnml(text)
    return net, marking, fmt


def _strategy(args) -> Strategy | None:
    kind = getattr(args, "strategy", None)
    if kind is None:
        return None
    if kind == "random":
        return Strategy.random(args.seed or 0)
    return Strategy(kind)


def _result_dict(net: PetriNet, result) -> dict:
    ordered = canonical_order(net, result.sets)
    sizes = [len(s) for s in ordered]
    return {
        "count": len(ordered),
        "sets": [list(net.set_names(s)) for s in ordered],
        "size_min": min(sizes) if sizes else None,
        "size_max": max(sizes) if sizes else None,
        "size_avg": round(sum(sizes) / len(sizes), 3) if sizes else None,
        "elapsed_ms": round(result.stats.elapsed_ms, 3),
        "timed_out": result.stats.timed_out,
        "solve_calls": result.stats.solve_calls,
        "conflicts": result.stats.conflicts,
        "decisions": result.stats.decisions,
    }


def cmd_analyze(args) -> int:
    path = Path(args.model)
    net, marking, fmt = _load_model(path, args.format)
    budget = _budget(args)
    strategy = _strategy(args)
    required = None
    if args.contains:
        required = frozenset(net.place_index(name.strip())
                             for name in args.contains.split(",") if name.strip())
    trace_file = None
    emit = None
    if args.trace:
        if args.engine != "bb":
            raise ValueError("--trace needs --engine bb")
        trace_file = open(args.trace, "w")
        emit = lambda line: print(line, file=trace_file)

    targets = ("siphons", "traps") if args.target == "both" else (args.target,)
    payload = {
        "model": str(path),
        "format": fmt,
        "places": len(net.places),
        "transitions": len(net.transitions),
        "engine": args.engine,
    }
    if required is not None:
        payload["contains"] = sorted(net.places[p] for p in required)
    try:
        for target in targets:
            run = enumerate_minimal_siphons if target == "siphons" else enumerate_minimal_traps
            result = run(net, engine=args.engine, budget=budget, strategy=strategy,
                         restart=args.restart, trace=emit)
            if required is not None:
                result.sets = filter_containing(result.sets, required)
            payload[target] = _result_dict(net, result)
    finally:
        if trace_file is not None:
            trace_file.close()
    if args.marking_report:
        report = siphon_trap_report(net, marking, engine=args.engine, budget=budget)
        payload["marking_report"] = report.to_dict()

    if args.output == "json":
        print(json.dumps(payload, indent=2))
    elif args.output == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["model", "target", "engine", "places", "transitions", "count",
                         "size_min", "size_max", "size_avg", "elapsed_ms", "timed_out"])
        for target in targets:
            block = payload[target]
            writer.writerow([path.name, target, args.engine, len(net.places),
                             len(net.transitions), block["count"], block["size_min"],
                             block["size_max"], block["size_avg"], block["elapsed_ms"],
                             block["timed_out"]])
    else:
        print(f"model {path.name}: {len(net.places)} places, {len(net.transitions)} transitions")
        if required is not None:
            print("filter: sets containing " + "{" + ", ".join(payload["contains"]) + "}")
        for target in targets:
            block = payload[target]
            flag = " (timed out, partial)" if block["timed_out"] else ""
            print(f"{target} ({args.engine}): {block['count']} minimal set(s) "
                  f"in {block['elapsed_ms']} ms{flag}")
            for names in block["sets"]:
                print("  {" + ", ".join(names) + "}")
        if args.marking_report:
            print(siphon_trap_report(net, marking, engine=args.engine, budget=budget).to_text())
    return 0


def _write_net(net: PetriNet, out: Path, marking=None) -> None:
    if out.suffix == ".rxn":
        out.write_text(export_reactions(net, marking))
    else:
        out.write_text(export_pnml(net, marking))


def cmd_gen(args) -> int:
    out = Path(args.out)
    if args.family == "chain":
        net = gen_chain(args.n)
        _write_net(net, out)
    elif args.family == "sat-reduction":
        instance = gen_random_3sat(args.vars, args.clauses, args.seed or 0)
        net = gen_3sat_reduction(instance)
        _write_net(net, out)
        cnf = out.with_suffix(".cnf")
        cnf.write_text(instance.to_dimacs())
        print(f"wrote {cnf} (3-SAT instance, {len(instance.clauses)} clauses)")
    else:
        net = gen_random_net(args.places, args.transitions, args.degree, args.seed or 0)
        _write_net(net, out)
    print(f"wrote {out} ({len(net.places)} places, {len(net.transitions)} transitions)")
    return 0


def cmd_sweep(args) -> int:
    try:
        alphas = [float(a) for a in args.alpha.split(",") if a.strip()]
    except ValueError:
        raise ValueError(f"bad alpha list {args.alpha!r}") from None
    if not alphas or args.trials < 1:
        raise ValueError("need at least one alpha and one trial")
    n = args.vars
    budget_ms = args.timeout if args.timeout > 0 else None
    rows = []
    for index, alpha in enumerate(alphas):
        m = round(alpha * n)
        times, counts, timeouts = [], [], 0
        f_vars = f_clauses = places = transitions = 0
        for trial in range(args.trials):
            instance = gen_random_3sat(n, m, seed=args.seed + 1000 * index + trial)
            net = gen_3sat_reduction(instance)
            if trial == 0:
                formula, _ = encode_siphon(net)
                f_vars, f_clauses = formula.num_vars, len(formula.clauses)
                places, transitions = len(net.places), len(net.transitions)
            budget = Budget(max_ms=budget_ms) if budget_ms is not None else None
            result = enumerate_minimal_siphons(net, engine=args.engine, budget=budget)
            times.append(result.stats.elapsed_ms)
            counts.append(len(result.sets))
            timeouts += result.stats.timed_out
        rows.append({
            "alpha": alpha,
            "places": places,
            "transitions": transitions,
            "density": round(m / n, 4),
            "vars": f_vars,
            "clauses": f_clauses,
            "time_ms": round(statistics.median(times), 3),
            "timed_out": round(timeouts / args.trials, 3),
            "siphon_count": statistics.median_low(counts),
        })
    text = io.StringIO()
    writer = csv.DictWriter(text, fieldnames=["alpha", "places", "transitions", "density",
                                              "vars", "clauses", "time_ms", "timed_out",
                                              "siphon_count"])
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(text.getvalue())
    else:
        sys.stdout.write(text.getvalue())
    return 0


def cmd_stats(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise ValueError(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.suffix in MODEL_SUFFIXES)
    if not files:
        raise ValueError(f"no model files in {directory}")
    budget_ms = args.timeout if args.timeout > 0 else None
    entries = []
    failures = []
    for path in files:
        try:
            net, _, _ = _load_model(path, None)
        except (ParseError, ValueError) as exc:
            failures.append((path.name, str(exc)))
            continue
        budget = Budget(max_ms=budget_ms) if budget_ms is not None else None
        result = enumerate_minimal_siphons(net, engine=args.engine, budget=budget)
        entries.append({
            "model": path.name,
            "places": len(net.places),
            "transitions": len(net.transitions),
            "count": len(result.sets),
            "sizes": sorted(len(s) for s in result.sets),
            "elapsed_ms": result.stats.elapsed_ms,
            "timed_out": result.stats.timed_out,
        })
    counts = [e["count"] for e in entries]
    sizes = [s for e in entries for s in e["sizes"]]
    summary = {
        "models": len(entries),
        "count_min": min(counts) if counts else None,
        "count_max": max(counts) if counts else None,
        "count_avg": round(sum(counts) / len(counts), 3) if counts else None,
        "size_min": min(sizes) if sizes else None,
        "size_max": max(sizes) if sizes else None,
        "size_avg": round(sum(sizes) / len(sizes), 3) if sizes else None,
        "total_ms": round(sum(e["elapsed_ms"] for e in entries), 3),
        "timeouts": sum(e["timed_out"] for e in entries),
        "unparseable": [name for name, _ in failures],
    }
    if args.output == "json":
        print(json.dumps({"models": entries, "summary": summary}, indent=2))
    elif args.output == "csv":
        writer = csv.writer(sys.stdout)
        header = ["models", "count_min", "count_max", "count_avg",
                  "size_min", "size_max", "size_avg", "total_ms", "timeouts"]
        writer.writerow(header)
        writer.writerow([summary[k] for k in header])
    else:
        for e in entries:
            flag = " (timed out)" if e["timed_out"] else ""
            print(f"{e['model']}: {e['count']} siphons, sizes "
                  f"{e['sizes'][0] if e['sizes'] else '-'}–{e['sizes'][-1] if e['sizes'] else '-'}, "
                  f"{e['elapsed_ms']:.1f} ms{flag}")
        for name, reason in failures:
            print(f"{name}: unparseable ({reason})")
        partial = " (partial: timeouts)" if summary["timeouts"] else ""
        print(f"corpus: {summary['models']} models, counts {summary['count_min']}–"
              f"{summary['count_max']} (avg {summary['count_avg']}), sizes "
              f"{summary['size_min']}–{summary['size_max']} (avg {summary['size_avg']}), "
              f"total {summary['total_ms']} ms{partial}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siphons",
                                     description="Minimal siphon and trap enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="enumerate minimal siphons/traps of a model")
    analyze.add_argument("model", help="model file (.rxn, .pnml, .xml)")
    analyze.add_argument("--format", choices=["rxn", "pnml"])
    analyze.add_argument("--target", choices=["siphons", "traps", "both"], default="siphons")
    analyze.add_argument("--engine", choices=["sat", "bb", "oracle"], default="sat")
    analyze.add_argument("--contains", metavar="PLACES",
                         help="comma-separated places every reported set must contain")
    analyze.add_argument("--marking-report", action="store_true",
                         help="report the maximal marked trap inside each siphon")
    analyze.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT_MS,
                         metavar="MS", help="budget in milliseconds, 0 for none")
    analyze.add_argument("--max-conflicts", type=int, default=None)
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--strategy", choices=["fixed", "random", "frequency"])
    analyze.add_argument("--restart", action="store_true",
                         help="bb only: restart from the root after each solution")
    analyze.add_argument("--trace", metavar="FILE", help="bb only: write a search trace")
    analyze.add_argument("--output", choices=["text", "json", "csv"], default="text")
    analyze.set_defaults(func=cmd_analyze)

    gen = sub.add_parser("gen", help="generate benchmark nets")
    gensub = gen.add_subparsers(dest="family", required=True)
    chain = gensub.add_parser("chain")
    chain.add_argument("--n", type=int, required=True)
    chain.add_argument("out")
    reduction = gensub.add_parser("sat-reduction")
    reduction.add_argument("--vars", type=int, required=True)
    reduction.add_argument("--clauses", type=int, required=True)
    reduction.add_argument("--seed", type=int, default=0)
    reduction.add_argument("out")
    rand = gensub.add_parser("random-net")
    rand.add_argument("--places", type=int, required=True)
    rand.add_argument("--transitions", type=int, required=True)
    rand.add_argument("--degree", type=int, default=4)
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("out")
    gen.set_defaults(func=cmd_gen)

    sweep = sub.add_parser("sweep", help="hardness sweep over random 3-SAT reductions")
    sweep.add_argument("--vars", type=int, default=50)
    sweep.add_argument("--alpha", default=SWEEP_ALPHAS,
                       help="comma-separated clause/variable ratios")
    sweep.add_argument("--trials", type=int, default=5)
    sweep.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT_MS, metavar="MS")
    sweep.add_argument("--engine", choices=["sat", "bb"], default="sat")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", help="CSV output file (default: stdout)")
    sweep.set_defaults(func=cmd_sweep)

    stats = sub.add_parser("stats", help="summary over a directory of models")
    stats.add_argument("directory")
    stats.add_argument("--engine", choices=["sat", "bb", "oracle"], default="sat")
    stats.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT_MS, metavar="MS")
    stats.add_argument("--output", choices=["text", "json", "csv"], default="text")
    stats.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
