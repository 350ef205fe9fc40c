"""Command-line interface: one subcommand per experiment."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Dict

from locality_lab.config import COMMANDS, config_from_mapping, config_to_dict, load_config
from locality_lab.errors import ConfigError, GraphFormatError, LabError

EXIT_OK = 0
EXIT_SCHEMA = 1
EXIT_CHECK = 2

_HELP = {
    "gen-graph": "Generate a graph and write it in the graph file format",
    "run-local": "Run a LOCAL algorithm and verify its labeling",
    "run-lca": "Run an LCA over all queries, optionally in several seeded orders",
    "run-partree": "Run decision trees and cross-check the stateless LCA execution",
    "localize": "Localize a stateless LCA through the k-wise relabelling simulation",
    "estimate-failure": "Estimate the per-query failure rate of the relabelling simulation",
    "derandomize-search": "Search S_N for a permutation that works on every small graph",
    "lowerbound": "Compare transcript laws on two copies vs the double cover",
    "perm-test": "Measure k-tuple uniformity of a permutation family",
    "two-path-gap": "Compare state-full and stateless two-path leader election",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="Experiment config (.yaml/.yml or .json); flags override it")
    p.add_argument("--graph", help="Graph spec, e.g. cycle:64 or high-girth:14:3:5:1")
    p.add_argument("--graph-file", help="Read the graph from a graph file instead")
    p.add_argument("--alg", dest="algorithm", help="Algorithm id from the registry")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--t", type=int, help="Probe budget / rounds / tree depth")
    p.add_argument("--n-rule", help="Identifier space: n^4 or an integer")
    p.add_argument("--h", choices=("default", "empty", "cycle"), help="Virtual graph H")
    p.add_argument("--family", help="Permutation family: explicit, lazy, kwise or identity")
    p.add_argument("--k", type=int, help="k of the k-wise family")
    p.add_argument("--eps", help="ε of the k-wise family, as a rational (e.g. 1/1024)")
    p.add_argument("--rounds", type=int, help="Override the Feistel round count")
    p.add_argument("--budget", type=int, help="Probe count of gadget trees")
    p.add_argument("--target", type=int, help="Target id of the far prober")
    p.add_argument("--delta", type=int, help="Degree bound override")
    p.add_argument("--max-retries", type=int)
    p.add_argument("--mode", choices=("exact", "sampled"))
    p.add_argument("--samples", type=int)
    p.add_argument("--sizes", type=int, nargs="+", help="Sizes for two-path-gap and localize")
    p.add_argument("--queries", type=int, nargs="+", help="Restrict to these query vertices")
    p.add_argument("--out", help="Report directory")
    p.add_argument("--db", help="Run ledger URL, e.g. sqlite:///runs.db")
    p.add_argument("--transcripts", action="store_true", default=None, help="Write transcripts.jsonl")
    p.add_argument("--threads", type=int, help="Worker threads (default: LOCALITY_LAB_THREADS or 1)")


def _raw_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Config file (if any) overlaid with every flag that was given."""
    raw: Dict[str, Any] = config_to_dict(load_config(args.config)) if args.config else {}
    raw["command"] = args.command
    top = {
        "graph": args.graph,
        "graph_file": args.graph_file,
        "algorithm": args.algorithm,
        "trials": args.trials,
        "seed": args.seed,
        "mode": args.mode,
        "samples": args.samples,
        "sizes": args.sizes,
        "queries": args.queries,
        "out_dir": args.out,
        "db_url": args.db,
        "transcripts": args.transcripts,
        "threads": args.threads,
    }
    raw.update({k: v for k, v in top.items() if v is not None})
    model = dict(raw.get("model") or {})
    model.update(
        {
            k: v
            for k, v in {
                "t": args.t,
                "n_rule": args.n_rule,
                "h": args.h,
                "budget": args.budget,
                "target": args.target,
                "delta": args.delta,
                "max_retries": args.max_retries,
            }.items()
            if v is not None
        }
    )
    family = dict(raw.get("family") or {})
    family.update(
        {k: v for k, v in {"kind": args.family, "k": args.k, "epsilon": args.eps, "rounds": args.rounds}.items() if v is not None}
    )
    raw["model"], raw["family"] = model, family
    return raw


def _cmd_run(args: argparse.Namespace) -> int:
    """Run one experiment; maps errors to exit codes and error.json."""
    from locality_lab.experiments.runner import run_experiment, write_error

    out_dir = Path(args.out or "reports")
    try:
        cfg = config_from_mapping(_raw_from_args(args))
        out_dir = Path(cfg.out_dir)
        run_experiment(cfg)
        return EXIT_OK
    except (ConfigError, GraphFormatError, FileNotFoundError) as e:
        print(f"[ERROR] {e}")
        print(write_error(e, out_dir))
        return EXIT_SCHEMA
    except LabError as e:
        print(f"[ERROR] {e}")
        print(write_error(e, out_dir))
        return EXIT_CHECK
    except ValueError as e:
        print(f"[ERROR] Invalid parameters: {e}")
        print(write_error(e, out_dir))
        return EXIT_SCHEMA


def _cmd_init_db(args: argparse.Namespace) -> int:
    from locality_lab.domain.db import DEFAULT_DB_URL, init_database

    init_database(args.db or DEFAULT_DB_URL)
    return EXIT_OK


def _cmd_list(args: argparse.Namespace) -> int:
    from locality_lab.algorithms.registry import algorithm_ids, resolve

    for alg_id in algorithm_ids():
        entry = resolve(alg_id)
        forms = "lca+local" if entry.has_local else "lca"
        print(f"{alg_id:22s} {forms:10s} {entry.description}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="locality-lab", description="Local computation experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        p = sub.add_parser(command, help=_HELP[command])
        _add_common(p)
        p.set_defaults(func=_cmd_run)

    init = sub.add_parser("init-db", help="Create the run-ledger tables")
    init.add_argument("--db", help="Ledger URL (default: sqlite:///locality_lab.db)")
    init.set_defaults(func=_cmd_init_db)

    lst = sub.add_parser("list-algorithms", help="Show registered algorithm ids")
    lst.set_defaults(func=_cmd_list)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
