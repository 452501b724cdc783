"""Command-line front end.

Exit codes: 0 on success, 2 when a checked bound or equivalence fails,
1 on usage errors.  A flat ``key = value`` config file can pre-set any
long option of the chosen subcommand; explicit flags win.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from random import Random
from typing import Dict, List, Optional

from . import bounds
from .cycle import CycleGraph
from .experiments import (
    ExperimentConfig,
    derive_seed,
    emit_plotdata,
    equivalence_sweep,
    run_experiment,
)
from .networks import (
    absorption_analysis,
    effective_resistance,
    square_grid,
    triangle_resistance_check,
    trial_chain,
)
from .oracle import census, census_csv, min_dominating_size
from .particles import TriangleWalkConfig, fixed_arc_targets, triangle_hitting_time
from .rls import StopRule, random_init, run

OK, CHECK_FAILED, USAGE = 0, 2, 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 on usage errors; we use 1
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE)


def _load_config(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def build_parser() -> _Parser:
    parser = _Parser(prog="rlscycle")
    parser.add_argument("--config", help="flat key=value defaults file")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--out", help="output file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single search trajectory")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-iters", type=int, default=10_000_000)
    p.add_argument("--target", choices=["feasible", "half", "optimum"], default="optimum")
    p.add_argument("--record", choices=["accepted", "full", "none"], default="accepted")
    p.add_argument("--swap-from-vertices", action="store_true")
    p.add_argument("--events-out", help="JSONL event dump path")

    p = sub.add_parser("experiment", help="value-vs-bound grid over cycle sizes")
    p.add_argument("--kind", required=True,
                   choices=["feasibility", "half", "optimum", "fixed-arc",
                            "resistance", "census", "trial-chain"])
    p.add_argument("--ns", type=_int_list, required=True, help="cycle sizes, comma separated")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--max-iters", type=int, default=50_000_000)
    p.add_argument("--swap-from-vertices", action="store_true")

    p = sub.add_parser("census", help="count dominating sets on small cycles")
    p.add_argument("--ns", type=_int_list, required=True)
    p.add_argument("-k", type=int, help="restrict to one cardinality")
    p.add_argument("--verify-minimum", action="store_true",
                   help="also check the minimum size formula ceil(n/3)")

    p = sub.add_parser("resistance", help="grid resistance checks / pairwise resistances")
    p.add_argument("--triangle", type=int, default=0, help="check triangles up to this size")
    p.add_argument("--square", type=int, default=0, help="check square grids up to this size")
    p.add_argument("--edges", help="edge-list file ('u v conductance' per line); "
                                   "emits all pairwise resistances")

    p = sub.add_parser("fixed-arc", help="triangle-walk hitting times of the corner region")
    p.add_argument("-n", type=int, required=True, help="cycle size (sets the walk laziness)")
    p.add_argument("-k", type=int, required=True, help="cardinality level / triangle size")
    p.add_argument("--mode", choices=["simulate", "exact"], default="exact")
    p.add_argument("--trials", type=int, default=200, help="walkers per start (simulate)")
    p.add_argument("--starts", type=int, default=0,
                   help="limit to this many interior start states (0 = all)")

    p = sub.add_parser("trial-chain", help="restart gadget absorption checks")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("equivalence", help="exhaustive redundancy equivalence sweep")
    p.add_argument("--max-n", type=int, default=14)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            defaults = _load_config(args.config)
            # config provides defaults: re-parse with them installed
            parser2 = build_parser()
            for action in parser2._subparsers._group_actions[0].choices.values():
                known = {a.dest for a in action._actions}
                action.set_defaults(**{k: _coerce(v) for k, v in defaults.items() if k in known})
            parser2.set_defaults(**{k: _coerce(v) for k, v in defaults.items()
                                    if k in {"seed", "jobs", "out"}})
            args = parser2.parse_args(argv)
        return _dispatch(args)
    except SystemExit as e:
        return int(e.code or 0)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def _coerce(value: str):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    if value.lower() in ("true", "false"):
        return value.lower() == "true"
    if "," in value:
        return _int_list(value)
    return value


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dispatch(args) -> int:
    return {
        "run": _cmd_run,
        "experiment": _cmd_experiment,
        "census": _cmd_census,
        "resistance": _cmd_resistance,
        "fixed-arc": _cmd_fixed_arc,
        "trial-chain": _cmd_trial_chain,
        "equivalence": _cmd_equivalence,
    }[args.command](args)


def _cmd_run(args) -> int:
    g = CycleGraph(args.n)
    rng = Random(derive_seed(args.seed, "run", args.n))
    if args.target == "feasible":
        stop = StopRule(max_iters=args.max_iters, target_feasible=True)
    elif args.target == "half":
        stop = StopRule(max_iters=args.max_iters, target_cardinality=args.n // 2)
    else:
        stop = StopRule(max_iters=args.max_iters,
                        target_cardinality=bounds.optimum_size(args.n))
    traj = run(g, random_init(g, rng), stop, rng, seed=args.seed,
               record=args.record, swap_from_vertices=args.swap_from_vertices)
    if args.events_out and args.record != "none":
        Path(args.events_out).write_text(traj.dump_events_jsonl())
    _emit(args, traj.checkpoints_csv())
    if traj.capped:
        print("warning: iteration cap reached", file=sys.stderr)
        return CHECK_FAILED
    return OK


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        kind=args.kind, ns=tuple(args.ns), seeds=args.seeds,
        master_seed=args.seed, max_iters=args.max_iters,
        swap_from_vertices=args.swap_from_vertices, jobs=args.jobs,
    )
    result = run_experiment(cfg)
    _emit(args, emit_plotdata(result))
    bad = result.violations()
    if bad:
        print(f"bound violated at n={bad}", file=sys.stderr)
        return CHECK_FAILED
    if any(r.capped for r in result.rows):
        print("warning: some runs hit the iteration cap", file=sys.stderr)
        return CHECK_FAILED
    return OK


def _cmd_census(args) -> int:
    rows = []
    status = OK
    for n in args.ns:
        ks = [args.k] if args.k else range(1, n + 1)
        for k in ks:
            rows.append(census(n, k))
        if args.verify_minimum and min_dominating_size(n) != bounds.optimum_size(n):
            print(f"minimum size formula fails at n={n}", file=sys.stderr)
            status = CHECK_FAILED
    _emit(args, census_csv(rows))
    return status


def _cmd_resistance(args) -> int:
    import math

    if args.edges:
        net = _load_edge_list(args.edges)
        lines = ["s,t,resistance"]
        nodes = list(net.nodes)
        for i, s in enumerate(nodes):
            for t in nodes[i + 1:]:
                lines.append(f"{s},{t},{effective_resistance(net, s, t)!r}")
        _emit(args, "\n".join(lines) + "\n")
        return OK

    lines = ["family,n,value,bound"]
    status = OK
    for n in range(2, args.triangle + 1):
        value, bound = triangle_resistance_check(n)
        lines.append(f"triangle,{n},{value!r},{bound!r}")
        if value > bound:
            status = CHECK_FAILED
    for n in range(2, args.square + 1):
        net = square_grid(n)
        value = effective_resistance(net, (1, 1), (n, n))
        low, high = math.log(n) / 2.0, 2.0 * math.log(n)
        lines.append(f"square,{n},{value!r},{high!r}")
        if not low <= value <= high:
            status = CHECK_FAILED
    if args.triangle <= 0 and args.square <= 0:
        print("nothing to check: give --triangle, --square or --edges", file=sys.stderr)
        return USAGE
    _emit(args, "\n".join(lines) + "\n")
    if status != OK:
        print("resistance bound violated", file=sys.stderr)
    return status


def _load_edge_list(path: str):
    from .networks import Network

    nodes: List[str] = []
    conductances = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'u v conductance'")
        u, v, c = parts[0], parts[1], float(parts[2])
        for w in (u, v):
            if w not in nodes:
                nodes.append(w)
        conductances[(u, v)] = c
    return Network(nodes=nodes, conductances=conductances)


def _cmd_fixed_arc(args) -> int:
    k = args.k
    targets = fixed_arc_targets(k)
    starts = [
        (x, y)
        for x in range(k + 1)
        for y in range(k + 1 - x)
        if (x, y) not in targets and (x, y) not in {(0, 0), (0, k), (k, 0)}
    ]
    if args.starts:
        starts = starts[: args.starts]
    cfg = TriangleWalkConfig(n=k, c=4 * args.n)
    lines = ["state,hitting_time,se"]
    for start in starts:
        if args.mode == "exact":
            from .particles import triangle_hitting_time_exact

            value = triangle_hitting_time_exact(cfg, start, targets)
            lines.append(f"({start[0]};{start[1]}),{value!r},0.0")
        else:
            rng = Random(derive_seed(args.seed, "fixed-arc", args.n, k, start))
            mean, se = triangle_hitting_time(cfg, start, targets, rng, trials=args.trials)
            lines.append(f"({start[0]};{start[1]}),{mean!r},{se!r}")
    _emit(args, "\n".join(lines) + "\n")
    return OK


def _cmd_trial_chain(args) -> int:
    n = args.n
    chain = trial_chain(n)
    probs, _ = absorption_analysis(chain, ["G", "B"])
    p_g = probs["S"]["G"]
    # B stays formally absorbing even when unreachable; list it so the
    # transient block excludes it
    _, times = absorption_analysis(trial_chain(n, reachable_failure=False), ["G", "B"])
    f_s = times["S"]
    _emit(args, f"n,p_success,expected_restart_time\n{n},{p_g!r},{f_s!r}\n")
    if abs(p_g - 0.5) > 1e-12 or abs(f_s - 4.0 * n) > 1e-12 * 4.0 * n:
        print("trial-chain closed forms violated", file=sys.stderr)
        return CHECK_FAILED
    return OK


def _cmd_equivalence(args) -> int:
    report = equivalence_sweep(args.max_n)
    _emit(args, f"checked,{report.checked}\nok,{report.ok}\n")
    if not report.ok:
        print(f"counterexample: {report.counterexample}", file=sys.stderr)
        return CHECK_FAILED
    return OK


if __name__ == "__main__":
    raise SystemExit(main())
