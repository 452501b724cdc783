"""Batch experiments: phase-time scaling, coupled redundancy runs, sweeps.

Seeds are derived per cell as sha256(master_seed:n:index) so grids are
reproducible regardless of execution order or worker count.
"""
from __future__ import annotations

import csv
import hashlib
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from random import Random
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import bounds
from .adjacency import AdjacencyWeights
from .cycle import CycleGraph, find_dense_arc, is_dominating, redundant_vertices
from .oracle import dominating_sets, verify_reducibility_lemma
from .particles import (
    FixedArcTracker,
    fixed_arc_targets,
    particle_step,
    particles_from_weights,
    particles_redundant,
)
from .rls import StopRule, random_init, run

__all__ = [
    "ExperimentConfig",
    "ScalingRow",
    "ScalingResult",
    "CoupledRunResult",
    "CoupledSummary",
    "EquivalenceReport",
    "derive_seed",
    "run_experiment",
    "coupled_fixed_arc_run",
    "coupled_fixed_arc_experiment",
    "equivalence_sweep",
    "emit_plotdata",
    "parse_plotdata",
]

SCALING_KINDS = ("feasibility", "half", "optimum")
EXPERIMENT_KINDS = SCALING_KINDS + ("fixed-arc", "resistance", "census", "trial-chain")


def derive_seed(master: int, *parts) -> int:
    text = ":".join([str(master)] + [str(p) for p in parts])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    ns: Tuple[int, ...]
    seeds: int = 100
    master_seed: int = 0
    max_iters: int = 50_000_000
    swap_from_vertices: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"kind must be one of {EXPERIMENT_KINDS}, got {self.kind!r}")
        if not self.ns:
            raise ValueError("need at least one cycle size")
        if list(self.ns) != sorted(set(self.ns)) or min(self.ns) < 3:
            raise ValueError("cycle sizes must be strictly increasing and >= 3")
        if self.seeds < 1:
            raise ValueError("need at least one seed per size")


@dataclass
class ScalingRow:
    n: int
    mean: float
    se: float
    bound: float
    capped: int = 0


@dataclass
class ScalingResult:
    kind: str
    rows: List[ScalingRow]
    raw: List[Tuple[int, int, int, bool]]  # (n, seed_index, time, capped)
    slope: Optional[float] = None
    slope_ci: Optional[Tuple[float, float]] = None

    def violations(self) -> List[int]:
        return [r.n for r in self.rows if r.mean > r.bound]


def _phase_time(kind: str, n: int, seed: int, max_iters: int, swap_from_vertices: bool):
    """One run; returns (time, capped) for the requested phase."""
    g = CycleGraph(n)
    rng = Random(seed)
    init = random_init(g, rng)
    if kind == "feasibility":
        stop = StopRule(max_iters=max_iters, target_feasible=True)
    elif kind == "half":
        stop = StopRule(max_iters=max_iters, target_cardinality=n // 2)
    else:
        stop = StopRule(max_iters=max_iters, target_cardinality=bounds.optimum_size(n))
    traj = run(
        g, init, stop, rng, seed=seed, record="none", summary_every=0,
        swap_from_vertices=swap_from_vertices,
    )
    if traj.capped:
        return max_iters, True
    cp = traj.checkpoints
    if kind == "feasibility":
        return cp["first_feasible"], False
    if kind == "half":
        # measured from the first dominating set onward
        return cp["first_half"] - cp["first_feasible"], False
    return cp["first_optimal"], False


def _cell(args):
    kind, n, idx, master, max_iters, sfv = args
    t, capped = _phase_time(kind, n, derive_seed(master, n, idx), max_iters, sfv)
    return (n, idx, t, capped)


def _bound_for(kind: str, n: int) -> float:
    if kind == "feasibility":
        return bounds.feasibility_bound(n)
    if kind == "half":
        return bounds.half_bound(n)
    return bounds.optimum_total_bound(n)


def default_level(n: int) -> int:
    """Midpoint cardinality level between the optimum and floor(n/2)."""
    return (bounds.optimum_size(n) + n // 2) // 2


def run_experiment(cfg: ExperimentConfig) -> ScalingResult:
    """Execute one experiment grid and aggregate value-vs-bound rows per n.

    Scaling kinds measure phase hitting times over the seed grid; the other
    kinds reuse the same result shape with their natural quantity and bound
    (fixed-arc: mean first-redundancy time vs. its closed form; resistance:
    max origin resistance of the size-n triangle vs. its bound; census:
    exact minimum dominating size vs. ceil(n/3); trial-chain: expected
    restart length vs. 4n).
    """
    if cfg.kind not in SCALING_KINDS:
        return _run_checking_experiment(cfg)
    cells = [
        (cfg.kind, n, i, cfg.master_seed, cfg.max_iters, cfg.swap_from_vertices)
        for n in cfg.ns
        for i in range(cfg.seeds)
    ]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            raw = list(pool.map(_cell, cells, chunksize=8))
    else:
        raw = [_cell(c) for c in cells]
    rows = []
    for n in cfg.ns:
        times = np.array([t for (m, _, t, _) in raw if m == n], dtype=float)
        capped = sum(1 for (m, _, _, c) in raw if m == n and c)
        se = float(times.std(ddof=1) / math.sqrt(len(times))) if len(times) > 1 else 0.0
        rows.append(
            ScalingRow(
                n=n,
                mean=float(times.mean()),
                se=se,
                bound=_bound_for(cfg.kind, n),
                capped=capped,
            )
        )
    result = ScalingResult(kind=cfg.kind, rows=rows, raw=raw)
    if len(cfg.ns) >= 3:
        result.slope, result.slope_ci = _loglog_slope(rows)
    return result


def _run_checking_experiment(cfg: ExperimentConfig) -> ScalingResult:
    rows: List[ScalingRow] = []
    raw: List[Tuple[int, int, int, bool]] = []
    for n in cfg.ns:
        if cfg.kind == "fixed-arc":
            k = default_level(n)
            summary = coupled_fixed_arc_experiment(
                n, k, runs=cfg.seeds, master_seed=cfg.master_seed, max_iters=cfg.max_iters
            )
            times = np.array(
                [r.first_redundant for r in summary.runs if not r.capped], dtype=float
            )
            capped = sum(1 for r in summary.runs if r.capped)
            se = float(times.std(ddof=1) / math.sqrt(len(times))) if len(times) > 1 else 0.0
            rows.append(ScalingRow(n, float(times.mean()), se,
                                   bounds.first_redundancy_bound(n, k), capped))
            raw.extend((n, i, r.first_redundant or cfg.max_iters, r.capped)
                       for i, r in enumerate(summary.runs))
        elif cfg.kind == "resistance":
            from .networks import triangle_resistance_check

            value, bound = triangle_resistance_check(n)
            rows.append(ScalingRow(n, value, 0.0, bound))
        elif cfg.kind == "census":
            from .oracle import min_dominating_size

            rows.append(ScalingRow(n, float(min_dominating_size(n)), 0.0,
                                   float(bounds.optimum_size(n))))
        else:  # trial-chain: expected restart length with failure unreachable
            from .networks import absorption_analysis, trial_chain

            _, times = absorption_analysis(
                trial_chain(n, reachable_failure=False), ["G", "B"]
            )
            rows.append(ScalingRow(n, times["S"], 0.0, 4.0 * n))
    return ScalingResult(kind=cfg.kind, rows=rows, raw=raw)


def _loglog_slope(
    rows: Sequence[ScalingRow],
) -> Tuple[Optional[float], Optional[Tuple[float, float]]]:
    """Least-squares slope of log(mean) against log(n), with a 95% CI."""
    from scipy import stats

    rows = [r for r in rows if r.mean > 0]
    if len(rows) < 3:
        return None, None
    x = np.log([r.n for r in rows])
    y = np.log([r.mean for r in rows])
    fit = stats.linregress(x, y)
    half_width = 1.96 * fit.stderr
    return float(fit.slope), (float(fit.slope - half_width), float(fit.slope + half_width))


def emit_plotdata(result: ScalingResult, stream=None) -> str:
    """CSV with header ``n,mean,se,bound`` plus commented metadata rows."""
    out = io.StringIO()
    out.write("n,mean,se,bound\n")
    for r in result.rows:
        out.write(f"{r.n},{r.mean!r},{r.se!r},{r.bound!r}\n")
    if result.slope is not None:
        lo, hi = result.slope_ci
        out.write(f"# slope={result.slope!r} ci=({lo!r},{hi!r})\n")
    capped = {r.n: r.capped for r in result.rows if r.capped}
    if capped:
        out.write(f"# capped runs: {capped}\n")
    text = out.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def parse_plotdata(text: str) -> List[ScalingRow]:
    rows = []
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    reader = csv.DictReader(lines)
    for rec in reader:
        rows.append(
            ScalingRow(
                n=int(rec["n"]),
                mean=float(rec["mean"]),
                se=float(rec["se"]),
                bound=float(rec["bound"]),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# coupled redundancy runs at one cardinality level


@dataclass
class CoupledRunResult:
    first_redundant: Optional[int]
    arc_hit: Optional[int]
    interior_steps: int
    interior_transitions: int
    capped: bool


@dataclass
class CoupledSummary:
    runs: List[CoupledRunResult]
    k: int

    @property
    def dominated(self) -> bool:
        """first-redundancy never after the arc hit, in every completed run."""
        return all(
            r.first_redundant <= r.arc_hit
            for r in self.runs
            if not r.capped
        )

    def transition_rate(self) -> Tuple[float, float, float]:
        """(empirical per-neighbor rate, its standard error, model rate)."""
        steps = sum(r.interior_steps for r in self.runs)
        moves = sum(r.interior_transitions for r in self.runs)
        trials = 6 * steps  # six candidate neighbors per interior step
        p_hat = moves / trials
        se = math.sqrt(p_hat * (1 - p_hat) / trials)
        return p_hat, se, 1.0 / (4.0 * self.k)


def _initial_weights(n: int, k: int) -> AdjacencyWeights:
    """An irredundant size-k gap sequence: only weights 2 and 3."""
    threes = n - 2 * k
    twos = 3 * k - n
    if threes < 0 or twos < 0:
        raise ValueError(f"no weight-{{2,3}} sequence with k={k} sums to n={n}")
    if twos < 1:
        raise ValueError("need at least one weight-2 gap so particles exist")
    weights = tuple([2] * twos + [3] * threes)
    return AdjacencyWeights(n=n, weights=weights, anchor=0)


def coupled_fixed_arc_run(
    n: int, k: int, rng: Random, max_iters: int = 20_000_000
) -> CoupledRunResult:
    """Run the fixed-cardinality swap dynamics with the tracked triple.

    The search state is kept as the gap sequence of a size-k dominating
    set; per iteration a fair coin picks the flip branch (never accepted at
    a fixed level before the first redundancy, so it only costs time) or a
    swap of a uniform member in a uniform direction.  Particles and the
    tracked triple follow every accepted swap; the run ends once both the
    first redundant configuration and the first arc-target hit have been
    seen.
    """
    w = list(_initial_weights(n, k).weights)
    state = particles_from_weights(AdjacencyWeights(n=n, weights=tuple(w), anchor=0))
    if len(state.positions) < 3:
        raise ValueError("level has fewer than three particles; nothing to track")
    tracker = FixedArcTracker(state)
    targets = fixed_arc_targets(k)
    coin_rng = Random(rng.getrandbits(64))

    first_red: Optional[int] = None
    arc_hit: Optional[int] = None
    interior_steps = 0
    interior_moves = 0
    arc = tracker.state(state)
    t = 0
    while (first_red is None or arc_hit is None) and t < max_iters:
        t += 1
        # frequency accounting happens per iteration (flip branch included):
        # a specific labeled arc transition fires with probability
        # 1/2 * 1/k * 1/2 = 1/(4k) per iteration while no redundancy exists
        interior_now = (
            first_red is None and arc.x > 0 and arc.y > 0 and arc.x + arc.y < k
        )
        if interior_now:
            interior_steps += 1
        if rng.random() < 0.5:
            rng.randrange(n)  # flip proposal: drawn, never accepted here
            continue
        member = rng.randrange(k)
        cw = rng.randrange(2)
        if cw:
            grow, shrink = (member - 1) % k, member
        else:
            grow, shrink = member, (member - 1) % k
        if not (w[grow] <= 2 and w[shrink] >= 2):
            continue
        w[grow] += 1
        w[shrink] -= 1
        coin = coin_rng.randrange(2) if len(state.at(grow)) == 2 else 0
        new_state, mover = particle_step(state, grow, "cw" if shrink == (grow + 1) % k else "ccw", coin)
        new_arc = tracker.observe(state, new_state, mover)
        if interior_now and (new_arc.x, new_arc.y) != (arc.x, arc.y):
            interior_moves += 1
        state, arc = new_state, new_arc
        if first_red is None and _weights_locally_redundant(w):
            first_red = t
        if arc_hit is None and (arc.x, arc.y) in targets:
            arc_hit = t
    return CoupledRunResult(
        first_redundant=first_red,
        arc_hit=arc_hit,
        interior_steps=interior_steps,
        interior_transitions=interior_moves,
        capped=first_red is None or arc_hit is None,
    )


def _weights_locally_redundant(w: List[int]) -> bool:
    k = len(w)
    return any(w[i] + w[(i + 1) % k] <= 3 for i in range(k))


def coupled_fixed_arc_experiment(
    n: int, k: int, runs: int, master_seed: int = 0, max_iters: int = 20_000_000
) -> CoupledSummary:
    out = []
    for i in range(runs):
        rng = Random(derive_seed(master_seed, "coupled", n, k, i))
        out.append(coupled_fixed_arc_run(n, k, rng, max_iters=max_iters))
    return CoupledSummary(runs=out, k=k)


# ---------------------------------------------------------------------------
# exhaustive equivalence sweep


@dataclass
class EquivalenceReport:
    checked: int
    ok: bool
    counterexample: Optional[Tuple[int, Tuple[int, ...], str]] = None
    reducibility_ok: bool = True


def equivalence_sweep(max_n: int, min_n: int = 3) -> EquivalenceReport:
    """Cross-check every redundancy criterion on every small dominating set.

    For each dominating set the membership test (some vertex with empty
    private neighborhood), the short-arc test, the gap-weight test and the
    particle test must agree, and agreement with subset-minimality is
    implied by the membership test.  The arc test needs n >= 4 (no induced
    path of C_3 can hold three vertices) and the weight/particle tests need
    at least two, respectively three particles' worth of structure (k >= 2).
    """
    checked = 0
    for n in range(min_n, max_n + 1):
        g = CycleGraph(n)
        for combo in dominating_sets(n):
            checked += 1
            d = frozenset(combo)
            redundant = bool(redundant_vertices(g, d))
            # subset-minimality by brute force over single removals
            minimal = not any(is_dominating(g, d - {v}) for v in d)
            if minimal != (not redundant):
                return EquivalenceReport(checked, False, (n, combo, "minimality"))
            if n >= 4:
                arc = find_dense_arc(g, d)
                if (arc is not None) != redundant:
                    return EquivalenceReport(checked, False, (n, combo, "dense-arc"))
            if len(d) >= 2:
                from .adjacency import weights_from_set, weights_redundant

                w = weights_from_set(g, d)
                if weights_redundant(w) != redundant:
                    return EquivalenceReport(checked, False, (n, combo, "weights"))
                if weights_redundant(w) != particles_redundant(particles_from_weights(w)):
                    return EquivalenceReport(checked, False, (n, combo, "particles"))
        if not verify_reducibility_lemma(n):
            return EquivalenceReport(checked, False, (n, (), "reducibility"), False)
    return EquivalenceReport(checked, True)
