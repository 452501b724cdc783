import math
from random import Random

import pytest

from rlscycle import (
    CycleGraph,
    bounds,
    coupled_fixed_arc_experiment,
    coupled_fixed_arc_run,
    derive_seed,
    equivalence_sweep,
    run_experiment,
    uncovered_count,
)
from rlscycle.adjacency import set_from_weights
from rlscycle.experiments import (
    EXPERIMENT_KINDS,
    ExperimentConfig,
    ScalingResult,
    ScalingRow,
    _initial_weights,
    default_level,
    emit_plotdata,
    parse_plotdata,
)


class TestSeeds:
    def test_deterministic(self):
        assert derive_seed(0, "feasibility", 50, 3) == derive_seed(0, "feasibility", 50, 3)

    def test_parts_matter(self):
        seen = {
            derive_seed(0, 50, 3),
            derive_seed(0, 50, 4),
            derive_seed(1, 50, 3),
            derive_seed(0, "x", 50, 3),
        }
        assert len(seen) == 4

    def test_range(self):
        s = derive_seed(12345, "a", "b")
        assert 0 <= s < 2**64


class TestConfig:
    def test_kinds(self):
        for kind in EXPERIMENT_KINDS:
            ExperimentConfig(kind=kind, ns=(10, 20))
        with pytest.raises(ValueError, match="kind"):
            ExperimentConfig(kind="nope", ns=(10,))

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="feasibility", ns=())
        with pytest.raises(ValueError):
            ExperimentConfig(kind="feasibility", ns=(10, 10))
        with pytest.raises(ValueError):
            ExperimentConfig(kind="feasibility", ns=(20, 10))
        with pytest.raises(ValueError):
            ExperimentConfig(kind="feasibility", ns=(2, 10))
        with pytest.raises(ValueError):
            ExperimentConfig(kind="feasibility", ns=(10,), seeds=0)


class TestBounds:
    """Closed forms frozen against independent recomputation."""

    def test_optimum_size(self):
        assert [bounds.optimum_size(n) for n in (3, 4, 5, 6, 7)] == [1, 2, 2, 2, 3]

    def test_feasibility_bound_value(self):
        assert bounds.feasibility_bound(100) == pytest.approx(982.4046, abs=1e-3)

    def test_half_bounds(self):
        n = 30
        assert bounds.half_bound(n) == pytest.approx(2 * n * (1 + math.log(n - n // 2)))
        assert bounds.half_bound_loose(n) == pytest.approx(2 * n + 2 * n * math.log(n))
        assert bounds.half_bound(n) <= bounds.half_bound_loose(n)

    def test_level_bound_sum(self):
        n = 24
        total = bounds.feasibility_bound(n) + bounds.half_bound(n)
        for k in range(bounds.optimum_size(n) + 1, n // 2 + 1):
            total += bounds.level_bound(n, k)
        assert bounds.optimum_total_bound(n) == pytest.approx(total)

    def test_triangle_bound_monotone(self):
        vals = [bounds.triangle_bound(k) for k in range(2, 40)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


class TestPlotdata:
    def test_header_and_round_trip(self):
        rows = [
            ScalingRow(n=10, mean=55.5, se=3.25, bound=100.0),
            ScalingRow(n=20, mean=140.0, se=7.5, bound=300.0, capped=1),
        ]
        result = ScalingResult(kind="feasibility", rows=rows, raw=[], slope=1.2, slope_ci=(1.0, 1.4))
        text = emit_plotdata(result)
        assert text.splitlines()[0] == "n,mean,se,bound"
        assert "# slope=" in text
        assert "# capped" in text
        back = parse_plotdata(text)
        assert [(r.n, r.mean, r.se, r.bound) for r in back] == [
            (10, 55.5, 3.25, 100.0),
            (20, 140.0, 7.5, 300.0),
        ]


class TestScalingRuns:
    def test_feasibility_small_grid(self):
        cfg = ExperimentConfig(kind="feasibility", ns=(10, 20, 40), seeds=20, master_seed=7)
        result = run_experiment(cfg)
        assert [r.n for r in result.rows] == [10, 20, 40]
        assert len(result.raw) == 60
        assert result.violations() == []
        assert result.slope is not None and 0.5 < result.slope < 2.0

    def test_reproducible(self):
        cfg = ExperimentConfig(kind="optimum", ns=(12, 18), seeds=10, master_seed=3)
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert [(r.mean, r.se) for r in a.rows] == [(r.mean, r.se) for r in b.rows]

    def test_parallel_matches_serial(self):
        serial = ExperimentConfig(kind="feasibility", ns=(15,), seeds=8, master_seed=1)
        parallel = ExperimentConfig(kind="feasibility", ns=(15,), seeds=8, master_seed=1, jobs=2)
        assert sorted(run_experiment(serial).raw) == sorted(run_experiment(parallel).raw)

    def test_checking_kind(self):
        result = run_experiment(ExperimentConfig(kind="census", ns=(6, 9, 12), seeds=1))
        assert result.violations() == []
        assert [r.mean for r in result.rows] == [2.0, 3.0, 4.0]

    def test_trial_chain_kind(self):
        result = run_experiment(ExperimentConfig(kind="trial-chain", ns=(10, 50), seeds=1))
        assert [r.mean for r in result.rows] == pytest.approx([40.0, 200.0], rel=1e-12)
        assert result.violations() == []


def vertex_level_swap_legal(n, w, gap, direction):
    """Ground truth for a gap move: simulate it on the actual vertex set.

    The vertex closing gap ``gap`` on the moving side steps one position;
    the move is admissible exactly when the target vertex is unoccupied and
    the new set still dominates the cycle.
    """
    g = CycleGraph(n)
    d = set(set_from_weights(w))
    members = sorted(d)
    # gap i sits between member i and member i+1 in anchor order
    order = sorted(d, key=lambda v: (v - w.anchor) % n)
    if direction == "cw":
        mover = order[(gap + 1) % w.k]
        target = (mover + 1) % n
    else:
        mover = order[gap]
        target = (mover - 1) % n
    if target in d:
        return False
    moved = (d - {mover}) | {target}
    assert sorted(moved) != members or n == 3
    return uncovered_count(g, moved) == 0


class TestCoupledRuns:
    def test_initial_weights(self):
        w = _initial_weights(30, 12)
        assert sum(w.weights) == 30 and w.k == 12
        assert set(w.weights) <= {2, 3}
        with pytest.raises(ValueError):
            _initial_weights(30, 9)  # 3k < n: not even all-3 gaps reach the sum
        with pytest.raises(ValueError):
            _initial_weights(30, 10)  # all gaps 3: no particle to track

    def test_default_level(self):
        assert default_level(30) == 12

    def test_move_legality_matches_vertex_level(self):
        """The gap-move guard equals the real acceptance test at a fixed level."""
        rng = Random(5)
        n = 17
        for _ in range(40):
            k = rng.randrange((n + 2) // 3, n // 2 + 1)
            g = CycleGraph(n)
            d = set(rng.sample(range(n), k))
            if uncovered_count(g, d) != 0:
                continue
            from rlscycle.adjacency import weights_from_set

            w = weights_from_set(g, d)
            for gap in range(k):
                for direction in ("cw", "ccw"):
                    other = (gap + 1) % k if direction == "cw" else (gap - 1) % k
                    legal = w.weights[gap] <= 2 and w.weights[other] >= 2 and other != gap
                    assert legal == vertex_level_swap_legal(n, w, gap, direction)

    def test_small_run(self):
        result = coupled_fixed_arc_run(18, 7, Random(2), max_iters=200_000)
        assert not result.capped
        assert result.first_redundant <= result.arc_hit
        assert result.interior_steps >= result.interior_transitions

    def test_experiment_summary(self):
        summary = coupled_fixed_arc_experiment(18, 7, runs=30, master_seed=9, max_iters=200_000)
        assert summary.dominated
        p_hat, se, model = summary.transition_rate()
        assert model == pytest.approx(1.0 / 28.0)
        assert abs(p_hat - model) <= 4 * se

    def test_experiment_reproducible(self):
        a = coupled_fixed_arc_experiment(15, 6, runs=5, master_seed=4, max_iters=100_000)
        b = coupled_fixed_arc_experiment(15, 6, runs=5, master_seed=4, max_iters=100_000)
        assert [(r.first_redundant, r.arc_hit) for r in a.runs] == [
            (r.first_redundant, r.arc_hit) for r in b.runs
        ]


class TestEquivalenceSweep:
    def test_small_sweep_passes(self):
        report = equivalence_sweep(10)
        assert report.ok and report.reducibility_ok
        assert report.counterexample is None
        assert report.checked > 100
