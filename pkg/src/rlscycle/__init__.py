"""Verification workbench for random local search on cycle domination.

The package splits into the combinatorial core (:mod:`rlscycle.cycle`,
:mod:`rlscycle.oracle`), the search engine (:mod:`rlscycle.rls`), the
structural encodings driving the runtime analysis (:mod:`rlscycle.adjacency`,
:mod:`rlscycle.particles`), electrical-network machinery
(:mod:`rlscycle.networks`), closed-form bounds (:mod:`rlscycle.bounds`) and
the experiment harness/CLI (:mod:`rlscycle.experiments`,
:mod:`rlscycle.cli`).
"""
from . import bounds
from .adjacency import AdjacencyWeights, apply_move, set_from_weights, weights_from_set, weights_redundant
from .cycle import (
    Arc,
    CycleGraph,
    Movability,
    closed_neighborhood,
    find_dense_arc,
    is_dominating,
    is_minimal_dominating,
    movability,
    private_neighborhood,
    redundant_vertices,
    uncovered_count,
)
from .networks import (
    ChainSpec,
    Flow,
    Network,
    absorption_analysis,
    chi,
    commute_time,
    commute_time_mc,
    effective_resistance,
    effective_resistances_from,
    flow_energy,
    min_energy_unit_flow,
    network_from_chain,
    rayleigh_check,
    square_grid,
    triangle_grid,
    triangle_resistance_bound,
    triangle_resistance_check,
    trial_chain,
    unit_current_flow,
    walk_from_network,
)
from .experiments import (
    ExperimentConfig,
    ScalingResult,
    coupled_fixed_arc_experiment,
    coupled_fixed_arc_run,
    derive_seed,
    emit_plotdata,
    equivalence_sweep,
    parse_plotdata,
    run_experiment,
)
from .oracle import census, min_dominating_size, verify_reducibility_lemma
from .particles import (
    FixedArcState,
    ParticleState,
    TriangleWalkConfig,
    fixed_arc_neighborhood,
    fixed_arc_step,
    particle_step,
    particles_from_weights,
    particles_redundant,
    triangle_hitting_time,
)
from .rls import Fitness, StepEvent, StopRule, Trajectory, fitness, random_init, run, step

__version__ = "0.1.0"
