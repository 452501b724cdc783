"""Random local search for small dominating sets on cycles.

The search state is a bitstring over the vertices.  Each iteration flips a
fair coin: heads proposes flipping one uniformly random vertex, tails
proposes a *swap* -- pick a uniformly random selected vertex ``u``, pick one
of its two cycle neighbors ``v``, and when ``v`` is unselected exchange the
two bits (otherwise the proposal is a no-op).  A proposal is accepted iff it
does not increase the penalized fitness

    fitness(x) = uncovered(x) * (n + 1) + |x|

which makes every dominating state strictly better than every non-dominating
one and, once dominating, rewards smaller sets.  Feasibility is therefore
never abandoned and swaps preserve cardinality.

All randomness flows through an injected ``random.Random``; identical
``(n, seed, stop)`` triples replay identical trajectories.  The draw order
per iteration is: operator coin, then vertex index (flip) or selected index
and direction (swap).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from .cycle import CycleGraph

__all__ = [
    "Fitness",
    "StepEvent",
    "StopRule",
    "Trajectory",
    "fitness",
    "random_init",
    "step",
    "run",
]


@dataclass(frozen=True)
class Fitness:
    uncovered: int
    cardinality: int
    scalar: int

    @classmethod
    def of(cls, n: int, uncovered: int, cardinality: int) -> "Fitness":
        return cls(uncovered, cardinality, uncovered * (n + 1) + cardinality)


@dataclass(frozen=True)
class StepEvent:
    iteration: int
    operator: str  # "flip" | "swap" | "swap-noop"
    touched: Tuple[int, ...]
    accepted: bool
    fitness_after: Fitness


@dataclass(frozen=True)
class StopRule:
    """Run until any satisfied condition; ``max_iters`` marks capped runs."""

    max_iters: Optional[int] = None
    target_cardinality: Optional[int] = None
    target_feasible: bool = False

    def __post_init__(self) -> None:
        if self.max_iters is None and self.target_cardinality is None and not self.target_feasible:
            raise ValueError("stop rule would never trigger")


@dataclass
class Trajectory:
    n: int
    seed: Optional[int]
    iterations: int
    final_bits: Tuple[int, ...]
    final_fitness: Fitness
    checkpoints: Dict[str, Optional[int]]
    capped: bool
    events: List[StepEvent] = field(default_factory=list)
    summaries: List[Tuple[int, int, int, int]] = field(default_factory=list)

    def dump_events_jsonl(self) -> str:
        """Accepted/logged events, one JSON object per line."""
        lines = []
        for e in self.events:
            lines.append(
                json.dumps(
                    {
                        "iteration": e.iteration,
                        "operator": e.operator,
                        "touched": list(e.touched),
                        "accepted": e.accepted,
                        "uncovered": e.fitness_after.uncovered,
                        "cardinality": e.fitness_after.cardinality,
                        "scalar": e.fitness_after.scalar,
                    }
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")

    def checkpoints_csv(self) -> str:
        lines = ["checkpoint,iteration"]
        for name in ("first_feasible", "first_half", "first_optimal"):
            value = self.checkpoints.get(name)
            lines.append(f"{name},{'' if value is None else value}")
        return "\n".join(lines) + "\n"


def fitness(g: CycleGraph, bits: Sequence[int]) -> Fitness:
    if len(bits) != g.n:
        raise ValueError(f"bitstring length {len(bits)} != n={g.n}")
    n = g.n
    card = 0
    covered = bytearray(n)
    for v, b in enumerate(bits):
        if b:
            card += 1
            covered[v - 1] = covered[v] = 1
            covered[(v + 1) % n] = 1
    return Fitness.of(n, n - sum(covered), card)


def random_init(g: CycleGraph, rng: Random) -> List[int]:
    """Uniform random bitstring over the vertices."""
    return [1 if rng.random() < 0.5 else 0 for _ in range(g.n)]


class _State:
    """Mutable search state with O(1) fitness bookkeeping.

    ``cov[v]`` counts selected vertices in the closed neighborhood of ``v``;
    ``selected`` is an unordered list of selected vertices with ``pos``
    mapping each one back to its slot, so uniform sampling, insertion and
    swap-removal are all constant time.
    """

    __slots__ = ("n", "bits", "cov", "uncovered", "selected", "pos")

    def __init__(self, n: int, bits: Sequence[int]):
        self.n = n
        self.bits = list(bits)
        self.cov = [0] * n
        self.selected: List[int] = []
        self.pos = [-1] * n
        for v, b in enumerate(self.bits):
            if b:
                self.pos[v] = len(self.selected)
                self.selected.append(v)
                self.cov[v - 1] += 1
                self.cov[v] += 1
                self.cov[(v + 1) % n] += 1
        self.uncovered = self.cov.count(0)

    @property
    def cardinality(self) -> int:
        return len(self.selected)

    def fitness(self) -> Fitness:
        return Fitness.of(self.n, self.uncovered, self.cardinality)

    def _add(self, v: int) -> None:
        n = self.n
        self.bits[v] = 1
        self.pos[v] = len(self.selected)
        self.selected.append(v)
        for w in (v - 1, v, (v + 1) % n):
            if self.cov[w] == 0:
                self.uncovered -= 1
            self.cov[w] += 1

    def _remove(self, v: int) -> None:
        n = self.n
        self.bits[v] = 0
        slot = self.pos[v]
        last = self.selected[-1]
        self.selected[slot] = last
        self.pos[last] = slot
        self.selected.pop()
        self.pos[v] = -1
        for w in (v - 1, v, (v + 1) % n):
            self.cov[w] -= 1
            if self.cov[w] == 0:
                self.uncovered += 1

    def try_flip(self, v: int) -> bool:
        """Apply the flip of ``v`` iff it does not worsen fitness."""
        n, cov = self.n, self.cov
        if self.bits[v]:
            # removal is accepted iff no neighborhood loses its last cover
            if (
                cov[v - 1] != 1
                and cov[v] != 1
                and cov[(v + 1) % n] != 1
            ):
                self._remove(v)
                return True
            return False
        # addition is accepted iff it covers something new
        if cov[v - 1] == 0 or cov[v] == 0 or cov[(v + 1) % n] == 0:
            self._add(v)
            return True
        return False

    def try_swap(self, u: int, v: int) -> bool:
        """Apply the swap ``u -> v`` iff it does not uncover anything.

        Cardinality is unchanged, so acceptance only depends on the number
        of uncovered vertices inside the touched window not growing.
        """
        n, cov = self.n, self.cov
        touched = {(u - 1) % n, u, (u + 1) % n, (v - 1) % n, v, (v + 1) % n}
        before = sum(1 for w in touched if cov[w] == 0)
        for w in (u - 1, u, (u + 1) % n):
            cov[w] -= 1
        for w in (v - 1, v, (v + 1) % n):
            cov[w] += 1
        after = sum(1 for w in touched if cov[w] == 0)
        if after <= before:
            self.uncovered += after - before
            self.bits[u] = 0
            self.bits[v] = 1
            slot = self.pos[u]
            self.selected[slot] = v
            self.pos[v] = slot
            self.pos[u] = -1
            return True
        for w in (v - 1, v, (v + 1) % n):
            cov[w] -= 1
        for w in (u - 1, u, (u + 1) % n):
            cov[w] += 1
        return False


def step(
    g: CycleGraph,
    bits: Sequence[int],
    rng: Random,
    swap_from_vertices: bool = False,
) -> Tuple[List[int], StepEvent]:
    """One mutation-and-accept iteration on an immutable snapshot.

    With ``swap_from_vertices`` the swap source is drawn from all vertices
    (unselected draws are no-ops) instead of from the selected set, which
    halves-per-vertex the swap rate from 1/(4k) to 1/(4n).
    """
    if len(bits) != g.n:
        raise ValueError(f"bitstring length {len(bits)} != n={g.n}")
    st = _State(g.n, bits)
    event = _advance(g.n, st, rng, 0, swap_from_vertices)
    return list(st.bits), event


def _advance(
    n: int, st: _State, rng: Random, iteration: int, swap_from_vertices: bool
) -> StepEvent:
    if rng.random() < 0.5:
        v = rng.randrange(n)
        accepted = st.try_flip(v)
        return StepEvent(iteration, "flip", (v,), accepted, st.fitness())
    if swap_from_vertices:
        u = rng.randrange(n)
        if not st.bits[u]:
            rng.randrange(2)  # keep the draw order aligned
            return StepEvent(iteration, "swap-noop", (u,), False, st.fitness())
    else:
        k = len(st.selected)
        if k == 0:
            return StepEvent(iteration, "swap-noop", (), False, st.fitness())
        u = st.selected[rng.randrange(k)]
    v = (u + 1) % n if rng.randrange(2) else (u - 1) % n
    if st.bits[v]:
        return StepEvent(iteration, "swap-noop", (u, v), False, st.fitness())
    accepted = st.try_swap(u, v)
    return StepEvent(iteration, "swap", (u, v), accepted, st.fitness())


def run(
    g: CycleGraph,
    init: Sequence[int],
    stop: StopRule,
    rng: Random,
    seed: Optional[int] = None,
    record: str = "accepted",
    summary_every: int = 1000,
    swap_from_vertices: bool = False,
) -> Trajectory:
    """Run the search from ``init`` until the stop rule fires.

    ``record`` selects event logging: ``"accepted"`` (default) keeps
    accepted events plus periodic summaries, ``"full"`` keeps every
    proposal, ``"none"`` keeps only checkpoints and summaries.
    """
    if record not in ("accepted", "full", "none"):
        raise ValueError(f"unknown record mode {record!r}")
    n = g.n
    if len(init) != n:
        raise ValueError(f"bitstring length {len(init)} != n={n}")
    st = _State(n, init)
    half = n // 2
    optimum = -(-n // 3)  # ceil(n/3)

    checkpoints: Dict[str, Optional[int]] = {
        "first_feasible": None,
        "first_half": None,
        "first_optimal": None,
    }
    events: List[StepEvent] = []
    summaries: List[Tuple[int, int, int, int]] = []

    def note(iteration: int) -> None:
        if st.uncovered == 0:
            if checkpoints["first_feasible"] is None:
                checkpoints["first_feasible"] = iteration
            card = len(st.selected)
            if card <= half and checkpoints["first_half"] is None:
                checkpoints["first_half"] = iteration
            if card <= optimum and checkpoints["first_optimal"] is None:
                checkpoints["first_optimal"] = iteration

    def done() -> bool:
        if stop.target_feasible and st.uncovered == 0:
            return True
        if stop.target_cardinality is not None:
            return st.uncovered == 0 and len(st.selected) <= stop.target_cardinality
        return False

    note(0)
    iteration = 0
    capped = False
    # hot loop: bind everything local
    rnd = rng.random
    randrange = rng.randrange
    bits = st.bits
    max_iters = stop.max_iters
    while not done():
        if max_iters is not None and iteration >= max_iters:
            capped = True
            break
        iteration += 1
        if record == "none":
            # inline fast path without event construction
            if rnd() < 0.5:
                st.try_flip(randrange(n))
            else:
                if swap_from_vertices:
                    u = randrange(n)
                    if not bits[u]:
                        randrange(2)
                        u = -1
                else:
                    k = len(st.selected)
                    u = st.selected[randrange(k)] if k else -1
                if u >= 0:
                    v = (u + 1) % n if randrange(2) else (u - 1) % n
                    if not bits[v]:
                        st.try_swap(u, v)
        else:
            event = _advance(n, st, rng, iteration, swap_from_vertices)
            if record == "full" or event.accepted:
                events.append(event)
        note(iteration)
        if summary_every and iteration % summary_every == 0:
            f = st.fitness()
            summaries.append((iteration, f.uncovered, f.cardinality, f.scalar))

    return Trajectory(
        n=n,
        seed=seed,
        iterations=iteration,
        final_bits=tuple(st.bits),
        final_fitness=st.fitness(),
        checkpoints=checkpoints,
        capped=capped,
        events=events,
        summaries=summaries,
    )
