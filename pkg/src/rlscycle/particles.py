"""Particle dynamics over gap sequences and the tracked three-particle arc.

A gap sequence with k gaps becomes a cycle of k *nodes*; a node of weight 1
hosts two particles, weight 2 hosts one, weight 3 hosts none.  A legal gap
move sends one particle from the growing node to the shrinking node, with a
fair coin picking the mover when two particles share the source.  Redundancy
of the underlying dominating set is then visible locally: some cycle edge
has at least three particles on its two endpoints.

Tracking three specific particles (with a relabeling discipline that keeps
the labels consistent under co-location) compresses their configuration to
a point of a discrete triangle; the tracked pair distances perform a lazy
walk on that triangle whose hitting time of the triangle's corner region
upper-bounds the time until the first redundant configuration.
"""
from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .adjacency import AdjacencyWeights

__all__ = [
    "ParticleState",
    "FixedArcState",
    "TriangleWalkConfig",
    "particles_from_weights",
    "particles_redundant",
    "particle_step",
    "fixed_arc_step",
    "fixed_arc_neighborhood",
    "fixed_arc_targets",
    "FixedArcTracker",
    "triangle_hitting_time",
    "triangle_hitting_time_exact",
]


@dataclass(frozen=True)
class ParticleState:
    """Positions of the m particles on the k-node cycle, by particle id."""

    k: int
    positions: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("particle cycle needs k >= 2 nodes")
        counts = self.counts()
        if any(c > 2 for c in counts):
            raise ValueError("a node can host at most two particles")
        for p in self.positions:
            if not 0 <= p < self.k:
                raise ValueError(f"particle position {p} out of range")

    def counts(self) -> Tuple[int, ...]:
        out = [0] * self.k
        for p in self.positions:
            out[p] += 1
        return tuple(out)

    def at(self, node: int) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.positions) if p == node)


def particles_from_weights(w: AdjacencyWeights) -> ParticleState:
    """Seed particles node by node: weight 1 -> two, weight 2 -> one."""
    positions: List[int] = []
    for node, weight in enumerate(w.weights):
        positions.extend([node] * (3 - weight))
    return ParticleState(k=w.k, positions=tuple(positions))


def particles_redundant(s: ParticleState) -> bool:
    """Some adjacent node pair hosts at least three particles in total."""
    counts = s.counts()
    k = s.k
    return any(counts[i] + counts[(i + 1) % k] >= 3 for i in range(k))


def particle_step(
    s: ParticleState, node: int, direction: str, coin: int = 0
) -> Tuple[ParticleState, int]:
    """Move one particle off ``node`` onto the adjacent node in ``direction``.

    Mirrors a gap move that grows ``node`` (so the particle leaves it).
    When two particles share the source, ``coin`` = 0 moves the one with the
    smaller id and 1 the other.  Returns the new state and the mover's id.
    """
    if direction == "cw":
        target = (node + 1) % s.k
    elif direction == "ccw":
        target = (node - 1) % s.k
    else:
        raise ValueError(f"direction must be 'cw' or 'ccw', got {direction!r}")
    movers = s.at(node)
    if not movers:
        raise ValueError(f"node {node} hosts no particle (its gap has weight 3)")
    if len(s.at(target)) >= 2:
        raise ValueError(f"node {target} is full (its gap has weight 1)")
    if coin not in (0, 1):
        raise ValueError("coin must be 0 or 1")
    mover = movers[0] if (len(movers) == 1 or coin == 0) else movers[1]
    positions = list(s.positions)
    positions[mover] = target
    return ParticleState(k=s.k, positions=tuple(positions)), mover


@dataclass(frozen=True)
class FixedArcState:
    """Pair distances (x, y) of the tracked triple on the k-node cycle.

    ``x`` is the counterclockwise distance from the pivot particle to the
    second one, ``y`` the clockwise distance from the pivot to the third.
    Multiplicity at most two rules out (0,0), (0,k) and (k,0).
    """

    x: int
    y: int
    k: int

    def __post_init__(self) -> None:
        if not (0 <= self.x and 0 <= self.y and self.x + self.y <= self.k):
            raise ValueError(f"({self.x},{self.y}) outside the k={self.k} triangle")
        if (self.x, self.y) in {(0, 0), (0, self.k), (self.k, 0)}:
            raise ValueError(
                f"({self.x},{self.y}) would stack three particles on one node"
            )


def fixed_arc_targets(k: int) -> Set[Tuple[int, int]]:
    """States whose particle configuration is already redundant."""
    return {(0, 1), (1, 0), (k - 1, 0), (k - 1, 1), (0, k - 1), (1, k - 1)}


_TRANSITIONS = {
    # (mover, direction) -> (dx, dy), for states where all three tracked
    # particles sit on distinct nodes
    (1, "cw"): (1, -1),
    (1, "ccw"): (-1, 1),
    (2, "cw"): (-1, 0),
    (2, "ccw"): (1, 0),
    (3, "cw"): (0, 1),
    (3, "ccw"): (0, -1),
}


def fixed_arc_step(a: FixedArcState, mover: int, direction: str) -> FixedArcState:
    """Advance the tracked pair distances by one particle move.

    ``mover`` is the label 1, 2 or 3 of the tracked particle that moved.
    When two tracked particles are co-located the labels of the co-located
    pair are interchangeable; the relabeling convention below keeps the
    resulting state inside the triangle:

    * second and third co-located (x + y = k): whichever of the two moved,
      the one ending closer counterclockwise to the pivot is the second;
    * pivot and second co-located (x = 0): a move toward the third yields
      (1, y-1) with the mover as pivot, a move away yields (1, y);
    * pivot and third co-located (y = 0): symmetrically (x-1, 1) or (x, 1).
    """
    if direction not in ("cw", "ccw"):
        raise ValueError(f"direction must be 'cw' or 'ccw', got {direction!r}")
    if mover not in (1, 2, 3):
        raise ValueError(f"mover must be 1, 2 or 3, got {mover!r}")
    x, y, k = a.x, a.y, a.k
    if x == 0 and mover in (1, 2):
        return FixedArcState(1, y - 1 if direction == "cw" else y, k)
    if y == 0 and mover in (1, 3):
        return FixedArcState(x - 1 if direction == "ccw" else x, 1, k)
    if x + y == k and mover in (2, 3):
        return FixedArcState(x, y - 1, k) if direction == "ccw" else FixedArcState(x - 1, y, k)
    dx, dy = _TRANSITIONS[(mover, direction)]
    return FixedArcState(x + dx, y + dy, k)


def fixed_arc_neighborhood(
    a: FixedArcState, n: int, per_move: Optional[float] = None
) -> Dict[Tuple[int, int], float]:
    """One-step distribution of the tracked pair distances, self-loop included.

    Each legal particle move fires with probability ``per_move`` (default
    1/(4n), the rate of one directed swap of the search on C_n); all
    remaining mass stays put.  Moves whose result would stack three
    particles are illegal and contribute to the self-loop.
    """
    if per_move is None:
        per_move = 1.0 / (4.0 * n)
    x, y, k = a.x, a.y, a.k
    moves: List[Tuple[int, str]] = []
    if x == 0 or y == 0 or x + y == k:
        # one co-located pair: each of its two particles can move either way
        # at the full rate jointly (half each via the coin); the lone
        # particle moves at the full rate per direction
        if x == 0:
            lone, pair = 3, (1, 2)
        elif y == 0:
            lone, pair = 2, (1, 3)
        else:
            lone, pair = 1, (2, 3)
        moves = [(lone, "cw"), (lone, "ccw"), (pair[0], "cw"), (pair[0], "ccw")]
    else:
        moves = [(m, d) for m in (1, 2, 3) for d in ("cw", "ccw")]
    out: Dict[Tuple[int, int], float] = {}
    for mover, direction in moves:
        try:
            nxt = fixed_arc_step(a, mover, direction)
        except ValueError:
            continue  # illegal at the particle level; stays in the self-loop
        key = (nxt.x, nxt.y)
        out[key] = out.get(key, 0.0) + per_move
    # the self-loop absorbs whatever the legal moves do not use
    out[(x, y)] = 1.0 - sum(out.values())
    return out


class FixedArcTracker:
    """Track a specific particle triple along a particle trajectory.

    The triple is chosen deterministically at construction: the three
    smallest particle ids, pivoted on one whose two partners occupy
    distinct nodes (smallest id on ties), with the second partner the one
    met first walking counterclockwise from the pivot.
    """

    def __init__(self, state: ParticleState, ids: Optional[Sequence[int]] = None):
        if len(state.positions) < 3:
            raise ValueError("need at least three particles to track")
        ids = tuple(ids) if ids is not None else tuple(range(3))
        if len(ids) != 3:
            raise ValueError("exactly three particle ids required")
        pivot = None
        for cand in ids:
            others = [i for i in ids if i != cand]
            if state.positions[others[0]] != state.positions[others[1]]:
                pivot = cand
                break
        if pivot is None:
            raise ValueError("three tracked particles share at most two nodes")
        others = [i for i in ids if i != pivot]
        d0 = (state.positions[pivot] - state.positions[others[0]]) % state.k
        d1 = (state.positions[pivot] - state.positions[others[1]]) % state.k
        if d1 < d0:
            others = [others[1], others[0]]
        self.k = state.k
        self.labels: List[int] = [pivot, others[0], others[1]]  # p1, p2, p3

    def state(self, s: ParticleState) -> FixedArcState:
        p1, p2, p3 = (s.positions[i] for i in self.labels)
        return FixedArcState((p1 - p2) % self.k, (p3 - p1) % self.k, self.k)

    def observe(
        self, before: ParticleState, after: ParticleState, mover: int
    ) -> FixedArcState:
        """Account for one particle move and return the updated state."""
        old = before.positions[mover]
        if mover not in self.labels:
            # an untracked particle that shared a node with a tracked one
            # swaps identities with it as it leaves
            for slot, pid in enumerate(self.labels):
                if before.positions[pid] == old:
                    self.labels[slot] = mover
                    break
            else:
                return self.state(after)
        slot = self.labels.index(mover)
        prev = self.state(before)
        x, y = prev.x, prev.y
        moved_cw = after.positions[mover] == (old + 1) % self.k
        if x == 0 and slot in (0, 1):
            stayer = self.labels[1 - slot]
            if moved_cw:  # toward the third: mover pivots
                self.labels[0], self.labels[1] = mover, stayer
            else:
                self.labels[0], self.labels[1] = stayer, mover
        elif y == 0 and slot in (0, 2):
            stayer = self.labels[0] if slot == 2 else self.labels[2]
            if not moved_cw:  # toward the second: mover pivots
                self.labels[0], self.labels[2] = mover, stayer
            else:
                self.labels[0], self.labels[2] = stayer, mover
        elif x + y == self.k and slot in (1, 2):
            stayer = self.labels[3 - slot]
            pivot_pos = after.positions[self.labels[0]]
            d_mover = (pivot_pos - after.positions[mover]) % self.k
            d_stayer = (pivot_pos - after.positions[stayer]) % self.k
            if d_mover == 0:
                # mover landed on the pivot: the direction of approach says
                # on which side of the pivot it conceptually sits
                second = mover if moved_cw else stayer
            elif d_mover < d_stayer:
                second = mover
            else:
                second = stayer
            third = stayer if second == mover else mover
            self.labels[1], self.labels[2] = second, third
        return self.state(after)


@dataclass(frozen=True)
class TriangleWalkConfig:
    """Lazy walk on {(x,y): x,y >= 0, x+y <= n} moving to each of the up to
    six lattice neighbors (four axis steps and the two anti-diagonal ones)
    with probability 1/c, staying put otherwise.  Needs c >= 6."""

    n: int
    c: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("triangle size must be >= 1")
        if self.c < 6:
            raise ValueError("laziness denominator must be at least the max degree 6")


def _triangle_neighbors(x: int, y: int, n: int) -> List[Tuple[int, int]]:
    cand = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1), (x + 1, y - 1), (x - 1, y + 1)]
    return [(a, b) for a, b in cand if a >= 0 and b >= 0 and a + b <= n]


def triangle_hitting_time(
    cfg: TriangleWalkConfig,
    start: Tuple[int, int],
    targets: Iterable[Tuple[int, int]],
    rng: Random,
    trials: int = 1000,
    max_steps: int = 100_000_000,
) -> Tuple[float, float]:
    """Monte Carlo mean and standard error of the hitting time of ``targets``."""
    targets = set(targets)
    n, c = cfg.n, cfg.c
    total = 0.0
    totalsq = 0.0
    for _ in range(trials):
        x, y = start
        t = 0
        while (x, y) not in targets:
            if t >= max_steps:
                raise RuntimeError("walk exceeded max_steps")
            t += 1
            r = rng.random() * c
            i = int(r)
            if i < 6:
                nx, ny = ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1),
                          (x + 1, y - 1), (x - 1, y + 1))[i]
                if nx >= 0 and ny >= 0 and nx + ny <= n:
                    x, y = nx, ny
        total += t
        totalsq += t * t
    mean = total / trials
    var = max(totalsq / trials - mean * mean, 0.0) * trials / max(trials - 1, 1)
    return mean, (var / trials) ** 0.5


def triangle_hitting_time_exact(
    cfg: TriangleWalkConfig, start: Tuple[int, int], targets: Iterable[Tuple[int, int]]
) -> float:
    """Expected hitting time by solving the absorbing linear system."""
    import numpy as np

    targets = set(targets)
    n, c = cfg.n, cfg.c
    nodes = [(x, y) for x in range(n + 1) for y in range(n + 1 - x)]
    transient = [v for v in nodes if v not in targets]
    index = {v: i for i, v in enumerate(transient)}
    if start in targets:
        return 0.0
    m = len(transient)
    a = np.zeros((m, m))
    for v, i in index.items():
        a[i, i] = 1.0
        loop = 1.0 - len(_triangle_neighbors(*v, n)) / c
        a[i, i] -= loop
        for w in _triangle_neighbors(*v, n):
            if w in index:
                a[i, index[w]] -= 1.0 / c
    b = np.ones(m)
    f = np.linalg.solve(a, b)
    residual = np.linalg.norm(a @ f - b)
    if residual > 1e-10 * max(np.linalg.norm(b), 1.0):
        raise ArithmeticError(f"hitting-time solve residual too large: {residual}")
    return float(f[index[start]])
