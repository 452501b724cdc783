"""Electrical networks, reversible walks, and the chains used for bounds.

A network is a connected weighted graph with positive conductances (self
loops allowed).  It induces the weighted random walk P(x,y) = c(x,y)/c(x);
conversely a reversible chain with stationary distribution pi becomes a
network via c(x,y) = pi(x) P(x,y).  Effective resistances are computed by a
grounded Laplacian solve, energies of unit flows give the variational
cross-check, and commute times follow from c_G * R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

__all__ = [
    "Network",
    "Flow",
    "ChainSpec",
    "walk_from_network",
    "network_from_chain",
    "flow_energy",
    "unit_current_flow",
    "min_energy_unit_flow",
    "effective_resistance",
    "effective_resistances_from",
    "commute_time",
    "commute_time_mc",
    "triangle_grid",
    "square_grid",
    "chi",
    "triangle_resistance_bound",
    "triangle_resistance_check",
    "rayleigh_check",
    "absorption_analysis",
    "trial_chain",
]

Node = Hashable
Edge = Tuple[Node, Node]

RESIDUAL_TOL = 1e-10
REVERSIBILITY_TOL = 1e-9


def _solve(a, b) -> np.ndarray:
    """Linear solve with a residual guard."""
    if sp.issparse(a):
        x = spla.spsolve(a.tocsc(), b)
        residual = np.linalg.norm(a @ x - b)
    else:
        x = np.linalg.solve(a, b)
        residual = np.linalg.norm(a @ x - b)
    if residual > RESIDUAL_TOL * max(float(np.linalg.norm(b)), 1.0):
        raise ArithmeticError(f"linear solve residual too large: {residual:g}")
    return x


@dataclass
class Network:
    """Connected graph with positive edge conductances.

    ``edges`` maps unordered vertex pairs (stored as given) to conductances;
    a pair ``(v, v)`` is a self loop.  Resistance of an edge is the
    reciprocal of its conductance.
    """

    nodes: List[Node]
    conductances: Dict[Edge, float]

    _index: Dict[Node, int] = field(init=False, repr=False)
    _adj: Dict[Node, List[Tuple[Node, float]]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._index = {v: i for i, v in enumerate(self.nodes)}
        if len(self._index) != len(self.nodes):
            raise ValueError("duplicate nodes")
        self._adj = {v: [] for v in self.nodes}
        seen = set()
        for (u, v), c in self.conductances.items():
            if u not in self._index or v not in self._index:
                raise ValueError(f"edge ({u!r},{v!r}) uses unknown nodes")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"edge ({u!r},{v!r}) listed twice")
            seen.add(key)
            if not c > 0:
                raise ValueError(f"conductance of ({u!r},{v!r}) must be positive")
            self._adj[u].append((v, c))
            if u != v:
                self._adj[v].append((u, c))
        # connectivity (self loops do not help)
        if self.nodes:
            stack = [self.nodes[0]]
            seen_nodes = {self.nodes[0]}
            while stack:
                v = stack.pop()
                for w, _ in self._adj[v]:
                    if w not in seen_nodes:
                        seen_nodes.add(w)
                        stack.append(w)
            if len(seen_nodes) != len(self.nodes):
                raise ValueError("network is not connected")

    def index(self, v: Node) -> int:
        return self._index[v]

    def node_conductance(self, v: Node) -> float:
        """c(v): sum of conductances of edges at v (self loop counted once)."""
        return sum(c for _, c in self._adj[v])

    @property
    def total_conductance(self) -> float:
        """c_G = sum over vertices of c(v)."""
        return sum(self.node_conductance(v) for v in self.nodes)

    def neighbors(self, v: Node) -> List[Tuple[Node, float]]:
        return list(self._adj[v])

    def laplacian(self) -> sp.csr_matrix:
        """Weighted Laplacian; self loops drop out."""
        m = len(self.nodes)
        rows, cols, vals = [], [], []
        for (u, v), c in self.conductances.items():
            if u == v:
                continue
            i, j = self._index[u], self._index[v]
            rows += [i, j, i, j]
            cols += [j, i, i, j]
            vals += [-c, -c, c, c]
        return sp.csr_matrix((vals, (rows, cols)), shape=(m, m))


@dataclass
class Flow:
    """Antisymmetric edge flow, stored on oriented pairs."""

    values: Dict[Tuple[Node, Node], float]

    def value(self, u: Node, v: Node) -> float:
        if (u, v) in self.values:
            return self.values[(u, v)]
        if (v, u) in self.values:
            return -self.values[(v, u)]
        return 0.0

    def divergence(self, net: Network, v: Node) -> float:
        return sum(self.value(v, w) for w, _ in net.neighbors(v) if w != v)


@dataclass
class ChainSpec:
    """Finite Markov chain: state labels plus a row-stochastic matrix."""

    states: List[Node]
    p: np.ndarray

    def __post_init__(self) -> None:
        self.p = np.asarray(self.p, dtype=float)
        m = len(self.states)
        if self.p.shape != (m, m):
            raise ValueError(f"transition matrix shape {self.p.shape} != ({m},{m})")
        if np.any(self.p < 0):
            raise ValueError("negative transition probability")
        rows = self.p.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > 1e-12:
            raise ValueError("transition matrix rows must sum to 1 within 1e-12")

    def index(self, s: Node) -> int:
        return self.states.index(s)


def walk_from_network(net: Network) -> ChainSpec:
    """The weighted random walk P(x,y) = c(x,y)/c(x)."""
    m = len(net.nodes)
    p = np.zeros((m, m))
    for v in net.nodes:
        i = net.index(v)
        cv = net.node_conductance(v)
        for w, c in net.neighbors(v):
            p[i, net.index(w)] += c / cv
    return ChainSpec(states=list(net.nodes), p=p)


def network_from_chain(
    chain: ChainSpec, pi: Sequence[float], tol: float = REVERSIBILITY_TOL
) -> Network:
    """Network realizing a reversible chain, c(x,y) = pi(x) P(x,y).

    Raises ``ValueError`` when the detailed-balance defect exceeds ``tol``.
    """
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (len(chain.states),) or np.any(pi <= 0) or abs(pi.sum() - 1) > 1e-9:
        raise ValueError("pi must be a positive distribution over the states")
    flows = pi[:, None] * chain.p
    defect = float(np.max(np.abs(flows - flows.T)))
    if defect > tol:
        raise ValueError(f"chain is not reversible: detailed-balance defect {defect:g}")
    conductances: Dict[Edge, float] = {}
    m = len(chain.states)
    for i in range(m):
        for j in range(i, m):
            c = flows[i, j] if i != j else flows[i, i]
            if c > 0:
                conductances[(chain.states[i], chain.states[j])] = float(
                    c if i == j else (flows[i, j] + flows[j, i]) / 2.0
                )
    return Network(nodes=list(chain.states), conductances=conductances)


def flow_energy(net: Network, flow: Flow) -> float:
    """Sum over edges of flow^2 * resistance (self loops carry no flow)."""
    total = 0.0
    for (u, v), c in net.conductances.items():
        if u == v:
            continue
        total += flow.value(u, v) ** 2 / c
    return total


def _grounded_solve(net: Network, s: Node, t: Node) -> np.ndarray:
    """Potentials of the unit current flow from s to t, grounded at t."""
    m = len(net.nodes)
    lap = net.laplacian().tolil()
    ti = net.index(t)
    b = np.zeros(m)
    b[net.index(s)] = 1.0
    lap[ti, :] = 0.0
    lap[ti, ti] = 1.0
    b[ti] = 0.0
    if m <= 600:
        return _solve(lap.toarray(), b)
    return _solve(lap.tocsr(), b)


def unit_current_flow(net: Network, s: Node, t: Node) -> Flow:
    """The energy-minimizing unit flow from s to t (the harmonic one)."""
    phi = _grounded_solve(net, s, t)
    values: Dict[Tuple[Node, Node], float] = {}
    for (u, v), c in net.conductances.items():
        if u == v:
            continue
        values[(u, v)] = c * (phi[net.index(u)] - phi[net.index(v)])
    return Flow(values=values)


def min_energy_unit_flow(net: Network, s: Node, t: Node) -> float:
    """Minimum energy over unit flows from s to t, by convex optimization.

    Independent numeric route (for cross-checking the Laplacian solve);
    meant for small networks only.
    """
    import cvxpy as cp

    edges = [(u, v) for (u, v) in net.conductances if u != v]
    theta = cp.Variable(len(edges))
    r = np.array([1.0 / net.conductances[e] for e in edges])
    m = len(net.nodes)
    inc = np.zeros((m, len(edges)))
    for j, (u, v) in enumerate(edges):
        inc[net.index(u), j] = 1.0
        inc[net.index(v), j] = -1.0
    b = np.zeros(m)
    b[net.index(s)] = 1.0
    b[net.index(t)] = -1.0
    problem = cp.Problem(cp.Minimize(cp.sum(cp.multiply(r, cp.square(theta)))), [inc @ theta == b])
    problem.solve()
    if problem.status != "optimal":
        raise ArithmeticError(f"energy minimization failed: {problem.status}")
    return float(problem.value)


def effective_resistance(net: Network, s: Node, t: Node) -> float:
    """R(s <-> t): potential difference sustaining a unit current."""
    if s == t:
        return 0.0
    phi = _grounded_solve(net, s, t)
    return float(phi[net.index(s)])


def effective_resistances_from(net: Network, s: Node) -> Dict[Node, float]:
    """R(s <-> t) for every t, via the inverse of the grounded Laplacian."""
    m = len(net.nodes)
    lap = net.laplacian().toarray()
    si = net.index(s)
    keep = [i for i in range(m) if i != si]
    reduced = lap[np.ix_(keep, keep)]
    inv = np.linalg.inv(reduced)
    out: Dict[Node, float] = {s: 0.0}
    for pos, i in enumerate(keep):
        out[net.nodes[i]] = float(inv[pos, pos])
    return out


def commute_time(net: Network, a: Node, b: Node) -> float:
    """Expected round trip a -> b -> a of the weighted walk: c_G * R(a<->b)."""
    return net.total_conductance * effective_resistance(net, a, b)


def commute_time_mc(
    net: Network, a: Node, b: Node, rng: Random, trials: int = 10_000
) -> Tuple[float, float]:
    """Monte Carlo commute time estimate: (mean, standard error).

    Walkers are advanced in lockstep with numpy; each trial counts the
    steps of a full round trip a -> b -> a.
    """
    chain = walk_from_network(net)
    cum = np.cumsum(chain.p, axis=1)
    ai, bi = chain.index(a), chain.index(b)
    nprng = np.random.default_rng(rng.getrandbits(64))
    state = np.full(trials, ai, dtype=np.int64)
    phase = np.zeros(trials, dtype=np.int8)  # 0: heading to b, 1: back to a
    steps = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    while active.size:
        u = nprng.random(active.size)
        rows = cum[state[active]]
        state[active] = (u[:, None] < rows).argmax(axis=1)
        steps[active] += 1
        arrived_b = (phase[active] == 0) & (state[active] == bi)
        phase[active[arrived_b]] = 1
        done = (phase[active] == 1) & (state[active] == ai)
        active = active[~done]
    mean = float(steps.mean())
    se = float(steps.std(ddof=1) / np.sqrt(trials))
    return mean, se


def triangle_grid(n: int) -> Network:
    """Unit network on {(x,y): x,y >= 0, x+y <= n} with axis steps and the
    two anti-diagonal steps as edges."""
    if n < 1:
        raise ValueError("triangle size must be >= 1")
    nodes = [(x, y) for x in range(n + 1) for y in range(n + 1 - x)]
    present = set(nodes)
    conductances: Dict[Edge, float] = {}
    for x, y in nodes:
        for nb in ((x + 1, y), (x, y + 1), (x + 1, y - 1)):
            if nb in present:
                conductances[((x, y), nb)] = 1.0
    return Network(nodes=nodes, conductances=conductances)


def square_grid(n: int) -> Network:
    """Unit network on the n-by-n lattice {1..n}^2 with axis edges."""
    if n < 2:
        raise ValueError("square grid needs n >= 2")
    nodes = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    conductances: Dict[Edge, float] = {}
    for x, y in nodes:
        if x < n:
            conductances[((x, y), (x + 1, y))] = 1.0
        if y < n:
            conductances[((x, y), (x, y + 1))] = 1.0
    return Network(nodes=nodes, conductances=conductances)


def chi(n: int) -> int:
    """Number of lattice points of the size-n triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (n + 1) * (n + 2) // 2


def triangle_resistance_bound(n: int) -> float:
    """Closed-form upper bound for resistances from the origin, n >= 2."""
    log = np.log(n)
    return float(8.0 * log * log + 6.0 * (log + 1.0))


def triangle_resistance_check(n: int, limit: int = 60) -> Tuple[float, float]:
    """Max origin resistance on the unit triangle vs. its closed-form bound.

    Returns ``(max_resistance, bound)``; callers assert max <= bound.
    """
    if not 2 <= n <= limit:
        raise ValueError(f"n must lie in 2..{limit}")
    net = triangle_grid(n)
    rs = effective_resistances_from(net, (0, 0))
    return max(rs.values()), triangle_resistance_bound(n)


def rayleigh_check(
    net: Network,
    factor: float,
    pairs: Iterable[Tuple[Node, Node]],
    edges: Optional[Iterable[Edge]] = None,
) -> bool:
    """Monotonicity probe: raising resistances never lowers any R(s<->t).

    Multiplies the resistance of ``edges`` (default: all) by
    ``factor >= 1`` and checks every given pair, with a small numerical
    slack.
    """
    if factor < 1:
        raise ValueError("factor must be >= 1 to raise resistances")
    chosen = set(frozenset(e) for e in edges) if edges is not None else None
    bumped = {}
    for e, c in net.conductances.items():
        if chosen is None or frozenset(e) in chosen:
            bumped[e] = c / factor
        else:
            bumped[e] = c
    worse = Network(nodes=list(net.nodes), conductances=bumped)
    for s, t in pairs:
        before = effective_resistance(net, s, t)
        after = effective_resistance(worse, s, t)
        if after < before * (1 - 1e-9) - 1e-12:
            return False
    return True


def absorption_analysis(
    chain: ChainSpec, absorbing: Sequence[Node]
) -> Tuple[Dict[Node, Dict[Node, float]], Dict[Node, float]]:
    """Absorption probabilities and expected absorption times.

    Returns ``(probs, times)`` where ``probs[state][target]`` is the
    probability of being absorbed in ``target`` starting from the transient
    ``state`` and ``times[state]`` the expected number of steps until
    absorption (in any absorbing state).
    """
    absorbing = list(absorbing)
    for s in absorbing:
        i = chain.index(s)
        if abs(chain.p[i, i] - 1.0) > 1e-12:
            raise ValueError(f"state {s!r} is not absorbing")
    transient = [s for s in chain.states if s not in absorbing]
    ti = [chain.index(s) for s in transient]
    ai = [chain.index(s) for s in absorbing]
    q = chain.p[np.ix_(ti, ti)]
    r = chain.p[np.ix_(ti, ai)]
    m = len(transient)
    a = np.eye(m) - q
    hit = _solve(a, r) if len(ai) > 1 else _solve(a, r.reshape(m))
    hit = np.asarray(hit).reshape(m, len(ai))
    times = _solve(a, np.ones(m))
    probs = {
        s: {absorbing[j]: float(hit[i, j]) for j in range(len(ai))}
        for i, s in enumerate(transient)
    }
    return probs, {s: float(times[i]) for i, s in enumerate(transient)}


def trial_chain(n: int, reachable_failure: bool = True) -> ChainSpec:
    """Five-state restart gadget over {G, F, S, M, B}.

    From S a fair coin moves to F or M; F succeeds (to the absorbing G)
    with probability 1/n, else falls back to S; M symmetrically fails to
    the absorbing B with probability 1/n.  With ``reachable_failure=False``
    the failure arc M -> B is redirected to S, making B unreachable.
    """
    if n < 2:
        raise ValueError("n must be >= 2 so fallback probabilities stay positive")
    states = ["G", "F", "S", "M", "B"]
    p = np.zeros((5, 5))
    g, f, s, m, b = range(5)
    p[g, g] = 1.0
    p[b, b] = 1.0
    p[s, f] = 0.5
    p[s, m] = 0.5
    p[f, g] = 1.0 / n
    p[f, s] = 1.0 - 1.0 / n
    if reachable_failure:
        p[m, b] = 1.0 / n
        p[m, s] = 1.0 - 1.0 / n
    else:
        p[m, s] = 1.0
    return ChainSpec(states=states, p=p)
