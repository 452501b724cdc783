"""Cycle graphs, domination predicates, and local structure of vertex subsets.

Vertices of a cycle on ``n`` nodes are the integers ``0..n-1``, with ``i``
adjacent to ``(i + 1) % n`` and ``(i - 1) % n``.  Throughout the package the
``+1`` direction is called *clockwise* and the ``-1`` direction
*counterclockwise*.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Set

__all__ = [
    "CycleGraph",
    "Arc",
    "Movability",
    "closed_neighborhood",
    "uncovered_count",
    "is_dominating",
    "private_neighborhood",
    "redundant_vertices",
    "is_minimal_dominating",
    "find_dense_arc",
    "movability",
    "to_dot",
]


@dataclass(frozen=True)
class CycleGraph:
    """The cycle graph C_n, n >= 3."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"cycle graph needs n >= 3, got n={self.n}")

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise ValueError(f"vertex {v!r} out of range for C_{self.n}")

    def check_set(self, s: Iterable[int]) -> FrozenSet[int]:
        out = frozenset(s)
        for v in out:
            self.check_vertex(v)
        return out

    def neighbors(self, v: int) -> tuple:
        self.check_vertex(v)
        return ((v - 1) % self.n, (v + 1) % self.n)

    def dist_cw(self, u: int, v: int) -> int:
        """Steps from u to v walking in the +1 (clockwise) direction."""
        return (v - u) % self.n

    def dist_ccw(self, u: int, v: int) -> int:
        """Steps from u to v walking in the -1 (counterclockwise) direction."""
        return (u - v) % self.n

    def dist(self, u: int, v: int) -> int:
        d = (v - u) % self.n
        return min(d, self.n - d)


@dataclass(frozen=True)
class Arc:
    """A path of consecutive cycle vertices.

    ``start`` is the first vertex walking clockwise and ``length`` counts
    *edges*, so the arc covers ``length + 1`` vertices.
    """

    start: int
    length: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.length <= self.n - 1:
            raise ValueError(
                f"arc length must be in 1..{self.n - 1}, got {self.length}"
            )
        if not 0 <= self.start < self.n:
            raise ValueError(f"arc start {self.start} out of range for C_{self.n}")

    def vertices(self) -> tuple:
        return tuple((self.start + i) % self.n for i in range(self.length + 1))


@dataclass(frozen=True)
class Movability:
    """Directional movability flags of a dominating vertex."""

    clockwise: bool
    counterclockwise: bool
    free: bool


def closed_neighborhood(g: CycleGraph, v: int) -> FrozenSet[int]:
    g.check_vertex(v)
    return frozenset(((v - 1) % g.n, v, (v + 1) % g.n))


def _covered(g: CycleGraph, s: FrozenSet[int]) -> Set[int]:
    out: Set[int] = set()
    for v in s:
        out.update(((v - 1) % g.n, v, (v + 1) % g.n))
    return out


def uncovered_count(g: CycleGraph, s: Iterable[int]) -> int:
    s = g.check_set(s)
    return g.n - len(_covered(g, s))


def is_dominating(g: CycleGraph, s: Iterable[int]) -> bool:
    return uncovered_count(g, s) == 0


def private_neighborhood(g: CycleGraph, s: Iterable[int], v: int) -> FrozenSet[int]:
    """Vertices dominated by ``v`` but by no other member of ``s``.

    ``v`` must be a member of ``s``.
    """
    s = g.check_set(s)
    if v not in s:
        raise ValueError(f"vertex {v} is not a member of the set")
    others = _covered(g, s - {v})
    return frozenset(closed_neighborhood(g, v) - others)


def redundant_vertices(g: CycleGraph, s: Iterable[int]) -> FrozenSet[int]:
    """Members of ``s`` with empty private neighborhood."""
    s = g.check_set(s)
    return frozenset(v for v in s if not private_neighborhood(g, s, v))


def is_minimal_dominating(g: CycleGraph, s: Iterable[int]) -> bool:
    """Whether ``s`` is dominating and no proper subset of it dominates.

    Raises ``ValueError`` when ``s`` is not dominating at all.  Since
    domination survives adding vertices, minimality is equivalent to every
    member having a private neighbor.
    """
    s = g.check_set(s)
    if not is_dominating(g, s):
        raise ValueError("set is not dominating")
    return not redundant_vertices(g, s)


def find_dense_arc(g: CycleGraph, s: Iterable[int]) -> Optional[Arc]:
    """First short arc (by ``(start, length)``) holding three set vertices.

    Scans arcs covering at most four vertices (length <= 3 edges) that are
    induced paths of the cycle, and returns the first one containing at
    least three members of ``s``.  Such an arc exists for a dominating set
    iff the set has a redundant vertex, provided n >= 4; on C_3 no induced
    path can hold three vertices, so the result there is always ``None``.
    """
    s = g.check_set(s)
    if len(s) < 3:
        return None
    max_len = min(3, g.n - 2)  # induced paths only: endpoints non-adjacent
    for start in range(g.n):
        for length in range(2, max_len + 1):
            arc = Arc(start, length, g.n)
            if sum(1 for v in arc.vertices() if v in s) >= 3:
                return arc
    return None


def movability(g: CycleGraph, d: Iterable[int], v: int) -> Movability:
    """Directional movability of ``v`` within the dominating set ``d``.

    A vertex can shift one step clockwise without breaking domination iff
    the gap it leaves behind stays covered, i.e. the distance to its nearest
    set neighbor in the *counterclockwise* direction is at most 2 -- and
    symmetrically for counterclockwise moves.  It is *free* (movable in both
    directions with slack) iff the two distances sum to at most 3.
    """
    d = g.check_set(d)
    if v not in d:
        raise ValueError(f"vertex {v} is not a member of the set")
    if len(d) < 2:
        # no set neighbors on either side; both gaps wrap to the vertex
        # itself at distance n, so nothing is movable
        return Movability(clockwise=False, counterclockwise=False, free=False)
    gap_cw = next(t for t in range(1, g.n + 1) if (v + t) % g.n in d)
    gap_ccw = next(t for t in range(1, g.n + 1) if (v - t) % g.n in d)
    return Movability(
        clockwise=gap_ccw <= 2,
        counterclockwise=gap_cw <= 2,
        free=gap_cw + gap_ccw <= 3,
    )


def to_dot(g: CycleGraph, s: Iterable[int] = ()) -> str:
    """Graphviz DOT rendering of the cycle with set members filled."""
    s = g.check_set(s)
    lines = ["graph cycle {"]
    for v in range(g.n):
        style = ' [style=filled, fillcolor=gray]' if v in s else ""
        lines.append(f"  {v}{style};")
    for v in range(g.n):
        lines.append(f"  {v} -- {(v + 1) % g.n};")
    lines.append("}")
    return "\n".join(lines)
