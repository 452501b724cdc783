"""Gap-weight view of minimal-size-or-larger dominating sets on cycles.

A dominating set D of C_n with k >= 2 vertices is determined by one anchor
vertex and the sequence of clockwise gaps between consecutive members.  For
dominating sets every gap is 1, 2 or 3, the gaps sum to n, and a vertex swap
of the underlying local search shows up as one gap growing by one while a
cyclically adjacent gap shrinks by one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from .cycle import CycleGraph

__all__ = [
    "AdjacencyWeights",
    "weights_from_set",
    "weights_redundant",
    "apply_move",
    "set_from_weights",
    "rotations_equal",
]

_FORMAT_RE = re.compile(r"^w=\((?P<w>\d+(?:,\d+)*)\)@(?P<anchor>\d+),n=(?P<n>\d+)$")


@dataclass(frozen=True)
class AdjacencyWeights:
    """Clockwise gap sequence of a dominating set, anchored at a vertex.

    ``weights[i]`` is the clockwise distance from the (i)-th to the
    (i+1)-th dominating vertex, counting from the member at ``anchor``.
    """

    n: int
    weights: Tuple[int, ...]
    anchor: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("gap sequences need at least two dominating vertices")
        if not all(w in (1, 2, 3) for w in self.weights):
            raise ValueError(f"gaps must lie in {{1,2,3}}, got {self.weights}")
        if sum(self.weights) != self.n:
            raise ValueError(
                f"gaps {self.weights} sum to {sum(self.weights)}, expected n={self.n}"
            )
        if not 0 <= self.anchor < self.n:
            raise ValueError(f"anchor {self.anchor} out of range for n={self.n}")

    @property
    def k(self) -> int:
        return len(self.weights)

    def __str__(self) -> str:
        inner = ",".join(str(w) for w in self.weights)
        return f"w=({inner})@{self.anchor},n={self.n}"

    @classmethod
    def parse(cls, text: str) -> "AdjacencyWeights":
        m = _FORMAT_RE.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse weight string {text!r}")
        weights = tuple(int(x) for x in m.group("w").split(","))
        return cls(n=int(m.group("n")), weights=weights, anchor=int(m.group("anchor")))

    def canonical(self) -> Tuple[int, ...]:
        """Lexicographically smallest rotation of the gap sequence."""
        w = self.weights
        return min(tuple(w[i:] + w[:i]) for i in range(len(w)))


def rotations_equal(a: AdjacencyWeights, b: AdjacencyWeights) -> bool:
    """Equality of gap sequences up to rotation (anchors ignored)."""
    return a.n == b.n and a.canonical() == b.canonical()


def weights_from_set(g: CycleGraph, d: Iterable[int]) -> AdjacencyWeights:
    """Extract the anchored gap sequence of a dominating set."""
    d = g.check_set(d)
    if len(d) < 2:
        raise ValueError("need at least two dominating vertices")
    members = sorted(d)
    gaps = []
    for i, v in enumerate(members):
        nxt = members[(i + 1) % len(members)]
        gaps.append((nxt - v) % g.n)
    return AdjacencyWeights(n=g.n, weights=tuple(gaps), anchor=members[0])


def set_from_weights(w: AdjacencyWeights) -> FrozenSet[int]:
    """Rebuild the vertex set from an anchored gap sequence."""
    out = []
    v = w.anchor
    for gap in w.weights:
        out.append(v)
        v = (v + gap) % w.n
    if v != w.anchor:
        raise AssertionError("gap sequence does not close the cycle")
    return frozenset(out)


def weights_redundant(w: AdjacencyWeights) -> bool:
    """Whether some dominating vertex is redundant, read off the gaps.

    The member between gaps i and i+1 is redundant exactly when the two
    gaps sum to at most 3, i.e. the adjacent pair is (1,1), (1,2) or (2,1).
    """
    k = w.k
    return any(w.weights[i] + w.weights[(i + 1) % k] <= 3 for i in range(k))


def apply_move(w: AdjacencyWeights, gap: int, direction: str) -> AdjacencyWeights:
    """Grow ``gap`` by one at the expense of a cyclically adjacent gap.

    ``direction`` names the direction the dominating vertex at the border
    moves: ``"cw"`` shifts the clockwise endpoint of the gap forward
    (shrinking the next gap), ``"ccw"`` shifts its counterclockwise
    endpoint backward (shrinking the previous gap).  The growing gap must
    be at most 2 and the shrinking gap at least 2, otherwise the move would
    leave the family of dominating sets.
    """
    k = w.k
    if not 0 <= gap < k:
        raise ValueError(f"gap index {gap} out of range 0..{k - 1}")
    if direction == "cw":
        other = (gap + 1) % k
    elif direction == "ccw":
        other = (gap - 1) % k
    else:
        raise ValueError(f"direction must be 'cw' or 'ccw', got {direction!r}")
    if other == gap:
        raise ValueError("degenerate move: gap would trade with itself")
    weights = list(w.weights)
    if weights[gap] > 2:
        raise ValueError(f"gap {gap} has weight {weights[gap]}, cannot grow past 3")
    if weights[other] < 2:
        raise ValueError(f"gap {other} has weight {weights[other]}, cannot shrink below 1")
    weights[gap] += 1
    weights[other] -= 1
    anchor = w.anchor
    # the anchor vertex itself moves when it borders the traded gaps
    if direction == "ccw" and gap == 0:
        anchor = (anchor - 1) % w.n
    if direction == "cw" and other == 0:
        anchor = (anchor + 1) % w.n
    return AdjacencyWeights(n=w.n, weights=tuple(weights), anchor=anchor)
