"""Exhaustive enumeration oracles for domination on small cycles.

Everything here is brute force over bitmasks and is intended as ground
truth for the analytical criteria implemented elsewhere.  The enumeration
guard ``limit`` (default 24) keeps accidental exponential blowups out of
test runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

__all__ = [
    "ENUMERATION_LIMIT",
    "CensusRow",
    "min_dominating_size",
    "dominating_sets",
    "census",
    "census_csv",
    "verify_reducibility_lemma",
]

ENUMERATION_LIMIT = 24


def _check_n(n: int, limit: int) -> None:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if n > limit:
        raise ValueError(f"n={n} exceeds enumeration limit {limit}")


def _neighborhood_masks(n: int) -> List[int]:
    return [(1 << v) | (1 << ((v + 1) % n)) | (1 << ((v - 1) % n)) for v in range(n)]


def min_dominating_size(n: int, limit: int = ENUMERATION_LIMIT) -> int:
    """Size of a minimum dominating set of C_n, by exhaustive search."""
    _check_n(n, limit)
    masks = _neighborhood_masks(n)
    full = (1 << n) - 1
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            covered = 0
            for v in combo:
                covered |= masks[v]
            if covered == full:
                return k
    raise AssertionError("unreachable: the full vertex set dominates")


def dominating_sets(
    n: int, k: Optional[int] = None, limit: int = ENUMERATION_LIMIT
) -> Iterator[Tuple[int, ...]]:
    """Yield every dominating set of C_n (of size ``k`` when given)."""
    _check_n(n, limit)
    masks = _neighborhood_masks(n)
    full = (1 << n) - 1
    sizes = range(1, n + 1) if k is None else [k]
    for size in sizes:
        for combo in combinations(range(n), size):
            covered = 0
            for v in combo:
                covered |= masks[v]
            if covered == full:
                yield combo


def _redundant_count(masks: List[int], combo: Tuple[int, ...]) -> int:
    """Number of members whose closed neighborhood the others already cover."""
    k = len(combo)
    prefix = [0] * (k + 1)
    for i, v in enumerate(combo):
        prefix[i + 1] = prefix[i] | masks[v]
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[combo[i]]
    redundant = 0
    for i, v in enumerate(combo):
        others = prefix[i] | suffix[i + 1]
        if masks[v] & ~others == 0:
            redundant += 1
    return redundant


@dataclass(frozen=True)
class CensusRow:
    n: int
    k: int
    total: int
    redundant: int
    minimal: int


def census(n: int, k: int, limit: int = ENUMERATION_LIMIT) -> CensusRow:
    """Count dominating sets of C_n with exactly ``k`` vertices.

    ``total`` counts dominating sets, ``redundant`` those containing at
    least one redundant member, ``minimal`` the subset-minimal ones.
    """
    _check_n(n, limit)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    masks = _neighborhood_masks(n)
    full = (1 << n) - 1
    total = redundant = 0
    for combo in combinations(range(n), k):
        covered = 0
        for v in combo:
            covered |= masks[v]
        if covered != full:
            continue
        total += 1
        if _redundant_count(masks, combo) > 0:
            redundant += 1
    return CensusRow(n=n, k=k, total=total, redundant=redundant, minimal=total - redundant)


def census_csv(rows) -> str:
    """Render census rows as CSV with a fixed column order."""
    lines = ["n,k,total,redundant,minimal"]
    for r in rows:
        lines.append(f"{r.n},{r.k},{r.total},{r.redundant},{r.minimal}")
    return "\n".join(lines) + "\n"


def verify_reducibility_lemma(n: int, limit: int = ENUMERATION_LIMIT) -> bool:
    """Check that big dominating sets carry proportionally many redundancies.

    For every dominating set of C_n with ``floor(n/2) + q`` vertices
    (q >= 1) there must be at least ``q`` redundant members.  Returns True
    when no counterexample exists.
    """
    _check_n(n, limit)
    masks = _neighborhood_masks(n)
    full = (1 << n) - 1
    half = n // 2
    for k in range(half + 1, n + 1):
        q = k - half
        for combo in combinations(range(n), k):
            covered = 0
            for v in combo:
                covered |= masks[v]
            if covered != full:
                continue
            if _redundant_count(masks, combo) < q:
                return False
    return True
