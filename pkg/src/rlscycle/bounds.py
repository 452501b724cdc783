"""Closed-form expected-time bounds for the phases of the search.

All logarithms are natural.  The three phases are: reaching a dominating
set, shrinking it to at most floor(n/2) vertices, and then descending one
cardinality level at a time until ceil(n/3).
"""
from __future__ import annotations

import math

__all__ = [
    "optimum_size",
    "feasibility_bound",
    "half_bound",
    "half_bound_loose",
    "level_bound",
    "first_redundancy_bound",
    "optimum_total_bound",
]


def optimum_size(n: int) -> int:
    """Minimum dominating set size of C_n: ceil(n/3)."""
    return -(-n // 3)


def feasibility_bound(n: int) -> float:
    """Expected iterations until the first dominating set: 2n(1 + ln(n/2))."""
    return 2.0 * n * (1.0 + math.log(n / 2.0))


def half_bound(n: int) -> float:
    """Dominating set of size <= floor(n/2): 2n(1 + ln(n - floor(n/2)))."""
    return 2.0 * n * (1.0 + math.log(n - n // 2))


def half_bound_loose(n: int) -> float:
    """Simpler version of :func:`half_bound`: 2n + 2n ln(n)."""
    return 2.0 * n + 2.0 * n * math.log(n)


def triangle_bound(k: int) -> float:
    """Corner-region hitting bound of the lazy triangle walk: 8 ln^2 k + 6(ln k + 1)."""
    log = math.log(k)
    return 8.0 * log * log + 6.0 * (log + 1.0)


def first_redundancy_bound(n: int, k: int) -> float:
    """Expected time until a size-k dominating set turns redundant."""
    chi = (k + 1) * (k + 2) // 2
    return 4.0 * n * chi * triangle_bound(k)


def level_bound(n: int, k: int) -> float:
    """Expected iterations to drop from cardinality k to k - 1.

    Combines the redundancy waiting time with the restart overhead of the
    removal attempt: 8n * ((k+1)(k+2) + 2)/2 * (8 ln^2 k + 6(ln k + 1)).
    """
    return 8.0 * n * (((k + 1) * (k + 2) + 2) / 2.0) * triangle_bound(k)


def optimum_total_bound(n: int) -> float:
    """Expected iterations from a random start to a minimum dominating set."""
    total = feasibility_bound(n) + half_bound(n)
    for k in range(optimum_size(n) + 1, n // 2 + 1):
        total += level_bound(n, k)
    return total
