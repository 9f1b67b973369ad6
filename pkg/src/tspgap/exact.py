"""Exact optimal tours: Held-Karp dynamic programming as the workhorse plus
a factorial brute-force oracle, and the integrality ratio built on both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Instance, Tour
from .lp import solve_subtour_lp

HELD_KARP_MAX = 20
BRUTE_FORCE_MAX = 11


@dataclass(frozen=True)
class ExactResult:
    """A certified optimal tour and the method that produced it."""

    tour: Tour
    length: float
    method: str  # "held_karp" | "brute_force"


def held_karp(inst: Instance) -> ExactResult:
    """Optimal tour by the classic subset DP, anchored at vertex 0.

    Handles 3 <= n <= 20; the table is 2^(n-1) * (n-1) floats, so the top
    of that range costs tens of seconds and ~100 MB.  Ties are resolved
    deterministically (smallest predecessor index) and the returned Tour
    is canonical.
    """
    n = inst.n
    if not 3 <= n <= HELD_KARP_MAX:
        raise ValueError(f"held_karp handles 3 <= n <= {HELD_KARP_MAX}, got {n}")
    D = inst.distance_matrix()
    r = n - 1  # vertices 1..n-1; anchor 0 is implicit
    Dr = D[1:, 1:]
    d0 = D[0, 1:]
    full = (1 << r) - 1

    dp = np.full((full + 1, r), np.inf)
    parent = np.full((full + 1, r), -1, dtype=np.int8)
    for v in range(r):
        dp[1 << v, v] = d0[v]
    for s in range(1, full + 1):
        if s & (s - 1) == 0:  # singletons are the DP base
            continue
        vs = np.nonzero([s >> v & 1 for v in range(r)])[0]
        prev_masks = s ^ (1 << vs)
        cand = dp[prev_masks] + Dr[:, vs].T  # row per member v, col per predecessor
        dp[s, vs] = cand.min(axis=1)
        parent[s, vs] = cand.argmin(axis=1)

    closing = dp[full] + d0
    v = int(closing.argmin())
    cost = float(closing[v])

    path = []
    s = full
    while v >= 0:
        path.append(v + 1)
        v_next = int(parent[s, v])
        s ^= 1 << v
        v = v_next
    path.reverse()
    return ExactResult(Tour([0] + path), cost, "held_karp")


def brute_force(inst: Instance) -> ExactResult:
    """Optimal tour by enumeration; 3 <= n <= 11.

    Vertex 0 is fixed first and reversals are skipped, so (n-1)!/2 orders
    are scanned in lexicographic order; the first minimum wins.
    """
    n = inst.n
    if not 3 <= n <= BRUTE_FORCE_MAX:
        raise ValueError(f"brute_force handles 3 <= n <= {BRUTE_FORCE_MAX}, got {n}")
    D = inst.distance_matrix().tolist()
    best_cost = np.inf
    best_perm = None
    for perm in itertools.permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        cost = D[0][perm[0]] + D[perm[-1]][0]
        prev = perm[0]
        for v in perm[1:]:
            cost += D[prev][v]
            prev = v
        if cost < best_cost:
            best_cost = cost
            best_perm = perm
    return ExactResult(Tour((0,) + best_perm), float(best_cost), "brute_force")


def integrality_ratio(inst: Instance) -> float:
    """Optimal tour length divided by the subtour-relaxation optimum."""
    opt = held_karp(inst).length
    lp = solve_subtour_lp(inst)
    if lp.cost <= 0:
        raise ValueError(f"relaxation cost {lp.cost} is not positive")
    # The relaxation can never exceed the optimum (beyond round-off).
    assert lp.cost <= opt + 1e-6, (lp.cost, opt)
    return opt / lp.cost
