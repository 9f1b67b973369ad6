"""Gradient-based local search that pushes an embedded instance toward a
local maximum of the integrality ratio.

For a differentiable norm (p > 1) the tour-length and fractional-cost
gradients are analytic; a common ascent direction over the pool of
optimal and near-optimal tours is found by a small auxiliary LP, and a
binary line search accepts a step only when the exact recomputed ratio
strictly increases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .core import EdgeWeightVector, Instance, NormSpec, Tour, fractional_cost, tour_length
from .exact import held_karp
from .lp import LinearProgram, solve_lp, solve_subtour_lp

# Full tour enumeration keeps the pool provably complete up to this size;
# beyond it the pool only holds tours discovered during the run.
POOL_ENUM_MAX = 10

_GROUP_TOL = 1e-9


class LocalSearchError(RuntimeError):
    """Search could not proceed (no admissible random start found)."""


class DirectionVector:
    """A direction in instance space: one component per coordinate of the
    embedding, vertex-major (vertex 0 axis 0, vertex 0 axis 1, ...)."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[float]):
        arr = np.asarray(list(components) if not isinstance(components, np.ndarray) else components, dtype=float)
        if arr.ndim != 1:
            raise ValueError("components must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite direction component")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    def __len__(self) -> int:
        return len(self.components)

    def dot(self, other: "DirectionVector | np.ndarray") -> float:
        arr = other.components if isinstance(other, DirectionVector) else np.asarray(other, dtype=float)
        return float(self.components @ arr)

    def as_points(self, n: int, dim: int) -> np.ndarray:
        return self.components.reshape(n, dim)

    def __repr__(self) -> str:
        return f"DirectionVector({self.components.tolist()!r})"


@dataclass(frozen=True)
class LocalSearchParams:
    """Accuracy parameters for the search.

    epsilon0: a random start is kept only if its ratio exceeds 1 + epsilon0.
    epsilon1: ascent threshold; the improvement LP's objective at or below
        it certifies local optimality.
    epsilon2: step floor for the binary line search.
    epsilon3: tour-pool window as a fraction of the current optimum length
        (the absolute window is epsilon3 times the optimum).
    p: norm exponent, must exceed 1 so lengths are differentiable.
    """

    epsilon0: float = 0.01
    epsilon1: float = 1e-6
    epsilon2: float = 1e-7
    epsilon3: float = 1e-4
    p: float = 2.0
    max_iters: int = 500
    rng_seed: int = 0

    def __post_init__(self) -> None:
        for name in ("epsilon0", "epsilon1", "epsilon2", "epsilon3"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not (math.isfinite(self.p) and self.p > 1):
            raise ValueError("p must be a finite exponent > 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class TourPool:
    """Optimal and near-optimal tours: every member's length is within
    `window` of `reference` (the optimum length it was built against)."""

    tours: frozenset[Tour]
    reference: float
    window: float

    def __post_init__(self) -> None:
        if not self.tours:
            raise ValueError("empty tour pool")
        if self.window < 0:
            raise ValueError("negative pool window")

    def check(self, inst: Instance) -> None:
        for t in self.tours:
            if tour_length(inst, t) > self.reference + self.window + 1e-12:
                raise ValueError(f"pooled tour {t!r} exceeds reference + window")

    def pruned(self, inst: Instance, reference: float, window: float) -> "TourPool":
        keep = frozenset(t for t in self.tours if tour_length(inst, t) <= reference + window)
        return TourPool(keep, reference, window)


@lru_cache(maxsize=None)
def _canonical_perms(n: int) -> np.ndarray:
    """All (n-1)!/2 canonical tour orders: fixed 0 first, second < last."""
    rows = [
        (0,) + perm
        for perm in itertools.permutations(range(1, n))
        if perm[0] < perm[-1]
    ]
    return np.array(rows, dtype=np.int16)


def build_tour_pool(inst: Instance, window: float) -> TourPool:
    """Exhaustive pool of all tours within `window` of the optimum.

    Only for n <= POOL_ENUM_MAX; larger instances must grow a pool
    incrementally from tours discovered during the search.
    """
    n = inst.n
    if n > POOL_ENUM_MAX:
        raise ValueError(f"n = {n} exceeds enumeration cap {POOL_ENUM_MAX}")
    P = _canonical_perms(n)
    D = inst.distance_matrix()
    lengths = D[P, np.roll(P, -1, axis=1)].sum(axis=1)
    opt = float(lengths.min())
    mask = lengths <= opt + window
    tours = frozenset(Tour(tuple(int(v) for v in row)) for row in P[mask])
    return TourPool(tours, opt, window)


# -- gradients -------------------------------------------------------------


def _edge_gradient(inst: Instance, pairs: Iterable[tuple[int, int, float]]) -> np.ndarray:
    p = inst.norm.p
    if not (math.isfinite(p) and p > 1):
        raise ValueError("gradients require a finite norm exponent p > 1")
    pts = inst.points
    G = np.zeros_like(pts)
    for u, v, weight in pairs:
        diff = pts[u] - pts[v]
        nrm = float(np.sum(np.abs(diff) ** p) ** (1.0 / p))
        term = weight * np.sign(diff) * np.abs(diff) ** (p - 1.0) / nrm ** (p - 1.0)
        G[u] += term
        G[v] -= term
    return G.ravel()


def grad_tour_length(inst: Instance, t: Tour) -> DirectionVector:
    """Gradient of the tour length with respect to every coordinate.

    Per coordinate (vertex m, axis a) this is the sum over tour neighbors q
    of sgn(v_m[a] - q[a]) |v_m[a] - q[a]|^(p-1) / ||v_m - q||_p^(p-1).
    """
    return DirectionVector(_edge_gradient(inst, ((e.u, e.v, 1.0) for e in t.edges())))


def grad_fractional(inst: Instance, x: EdgeWeightVector) -> DirectionVector:
    """Weighted analogue of grad_tour_length over the support of x."""
    if x.n != inst.n:
        raise ValueError(f"weight vector on {x.n} vertices, instance has {inst.n}")
    return DirectionVector(_edge_gradient(inst, ((e.u, e.v, w) for e, w in x.items())))


def grad_g(inst: Instance, t: Tour, x: EdgeWeightVector, r: float) -> DirectionVector:
    """Gradient of g(v) = tour_length(v) - r * fractional_cost(v).

    Moving along a direction of positive inner product with this gradient
    increases the ratio length(t)/cost(x) when t is optimal and r is the
    current ratio.
    """
    gt = grad_tour_length(inst, t).components
    gx = grad_fractional(inst, x).components
    return DirectionVector(gt - r * gx)


# -- improvement LP --------------------------------------------------------


def improvement_lp(
    inst: Instance, pool: TourPool, x: EdgeWeightVector, r: float
) -> tuple[DirectionVector, float]:
    """Maximize delta subject to <w, grad_g(T)> >= delta for every pooled
    tour and w in [-1, 1]^(n*d).  delta > 0 certifies a common ascent
    direction; the zero direction is always feasible, so delta >= 0.
    """
    if not pool.tours:
        raise ValueError("empty tour pool")
    grads = [grad_g(inst, t, x, r).components for t in sorted(pool.tours, key=lambda t: t.order)]
    nd = inst.n * inst.dim
    # Variables: w_0 .. w_{nd-1}, then delta (free).
    rows = [(tuple(g) + (-1.0,), ">=", 0.0) for g in grads]
    objective = (0.0,) * nd + (1.0,)
    bounds = ((-1.0, 1.0),) * nd + ((None, None),)
    lp = LinearProgram(objective=objective, rows=tuple(rows), bounds=bounds, maximize=True)
    sol = solve_lp(lp)
    w = DirectionVector(sol.values[:nd])
    return w, float(sol.values[nd])


def local_opt_certificate(
    inst: Instance,
    pool: TourPool,
    x: EdgeWeightVector,
    *,
    epsilon1: float = 1e-6,
) -> bool:
    """True iff the improvement LP finds no common ascent direction of
    value above epsilon1.  Valid as a certificate only when the pool holds
    every optimal tour (within its window)."""
    r = pool.reference / fractional_cost(inst, x)
    _, delta = improvement_lp(inst, pool, x, r)
    return delta <= epsilon1


# -- restricted form for the 1-norm ---------------------------------------


def _coordinate_groups(inst: Instance, tol: float = _GROUP_TOL) -> list[list[int]]:
    """Per axis, flat coordinate indices grouped by (near-)equal value."""
    groups: list[list[int]] = []
    for a in range(inst.dim):
        vals = inst.points[:, a]
        order = np.argsort(vals, kind="stable")
        current: list[int] = [int(order[0]) * inst.dim + a]
        for prev, cur in zip(order[:-1], order[1:]):
            if vals[cur] - vals[prev] <= tol:
                current.append(int(cur) * inst.dim + a)
            else:
                groups.append(current)
                current = [int(cur) * inst.dim + a]
        groups.append(current)
    return groups


def p1_improvement_lp(
    inst: Instance, pool: TourPool, x: EdgeWeightVector, r: float
) -> tuple[DirectionVector, float]:
    """Restricted improvement LP for the 1-norm: coordinates equal within
    1e-9 on an axis move as one variable, so sign patterns (and hence the
    subgradient) stay valid along the direction.

    Advisory only: a zero optimum does not rule out every improving
    direction, it only rules out group-respecting ones.
    """
    if inst.norm.p != 1.0:
        raise ValueError("p1_improvement_lp is only for 1-norm instances")
    pts = inst.points
    grads = []
    for t in sorted(pool.tours, key=lambda t: t.order):
        G = np.zeros_like(pts)
        for e in t.edges():
            diff = np.sign(pts[e.u] - pts[e.v])
            G[e.u] += diff
            G[e.v] -= diff
        Gx = np.zeros_like(pts)
        for e, w in x.items():
            diff = np.sign(pts[e.u] - pts[e.v])
            Gx[e.u] += w * diff
            Gx[e.v] -= w * diff
        grads.append((G - r * Gx).ravel())
    groups = _coordinate_groups(inst)
    m = len(groups)
    rows = []
    for g in grads:
        coeffs = tuple(float(sum(g[i] for i in grp)) for grp in groups) + (-1.0,)
        rows.append((coeffs, ">=", 0.0))
    objective = (0.0,) * m + (1.0,)
    bounds = ((-1.0, 1.0),) * m + ((None, None),)
    sol = solve_lp(LinearProgram(objective=objective, rows=tuple(rows), bounds=bounds, maximize=True))
    w = np.zeros(inst.n * inst.dim)
    for gi, grp in enumerate(groups):
        for i in grp:
            w[i] = sol.values[gi]
    return DirectionVector(w), float(sol.values[m])


# -- Algorithm 1 -----------------------------------------------------------


@dataclass(frozen=True)
class TraceRecord:
    """One accepted state: the seed (iteration 0) or an accepted step."""

    iteration: int
    ratio: float
    delta: float
    eta: float


@dataclass(frozen=True)
class SearchTrace:
    records: tuple[TraceRecord, ...]
    converged: bool
    restarts: int
    final_ratio: float


_RESTART_CAP = 20000
_MAX_HALVINGS = 60


def random_instance(n: int, p: float, rng: np.random.Generator) -> Instance:
    """Uniform points in the unit square under the p-norm."""
    return Instance(rng.random((n, 2)), NormSpec(p))


def perturb_instance(inst: Instance, magnitude: float, rng: np.random.Generator) -> Instance:
    """Jitter every coordinate uniformly in [-magnitude, magnitude]; use to
    restart the search near a previous local optimum."""
    shift = rng.uniform(-magnitude, magnitude, size=inst.points.shape)
    return Instance(inst.points + shift, inst.norm, labels=inst.labels)


def _ratio_state(inst: Instance) -> tuple[float, float, EdgeWeightVector]:
    exact = held_karp(inst)
    lp = solve_subtour_lp(inst)
    return exact.length / lp.cost, exact.length, lp.x


def local_search(n: int, params: LocalSearchParams) -> tuple[Instance, SearchTrace]:
    """Push a random instance to a local maximum of the integrality ratio.

    Random instances are drawn until one has ratio above 1 + epsilon0;
    from there, each iteration solves the improvement LP over the pool of
    near-optimal tours and line-searches along the common ascent direction,
    accepting a step only when the exact recomputed ratio strictly
    increases.  Terminates when the LP value drops to epsilon1, the step
    floor epsilon2 is hit, or max_iters runs out (best-so-far, flagged
    non-converged in the trace).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rng = np.random.default_rng(params.rng_seed)

    inst = None
    restarts = 0
    for _ in range(_RESTART_CAP):
        restarts += 1
        cand = random_instance(n, params.p, rng)
        ratio, opt_len, x = _ratio_state(cand)
        if ratio > 1.0 + params.epsilon0:
            inst = cand
            break
    if inst is None:
        raise LocalSearchError(
            f"no random {n}-point start with ratio > 1 + {params.epsilon0} in {_RESTART_CAP} draws"
        )

    records = [TraceRecord(0, ratio, 0.0, 0.0)]
    converged = False
    pool: TourPool | None = None
    for it in range(1, params.max_iters + 1):
        window = params.epsilon3 * opt_len
        if n <= POOL_ENUM_MAX:
            pool = build_tour_pool(inst, window)
        else:
            found = held_karp(inst).tour
            tours = (pool.tours if pool else frozenset()) | {found}
            pool = TourPool(tours, opt_len, window).pruned(inst, opt_len, window)
        w, delta = improvement_lp(inst, pool, x, ratio)
        if delta <= params.epsilon1:
            converged = True
            break
        step = w.as_points(inst.n, inst.dim)
        # Walk the dyadic step ladder; keep the best strict ratio improvement
        # and stop once gains start shrinking (first-improvement acceptance
        # creeps near an optimum).
        eta = 1.0
        best = None
        for _ in range(_MAX_HALVINGS):
            if eta < params.epsilon2:
                break
            try:
                cand = Instance(inst.points + eta * step, inst.norm)
                state = _ratio_state(cand)
            except ValueError:
                eta *= 0.5  # step collapsed two points; shrink
                continue
            if state[0] > ratio and (best is None or state[0] > best[0][0]):
                best = (state, cand, eta)
            elif best is not None:
                break
            eta *= 0.5
        if best is None:
            converged = True  # step floor reached with no exact improvement
            break
        (ratio, opt_len, x), inst, eta = best
        records.append(TraceRecord(it, ratio, delta, eta))

    trace = SearchTrace(tuple(records), converged, restarts, ratio)
    return inst, trace
