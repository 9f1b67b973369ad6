"""Self-contained LP layer: bounded-variable primal simplex, global min-cut
separation, and the degree-constrained cutting-plane loop for the subtour
relaxation.

No external solver is used; the simplex below is exact enough for the desk
scale this package targets (hundreds of variables, tens of rows).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Edge, EdgeWeightVector, Instance, degree_vector

# Feasibility / cut-violation tolerance.
FEAS_TOL = 1e-7
# Pivot magnitude below which a column entry is treated as zero.
PIVOT_TOL = 1e-10
# Dantzig pricing switches to Bland's rule after this many pivots.
BLAND_AFTER = 1000

_REL = ("<=", "=", ">=")


class LpError(RuntimeError):
    """Simplex stalled or the cutting-plane loop failed to converge."""


@dataclass(frozen=True)
class LinearProgram:
    """min/max c.x subject to rows (a.x rel b) and per-variable bounds.

    bounds entries are (lo, hi) with None for unbounded ends.
    """

    objective: tuple[float, ...]
    rows: tuple[tuple[tuple[float, ...], str, float], ...]
    bounds: tuple[tuple[float | None, float | None], ...]
    maximize: bool = False

    def __post_init__(self) -> None:
        c = tuple(float(v) for v in self.objective)
        n = len(c)
        if n == 0:
            raise ValueError("LP needs at least one variable")
        rows = []
        for coeffs, rel, rhs in self.rows:
            coeffs = tuple(float(v) for v in coeffs)
            if len(coeffs) != n:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {n}")
            if rel not in _REL:
                raise ValueError(f"unknown relation {rel!r}")
            rows.append((coeffs, rel, float(rhs)))
        bounds = []
        for lo, hi in self.bounds:
            lo = None if lo is None else float(lo)
            hi = None if hi is None else float(hi)
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty bound interval ({lo}, {hi})")
            bounds.append((lo, hi))
        if len(bounds) != n:
            raise ValueError(f"{len(bounds)} bound pairs for {n} variables")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "bounds", tuple(bounds))

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: np.ndarray | None
    objective_value: float | None
    iterations: int = 0


# Variable statuses inside the simplex.
_AT_LOWER, _AT_UPPER, _BASIC, _FREE = 0, 1, 2, 3


class _Tableau:
    """Bounded-variable primal simplex working state.

    The basic solution is recomputed from the nonbasic statuses every
    iteration (a dense solve), trading speed for drift-free arithmetic.
    """

    def __init__(self, A: np.ndarray, b: np.ndarray, lo: np.ndarray, hi: np.ndarray):
        self.A = A
        self.b = b
        self.lo = lo
        self.hi = hi
        self.m, self.ncols = A.shape
        self.status = np.full(self.ncols, _AT_LOWER, dtype=np.int8)
        for j in range(self.ncols):
            if lo[j] == -math.inf and hi[j] == math.inf:
                self.status[j] = _FREE
            elif lo[j] == -math.inf:
                self.status[j] = _AT_UPPER
        self.basis = np.zeros(self.m, dtype=int)
        self.pivots = 0

    def nonbasic_values(self) -> np.ndarray:
        x = np.zeros(self.ncols)
        at_lo = self.status == _AT_LOWER
        at_hi = self.status == _AT_UPPER
        x[at_lo] = self.lo[at_lo]
        x[at_hi] = self.hi[at_hi]
        return x

    def solution(self) -> np.ndarray:
        x = self.nonbasic_values()
        if self.m:
            Bmat = self.A[:, self.basis]
            x[self.basis] = 0.0
            x[self.basis] = np.linalg.solve(Bmat, self.b - self.A @ x)
        return x

    def minimize(self, c: np.ndarray, cap: int, tol: float) -> str:
        """Run phases on objective c.  Returns "optimal" or "unbounded"."""
        m = self.m
        while True:
            if self.pivots >= cap:
                raise LpError(f"simplex exceeded {cap} pivots")
            bland = self.pivots >= BLAND_AFTER
            x = self.solution()
            if m:
                Bmat = self.A[:, self.basis]
                y = np.linalg.solve(Bmat.T, c[self.basis])
                d = c - y @ self.A
            else:
                d = c.copy()

            enter, direction = self._price(d, tol, bland)
            if enter is None:
                return "optimal"

            if m:
                w = np.linalg.solve(self.A[:, self.basis], self.A[:, enter])
                delta = -direction * w
            else:
                delta = np.zeros(0)

            # Ratio test: entering variable's own range versus basic bounds.
            t_best = math.inf
            leave = -1  # -1 means bound flip
            leave_to = _AT_LOWER
            if self.lo[enter] != -math.inf and self.hi[enter] != math.inf:
                t_best = self.hi[enter] - self.lo[enter]
            for i in range(m):
                v = self.basis[i]
                dv = delta[i]
                if dv < -PIVOT_TOL and self.lo[v] != -math.inf:
                    tt = (x[v] - self.lo[v]) / (-dv)
                    to = _AT_LOWER
                elif dv > PIVOT_TOL and self.hi[v] != math.inf:
                    tt = (self.hi[v] - x[v]) / dv
                    to = _AT_UPPER
                else:
                    continue
                tt = max(tt, 0.0)
                if tt < t_best - 1e-12:
                    better = True
                elif tt <= t_best + 1e-12 and leave >= 0:
                    # Tie between basic rows: Bland wants the smallest leaving
                    # index, Dantzig the fattest pivot element.
                    if bland:
                        better = v < self.basis[leave]
                    else:
                        better = abs(w[i]) > abs(w[leave])
                elif tt <= t_best + 1e-12 and leave == -1 and tt < t_best:
                    better = True
                else:
                    better = False
                if better:
                    t_best = min(t_best, tt)
                    leave = i
                    leave_to = to

            if t_best == math.inf:
                return "unbounded"

            self.pivots += 1
            if leave == -1:
                # Bound flip, basis unchanged.
                self.status[enter] = _AT_UPPER if direction > 0 else _AT_LOWER
                continue
            out = self.basis[leave]
            self.status[out] = leave_to
            self.basis[leave] = enter
            self.status[enter] = _BASIC

    def _price(self, d: np.ndarray, tol: float, bland: bool) -> tuple[int | None, int]:
        best, best_score, best_dir = None, tol, 0
        for j in range(self.ncols):
            st = self.status[j]
            if st == _BASIC or self.lo[j] == self.hi[j]:
                continue
            dj = d[j]
            if (st == _AT_LOWER or st == _FREE) and dj < -tol:
                score, direction = -dj, +1
            elif (st == _AT_UPPER or st == _FREE) and dj > tol:
                score, direction = dj, -1
            else:
                continue
            if bland:
                return j, direction
            if score > best_score:
                best, best_score, best_dir = j, score, direction
        return best, best_dir


def solve_lp(lp: LinearProgram, *, tol: float = 1e-9) -> LpSolution:
    """Two-phase bounded-variable primal simplex.

    Dantzig pricing with a Bland's-rule fallback after 1000 pivots; raises
    LpError if the pivot count passes 50 * (rows + cols).
    """
    n = lp.num_vars
    m = len(lp.rows)
    cap = 50 * (m + n)

    A = np.zeros((m, n + m))
    b = np.zeros(m)
    lo = np.full(n + m, -math.inf)
    hi = np.full(n + m, math.inf)
    for j, (l, h) in enumerate(lp.bounds):
        lo[j] = -math.inf if l is None else l
        hi[j] = math.inf if h is None else h
    for i, (coeffs, rel, rhs) in enumerate(lp.rows):
        A[i, :n] = coeffs
        A[i, n + i] = 1.0
        b[i] = rhs
        if rel == "<=":
            lo[n + i], hi[n + i] = 0.0, math.inf
        elif rel == ">=":
            lo[n + i], hi[n + i] = -math.inf, 0.0
        else:
            lo[n + i], hi[n + i] = 0.0, 0.0

    c_min = np.zeros(n + m)
    c_min[:n] = lp.objective
    if lp.maximize:
        c_min[:n] *= -1.0

    tab = _Tableau(A, b, lo, hi)

    if m:
        # Phase 1: artificial columns matching the sign of the residual.
        x0 = tab.nonbasic_values()
        resid = b - A @ x0
        art_sign = np.where(resid >= 0, 1.0, -1.0)
        A1 = np.hstack([A, np.diag(art_sign)])
        lo1 = np.concatenate([lo, np.zeros(m)])
        hi1 = np.concatenate([hi, np.full(m, math.inf)])
        tab.A, tab.lo, tab.hi = A1, lo1, hi1
        tab.ncols = n + 2 * m
        tab.status = np.concatenate([tab.status, np.full(m, _BASIC, dtype=np.int8)])
        tab.basis = np.arange(n + m, n + 2 * m)
        c1 = np.zeros(n + 2 * m)
        c1[n + m :] = 1.0
        try:
            tab.minimize(c1, cap, tol)
        except np.linalg.LinAlgError as exc:
            raise LpError(f"singular basis in phase 1: {exc}") from exc
        x = tab.solution()
        if float(x[n + m :].sum()) > FEAS_TOL:
            return LpSolution("infeasible", None, None, tab.pivots)
        _drive_out_artificials(tab, n + m)
        # Pin the artificials at zero for phase 2.
        tab.lo[n + m :] = 0.0
        tab.hi[n + m :] = 0.0
        c2 = np.concatenate([c_min, np.zeros(m)])
    else:
        c2 = c_min

    try:
        outcome = tab.minimize(c2, cap + tab.pivots, tol)
    except np.linalg.LinAlgError as exc:
        raise LpError(f"singular basis in phase 2: {exc}") from exc
    if outcome == "unbounded":
        return LpSolution("unbounded", None, None, tab.pivots)
    x = tab.solution()[:n]
    obj = float(np.dot(lp.objective, x))
    return LpSolution("optimal", x, obj, tab.pivots)


def _drive_out_artificials(tab: _Tableau, first_art: int) -> None:
    """Pivot zero-valued artificials out of the basis where possible."""
    for i in range(tab.m):
        if tab.basis[i] < first_art:
            continue
        Bmat = tab.A[:, tab.basis]
        z = np.linalg.solve(Bmat.T, np.eye(tab.m)[:, i])
        row = z @ tab.A
        picked = -1
        for j in range(first_art):
            if tab.status[j] != _BASIC and abs(row[j]) > 1e-9:
                picked = j
                break
        if picked >= 0:
            tab.status[tab.basis[i]] = _AT_LOWER
            tab.basis[i] = picked
            tab.status[picked] = _BASIC
        # else: redundant row; the artificial stays basic, pinned at zero.


@dataclass(frozen=True)
class Cut:
    """A vertex subset S with the weight of edges crossing (S, V − S)."""

    vertices: frozenset[int]
    value: float

    def crosses(self, e: Edge) -> bool:
        return (e.u in self.vertices) != (e.v in self.vertices)


def _cut_value(x: EdgeWeightVector, S: frozenset[int]) -> float:
    return sum(w for e, w in x.items() if (e.u in S) != (e.v in S))


def _lex_side(S: Sequence[int], n: int) -> tuple[int, ...]:
    inside = tuple(sorted(S))
    outside = tuple(sorted(set(range(n)) - set(S)))
    return min(inside, outside)


def _stoer_wagner(weights: dict[int, dict[int, float]], vertices: list[int]) -> list[tuple[float, list[int]]]:
    """All cut-of-the-phase candidates (value, vertex group)."""
    active = sorted(vertices)
    groups = {v: [v] for v in active}
    W = {u: dict(weights[u]) for u in active}
    out: list[tuple[float, list[int]]] = []
    while len(active) > 1:
        start = active[0]
        conn = {v: W[start].get(v, 0.0) for v in active if v != start}
        prev, last = start, start
        while conn:
            last = max(conn.items(), key=lambda kv: (kv[1], -kv[0]))[0]
            cut_val = conn.pop(last)
            for v, wt in W[last].items():
                if v in conn:
                    conn[v] += wt
            if conn:
                prev = last
        out.append((cut_val, sorted(groups[last])))
        # Merge last into prev.
        groups[prev].extend(groups.pop(last))
        for v, wt in W.pop(last).items():
            if v == prev:
                continue
            W[prev][v] = W[prev].get(v, 0.0) + wt
            W[v][prev] = W[v].get(prev, 0.0) + wt
            W[v].pop(last, None)
        W[prev].pop(last, None)
        for v in W:
            W[v].pop(last, None)
        active.remove(last)
    return out


def separate_subtour(x: EdgeWeightVector, *, tol: float = FEAS_TOL) -> Cut | None:
    """Most-violated subtour cut via a global minimum cut on the support graph.

    Requires fractional degree 2 everywhere (within 1e-6).  Returns the
    minimum cut as a Cut when its value is below 2 - tol, else None.  Ties
    are broken toward the lexicographically smallest vertex subset.
    """
    n = x.n
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    deg = degree_vector(x)
    if np.abs(deg - 2.0).max() > 1e-6:
        worst = int(np.abs(deg - 2.0).argmax())
        raise ValueError(f"vertex {worst} has fractional degree {deg[worst]:.9f}, expected 2")

    weights: dict[int, dict[int, float]] = {i: {} for i in range(n)}
    for e, w in x.items():
        weights[e.u][e.v] = weights[e.u].get(e.v, 0.0) + w
        weights[e.v][e.u] = weights[e.v].get(e.u, 0.0) + w

    # Disconnected support: every component is a zero cut.
    seen: set[int] = set()
    components: list[list[int]] = []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for t in weights[u]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        components.append(sorted(comp))
    if len(components) > 1:
        candidates = [(0.0, comp) for comp in components]
    else:
        candidates = _stoer_wagner(weights, list(range(n)))

    best_val = min(v for v, _ in candidates)
    tied = [S for v, S in candidates if v <= best_val + 1e-12]
    S = frozenset(min((_lex_side(S, n) for S in tied)))
    value = _cut_value(x, S)
    if value < 2.0 - tol:
        return Cut(S, value)
    return None


@dataclass(frozen=True)
class SubtourLpResult:
    """Optimal fractional tour of the subtour relaxation."""

    x: EdgeWeightVector
    cost: float
    cuts: tuple[Cut, ...]
    rounds: int


def solve_subtour_lp(inst: Instance, *, cut_tol: float = FEAS_TOL) -> SubtourLpResult:
    """Cutting-plane solve of the subtour relaxation.

    Starts from degree constraints and 0 <= x_e <= 1, adds the single most
    violated subtour cut per round, and stops when a full separation pass
    finds no cut below 2 - cut_tol.
    """
    n = inst.n
    edges = [Edge(i, j) for i in range(n) for j in range(i + 1, n)]
    col = {e: k for k, e in enumerate(edges)}
    cost = [inst.dist(e.u, e.v) for e in edges]
    bounds = [(0.0, 1.0)] * len(edges)

    rows: list[tuple[list[float], str, float]] = []
    for v in range(n):
        coeffs = [0.0] * len(edges)
        for e in edges:
            if v == e.u or v == e.v:
                coeffs[col[e]] = 1.0
        rows.append((coeffs, "=", 2.0))

    cuts: list[Cut] = []
    rounds = 0
    while True:
        lp = LinearProgram(
            objective=tuple(cost),
            rows=tuple((tuple(r), rel, rhs) for r, rel, rhs in rows),
            bounds=tuple(bounds),
            maximize=False,
        )
        sol = solve_lp(lp)
        if sol.status != "optimal":
            raise LpError(f"subtour relaxation came back {sol.status}")
        x = EdgeWeightVector(n, {e: sol.values[col[e]] for e in edges if sol.values[col[e]] > 1e-12})
        cut = separate_subtour(x, tol=cut_tol)
        if cut is None:
            return SubtourLpResult(x, float(sol.objective_value), tuple(cuts), rounds)
        cuts.append(cut)
        coeffs = [0.0] * len(edges)
        for e in edges:
            if cut.crosses(e):
                coeffs[col[e]] = 1.0
        rows.append((coeffs, ">=", 2.0))
        rounds += 1
        if rounds > 1000:
            raise LpError("cutting-plane loop failed to converge after 1000 rounds")
