"""Euclidean embeddings with high integrality ratio via the ellipse
construction: inner vertices on the x-axis, outer vertices on an ellipse
with foci on the x-axis, placed so that every pseudo-tour shortcut ties.

The construction fixes the four corners at (±b, ±1), chains inner vertices
left to right by closing tie equations against the left-anchor shortcut,
chains outer vertices along the ellipse the same way, and finally picks the
corner half-width b that maximizes the resulting ratio.  Symmetry in both
axes is built in, so only the left half of each line is ever solved for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Instance, NormSpec, fractional_cost, tour_length
from .families.ijk import IJK, fractional_xijk, labeled_vertices, pseudo_tours, shortcut_tour

DEFAULT_EPS = 1e-9

_COARSE_SAMPLES = 72
_FALLBACK_SAMPLES = 10_000
_B_RANGE = (0.05, 8.0)


class EllipseConstructionError(RuntimeError):
    """No parameter value yields a closed construction."""


class InnerPlacementError(EllipseConstructionError):
    """Inner-vertex closure has no root for this half-width."""


class OuterPlacementError(EllipseConstructionError):
    """No focal abscissa closes the outer chain; the half-width b sits
    outside the constructible window."""


class _BracketError(Exception):
    pass


@dataclass(frozen=True)
class EllipseParams:
    """Corner half-width b (corners at (±b, ±1)), focal abscissa e
    (foci (±e, 0); zero when there are no free outer vertices), and the
    abscissa f of the outermost inner vertices (±f, 0)."""

    b: float
    e: float
    f: float

    def __post_init__(self) -> None:
        if not self.b > 0:
            raise ValueError("b must be positive")
        if not self.e >= 0:
            raise ValueError("e must be nonnegative")
        if not 0 < self.f < self.b:
            raise ValueError("f must lie strictly between 0 and b")


@dataclass(frozen=True)
class ConstructionResult:
    instance: Instance
    params: EllipseParams
    ratio: float
    inner_residual: float
    outer_residual: float


def _bisect(fn: Callable[[float], float], lo: float, hi: float, iters: int = 100) -> float:
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise _BracketError
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fhi > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


# -- inner vertices --------------------------------------------------------


def diff_inner(h: int, ys: Sequence[float], b: float) -> float:
    """Shortcut-length difference between the middle-gap pseudo-tour at h
    and the left anchor, as a function of the inner abscissas.

    ys lists the abscissas of the inner line left to right (the last entry
    is the rightmost inner vertex); entries h and h+1 are the ones the tie
    equation relates.  Zero means the two shortcuts tie; the value is
    monotone increasing in ys[h+1].
    """
    y_h, y_next, y_last = ys[h], ys[h + 1], ys[-1]
    return (
        math.hypot(b + y_last, 1.0)          # X0 to rightmost inner vertex
        + 2.0                                 # right corner edge
        + (y_next - y_h)                      # inner step
        - math.hypot(b + y_h, 1.0)            # X0 to Y_h
        - math.hypot(b - y_next, 1.0)         # Y_{h+1} to top right corner
        - math.hypot(b - y_last, 1.0)         # X_{i+1} to rightmost inner
    )


def _inner_attempt(j: int, b: float, f: float) -> tuple[float, list[float]]:
    """Chain the left inner half for a trial f; return (closure residual,
    full symmetric abscissa list)."""
    xs: list[float | None] = [None] * (j + 2)
    xs[0], xs[j + 1] = -f, f
    c_right = math.hypot(b + f, 1.0) + 2.0 - math.hypot(b - f, 1.0)
    half = j // 2
    for h in range(half):
        y_h = xs[h]
        c = c_right - math.hypot(b + y_h, 1.0)
        t = _bisect(lambda t: c + (t - y_h) - math.hypot(b - t, 1.0), y_h, b)
        xs[h + 1] = t
    if j % 2 == 1:
        xs[(j + 1) // 2] = 0.0
    for s in range(1, j + 1):
        if xs[j + 1 - s] is None:
            xs[j + 1 - s] = -xs[s]
    full = [float(v) for v in xs]
    resid = diff_inner(half, full, b)
    return resid, full


def inner_vertices(i: int, j: int, b: float, eps: float = DEFAULT_EPS) -> list[tuple[float, float]]:
    """Place the inner vertices on the x-axis, symmetric about 0, so every
    middle-gap tie equation closes within eps.

    The outermost abscissa f is found by binary search (the closure
    residual is monotone in f), falling back to a dense grid scan when the
    bracket assumption fails.
    """
    del i  # the inner chain sees only the corners (±b, ±1)
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo, hi = b * 1e-9, b * (1 - 1e-9)

    def resid_of(f: float) -> float:
        return _inner_attempt(j, b, f)[0]

    samples: list[tuple[float, float]] = []
    for s in range(_COARSE_SAMPLES):
        cand = lo + (hi - lo) * (s + 0.5) / _COARSE_SAMPLES
        try:
            samples.append((cand, resid_of(cand)))
        except _BracketError:
            continue
    bracket = None
    for (f1, r1), (f2, r2) in zip(samples, samples[1:]):
        if r1 == 0.0 or (r1 > 0) != (r2 > 0):
            bracket = (f1, f2)
            break
    if bracket is None:
        raise InnerPlacementError(f"inner closure residual does not change sign for b = {b}")
    try:
        f = _bisect(resid_of, bracket[0], bracket[1])
    except _BracketError:
        f = 0.5 * (bracket[0] + bracket[1])
    if abs(resid_of(f)) > eps:
        # Monotonicity let the bisection down; fall back to a dense scan.
        best = (math.inf, None)
        for s in range(_FALLBACK_SAMPLES):
            cand = lo + (hi - lo) * (s + 0.5) / _FALLBACK_SAMPLES
            try:
                r = abs(resid_of(cand))
            except _BracketError:
                continue
            if r < best[0]:
                best = (r, cand)
        if best[1] is None or best[0] > eps:
            raise InnerPlacementError(f"no inner closure for b = {b}")
        f = best[1]
    resid, xs = _inner_attempt(j, b, f)
    if abs(resid) > eps:
        raise InnerPlacementError(f"inner residual {resid} above eps at b = {b}")
    return [(x, 0.0) for x in xs]


# -- outer vertices --------------------------------------------------------


def _ellipse_axes(b: float, e: float) -> tuple[float, float]:
    """Semi-axes of the ellipse through (±b, ±1) with foci (±e, 0)."""
    A = 0.5 * (math.hypot(b + e, 1.0) + math.hypot(b - e, 1.0))
    return A, math.sqrt(A * A - e * e)


def diff_outer(h: int, zs: Sequence[tuple[float, float]], f: float, b: float) -> float:
    """Shortcut-length difference between the top-gap pseudo-tour at h and
    the left anchor: zero when they tie.

    zs lists the top-line coordinates left to right; entries h and h+1 are
    related by the tie equation; f is the abscissa of the outermost inner
    vertices.
    """
    z_h, z_next = zs[h], zs[h + 1]
    return (
        math.hypot(b - f, 1.0)                                # X0 to Y0
        + math.hypot(b + f, 1.0)                              # Z0 to rightmost inner
        - 2.0                                                 # left corner edge
        - math.hypot(z_h[0] + f, z_h[1])                      # Z_h to Y0
        - math.hypot(z_next[0] - f, z_next[1])                # Z_{h+1} to rightmost inner
        + math.hypot(z_next[0] - z_h[0], z_next[1] - z_h[1])  # top step
    )


def _outer_attempt(
    i: int, b: float, f: float, e: float
) -> tuple[float, list[tuple[float, float]], float]:
    """Chain the left outer half along the ellipse for a trial e; return
    (closure residual, full top line, abscissa of the last chained vertex).
    """
    A, B = _ellipse_axes(b, e)
    theta_corner = math.atan2(1.0 / B, b / A)
    zs: list[tuple[float, float] | None] = [None] * (i + 2)
    zs[0], zs[i + 1] = (-b, 1.0), (b, 1.0)
    c_left = math.hypot(b - f, 1.0) + math.hypot(b + f, 1.0) - 2.0
    theta_h = math.pi - theta_corner
    half = i // 2
    for h in range(half):
        z_h = zs[h]
        c = c_left - math.hypot(z_h[0] + f, z_h[1])

        def tie(theta: float) -> float:
            px, py = A * math.cos(theta), B * math.sin(theta)
            return (
                c
                + math.hypot(px - z_h[0], py - z_h[1])
                - math.hypot(px - f, py)
            )

        try:
            theta = _bisect(tie, theta_corner, theta_h)
        except _BracketError:
            raise OuterPlacementError(f"no tie point on the arc at h = {h}, e = {e}")
        zs[h + 1] = (A * math.cos(theta), B * math.sin(theta))
        theta_h = theta
    if i % 2 == 1:
        zs[(i + 1) // 2] = (0.0, B)
    for s in range(1, i + 1):
        if zs[i + 1 - s] is None:
            x, y = zs[s]
            zs[i + 1 - s] = (-x, y)
    full = [(float(x), float(y)) for x, y in zs]
    resid = diff_outer(half, full, f, b)
    return resid, full, full[half][0]


def outer_vertices(
    i: int, j: int, b: float, inner: Sequence[tuple[float, float]], eps: float = DEFAULT_EPS
) -> tuple[float, list[tuple[float, float]]]:
    """Place the top-line vertices on the ellipse through the corners so
    every top-gap tie equation closes within eps; returns (e, top line).

    The focal abscissa e is bracketed by a coarse scan over configurations
    whose last chained vertex stays left of the y-axis, then bisected;
    failure to bracket falls back to a dense scan, and a miss there reports
    the half-width b as outside the constructible window.
    """
    del j  # the outer chain sees the inner line only through f = inner[-1]
    if eps <= 0:
        raise ValueError("eps must be positive")
    f = float(inner[-1][0])
    if i == 0:
        return 0.0, [(-b, 1.0), (b, 1.0)]
    e_cap = 4.0 * (b + 1.0)

    def attempt(e: float) -> tuple[float, list[tuple[float, float]], float]:
        return _outer_attempt(i, b, f, e)

    samples: list[tuple[float, float]] = []
    for s in range(_COARSE_SAMPLES):
        e = e_cap * (s + 0.5) / _COARSE_SAMPLES
        try:
            resid, _, x_last = attempt(e)
        except OuterPlacementError:
            continue
        if x_last >= 0:
            continue
        samples.append((e, resid))
    bracket = None
    for (e1, r1), (e2, r2) in zip(samples, samples[1:]):
        if r1 == 0.0 or (r1 > 0) != (r2 > 0):
            bracket = (e1, e2)
            break
    if bracket is None:
        raise OuterPlacementError(
            f"outer closure residual does not change sign over e at b = {b}"
        )
    try:
        e_star = _bisect(lambda e: attempt(e)[0], bracket[0], bracket[1])
    except (_BracketError, OuterPlacementError):
        e_star = None
    if e_star is None or abs(attempt(e_star)[0]) > eps:
        # Monotonicity let the bisection down; fall back to a dense scan.
        best = (math.inf, None)
        for s in range(_FALLBACK_SAMPLES):
            e = e_cap * (s + 0.5) / _FALLBACK_SAMPLES
            try:
                resid, _, x_last = attempt(e)
            except OuterPlacementError:
                continue
            if x_last >= 0:
                continue
            if abs(resid) < best[0]:
                best = (abs(resid), e)
        if best[1] is None or best[0] > eps:
            raise OuterPlacementError(f"no focal abscissa closes the outer chain at b = {b}")
        e_star = best[1]
    resid, zline, _ = attempt(e_star)
    if abs(resid) > eps:
        raise OuterPlacementError(f"outer residual {resid} above eps at b = {b}")
    return float(e_star), zline


# -- full construction -----------------------------------------------------


def _assemble(
    i: int, j: int, inner: Sequence[tuple[float, float]], zline: Sequence[tuple[float, float]]
) -> Instance:
    points = [(x, -y) for x, y in zline]          # bottom line mirrors the top
    points += [(x, y) for x, y in inner]
    points += [(x, y) for x, y in zline]
    lv = labeled_vertices(IJK(i, j, i))
    return Instance(points, NormSpec(2.0), labels=lv.labels)


def _evaluate(i: int, j: int, b: float, eps: float) -> tuple[float, ConstructionResult]:
    inner = inner_vertices(i, j, b, eps)
    e, zline = outer_vertices(i, j, b, inner, eps)
    inst = _assemble(i, j, inner, zline)
    p = IJK(i, j, i)
    x = fractional_xijk(p)
    anchor = next(pt for pt in pseudo_tours(p) if pt.tag == "middle_left")
    ratio = tour_length(inst, shortcut_tour(anchor, inst)) / fractional_cost(inst, x)
    ys = [pt[0] for pt in inner]
    inner_res = max(abs(diff_inner(h, ys, b)) for h in range(j // 2 + 1))
    outer_res = max(abs(diff_outer(h, zline, ys[-1], b)) for h in range(i // 2 + 1))
    params = EllipseParams(b, e, ys[-1])
    return ratio, ConstructionResult(inst, params, ratio, inner_res, outer_res)


def _construct_flat(j: int, eps: float) -> ConstructionResult:
    """No free outer vertices: the corner half-width itself is pinned by
    the single outer tie equation, so root-find it instead of optimizing."""

    def resid(b: float) -> float:
        inner = inner_vertices(0, j, b, eps)
        return diff_outer(0, [(-b, 1.0), (b, 1.0)], inner[-1][0], b)

    lo, hi = _B_RANGE
    samples = []
    for s in range(_COARSE_SAMPLES * 4):
        b = lo + (hi - lo) * (s + 0.5) / (_COARSE_SAMPLES * 4)
        try:
            samples.append((b, resid(b)))
        except InnerPlacementError:
            continue
    for (b1, r1), (b2, r2) in zip(samples, samples[1:]):
        if r1 == 0.0 or (r1 > 0) != (r2 > 0):
            b_star = _bisect(resid, b1, b2)
            return _evaluate(0, j, b_star, eps)[1]
    raise EllipseConstructionError(f"no corner half-width closes the flat construction (j = {j})")


def ellipse_construct(i: int, j: int, eps: float = DEFAULT_EPS) -> ConstructionResult:
    """Build the 2i+j+6 point construction maximizing the tied-shortcut
    ratio over the corner half-width b.

    The ratio is concave in b over the constructible window, so a coarse
    feasibility scan brackets the maximum and golden-section search closes
    in; if the window's edges interfere, a dense grid scan substitutes.
    """
    if i < 0 or j < 0:
        raise ValueError("need i, j >= 0")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if i == 0:
        return _construct_flat(j, eps)

    cache: dict[float, tuple[float, ConstructionResult]] = {}

    def ratio_at(b: float) -> float:
        if b not in cache:
            cache[b] = _evaluate(i, j, b, eps)
        return cache[b][0]

    lo, hi = _B_RANGE
    feasible: list[tuple[float, float]] = []
    for s in range(_COARSE_SAMPLES):
        b = lo + (hi - lo) * (s + 0.5) / _COARSE_SAMPLES
        try:
            feasible.append((b, ratio_at(b)))
        except EllipseConstructionError:
            continue
    if not feasible:
        for s in range(_COARSE_SAMPLES * 16):
            b = lo + (hi - lo) * (s + 0.5) / (_COARSE_SAMPLES * 16)
            try:
                feasible.append((b, ratio_at(b)))
            except EllipseConstructionError:
                continue
    if not feasible:
        raise EllipseConstructionError(f"no feasible corner half-width for (i, j) = ({i}, {j})")
    k_best = max(range(len(feasible)), key=lambda k: feasible[k][1])
    blo = feasible[max(0, k_best - 1)][0]
    bhi = feasible[min(len(feasible) - 1, k_best + 1)][0]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    try:
        a, d = blo, bhi
        x1 = d - invphi * (d - a)
        x2 = a + invphi * (d - a)
        f1, f2 = ratio_at(x1), ratio_at(x2)
        while d - a > 1e-10:
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + invphi * (d - a)
                f2 = ratio_at(x2)
            else:
                d, x2, f2 = x2, x1, f1
                x1 = d - invphi * (d - a)
                f1 = ratio_at(x1)
        b_star = x1 if f1 >= f2 else x2
    except EllipseConstructionError:
        b_star, best_r = feasible[k_best]
        for s in range(_FALLBACK_SAMPLES):
            b = blo + (bhi - blo) * (s + 0.5) / _FALLBACK_SAMPLES
            try:
                r = ratio_at(b)
            except EllipseConstructionError:
                continue
            if r > best_r:
                best_r, b_star = r, b
    return cache[b_star][1]
