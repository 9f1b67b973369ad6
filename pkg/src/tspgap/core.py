"""Shared value types: p-norm instances, tours, and fractional edge vectors.

Everything here is an immutable value object validated at construction time.
All arithmetic is plain float64; comparison tolerances live with the callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# Pairs closer than this are treated as coincident and rejected.
COINCIDENT_TOL = 1e-12


@dataclass(frozen=True)
class NormSpec:
    """A p-norm on R^d, p >= 1.  p=1 is rectilinear, p=2 Euclidean."""

    p: float = 2.0

    def __post_init__(self) -> None:
        p = float(self.p)
        if not np.isfinite(p) or p < 1.0:
            raise ValueError(f"p-norm requires finite p >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)


def _norm(diff: np.ndarray, p: float) -> float:
    a = np.abs(diff)
    if p == 1.0:
        return float(a.sum())
    if p == 2.0:
        return float(np.sqrt(np.dot(a, a)))
    return float((a**p).sum() ** (1.0 / p))


def distance(norm: NormSpec, u: Sequence[float], v: Sequence[float]) -> float:
    """Distance between two points under the given norm."""
    return _norm(np.asarray(u, dtype=float) - np.asarray(v, dtype=float), norm.p)


@dataclass(frozen=True)
class Edge:
    """Undirected edge on vertex indices, stored with u < v."""

    u: int
    v: int

    def __post_init__(self) -> None:
        u, v = int(self.u), int(self.v)
        if u == v:
            raise ValueError(f"self-loop edge ({u}, {v})")
        if u < 0:
            raise ValueError(f"negative vertex index in edge ({u}, {v})")
        if u > v:
            u, v = v, u
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __iter__(self) -> Iterator[int]:
        return iter((self.u, self.v))

    def other(self, w: int) -> int:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise ValueError(f"vertex {w} not on edge ({self.u}, {self.v})")


class Instance:
    """n points in R^d together with the norm used to measure edges.

    Rejects n < 3, coincident points, non-finite coordinates, and duplicate
    labels.  The coordinate array is frozen after construction.
    """

    __slots__ = ("points", "norm", "labels")

    def __init__(
        self,
        points: Sequence[Sequence[float]] | np.ndarray,
        norm: NormSpec = NormSpec(2.0),
        labels: Sequence[str] | None = None,
    ):
        pts = np.array(points, dtype=float)
        if pts.ndim != 2:
            raise ValueError(f"points must be an (n, d) array, got shape {pts.shape}")
        n, d = pts.shape
        if n < 3:
            raise ValueError(f"instance needs at least 3 points, got {n}")
        if d < 1:
            raise ValueError("points need at least one coordinate")
        if not np.all(np.isfinite(pts)):
            raise ValueError("non-finite coordinate in instance")
        # O(n^2) coincidence scan; fine at the solvable sizes (n <= a few hundred).
        for i in range(n):
            diffs = np.abs(pts[i + 1 :] - pts[i]).max(axis=1) if i + 1 < n else None
            if diffs is not None and diffs.size and diffs.min() <= COINCIDENT_TOL:
                j = i + 1 + int(diffs.argmin())
                raise ValueError(f"coincident points {i} and {j}")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} points")
            if len(set(labels)) != n:
                raise ValueError("duplicate labels")
        pts.setflags(write=False)
        self.points = pts
        self.norm = norm
        self.labels = labels

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def dist(self, i: int, j: int) -> float:
        return _norm(self.points[i] - self.points[j], self.norm.p)

    def distance_matrix(self) -> np.ndarray:
        """Full symmetric (n, n) distance matrix, zero diagonal."""
        diff = np.abs(self.points[:, None, :] - self.points[None, :, :])
        p = self.norm.p
        if p == 1.0:
            return diff.sum(axis=2)
        if p == 2.0:
            return np.sqrt((diff * diff).sum(axis=2))
        return (diff**p).sum(axis=2) ** (1.0 / p)

    def index_of(self, label: str) -> int:
        if self.labels is None:
            raise ValueError("instance has no labels")
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, d={self.dim}, p={self.norm.p})"


class Tour:
    """Hamiltonian cycle stored in canonical form.

    Canonical form: rotated so vertex order starts at the smallest index,
    reflected so the second entry is smaller than the last.  Two sequences
    describing the same cycle therefore compare equal.
    """

    __slots__ = ("order",)

    def __init__(self, order: Sequence[int]):
        seq = tuple(int(i) for i in order)
        n = len(seq)
        if n < 3:
            raise ValueError(f"tour needs at least 3 vertices, got {n}")
        if sorted(seq) != list(range(n)):
            raise ValueError("tour is not a permutation of 0..n-1")
        k = seq.index(min(seq))
        seq = seq[k:] + seq[:k]
        if seq[1] > seq[-1]:
            seq = (seq[0],) + tuple(reversed(seq[1:]))
        self.order = seq

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> Iterator[Edge]:
        o = self.order
        for i in range(len(o)):
            yield Edge(o[i], o[(i + 1) % len(o)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tour) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"Tour{self.order}"


class EdgeWeightVector:
    """Sparse edge weights in [0, 1] over n vertices; zero entries dropped.

    Values within 1e-9 outside [0, 1] (LP round-off) are clamped.
    """

    __slots__ = ("n", "_w")

    _BOUND_TOL = 1e-9
    _DROP_TOL = 1e-12

    def __init__(self, n: int, weights: Mapping[Edge, float] | Iterable[tuple[Edge, float]]):
        n = int(n)
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        items = weights.items() if isinstance(weights, Mapping) else weights
        w: dict[Edge, float] = {}
        for e, val in items:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if e.v >= n:
                raise ValueError(f"edge {e} outside vertex range 0..{n - 1}")
            val = float(val)
            if not (-self._BOUND_TOL <= val <= 1.0 + self._BOUND_TOL):
                raise ValueError(f"weight {val} on {e} outside [0, 1]")
            val = min(max(val, 0.0), 1.0)
            if val <= self._DROP_TOL:
                continue
            if e in w:
                raise ValueError(f"duplicate edge {e}")
            w[e] = val
        self.n = n
        self._w = w

    @classmethod
    def from_tour(cls, tour: Tour) -> "EdgeWeightVector":
        return cls(tour.n, {e: 1.0 for e in tour.edges()})

    def __getitem__(self, e: Edge) -> float:
        return self._w.get(e, 0.0)

    def __contains__(self, e: Edge) -> bool:
        return e in self._w

    def __len__(self) -> int:
        return len(self._w)

    def items(self) -> Iterator[tuple[Edge, float]]:
        return iter(sorted(self._w.items(), key=lambda kv: (kv[0].u, kv[0].v)))

    def support(self) -> list[Edge]:
        return sorted(self._w, key=lambda e: (e.u, e.v))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeWeightVector) and self._w == other._w

    def __repr__(self) -> str:
        return f"EdgeWeightVector({len(self._w)} edges)"


def tour_length(inst: Instance, tour: Tour) -> float:
    if tour.n != inst.n:
        raise ValueError(f"tour on {tour.n} vertices, instance has {inst.n}")
    o = tour.order
    pts = inst.points
    p = inst.norm.p
    total = 0.0
    for i in range(len(o)):
        total += _norm(pts[o[i]] - pts[o[(i + 1) % len(o)]], p)
    return total


def fractional_cost(inst: Instance, x: EdgeWeightVector) -> float:
    """Weighted edge cost sum(x_e * c_e) of a fractional tour vector."""
    if x.n != inst.n:
        raise ValueError(f"vector on {x.n} vertices, instance has {inst.n}")
    total = 0.0
    for e, w in x.items():
        total += w * inst.dist(e.u, e.v)
    return total


def degree_vector(x: EdgeWeightVector) -> np.ndarray:
    """Fractional degree sum(x_e, e incident to v) for each vertex."""
    deg = np.zeros(x.n)
    for e, w in x.items():
        deg[e.u] += w
        deg[e.v] += w
    return deg
