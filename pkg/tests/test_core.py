"""Value-object behavior: norms, instances, tours, fractional edge vectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tspgap.core import (
    Edge,
    EdgeWeightVector,
    Instance,
    NormSpec,
    Tour,
    degree_vector,
    distance,
    fractional_cost,
    tour_length,
)


def test_norm_spec_rejects_bad_p():
    with pytest.raises(ValueError):
        NormSpec(0.5)
    with pytest.raises(ValueError):
        NormSpec(float("nan"))
    with pytest.raises(ValueError):
        NormSpec(float("inf"))


def test_distance_p1_p2_p3():
    u, v = (0.0, 0.0), (3.0, 4.0)
    assert distance(NormSpec(1.0), u, v) == 7.0
    assert distance(NormSpec(2.0), u, v) == 5.0
    # (3^3 + 4^3)^(1/3) = 91^(1/3)
    assert distance(NormSpec(3.0), u, v) == pytest.approx(91.0 ** (1.0 / 3.0), rel=1e-15)


def test_edge_normalizes_and_rejects():
    e = Edge(5, 2)
    assert (e.u, e.v) == (2, 5)
    assert e.other(2) == 5 and e.other(5) == 2
    with pytest.raises(ValueError):
        Edge(3, 3)
    with pytest.raises(ValueError):
        Edge(-1, 2)
    with pytest.raises(ValueError):
        e.other(7)


def test_instance_rejects_degenerate_input():
    with pytest.raises(ValueError):
        Instance([(0, 0), (1, 1)])  # n < 3
    with pytest.raises(ValueError):
        Instance([(0, 0), (1, 1), (1, 1)])  # coincident
    with pytest.raises(ValueError):
        Instance([(0, 0), (1, 1), (float("nan"), 0)])
    with pytest.raises(ValueError):
        Instance([(0, 0), (1, 1), (2, 2)], labels=["a", "b"])
    with pytest.raises(ValueError):
        Instance([(0, 0), (1, 1), (2, 2)], labels=["a", "a", "b"])


def test_instance_points_frozen():
    inst = Instance([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        inst.points[0, 0] = 5.0


def test_distance_matrix_matches_pairwise():
    rng = np.random.default_rng(7)
    pts = rng.uniform(size=(6, 3))
    for p in (1.0, 2.0, 2.5):
        inst = Instance(pts, NormSpec(p))
        dmat = inst.distance_matrix()
        for a in range(6):
            for b in range(6):
                assert dmat[a, b] == pytest.approx(inst.dist(a, b), abs=1e-14)


def test_tour_canonical_form_equates_rotations_and_reflections():
    base = Tour([2, 0, 3, 1, 4])
    same = [Tour([0, 3, 1, 4, 2]), Tour([3, 0, 2, 4, 1]), Tour([4, 1, 3, 0, 2])]
    for t in same:
        assert t == base
        assert hash(t) == hash(base)
    assert base.order[0] == 0
    assert base.order[1] < base.order[-1]


def test_tour_rejects_non_permutations():
    with pytest.raises(ValueError):
        Tour([0, 1])
    with pytest.raises(ValueError):
        Tour([0, 1, 1])
    with pytest.raises(ValueError):
        Tour([1, 2, 3])


@given(st.permutations(list(range(7))))
def test_tour_canonicalization_is_rotation_invariant(perm):
    t = Tour(perm)
    rot = Tour(perm[3:] + perm[:3])
    ref = Tour(list(reversed(perm)))
    assert t == rot == ref


def test_edge_weight_vector_validation():
    with pytest.raises(ValueError):
        EdgeWeightVector(4, {Edge(0, 1): 1.5})
    with pytest.raises(ValueError):
        EdgeWeightVector(3, {Edge(0, 5): 0.5})
    with pytest.raises(ValueError):
        EdgeWeightVector(4, [(Edge(0, 1), 0.5), (Edge(1, 0), 0.25)])  # duplicate
    # Tiny LP round-off is clamped, zeros dropped.
    x = EdgeWeightVector(4, {Edge(0, 1): 1.0 + 1e-10, Edge(2, 3): 1e-13})
    assert x[Edge(0, 1)] == 1.0
    assert Edge(2, 3) not in x
    assert len(x) == 1


def test_edge_weight_vector_from_tour_and_degrees():
    t = Tour([0, 1, 2, 3])
    x = EdgeWeightVector.from_tour(t)
    assert sorted(x.support(), key=lambda e: (e.u, e.v)) == [
        Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3),
    ]
    assert np.allclose(degree_vector(x), 2.0)


def test_tour_length_square():
    inst = Instance([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert tour_length(inst, Tour([0, 1, 2, 3])) == pytest.approx(4.0)
    # Crossing diagonal order is longer.
    assert tour_length(inst, Tour([0, 2, 1, 3])) == pytest.approx(2.0 + 2.0 * np.sqrt(2.0))


def test_fractional_cost_matches_tour_length_on_incidence_vectors():
    rng = np.random.default_rng(3)
    inst = Instance(rng.uniform(size=(8, 2)), NormSpec(1.5))
    t = Tour(rng.permutation(8))
    x = EdgeWeightVector.from_tour(t)
    assert fractional_cost(inst, x) == pytest.approx(tour_length(inst, t), rel=1e-14)


@settings(max_examples=30)
@given(st.integers(0, 2**30))
def test_tour_length_reversal_invariant(seed):
    rng = np.random.default_rng(seed)
    inst = Instance(rng.uniform(size=(6, 2)))
    order = list(rng.permutation(6))
    assert tour_length(inst, Tour(order)) == pytest.approx(
        tour_length(inst, Tour(order[::-1])), rel=1e-12
    )


def test_size_mismatch_rejected():
    inst = Instance([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        tour_length(inst, Tour([0, 1, 2, 3]))
    with pytest.raises(ValueError):
        fractional_cost(inst, EdgeWeightVector(5, {Edge(0, 1): 1.0}))
