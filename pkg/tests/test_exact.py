"""Exact solvers: Held-Karp against brute force, caps, ratio plumbing."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tspgap.core import Instance, NormSpec, Tour, tour_length
from tspgap.exact import (
    BRUTE_FORCE_MAX,
    HELD_KARP_MAX,
    brute_force,
    held_karp,
    integrality_ratio,
)
from tspgap.families import IJK, gen_I2


def test_unit_square_optimum():
    inst = Instance([(0, 0), (1, 0), (1, 1), (0, 1)])
    res = held_karp(inst)
    assert res.length == pytest.approx(4.0, abs=1e-12)
    assert res.tour == Tour([0, 1, 2, 3])
    assert res.method == "held_karp"


def test_brute_force_square():
    inst = Instance([(0, 0), (1, 0), (1, 1), (0, 1)])
    res = brute_force(inst)
    assert res.length == pytest.approx(4.0, abs=1e-12)
    assert res.method == "brute_force"


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(4, 8))
def test_held_karp_agrees_with_brute_force(seed, n):
    rng = np.random.default_rng(seed)
    p = (1.0, 2.0, 3.0)[seed % 3]
    inst = Instance(rng.uniform(size=(n, 2)), NormSpec(p))
    hk = held_karp(inst)
    bf = brute_force(inst)
    assert hk.length == pytest.approx(bf.length, abs=1e-9)
    assert tour_length(inst, hk.tour) == pytest.approx(hk.length, rel=1e-12)


def test_held_karp_invariant_under_relabeling():
    rng = np.random.default_rng(5)
    pts = rng.uniform(size=(9, 2))
    inst = Instance(pts)
    perm = rng.permutation(9)
    relabeled = Instance(pts[perm])
    assert held_karp(inst).length == pytest.approx(held_karp(relabeled).length, rel=1e-12)


def test_size_caps_enforced():
    rng = np.random.default_rng(1)
    big = Instance(rng.uniform(size=(HELD_KARP_MAX + 1, 2)))
    with pytest.raises(ValueError):
        held_karp(big)
    mid = Instance(rng.uniform(size=(BRUTE_FORCE_MAX + 1, 2)))
    with pytest.raises(ValueError):
        brute_force(mid)


def test_returned_tour_attains_reported_length():
    p = IJK(1, 2, 1)
    inst = gen_I2(p)
    res = held_karp(inst)
    assert tour_length(inst, res.tour) == pytest.approx(res.length, rel=1e-12)


def test_integrality_ratio_at_least_one():
    rng = np.random.default_rng(9)
    for _ in range(3):
        inst = Instance(rng.uniform(size=(7, 2)))
        r = integrality_ratio(inst)
        assert isinstance(r, float)
        assert r >= 1.0 - 1e-9


def test_integrality_ratio_known_value():
    assert integrality_ratio(gen_I2(IJK(0, 0, 0))) == pytest.approx(18.0 / 17.0, abs=1e-7)
