from fractions import Fraction

import numpy as np
import pytest

from mbmod import kernels
from mbmod.connect import ConnectionWitness, SupportGraph, components, concatenate_witness, find_witness, reverse_witness, \
    verify_witness
from mbmod.errors import NotConnected
from mbmod.minimal import is_minimal, minimal_closed_subsets
from mbmod.star import WIndexOrBar
from mbmod.table import build_table
from tests.instances import chain_table, e1, random_table, rationals, zero_table

forward = WIndexOrBar(0)
barred = WIndexOrBar(0, True)

def test_components_e1():
    decomposition = components(e1())
    assert decomposition.count == 2
    assert decomposition.blocks == ((0, 1), (2,))
    assert decomposition.representatives == (0, 2)
    assert decomposition.same_block(0, 1)
    assert not decomposition.same_block(1, 2)

def test_components_without_entries():
    assert components(zero_table(4)).blocks == ((0,), (1,), (2,), (3,))
    assert components(zero_table(0)).count == 0

def test_components_chain():
    assert components(chain_table()).blocks == ((0, 1, 2), (3,))

def test_witness_e1():
    t = e1()
    assert find_witness(t, 0, 1) == ConnectionWitness(0, 1, (forward,))
    assert find_witness(t, 1, 0) == ConnectionWitness(1, 0, (barred,))
    assert find_witness(t, 2, 2) == ConnectionWitness(2, 2)
    with pytest.raises(NotConnected):
        find_witness(t, 0, 2)

def test_witness_chain():
    t = chain_table()
    w = find_witness(t, 0, 2)
    assert w.steps == (WIndexOrBar(0), WIndexOrBar(1))
    back = reverse_witness(w)
    assert back == ConnectionWitness(2, 0, (WIndexOrBar(1, True), WIndexOrBar(0, True)))
    assert verify_witness(t, w)
    assert verify_witness(t, back)

def test_verify_rejects():
    t = e1()
    assert not verify_witness(t, ConnectionWitness(0, 2, (forward,)))
    assert not verify_witness(t, ConnectionWitness(0, 1))
    assert not verify_witness(t, ConnectionWitness(0, 1, (WIndexOrBar(3),)))
    # dead end after the first step
    assert not verify_witness(t, ConnectionWitness(0, 1, (forward, forward)))

def test_self_cycle_witness():
    t = e1()
    assert verify_witness(t, ConnectionWitness(2, 2, (forward,)))
    assert verify_witness(t, ConnectionWitness(0, 0, (forward, barred)))

def test_support_graph_neighbors():
    graph = SupportGraph(e1())
    assert graph.neighbors(0) == [(1, forward)]
    assert graph.neighbors(1) == [(0, barred)]
    assert graph.neighbors(2) == [(2, forward), (2, barred)]

def test_concatenate_mismatch():
    with pytest.raises(ValueError):
        concatenate_witness(ConnectionWitness(0, 1), ConnectionWitness(2, 3))

def test_equivalence_on_random_pairs():
    checked = 0
    seed = 0
    while checked < 200:
        t = random_table(seed, 25, 5, densities=(0.1, 0.2, 0.3))
        seed += 1
        rng = np.random.default_rng(seed)
        decomposition = components(t)
        for block in decomposition.blocks:
            if len(block) < 2:
                continue
            a, b, c = (int(i) for i in rng.choice(block, size=3))
            first = find_witness(t, a, b)
            second = find_witness(t, b, c)
            assert verify_witness(t, first)
            assert verify_witness(t, reverse_witness(first))
            assert reverse_witness(reverse_witness(first)) == first
            assert verify_witness(t, concatenate_witness(first, second))
            checked += 1

def test_witness_exists_iff_same_block():
    for seed in range(30):
        t = random_table(seed, 12, 3)
        decomposition = components(t)
        for a in range(t.v_size):
            for b in range(t.v_size):
                if decomposition.same_block(a, b):
                    assert verify_witness(t, find_witness(t, a, b))
                else:
                    with pytest.raises(NotConnected):
                        find_witness(t, a, b)

def test_invariant_under_scaling():
    for seed in range(100):
        t = random_table(seed, 25, 5, modulus=None if seed % 2 == 0 else 101)
        factor = Fraction(-7, 3) if t.field.is_rational else 2
        scaled = t.scaled(factor)
        assert components(scaled) == components(t)
        assert minimal_closed_subsets(scaled) == minimal_closed_subsets(t)
        assert is_minimal(scaled) == is_minimal(t)

def test_components_with_deep_union_forest():
    # unions 0-1, 2-3, then 3-1 leave 1 two levels below its root
    t = build_table([(0, 0, 1, 1), (2, 0, 3, 1), (3, 1, 1, 1)], 4, 2, rationals)
    assert components(t).blocks == ((0, 1, 2, 3),)
    assert verify_witness(t, find_witness(t, 0, 2))

def test_roots_follow_chains():
    parent = np.array([0, 0, 1, 2, 3, 5], dtype=np.int64)
    assert kernels._roots(parent).tolist() == [0, 0, 0, 0, 0, 5]

def test_components_of_long_paths():
    n = 2000
    left = np.arange(n - 1, dtype=np.int64)
    labels, count = kernels.component_labels(n, left, left + 1)
    assert count == 1 and not labels.any()

    # pairs first, then pairs of pairs, builds a forest of rank log n
    edges = [(i, i + step) for step in (1, 2, 4, 8, 16, 32) for i in range(0, 64, 2 * step)]
    labels, count = kernels.component_labels(64, np.array([a for a, _ in edges]), np.array([b for _, b in edges]))
    assert count == 1
