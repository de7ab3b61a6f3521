import pytest

from mbmod.connect import components
from mbmod.errors import SizeLimitExceeded
from mbmod.minimal import minimal_closed_subsets
from mbmod.oracle import oracle_components, oracle_connected, oracle_minimal_closed, oracle_relation
from tests.instances import chain_table, e1, random_table, two_cycle, zero_table

def test_oracle_connected_e1():
    t = e1()
    assert oracle_connected(t, 0, 1)
    assert oracle_connected(t, 1, 0)
    assert oracle_connected(t, 2, 2)
    assert not oracle_connected(t, 0, 2)

def test_oracle_components_examples():
    assert oracle_components(e1()).blocks == ((0, 1), (2,))
    assert oracle_components(zero_table(4)).blocks == ((0,), (1,), (2,), (3,))
    assert oracle_components(chain_table()).blocks == ((0, 1, 2), (3,))

def test_oracle_minimal_closed_examples():
    assert oracle_minimal_closed(e1()) == [(1,), (2,)]
    assert oracle_minimal_closed(two_cycle()) == [(0, 1)]
    assert oracle_minimal_closed(zero_table(0, 0)) == []

def test_oracle_size_limit():
    with pytest.raises(SizeLimitExceeded) as e:
        oracle_components(zero_table(21))
    assert (e.value.size, e.value.limit) == (21, 20)
    with pytest.raises(SizeLimitExceeded):
        oracle_minimal_closed(zero_table(21))

def test_components_agree_with_oracle():
    for seed in range(500):
        t = random_table(seed, 10, 4)
        assert oracle_components(t) == components(t), f"seed {seed}"

def test_connected_agrees_with_oracle():
    for seed in range(50):
        t = random_table(seed, 8, 3)
        decomposition = components(t)
        for a in range(t.v_size):
            for b in range(t.v_size):
                assert oracle_connected(t, a, b) == decomposition.same_block(a, b)

def test_minimal_closed_agrees_with_oracle():
    for seed in range(300):
        t = random_table(seed, 12, 4)
        assert oracle_minimal_closed(t) == minimal_closed_subsets(t), f"seed {seed}"

def test_oracle_relation_e1():
    assert oracle_relation(e1()) == [frozenset({0, 1}), frozenset({0, 1}), frozenset({2})]

def test_connection_is_an_equivalence():
    for seed in range(200):
        t = random_table(seed, 10, 4)
        relation = oracle_relation(t)
        for i in range(t.v_size):
            assert i in relation[i]
            for k in relation[i]:
                assert i in relation[k]
                assert relation[k] <= relation[i]
