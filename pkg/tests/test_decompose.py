import numpy as np

from mbmod.connect import components
from mbmod.decompose import decompose, is_closed_subset, split_vector
from mbmod.table import CoordVector, make_vector
from mbmod.gen import GenSpec, generate
from tests.instances import e1, one_way, random_table, zero_table

def test_decompose_e1():
    modules = decompose(e1())
    assert [m.component for m in modules] == [(0, 1), (2,)]
    assert [[(e.i, e.j, e.k) for e in m.entries()] for m in modules] == [[(0, 0, 1)], [(2, 0, 2)]]
    assert modules[0].inherited_basis == ("v0", "v1")
    assert modules[1].representative == 2

def test_decompose_empty_module():
    assert decompose(zero_table(0, 0)) == []

def test_decompose_single_component():
    t = generate(GenSpec(v_size=8, w_size=4, density=0.5, seed=3, target_components=1))
    modules = decompose(t)
    assert len(modules) == 1
    restricted = modules[0].materialize()
    assert restricted.v_size == t.v_size
    assert np.array_equal(restricted.sources, t.sources)
    assert np.array_equal(restricted.targets, t.targets)
    assert restricted.coefficients == t.coefficients

def test_materialize_reindexes():
    module = decompose(e1())[1]
    restricted = module.materialize()
    assert restricted.v_size == 1
    assert restricted.v_labels == ("v2",)
    assert [(e.i, e.j, e.k) for e in restricted.entries()] == [(0, 0, 0)]

def test_closed_subsets():
    t = e1()
    assert is_closed_subset(t, {0, 1})
    assert is_closed_subset(t, {1})
    assert is_closed_subset(t, set())
    assert not is_closed_subset(t, {0})
    assert not is_closed_subset(one_way(), {0})

def test_components_are_closed_partition():
    for seed in range(1000):
        t = random_table(seed, 200, 50, densities=(0.002, 0.01, 0.03))
        decomposition = components(t)
        modules = decompose(t)

        covered = sorted(i for module in modules for i in module.component)
        assert covered == list(range(t.v_size))
        positions = np.sort(np.concatenate([module.entry_positions for module in modules]))
        assert np.array_equal(positions, np.arange(t.entry_count))

        for module in modules:
            assert is_closed_subset(t, module.component)
        if decomposition.count >= 2:
            # a proper nonempty closed subset, so the module is not minimal
            assert 0 < len(decomposition.blocks[0]) < t.v_size

def test_restricted_tables_are_connected():
    for seed in range(100):
        t = random_table(seed, 40, 6)
        for module in decompose(t):
            restricted = module.materialize()
            assert restricted.entry_count == module.entry_count
            assert components(restricted).count == 1

def test_split_vector():
    t = e1()
    v = make_vector(t, "V", [(0, 1), (1, 2), (2, 3)])
    parts = split_vector(components(t), v)
    assert parts == [make_vector(t, "V", [(0, 1), (1, 2)]), make_vector(t, "V", [(2, 3)])]
    assert parts[0] + parts[1] == v
    assert split_vector(components(t), CoordVector("V")) == [CoordVector("V"), CoordVector("V")]
