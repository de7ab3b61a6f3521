from fractions import Fraction

import pytest
from pydantic import ValidationError

from mbmod.connect import components
from mbmod.errors import ComponentCountMismatch, Unsatisfiable
from mbmod.gen import GenSpec, generate, symmetrize
from mbmod.minimal import check_star_multiplicative
from mbmod.scalar import FieldSpec
from mbmod.table import build_table
from tests.instances import e1, zero_table
from utils.config import config

def test_single_entry():
    t = generate(GenSpec(v_size=1, w_size=1, density=1, seed=0))
    assert t.entry_count == 1
    entry = t.entry(0)
    assert (entry.i, entry.j, entry.k) == (0, 0, 0)
    assert not entry.c.is_zero()

def test_zero_density():
    t = generate(GenSpec(v_size=100, w_size=5, density=0, seed=1))
    assert t.entry_count == 0
    assert components(t).count == 100

def test_full_density():
    t = generate(GenSpec(v_size=30, w_size=4, density=1, seed=2))
    assert t.entry_count == 120

def test_target_components():
    t = generate(GenSpec(v_size=20, w_size=3, density=0.5, seed=42, target_components=4))
    assert components(t).count == 4

def test_unsatisfiable():
    with pytest.raises(Unsatisfiable) as e:
        generate(GenSpec(v_size=10, w_size=1, density=0, seed=0, target_components=1))
    assert isinstance(e.value.__cause__, ComponentCountMismatch)
    assert (e.value.__cause__.found, e.value.__cause__.wanted) == (10, 1)

def test_deterministic():
    spec = GenSpec(v_size=50, w_size=6, density=0.3, seed=7)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec(v_size=50, w_size=6, density=0.3, seed=8))

def test_independent_of_chunk_size(monkeypatch: pytest.MonkeyPatch):
    specs = [GenSpec(v_size=50, w_size=6, density=0.3, seed=7),
             GenSpec(v_size=40, w_size=3, density=0.4, seed=9, modulus=13),
             GenSpec(v_size=30, w_size=3, density=0.5, seed=5, target_components=3)]
    small_chunks = [generate(spec) for spec in specs]
    monkeypatch.setitem(config["generator"], "chunk_rows", 65536)
    assert [generate(spec) for spec in specs] == small_chunks

def test_coefficient_ranges():
    rational = generate(GenSpec(v_size=40, w_size=5, density=0.5, seed=3))
    for c in rational.coefficients:
        assert c != 0
        assert isinstance(c, Fraction)
        assert abs(c.numerator) <= 9 and c.denominator <= 9

    prime = generate(GenSpec(v_size=40, w_size=5, density=0.5, seed=3, modulus=7))
    assert prime.field == FieldSpec.prime(7)
    assert all(1 <= c < 7 for c in prime.coefficients)

def test_large_modulus():
    t = generate(GenSpec(v_size=10, w_size=2, density=0.5, seed=4, modulus=2 ** 61 - 1))
    assert all(0 < c < 2 ** 61 - 1 for c in t.coefficients)

def test_spec_validation():
    with pytest.raises(ValidationError):
        GenSpec(v_size=5, w_size=1, density=1.5, seed=0)
    with pytest.raises(ValidationError):
        GenSpec(v_size=5, w_size=1, density=0.5, seed=0, target_components=6)
    with pytest.raises(ValidationError):
        GenSpec(v_size=5, w_size=1, density=0.5, seed=0, modulus=8)
    with pytest.raises(ValidationError):
        GenSpec(v_size=5, w_size=1, density=0.5, seed=-1)
    with pytest.raises(ValidationError):
        GenSpec(v_size=10 ** 13, w_size=1, density=0.5, seed=0)

def test_symmetrize_e1():
    t = symmetrize(e1())
    assert t.w_size == 2
    assert [(e.i, e.j, e.k, e.c.value) for e in t.entries()] == [(0, 0, 1, 1), (1, 1, 0, 1), (2, 0, 2, 1)]
    assert check_star_multiplicative(t).holds
    assert components(t) == components(e1())
    assert symmetrize(t) is t

def test_symmetrize_labels():
    t = build_table([(0, 0, 1, 1)], 2, 1, FieldSpec.rationals(), w_labels=["sym0"])
    assert symmetrize(t).w_labels == ("sym0", "sym1")

def test_symmetrize_without_entries():
    t = zero_table(3)
    assert symmetrize(t) is t

def test_star_multiplicative_generation():
    for seed in range(50):
        t = generate(GenSpec(v_size=30, w_size=4, density=0.2, seed=seed, star_multiplicative=True))
        assert check_star_multiplicative(t).holds
        assert components(t) == components(generate(GenSpec(v_size=30, w_size=4, density=0.2, seed=seed)))
