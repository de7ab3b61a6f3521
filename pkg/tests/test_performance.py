import time

import pytest

from mbmod.decompose import decompose
from mbmod.gen import GenSpec, generate
from mbmod.minimal import is_minimal
from utils.test_utils import slow_tests_enabled

pytestmark = [
    pytest.mark.slow,
    pytest.mark.skipif(not slow_tests_enabled(), reason="set MBMOD_RUN_SLOW=1 to run"),
]

def test_decompose_large_instance():
    t = generate(GenSpec(v_size=1_000_000, w_size=100, density=0.05, seed=1, modulus=1_000_003))
    assert 4_900_000 < t.entry_count < 5_100_000

    now = time.time()
    modules = decompose(t)
    elapsed = time.time() - now
    assert sum(len(module.component) for module in modules) == t.v_size
    assert elapsed <= 10, f"decompose took {elapsed} seconds"

def test_closure_scan_large_instance():
    t = generate(GenSpec(v_size=100_000, w_size=5, density=1, seed=2, modulus=1_000_003))
    assert t.entry_count == 500_000

    now = time.time()
    report = is_minimal(t)
    elapsed = time.time() - now
    assert report.method == "closure-scan"
    assert elapsed <= 60, f"is_minimal took {elapsed} seconds"
