import json
import os
import subprocess
import sys

import numpy as np
import pytest

from rigiditylab import _kernels as K

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not importable")


def test_scalar_matches_vector():
    coords = np.array([0, 1, 2, 99, 2**40, 2**63 - 1], dtype=np.uint64)
    for seed in (0, 42, 2**64 - 1):
        vec = K.np_random_bits(seed, coords).tolist()
        assert vec == [K.bit_scalar(seed, int(c)) for c in coords]


def test_derive_seed_scalar():
    assert K.np_derive_seeds(42, 5).tolist() == [K.derive_seed(42, i) for i in range(5)]


def test_mix64_is_bijective_sample():
    outs = {K.mix64(z) for z in range(10_000)}
    assert len(outs) == 10_000


@needs_numba
class TestBackendsAgree:
    def test_random_bits(self):
        coords = np.arange(0, 10**5, 7, dtype=np.uint64)
        for seed in (0, 1, 42, 2**63, 2**64 - 1):
            assert np.array_equal(K.np_random_bits(seed, coords), K.nb_random_bits(seed, coords))

    def test_derive_seeds(self):
        assert np.array_equal(K.np_derive_seeds(7, 1000), K.nb_derive_seeds(7, 1000))

    def test_count_agreeing(self):
        seeds = K.np_derive_seeds(42, 20_000)
        left, right = [0, 2, 4, 6], [1, 3, 5, 7]
        assert K.np_count_agreeing(seeds, left, right) == K.nb_count_agreeing(seeds, left, right)
        assert K.np_count_agreeing(seeds, [], []) == K.nb_count_agreeing(seeds, [], []) == 20_000

    def test_count_satisfying(self):
        cases = [(0, [], []), (2, [0], [1]), (3, [0, 1, 0], [1, 2, 2]), (10, [0, 3, 5], [9, 4, 8])]
        for v, l, r in cases:
            assert K.np_count_satisfying(v, l, r) == K.nb_count_satisfying(v, l, r)


_PROBE = """
import json
from rigiditylab import _kernels, SeededRandom, coverage_experiment, Add
from rigiditylab.harness import run_suite
r = coverage_experiment(Add(1), 6, 5000, 42)
print(json.dumps({
    "backend": _kernels.BACKEND,
    "bits": SeededRandom(42).prefix(256),
    "inside": r.inside,
    "oracle": run_suite("oracle-agreement", {"cases": 50}).dumps(),
}))
"""


def _probe(env_extra):
    env = {k: v for k, v in os.environ.items() if k != "RIGIDITYLAB_NO_NUMBA"}
    env.update(env_extra)
    out = subprocess.run([sys.executable, "-c", _PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


@needs_numba
def test_env_flag_selects_numpy_with_identical_results():
    fast = _probe({})
    slow = _probe({"RIGIDITYLAB_NO_NUMBA": "1"})
    assert fast["backend"] == "numba"
    assert slow["backend"] == "numpy"
    assert fast["bits"] == slow["bits"]
    assert fast["inside"] == slow["inside"]
    assert fast["oracle"] == slow["oracle"]
