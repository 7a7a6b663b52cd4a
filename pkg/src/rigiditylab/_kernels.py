"""Hot loops: counter-based random bits, coverage counting, brute-force counting.

Each kernel has a numba version and a pure-numpy version with identical
results. The numba path is used when numba imports and the environment
variable ``RIGIDITYLAB_NO_NUMBA`` is unset (or ``0``); setting it forces the
numpy path.

Random bits are the top bit of the splitmix64 output at state
``seed + (index + 1) * GAMMA`` (mod 2**64), so a bit depends only on
``(seed, index)``.
"""

from __future__ import annotations

import os

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def _env_disables_numba() -> bool:
    return os.environ.get("RIGIDITYLAB_NO_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


# scalar reference (arbitrary-precision ints, used for single queries) -------


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def bit_scalar(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GAMMA) >> 63


def derive_seed(base_seed: int, i: int) -> int:
    return mix64(base_seed + (i + 1) * GAMMA)


# numpy implementations -------------------------------------------------------

_U_GAMMA = np.uint64(GAMMA)
_U_M1 = np.uint64(_M1)
_U_M2 = np.uint64(_M2)
_U1 = np.uint64(1)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U63 = np.uint64(63)


def _np_mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U30)) * _U_M1
    z = (z ^ (z >> _U27)) * _U_M2
    return z ^ (z >> _U31)


def np_random_bits(seed: int, coords: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        c = np.asarray(coords, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + (c + _U1) * _U_GAMMA
        return (_np_mix(z) >> _U63).astype(np.uint8)


def np_derive_seeds(base_seed: int, count: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        i = np.arange(count, dtype=np.uint64)
        return _np_mix(np.uint64(base_seed & MASK64) + (i + _U1) * _U_GAMMA)


def np_count_agreeing(seeds: np.ndarray, left: np.ndarray, right: np.ndarray) -> int:
    """Number of seeds whose bits agree at left[j] and right[j] for every j."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    if len(left) == 0:
        return int(seeds.size)
    ok = np.ones(seeds.size, dtype=bool)
    with np.errstate(over="ignore"):
        for a, b in zip(np.asarray(left, dtype=np.uint64), np.asarray(right, dtype=np.uint64)):
            ba = _np_mix(seeds + (a + _U1) * _U_GAMMA) >> _U63
            bb = _np_mix(seeds + (b + _U1) * _U_GAMMA) >> _U63
            ok &= ba == bb
    return int(ok.sum())


def np_count_satisfying(nvars: int, left: np.ndarray, right: np.ndarray) -> int:
    """Assignments in {0,1}^nvars with bit left[j] == bit right[j] for all j."""
    masks = np.arange(1 << nvars, dtype=np.int64)
    ok = np.ones(masks.size, dtype=bool)
    for a, b in zip(left, right):
        ok &= ((masks >> int(a)) & 1) == ((masks >> int(b)) & 1)
    return int(ok.sum())


# numba implementations ---------------------------------------------------------

HAVE_NUMBA = False
try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_mix(z):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        return z ^ (z >> np.uint64(31))

    @njit(cache=True)
    def _nb_random_bits(seed, coords):
        out = np.empty(coords.size, dtype=np.uint8)
        g = np.uint64(GAMMA)
        for i in range(coords.size):
            z = seed + (coords[i] + np.uint64(1)) * g
            out[i] = np.uint8(_nb_mix(z) >> np.uint64(63))
        return out

    @njit(cache=True)
    def _nb_derive_seeds(base, count):
        out = np.empty(count, dtype=np.uint64)
        g = np.uint64(GAMMA)
        for i in range(count):
            out[i] = _nb_mix(base + (np.uint64(i) + np.uint64(1)) * g)
        return out

    @njit(cache=True)
    def _nb_count_agreeing(seeds, left, right):
        g = np.uint64(GAMMA)
        count = 0
        for t in range(seeds.size):
            s = seeds[t]
            good = True
            for j in range(left.size):
                ba = _nb_mix(s + (left[j] + np.uint64(1)) * g) >> np.uint64(63)
                bb = _nb_mix(s + (right[j] + np.uint64(1)) * g) >> np.uint64(63)
                if ba != bb:
                    good = False
                    break
            if good:
                count += 1
        return count

    @njit(cache=True)
    def _nb_count_satisfying(nvars, left, right):
        count = 0
        for m in range(1 << nvars):
            good = True
            for j in range(left.size):
                if ((m >> left[j]) & 1) != ((m >> right[j]) & 1):
                    good = False
                    break
            if good:
                count += 1
        return count

    def nb_random_bits(seed: int, coords: np.ndarray) -> np.ndarray:
        return _nb_random_bits(np.uint64(seed & MASK64), np.asarray(coords, dtype=np.uint64))

    def nb_derive_seeds(base_seed: int, count: int) -> np.ndarray:
        return _nb_derive_seeds(np.uint64(base_seed & MASK64), count)

    def nb_count_agreeing(seeds, left, right) -> int:
        return int(
            _nb_count_agreeing(
                np.asarray(seeds, dtype=np.uint64),
                np.asarray(left, dtype=np.uint64),
                np.asarray(right, dtype=np.uint64),
            )
        )

    def nb_count_satisfying(nvars: int, left, right) -> int:
        return int(
            _nb_count_satisfying(
                nvars, np.asarray(left, dtype=np.int64), np.asarray(right, dtype=np.int64)
            )
        )


USE_NUMBA = HAVE_NUMBA and not _env_disables_numba()
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    random_bits = nb_random_bits
    derive_seeds = nb_derive_seeds
    count_agreeing = nb_count_agreeing
    count_satisfying = nb_count_satisfying
else:
    random_bits = np_random_bits
    derive_seeds = np_derive_seeds
    count_agreeing = np_count_agreeing
    count_satisfying = np_count_satisfying
