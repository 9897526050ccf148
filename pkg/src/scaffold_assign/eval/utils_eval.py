from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from scaffold_assign.model.core import Instance, make_instance
from scaffold_assign.model.errors import GeneratorConfigError
from scaffold_assign.model.profile import height_profile
from scaffold_assign.model.utils import COORD_MAX, COORD_MIN


# seeded generator
# SplitMix64: state_k = seed + k * golden (mod 2^64), output = mix(state_k). It is counter based, so a block of
# outputs is one vectorized expression and still bit-identical to the usual sequential loop.

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

DISTRIBUTIONS = ("uniform", "clustered")


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.seed = seed & MASK64
        self.counter = 0

    def next_u64(self, count: int) -> np.ndarray:
        k = np.arange(self.counter + 1, self.counter + count + 1, dtype=np.uint64)
        self.counter += count
        z = np.uint64(self.seed) + k * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_2)
        return z ^ (z >> np.uint64(31))

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        """
        `count` integers in [low, high], by modulo reduction of the raw outputs.
        """
        span = np.uint64(high - low + 1)
        return (self.next_u64(count) % span).astype(np.int64) + low

    def integer(self, low: int, high: int) -> int:
        return int(self.integers(low, high, 1)[0])


def _check_generator_args(size_s, size_t, low, high, distribution, clusters):
    if size_t < 1 or size_s < size_t:
        raise GeneratorConfigError(f"need size_s >= size_t >= 1, got size_s={size_s}, size_t={size_t}")
    if low > high:
        raise GeneratorConfigError(f"empty coordinate range [{low}, {high}]")
    if low < COORD_MIN or high > COORD_MAX:
        raise GeneratorConfigError(f"range [{low}, {high}] exceeds the coordinate bound [{COORD_MIN}, {COORD_MAX}]")
    if distribution not in DISTRIBUTIONS:
        raise GeneratorConfigError(f"unknown distribution {distribution!r}, expected one of {DISTRIBUTIONS}")
    if clusters < 1:
        raise GeneratorConfigError(f"clusters must be >= 1, got {clusters}")


def draw_coordinates(
    seed: int,
    size_s: int,
    size_t: int,
    low: int = 0,
    high: int = 100,
    distribution: str = "uniform",
    clusters: int = 8,
    spread: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Raw, unsorted coordinates. Draw order is fixed: S then T for "uniform"; for "clustered" the cluster centers
    first, then per set the cluster picks followed by the offsets.
    """
    _check_generator_args(size_s, size_t, low, high, distribution, clusters)
    rng = SplitMix64(seed)
    if distribution == "uniform":
        return rng.integers(low, high, size_s), rng.integers(low, high, size_t)

    if spread is None:
        spread = max(1, (high - low) // (8 * clusters))
    centers = rng.integers(low, high, clusters)

    def around(count):
        pick = rng.integers(0, clusters - 1, count)
        offset = rng.integers(-spread, spread, count)
        return np.clip(centers[pick] + offset, low, high)

    s = around(size_s)
    t = around(size_t)
    return s, t


def generate_instance(
    seed: int,
    size_s: int,
    size_t: int,
    low: int = 0,
    high: int = 100,
    distribution: str = "uniform",
    clusters: int = 8,
    spread: int | None = None,
) -> Instance:
    return make_instance(*draw_coordinates(seed, size_s, size_t, low, high, distribution, clusters, spread))


# instance suites


def random_suite(
    seed: int, count: int, max_t: int = 10, max_s: int = 14, low: int = 0, high: int = 100
) -> Iterator[Instance]:
    """
    `count` instances with |T| in [1, max_t], |S| in [|T|, max_s] and coordinates in [low, high], duplicates allowed.
    """
    if not 1 <= max_t <= max_s:
        raise GeneratorConfigError(f"need 1 <= max_t <= max_s, got {max_t} and {max_s}")
    rng = SplitMix64(seed)
    for _ in range(count):
        nt = rng.integer(1, max_t)
        ns = rng.integer(nt, max_s)
        yield make_instance(rng.integers(low, high, ns), rng.integers(low, high, nt))


def exhaustive_grid(max_t: int = 3, max_s: int = 6, high: int = 6, limit: int = 50_000) -> list[Instance]:
    """
    Every pair of coordinate multisets over {0..high} with |T| <= max_t and |T| <= |S| <= max_s, thinned to at most
    `limit` evenly spaced instances.
    """
    values = range(high + 1)

    def multisets(size):
        return list(itertools.combinations_with_replacement(values, size))

    by_size = {k: multisets(k) for k in range(1, max_s + 1)}
    pairs = [
        (s, t)
        for nt in range(1, max_t + 1)
        for t in by_size[nt]
        for ns in range(nt, max_s + 1)
        for s in by_size[ns]
    ]
    if len(pairs) > limit:
        keep = np.linspace(0, len(pairs) - 1, limit).round().astype(np.int64)
        pairs = [pairs[i] for i in np.unique(keep).tolist()]
    return [Instance(np.asarray(s, dtype=np.int64), np.asarray(t, dtype=np.int64)) for s, t in pairs]


def height_respecting_sets(inst: Instance, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """
    Removal sets with one S point per height 1..delta whose k-th smallest element has height k.
    """
    p = height_profile(inst)
    delta = p.delta
    by_height = {k: np.flatnonzero(p.s_height == k).tolist() for k in range(1, delta + 1)}
    produced = 0

    def extend(prefix, k):
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if k > delta:
            produced += 1
            yield tuple(prefix)
            return
        last = prefix[-1] if prefix else -1
        for i in by_height[k]:
            if i > last:
                yield from extend(prefix + [i], k + 1)

    yield from extend([], 1)
