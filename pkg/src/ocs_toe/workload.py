"""Seeded workload generation.

Heavy workloads are sums of k_egroup uniformly random perfect matchings
on the EGroups (fixed-point-free involutions), so symmetry and full
fan-out hold by construction.  Sequences mutate a fraction of the
constituent matchings per step.

Randomness comes from a SplitMix64 stream so any implementation can
reproduce workloads bit-for-bit from the 64-bit seed: the state update
is state += 0x9E3779B97F4A7C15; outputs are the finalizer
(z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
z *= 0x94D049BB133111EB; z ^= z >> 31), all modulo 2^64.  Bounded draws
use next_u64() % n; shuffles are Fisher-Yates from the top index down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import LogicalTopology, validate_logical

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def substream_seed(seed: int, index: int) -> int:
    """A per-trial seed derived deterministically from (seed, index)."""
    return SplitMix64((seed ^ ((index + 1) * _GOLDEN)) & _MASK).next_u64()


@dataclass(frozen=True)
class WorkloadSpec:
    p: int
    k_egroup: int
    mode: str = "heavy"  # heavy | sequence
    sequence_length: int = 1
    mutation_fraction: Fraction = Fraction(1, 4)
    seed: int = 0


Matching = tuple[tuple[int, int], ...]


def _random_matching(p: int, rng: SplitMix64) -> Matching:
    """A uniformly random (near-)perfect matching; odd p leaves one idle."""
    nodes = list(range(p))
    rng.shuffle(nodes)
    return tuple(
        (min(nodes[2 * t], nodes[2 * t + 1]), max(nodes[2 * t], nodes[2 * t + 1]))
        for t in range(p // 2)
    )


def _matchings_to_topology(matchings: list[Matching], p: int, k_egroup: int) -> LogicalTopology:
    c = [[0] * p for _ in range(p)]
    for matching in matchings:
        for i, j in matching:
            c[i][j] += 1
            c[j][i] += 1
    lt = LogicalTopology(p=p, k_egroup=k_egroup, c=c)
    assert validate_logical(lt).ok
    return lt


def gen_heavy_workload(spec: WorkloadSpec) -> LogicalTopology:
    """A demand matrix using every OCS-facing port (row sums == k_egroup)."""
    if spec.p < 2:
        raise ValueError(f"need at least 2 EGroups, got {spec.p}")
    if spec.k_egroup <= 0 or spec.k_egroup % 2 != 0:
        raise ValueError(f"k_egroup must be a positive even integer, got {spec.k_egroup}")
    rng = SplitMix64(spec.seed)
    matchings = [_random_matching(spec.p, rng) for _ in range(spec.k_egroup)]
    return _matchings_to_topology(matchings, spec.p, spec.k_egroup)


def gen_sequence(spec: WorkloadSpec) -> list[LogicalTopology]:
    """Temporally successive demands; each step redraws a fraction of matchings."""
    if spec.sequence_length < 1:
        raise ValueError("sequence_length must be >= 1")
    if not 0 <= spec.mutation_fraction <= 1:
        raise ValueError("mutation_fraction must be in [0, 1]")
    rng = SplitMix64(spec.seed)
    matchings = [_random_matching(spec.p, rng) for _ in range(spec.k_egroup)]
    out = [_matchings_to_topology(matchings, spec.p, spec.k_egroup)]
    replace = math.ceil(spec.mutation_fraction * spec.k_egroup)
    for _ in range(spec.sequence_length - 1):
        slots = list(range(spec.k_egroup))
        rng.shuffle(slots)
        for slot in sorted(slots[:replace]):
            matchings[slot] = _random_matching(spec.p, rng)
        out.append(_matchings_to_topology(matchings, spec.p, spec.k_egroup))
    return out
