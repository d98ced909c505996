"""Seeded workload generation and the documented PRNG."""

import math
from fractions import Fraction

import pytest

from ocs_toe.model import validate_logical
from ocs_toe.workload import (
    SplitMix64,
    WorkloadSpec,
    gen_heavy_workload,
    gen_sequence,
    substream_seed,
)


def test_splitmix64_reference_stream():
    # Published reference outputs for seed 0.
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_splitmix64_independent_reimplementation():
    mask = (1 << 64) - 1

    def reference(seed, count):
        state = seed & mask
        out = []
        for _ in range(count):
            state = (state + 0x9E3779B97F4A7C15) & mask
            z = state
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
            out.append(z ^ (z >> 31))
        return out

    rng = SplitMix64(123456789)
    assert [rng.next_u64() for _ in range(10)] == reference(123456789, 10)


def test_randbelow_and_shuffle_are_deterministic():
    a = SplitMix64(7)
    b = SplitMix64(7)
    items_a, items_b = list(range(10)), list(range(10))
    a.shuffle(items_a)
    b.shuffle(items_b)
    assert items_a == items_b
    with pytest.raises(ValueError):
        a.randbelow(0)


def test_substream_seeds_differ():
    seeds = {substream_seed(42, i) for i in range(100)}
    assert len(seeds) == 100
    assert substream_seed(42, 3) == substream_seed(42, 3)


def test_heavy_two_egroups():
    lt = gen_heavy_workload(WorkloadSpec(p=2, k_egroup=4, seed=99))
    assert lt.c == [[0, 4], [4, 0]]


def test_heavy_golden():
    lt = gen_heavy_workload(WorkloadSpec(p=4, k_egroup=2, seed=2024))
    assert lt.c == [[0, 0, 0, 2], [0, 0, 2, 0], [0, 2, 0, 0], [2, 0, 0, 0]]


def test_heavy_full_fanout_and_valid():
    for seed in range(20):
        lt = gen_heavy_workload(WorkloadSpec(p=6, k_egroup=8, seed=seed))
        assert validate_logical(lt).ok
        assert all(sum(row) == 8 for row in lt.c)


def test_heavy_odd_p_near_perfect():
    lt = gen_heavy_workload(WorkloadSpec(p=5, k_egroup=4, seed=1))
    assert validate_logical(lt).ok
    # One EGroup idles per matching round.
    assert sum(sum(row) for row in lt.c) == 4 * (5 - 1)


def test_heavy_rejects_bad_spec():
    with pytest.raises(ValueError):
        gen_heavy_workload(WorkloadSpec(p=1, k_egroup=4))
    with pytest.raises(ValueError):
        gen_heavy_workload(WorkloadSpec(p=4, k_egroup=3))


def test_sequence_constant_when_fraction_zero():
    spec = WorkloadSpec(p=4, k_egroup=4, mode="sequence", sequence_length=5,
                        mutation_fraction=Fraction(0), seed=5)
    seq = gen_sequence(spec)
    assert len(seq) == 5
    assert all(lt.c == seq[0].c for lt in seq)


def test_sequence_all_valid_and_deterministic():
    spec = WorkloadSpec(p=6, k_egroup=8, mode="sequence", sequence_length=10, seed=12)
    seq1 = gen_sequence(spec)
    seq2 = gen_sequence(spec)
    assert [lt.c for lt in seq1] == [lt.c for lt in seq2]
    assert all(validate_logical(lt).ok for lt in seq1)


def test_sequence_adjacent_difference_bound():
    p, k = 8, 8
    frac = Fraction(1, 4)
    spec = WorkloadSpec(p=p, k_egroup=k, mode="sequence", sequence_length=12,
                        mutation_fraction=frac, seed=3)
    seq = gen_sequence(spec)
    bound = 2 * math.ceil(frac * k) * (p // 2) * 2  # replaced matchings, both directions
    for prev, curr in zip(seq, seq[1:]):
        diff = sum(
            abs(curr.c[i][j] - prev.c[i][j]) for i in range(p) for j in range(p)
        )
        assert diff <= bound


def test_sequence_rejects_bad_spec():
    with pytest.raises(ValueError):
        gen_sequence(WorkloadSpec(p=4, k_egroup=4, sequence_length=0))
    with pytest.raises(ValueError):
        gen_sequence(WorkloadSpec(p=4, k_egroup=4, mutation_fraction=Fraction(3, 2)))
