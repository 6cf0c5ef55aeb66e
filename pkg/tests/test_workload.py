import math
from collections import Counter

import pytest
from scipy import stats

from adaptive_pst import QueryStream, WorkloadSpec, adversarial_sequence, build_dataset
from adaptive_pst.workload import (
    SplitMix64,
    Xoshiro256StarStar,
    exponential_mass,
    exponential_rank,
    mixture_mass,
)

# Frozen from the reference C implementations of splitmix64 / xoshiro256**.
SPLITMIX_1234567 = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]
XOSHIRO_SEED_42 = [
    1546998764402558742,
    6990951692964543102,
    12544586762248559009,
    17057574109182124193,
    18295552978065317476,
]


def test_splitmix64_reference_vector():
    sm = SplitMix64(1234567)
    assert [sm.next() for _ in range(5)] == SPLITMIX_1234567


def test_xoshiro_reference_vector():
    rng = Xoshiro256StarStar(42)
    assert [rng.next() for _ in range(5)] == XOSHIRO_SEED_42


def test_xoshiro_raw_state():
    rng = Xoshiro256StarStar(0)
    rng.s0, rng.s1, rng.s2, rng.s3 = 1, 2, 3, 4
    assert [rng.next() for _ in range(3)] == [11520, 0, 1509978240]


def test_below_stays_in_range():
    rng = Xoshiro256StarStar(3)
    draws = [rng.below(7) for _ in range(10_000)]
    assert set(draws) == set(range(7))


def test_dataset_single_key():
    d = build_dataset(1, 5)
    assert d.keys == [0] and d.rank_to_key == [0]


def test_dataset_deterministic():
    assert build_dataset(500, 9) == build_dataset(500, 9)


def test_dataset_seeds_differ():
    a, b = build_dataset(1000, 1), build_dataset(1000, 2)
    assert a.rank_to_key != b.rank_to_key
    assert sorted(a.keys) == sorted(b.keys) == list(range(1000))


def test_spec_validation():
    with pytest.raises(ValueError):
        WorkloadSpec(n=0, p=0.5, m=1)
    with pytest.raises(ValueError):
        WorkloadSpec(n=4, p=1.5, m=1)
    with pytest.raises(ValueError):
        WorkloadSpec(n=4, p=0.5, m=-1)


def test_stream_deterministic_and_bounded():
    spec = WorkloadSpec(n=100, p=0.5, m=5000, seed=3)
    a, b = list(QueryStream(spec)), QueryStream(spec).take()
    assert a == b and len(a) == 5000
    assert all(0 <= k < 100 for k in a)


@pytest.mark.parametrize(
    "u, rank",
    [(1.0, 0), (0.75, 0), (0.5, 1), (0.3, 1), (0.25, 2), (2.0**-40, 15), (2.0**-53, 15)],
)
def test_exponential_rank_mapping(u, rank):
    assert exponential_rank(u, 16) == rank


def test_two_keys_split_evenly():
    assert exponential_mass(2) == [0.5, 0.5]
    spec = WorkloadSpec(n=2, p=1.0, m=100_000, seed=1)
    qs = QueryStream(spec)
    counts = Counter(qs.take())
    hot = qs.rank_permutation[0]
    assert abs(counts[hot] / spec.m - 0.5) < 0.01


def test_exponential_mass_sums_to_one():
    for n in (1, 2, 3, 17, 64):
        assert math.isclose(sum(exponential_mass(n)), 1.0)


@pytest.mark.parametrize("n", [4, 16, 64, 1024])
def test_top_log_ranks_carry_the_exponential_mass(n):
    top = math.ceil(math.log2(n))
    assert sum(exponential_mass(n)[:top]) >= 1 - 2 / n


def test_rank_frequencies_at_p1():
    spec = WorkloadSpec(n=16, p=1.0, m=200_000, seed=2)
    qs = QueryStream(spec)
    counts = Counter(qs.take())
    perm = qs.rank_permutation
    assert 0.49 <= counts[perm[0]] / spec.m <= 0.51
    assert 0.24 <= counts[perm[1]] / spec.m <= 0.26


def test_mixture_chi_square():
    n, m = 64, 200_000
    qs = QueryStream(WorkloadSpec(n=n, p=0.5, m=m, seed=4))
    counts = Counter(qs.take())
    observed = [counts[qs.rank_permutation[r]] for r in range(n)]
    expected = [m * q for q in mixture_mass(n, 0.5)]
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_adversarial_sequence():
    assert adversarial_sequence(2) == [("insert", 0), ("insert", 1), ("query", 0)]
    ops = adversarial_sequence(100)
    assert [k for op, k in ops if op == "insert"] == list(range(100))
    with pytest.raises(ValueError):
        adversarial_sequence(1)
