"""Seeded query workloads mixing uniform and geometric key popularity.

Each query flips a ``p``-weighted coin. Heads draws an access rank ``r`` with
``P(r = i) = 2**-(i+1)`` (the last rank takes the leftover mass) and maps it
to a key through a seeded rank permutation; tails draws a key uniformly.

Randomness comes from xoshiro256** seeded through splitmix64, so a given
``WorkloadSpec`` yields the same keys on every platform.
"""
import math
from dataclasses import dataclass

MASK64 = (1 << 64) - 1
_TWO_POW_53 = 1 << 53


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** 1.0 (Blackman and Vigna)."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed):
        sm = SplitMix64(seed)
        self.s0, self.s1, self.s2, self.s3 = sm.next(), sm.next(), sm.next(), sm.next()

    def next(self):
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        x = s1 * 5 & MASK64
        result = ((x << 7 | x >> 57) & MASK64) * 9 & MASK64
        t = s1 << 17 & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self.s0, self.s1, self.s2 = s0, s1, s2
        self.s3 = (s3 << 45 | s3 >> 19) & MASK64
        return result

    def random(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) / _TWO_POW_53

    def below(self, n):
        """Unbiased integer in [0, n) by Lemire's multiply-and-reject."""
        m = self.next() * n
        low = m & MASK64
        if low < n:
            threshold = ((1 << 64) - n) % n
            while low < threshold:
                m = self.next() * n
                low = m & MASK64
        return m >> 64

    def shuffle(self, items):
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# Stream derivation constants; distinct seeds for dataset and query draws.
_DATASET_SALT = 0x5EED_DA7A
_QUERY_SALT = 0x5EED_0E7E


def derive_seed(seed, salt):
    return SplitMix64((seed ^ salt) & MASK64).next()


@dataclass(frozen=True)
class WorkloadSpec:
    n: int
    p: float
    m: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")


@dataclass(frozen=True)
class Dataset:
    keys: list
    """Keys 0..n-1 in insertion order."""
    rank_to_key: list
    """Access rank (0 = hottest) to key."""


def build_dataset(n, seed):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = Xoshiro256StarStar(derive_seed(seed, _DATASET_SALT))
    keys = list(range(n))
    rng.shuffle(keys)
    ranks = list(range(n))
    rng.shuffle(ranks)
    return Dataset(keys, ranks)


def exponential_rank(u, n):
    """Rank for a uniform ``u`` in (0, 1]: ``floor(-log2 u)`` capped at n-1."""
    r = int(-math.log2(u))
    return r if r < n else n - 1


class QueryStream:
    """Iterator over the query keys of one workload.

    >>> qs = QueryStream(WorkloadSpec(n=4, p=1.0, m=3, seed=7))
    >>> len(list(qs))
    3
    """

    def __init__(self, spec: WorkloadSpec, dataset: Dataset = None):
        self.spec = spec
        self.dataset = dataset if dataset is not None else build_dataset(spec.n, spec.seed)
        self.rank_permutation = self.dataset.rank_to_key
        self._rng = Xoshiro256StarStar(derive_seed(spec.seed, _QUERY_SALT))
        self._emitted = 0

    def next_query_key(self):
        n, p = self.spec.n, self.spec.p
        rng = self._rng
        if p > 0.0 and rng.random() < p:
            u = ((rng.next() >> 11) + 1) / _TWO_POW_53
            return self.rank_permutation[exponential_rank(u, n)]
        return rng.below(n)

    def __iter__(self):
        return self

    def __next__(self):
        if self._emitted >= self.spec.m:
            raise StopIteration
        self._emitted += 1
        return self.next_query_key()

    def take(self, count=None):
        """List of the next ``count`` keys (default: the rest of the stream)."""
        if count is None:
            count = self.spec.m - self._emitted
        out = [self.next_query_key() for _ in range(count)]
        self._emitted += count
        return out


def exponential_mass(n):
    """Exact per-rank probabilities of the truncated geometric component."""
    probs = [2.0 ** -(i + 1) for i in range(n - 1)]
    probs.append(2.0 ** -(n - 1))
    return probs


def mixture_mass(n, p):
    """Exact per-rank probabilities of the full p-mixture."""
    return [p * e + (1 - p) / n for e in exponential_mass(n)]


def adversarial_sequence(n):
    """Ascending inserts of 0..n-1, then one query for the smallest key."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return [("insert", k) for k in range(n)] + [("query", 0)]
