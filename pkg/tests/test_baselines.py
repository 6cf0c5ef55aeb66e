import math
import random

import pytest

from adaptive_pst import BalancedBst, DuplicateKey, NotFound, SplayTree
from adaptive_pst.instrument import RecordingComparator
from adaptive_pst.verify import dictionary_oracle_suite


@pytest.fixture(params=[SplayTree, BalancedBst], ids=["splay", "avl"])
def tree_cls(request):
    return request.param


def test_search_empty(tree_cls):
    assert tree_cls().search(3) is False


def test_insert_into_empty(tree_cls):
    t = tree_cls()
    t.insert(4)
    assert t.root.key == 4 and len(t) == 1


def test_ascending_inserts_stay_sorted(tree_cls):
    t = tree_cls()
    for k in range(1, 200):
        t.insert(k)
    assert t.keys() == list(range(1, 200))
    assert t.check_invariants()


def test_duplicate_and_absent(tree_cls):
    t = tree_cls()
    t.insert(1)
    with pytest.raises(DuplicateKey):
        t.insert(1)
    with pytest.raises(NotFound):
        t.delete(2)
    assert t.keys() == [1] and len(t) == 1


@pytest.mark.parametrize("name", ["splay", "avl"])
def test_random_ops_match_set_oracle(name):
    result = dictionary_oracle_suite(name, ops=20_000, seed=4)
    assert result.ok, result.failures


def test_splay_brings_key_to_root():
    rng = random.Random(0)
    t = SplayTree()
    keys = rng.sample(range(10_000), 500)
    for k in keys:
        t.insert(k)
    for k in rng.sample(keys, 100):
        assert t.search(k)
        assert t.root.key == k


@pytest.mark.parametrize("n", [64, 256, 1024])
def test_splay_ascending_then_min_is_linear(n):
    t = SplayTree()
    for k in range(1, n + 1):
        t.insert(k)
    t.comparator.snapshot_and_reset()
    assert t.search(1)
    assert t.metrics.nodes_visited >= n // 2
    assert t.comparator.comparisons >= n
    assert t.root.key == 1


def test_splay_repeat_search_is_root_hit():
    t = SplayTree()
    for k in [5, 3, 8, 1]:
        t.insert(k)
    t.search(3)
    t.comparator.snapshot_and_reset()
    assert t.search(3)
    assert t.comparator.comparisons <= 1


def test_splay_delete_keeps_order():
    t = SplayTree()
    for k in [5, 3, 8, 1, 4, 7, 9]:
        t.insert(k)
    t.delete(5)
    t.delete(1)
    assert t.keys() == [3, 4, 7, 8, 9]


@pytest.mark.parametrize("k", range(1, 11))
def test_avl_sorted_insert_height(k):
    t = BalancedBst()
    for key in range(1, 2**k):
        t.insert(key)
    assert t.height() == k


def test_avl_height_bound_under_random_ops():
    rng = random.Random(8)
    t = BalancedBst()
    present = set()
    for i in range(20_000):
        key = rng.randrange(5000)
        if key in present:
            t.delete(key)
            present.discard(key)
        else:
            t.insert(key)
            present.add(key)
        assert t.height() <= 1.44 * math.log2(len(t) + 2)
        if i % 500 == 0:
            assert t.check_invariants()


def test_avl_search_comparisons_equal_nodes_visited():
    rng = random.Random(2)
    t = BalancedBst()
    for k in rng.sample(range(100_000), 3000):
        t.insert(k)
    for k in rng.sample(range(100_000), 500):
        t.comparator.snapshot_and_reset()
        t.search(k)
        visited = t.metrics.nodes_visited
        assert t.comparator.comparisons == visited
        assert visited <= t.height()


def test_splay_comparisons_cover_every_visited_node():
    """Every node the splay loop reads is compared against at least once,
    and no comparison touches a key outside the tree."""
    rng = random.Random(6)
    cmp = RecordingComparator()
    t = SplayTree(comparator=cmp)
    keys = rng.sample(range(10_000), 400)
    for k in keys:
        t.insert(k)
    for k in rng.sample(range(10_000), 300):
        cmp.calls.clear()
        cmp.comparisons = 0
        t.search(k)
        assert len(cmp.calls) == cmp.comparisons
        assert all(a == k and b in set(keys) for a, b in cmp.calls)
        assert cmp.comparisons >= t.metrics.nodes_visited
