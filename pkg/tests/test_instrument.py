import random

from adaptive_pst import EQUAL, GREATER, LESS, Aapst, BalancedBst, CountingComparator, SplayTree
from adaptive_pst.instrument import RecordingComparator


class SilentComparator(CountingComparator):
    """Same ordering, no counting."""

    def compare(self, a, b):
        return (a > b) - (a < b)


def test_compare_results_and_counting():
    c = CountingComparator()
    assert c.compare(1, 2) == LESS
    assert c.comparisons == 1
    assert c.compare(5, 5) == EQUAL
    assert c.compare(9, 5) == GREATER
    assert c.comparisons == 3


def test_snapshot_and_reset():
    c = CountingComparator()
    assert c.snapshot_and_reset() == 0
    for _ in range(7):
        c.compare(1, 2)
    assert c.snapshot_and_reset() == 7
    assert c.snapshot_and_reset() == 0


def test_aapst_query_audit():
    """Audit the two comparison sites per node: each visited node is compared
    once on its resident key and once on its split (except the hit)."""
    rng = random.Random(4)
    cmp = RecordingComparator()
    t = Aapst(comparator=cmp)
    keys = rng.sample(range(10_000), 800)
    for k in keys:
        t.insert_key(k)
    audited = 0
    for _ in range(3000):
        k = rng.choice(keys)
        path = t.tree._find_path(k)
        cmp.calls.clear()
        cmp.comparisons = 0
        t.query(k)
        assert len(cmp.calls) == cmp.comparisons == t.metrics.comparisons_this_op
        if not t.metrics.restructured:
            expected = []
            for node in path[:-1]:
                expected += [(k, node.pair.x), (k, node.split)]
            expected.append((k, k))
            assert cmp.calls == expected
            assert t.metrics.nodes_visited == len(path)
            audited += 1
    assert audited > 100


def test_counting_is_observation_only():
    rng = random.Random(12)
    ops = [(rng.random(), rng.randrange(400)) for _ in range(5000)]

    def replay(make):
        trees = [Aapst(comparator=make()), SplayTree(comparator=make()), BalancedBst(comparator=make())]
        for r, k in ops:
            for t in trees:
                if isinstance(t, Aapst):
                    if k in t:
                        t.query(k)
                    else:
                        t.insert_key(k)
                else:
                    if r < 0.2 and t.search(k):
                        t.delete(k)
                    elif not t.search(k):
                        t.insert(k)
        return trees[0].tree.dump(), trees[1].keys(), repr_shape(trees[1].root), repr_shape(trees[2].root)

    assert replay(CountingComparator) == replay(SilentComparator)


def repr_shape(node):
    if node is None:
        return None
    return (node.key, repr_shape(node.left), repr_shape(node.right))
