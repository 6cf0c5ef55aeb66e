"""Oracle equivalence and invariant sweeps behind ``--mode verify``.

Every suite returns a :class:`SuiteResult`; a suite passes when it collected
no failures. The oracles are deliberately naive: linear scans over the point
list and a plain Python set.
"""
import math
import random
from dataclasses import dataclass, field
from typing import List

from .aapst import Aapst
from .baselines import BalancedBst, SplayTree
from .errors import DuplicateKey, NotFound
from .pst import HeapVariant, KeyPair, Pst, Rect


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def fail(self, message, limit=20):
        if len(self.failures) < limit:
            self.failures.append(message)
        else:
            self.stats["suppressed"] = self.stats.get("suppressed", 0) + 1

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        return f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures {extra}".rstrip()


# -- linear-scan oracles --------------------------------------------------


def scan_min_x(points, rect):
    hits = [p for p in points if rect.contains(p)]
    return min(hits) if hits else None


def scan_min_y(points, x0, x1):
    hits = [p for p in points if x0 <= p[0] <= x1]
    return min(hits, key=lambda p: (p[1], p[0])) if hits else None


def scan_enumerate(points, rect):
    return sorted(p for p in points if rect.contains(p))


def random_point_set(rng, max_points=256, x_range=1000, y_range=100):
    n = rng.randint(0, max_points)
    xs = rng.sample(range(x_range), n)
    return [KeyPair(x, rng.randint(0, y_range)) for x in xs]


def random_rect(rng, x_range=1000, y_range=100):
    a, b = rng.randint(-10, x_range + 10), rng.randint(-10, x_range + 10)
    return Rect(min(a, b), max(a, b), rng.randint(-1, y_range + 1))


def build_min_pst(points, rng, alpha=0.7):
    """Insert ``points`` in random order, with a few delete/reinsert rounds."""
    tree = Pst(HeapVariant.MIN, alpha=alpha)
    order = list(points)
    rng.shuffle(order)
    for p in order:
        tree.insert(p)
    for p in rng.sample(order, len(order) // 4):
        tree.delete(p.x)
        tree.insert(p)
    return tree


def geometric_oracle_suite(point_sets=1000, rects_per_set=100, max_points=256, seed=0, visit_c1=4.0, visit_c2=3.0):
    """Operations 3-5 of the PST against linear scans, plus the enumerate
    visit bound ``visits <= c1*log2(n+1) + c2*k``."""
    rng = random.Random(seed)
    result = SuiteResult("pst-geometric-oracle")
    worst_ratio = 0.0
    for s in range(point_sets):
        points = random_point_set(rng, max_points)
        tree = build_min_pst(points, rng)
        report = tree.check_invariants()
        if not report:
            result.fail(f"set {s}: {report}")
        n = len(points)
        for _ in range(rects_per_set):
            rect = random_rect(rng)
            result.cases += 1
            got = tree.min_x_in_rectangle(rect)
            want = scan_min_x(points, rect)
            if got != want:
                result.fail(f"set {s} {rect}: min_x {got} != {want}")
            got = tree.min_y_in_x_range(rect.x0, rect.x1)
            want = scan_min_y(points, rect.x0, rect.x1)
            if got != want:
                result.fail(f"set {s} {rect}: min_y {got} != {want}")
            got = tree.enumerate_rectangle(rect)
            want = scan_enumerate(points, rect)
            if got != want:
                result.fail(f"set {s} {rect}: enumerate {len(got)} pairs != {len(want)}")
            visits = tree.metrics.nodes_visited
            bound = visit_c1 * math.log2(n + 1) + visit_c2 * len(want)
            if bound:
                worst_ratio = max(worst_ratio, visits / bound)
            if visits > bound:
                result.fail(f"set {s} {rect}: {visits} visits > {bound:.1f} (n={n}, k={len(want)})")
    result.stats["max_visits_over_bound"] = round(worst_ratio, 3)
    return result


# -- dictionary sweeps ------------------------------------------------------


class _PstDict:
    """Set-of-keys view of a min-PST with random priorities."""

    def __init__(self, rng):
        self.tree = Pst(HeapVariant.MIN)
        self.rng = rng

    def insert(self, key):
        self.tree.insert((key, self.rng.randint(0, 50)))

    def delete(self, key):
        self.tree.delete(key)

    def access(self, key):
        return key in self.tree

    def keys(self):
        return [p.x for p in self.tree]

    def check_invariants(self):
        return self.tree.check_invariants()


class _AapstDict:
    def __init__(self, rng):
        self.tree = Aapst()
        self.counts = {}

    def insert(self, key):
        self.tree.insert_key(key)
        self.counts[key] = 1

    def delete(self, key):
        self.tree.delete_key(key)
        del self.counts[key]

    def access(self, key):
        found = self.tree.query(key)
        if found:
            self.counts[key] += 1
        return found

    def keys(self):
        return self.tree.keys()

    def check_invariants(self):
        report = self.tree.check_invariants()
        if report and self.tree.counts() != self.counts:
            return type(report)(False, "CountViolation", "stored counts disagree with the ledger")
        if report and self.tree.total_accesses != sum(self.counts.values()):
            return type(report)(False, "CountViolation", "total_accesses disagrees with the ledger")
        return report


class _PlainDict:
    def __init__(self, cls):
        self.tree = cls()

    def insert(self, key):
        self.tree.insert(key)

    def delete(self, key):
        self.tree.delete(key)

    def access(self, key):
        return self.tree.search(key)

    def keys(self):
        return self.tree.keys()

    def check_invariants(self):
        return self.tree.check_invariants()


DICTIONARIES = {
    "pst": lambda rng: _PstDict(rng),
    "aapst": lambda rng: _AapstDict(rng),
    "splay": lambda rng: _PlainDict(SplayTree),
    "avl": lambda rng: _PlainDict(BalancedBst),
}


def dictionary_oracle_suite(name, ops=100_000, check_every=100, key_space=2000, seed=0):
    """Random insert/delete/access interleaving against a Python set."""
    rng = random.Random(seed)
    d = DICTIONARIES[name](rng)
    oracle = set()
    result = SuiteResult(f"{name}-oracle")
    # skew accesses so adaptive structures actually restructure
    hot = rng.sample(range(key_space), 20)
    for i in range(1, ops + 1):
        r = rng.random()
        key = rng.choice(hot) if r > 0.8 else rng.randrange(key_space)
        try:
            if r < 0.3:
                d.insert(key)
                if key in oracle:
                    result.fail(f"op {i}: inserted duplicate {key}")
                oracle.add(key)
            elif r < 0.5:
                d.delete(key)
                if key not in oracle:
                    result.fail(f"op {i}: deleted absent {key}")
                oracle.discard(key)
            else:
                if d.access(key) != (key in oracle):
                    result.fail(f"op {i}: membership of {key} wrong")
        except DuplicateKey:
            if key not in oracle:
                result.fail(f"op {i}: spurious DuplicateKey for {key}")
        except NotFound:
            if key in oracle:
                result.fail(f"op {i}: spurious NotFound for {key}")
        result.cases += 1
        if i % check_every == 0:
            report = d.check_invariants()
            if not report:
                result.fail(f"op {i}: {report}")
            if d.keys() != sorted(oracle):
                result.fail(f"op {i}: key set differs from oracle")
    return result


def heap_fault_suite():
    """Deliberately corrupt heap order; the checker has to name it."""
    result = SuiteResult("injected-heap-fault")
    tree = Pst.from_pairs([(1, 2), (2, 5), (3, 7)])
    tree.root.left.pair = KeyPair(tree.root.left.pair.x, 0)
    result.cases = 1
    report = tree.check_invariants()
    if not report:
        result.fail(str(report))
    return result


def run_verify(point_sets=100, rects_per_set=20, ops=10_000, seed=0, inject=None):
    suites = [geometric_oracle_suite(point_sets, rects_per_set, seed=seed)]
    for name in DICTIONARIES:
        suites.append(dictionary_oracle_suite(name, ops=ops, seed=seed))
    if inject == "heap":
        suites.append(heap_fault_suite())
    return suites
