"""Priority search tree over (x, y) integer pairs.

Every node holds exactly one pair plus a routing ``split`` key. Pairs are kept
in heap order on ``y`` (min or max variant) and in search-tree order on ``x``
through the split keys: pairs in a node's left subtree have ``x <= split``,
pairs in its right subtree have ``x > split``.

Balance is maintained by weight-balanced partial rebuilding. After each
insert or delete, the highest node on the update path whose child holds more
than ``alpha`` of its weight is rebuilt into a perfectly balanced subtree.

    >>> t = Pst()
    >>> for p in [(2, 5), (4, 1), (7, 3), (9, 2)]:
    ...     t.insert(p)
    >>> t.enumerate_rectangle(Rect(3, 9, 3))
    [KeyPair(x=4, y=1), KeyPair(x=7, y=3), KeyPair(x=9, y=2)]
"""
import enum
import math
import operator
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, List, NamedTuple, Optional

from .errors import DuplicateKey, NotFound, WrongVariant
from .instrument import CountingComparator, OpMetrics

KEY_MIN = -(2**63)
KEY_MAX = 2**63 - 1
DEFAULT_ALPHA = 0.7


class KeyPair(NamedTuple):
    x: int
    y: int


class HeapVariant(enum.Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class Rect:
    """Three-sided query region ``x0 <= x <= x1, y <= y1``."""

    x0: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.x0 > self.x1:
            raise ValueError(f"empty x-range: x0={self.x0} > x1={self.x1}")

    def contains(self, pair):
        return self.x0 <= pair[0] <= self.x1 and pair[1] <= self.y1


class PstNode:
    __slots__ = ("pair", "split", "left", "right", "size")

    def __init__(self, pair, split, left=None, right=None, size=1):
        self.pair = pair
        self.split = split
        self.left = left
        self.right = right
        self.size = size

    def __repr__(self):
        return f"PstNode({self.pair!r}, split={self.split}, size={self.size})"


@dataclass(frozen=True)
class InvariantReport:
    ok: bool
    violation: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "OK" if self.ok else f"{self.violation}: {self.detail}"


InvariantReport.OK = InvariantReport(True)


def _check_int(value, name):
    try:
        value = operator.index(value)
    except TypeError:
        raise TypeError(f"{name} must be an integer, got {value!r}") from None
    if not KEY_MIN <= value <= KEY_MAX:
        raise OverflowError(f"{name}={value} outside the signed 64-bit range")
    return value


def _as_pair(pair):
    x, y = pair
    x = _check_int(x, "x")
    y = _check_int(y, "y")
    if y < 0:
        raise ValueError(f"priority must be non-negative, got {y}")
    return KeyPair(x, y)


class Pst:
    """Priority search tree with weight-balanced partial rebuilding.

    Parameters
    ----------
    variant : HeapVariant
        ``MIN`` keeps the smallest ``y`` at the root, ``MAX`` the largest.
        The geometric queries (``min_x_in_rectangle`` and friends) require
        the min variant.
    alpha : float
        Weight-balance threshold in (0.5, 1). No child may hold more than
        ``alpha`` of its parent's subtree size.
    comparator : CountingComparator, optional
        Receives every key comparison. A private one is created if omitted.
    """

    def __init__(self, variant=HeapVariant.MIN, alpha=DEFAULT_ALPHA, comparator=None):
        if not 0.5 < alpha < 1:
            raise ValueError(f"alpha must lie in (0.5, 1), got {alpha}")
        self.variant = HeapVariant(variant)
        self.alpha = alpha
        self.comparator = comparator if comparator is not None else CountingComparator()
        self.metrics = OpMetrics()
        self.root: Optional[PstNode] = None
        self.rebuilds = 0
        # wins(a, b): pair with priority a displaces an incumbent with priority b
        self._wins = operator.lt if self.variant is HeapVariant.MIN else operator.gt

    @classmethod
    def from_pairs(cls, pairs: Iterable, **kwargs) -> "Pst":
        """Bulk-build a perfectly balanced tree from distinct-x pairs."""
        tree = cls(**kwargs)
        items = [_as_pair(p) for p in pairs]
        if len({p.x for p in items}) != len(items):
            raise DuplicateKey("duplicate x in bulk build")
        tree.root = tree._build(tree._sorted_by_x(items))
        return tree

    def __len__(self):
        return self.root.size if self.root is not None else 0

    def __iter__(self):
        """Pairs in ascending x order."""
        return iter(sorted(self._collect(self.root)))

    def __contains__(self, x):
        return self._find_path(x) is not None

    def __repr__(self):
        return f"Pst(variant={self.variant.value}, size={len(self)}, height={self.height()})"

    def height(self):
        def h(node):
            if node is None:
                return 0
            return 1 + max(h(node.left), h(node.right))

        return h(self.root)

    def get(self, x) -> Optional[KeyPair]:
        path = self._find_path(x)
        return path[-1].pair if path else None

    # -- updates -----------------------------------------------------------

    def insert(self, pair) -> None:
        """Insert ``pair``; raises :class:`DuplicateKey` if its x is stored."""
        pair = _as_pair(pair)
        self.metrics.reset()
        if self._find_path(pair.x) is not None:
            raise DuplicateKey(f"x={pair.x} already present")
        self._insert_absent(pair)

    def delete(self, x) -> KeyPair:
        """Remove and return the pair stored under ``x``."""
        x = _check_int(x, "x")
        self.metrics.reset()
        path = self._find_path(x)
        if path is None:
            raise NotFound(f"x={x} not present")
        return self._remove_at(path)[0]

    def rebuild(self):
        """Rebuild the whole tree. Afterwards every node's right subtree has
        the same size as its left one or one fewer."""
        self.root = self._rebuild_subtree(self.root)

    # -- queries (min variant only) ------------------------------------------

    def min_x_in_rectangle(self, rect: Rect) -> Optional[KeyPair]:
        """Pair with the smallest x inside ``rect``, or None."""
        self._require_min()
        self.metrics.reset()
        if self.root is None:
            return None
        return self._min_x(self.root, rect.x0, rect.x1, rect.y1)

    def min_y_in_x_range(self, x0, x1) -> Optional[KeyPair]:
        """Pair with the smallest y among ``x0 <= x <= x1``; ties go to the
        smaller x."""
        self._require_min()
        if x0 > x1:
            raise ValueError(f"empty x-range: x0={x0} > x1={x1}")
        self.metrics.reset()
        if self.root is None:
            return None
        cmp = self.comparator.compare
        metrics = self.metrics
        best_y = None
        stack = [self.root]
        while stack:
            node = stack.pop()
            metrics.nodes_visited += 1
            pair = node.pair
            if best_y is not None and pair.y >= best_y:
                continue
            if cmp(x0, pair.x) <= 0 and cmp(pair.x, x1) <= 0:
                # descendants cannot go below this y
                best_y = pair.y
                continue
            if node.right is not None and cmp(x1, node.split) > 0:
                stack.append(node.right)
            if node.left is not None and cmp(x0, node.split) <= 0:
                stack.append(node.left)
        if best_y is None:
            return None
        return self._min_x(self.root, x0, x1, best_y)

    def enumerate_rectangle(self, rect: Rect) -> List[KeyPair]:
        """All pairs inside ``rect`` in ascending x order."""
        self._require_min()
        self.metrics.reset()
        if self.root is None:
            return []
        cmp = self.comparator.compare
        metrics = self.metrics
        x0, x1, y1 = rect.x0, rect.x1, rect.y1
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            metrics.nodes_visited += 1
            pair = node.pair
            if pair.y > y1:
                continue
            if cmp(x0, pair.x) <= 0 and cmp(pair.x, x1) <= 0:
                out.append(pair)
            if node.right is not None and cmp(x1, node.split) > 0:
                stack.append(node.right)
            if node.left is not None and cmp(x0, node.split) <= 0:
                stack.append(node.left)
        out.sort()
        return out

    # -- diagnostics -----------------------------------------------------------

    def check_invariants(self) -> InvariantReport:
        """Walk the whole tree and report the first broken invariant."""
        if self.root is None:
            return InvariantReport.OK
        wins = self._wins
        seen = set()
        # (node, lo, hi, depth): pairs and splits below must satisfy lo < v <= hi
        stack = [(self.root, None, None, 1)]
        height = 0
        while stack:
            node, lo, hi, depth = stack.pop()
            height = max(height, depth)
            x, y = node.pair
            if y < 0:
                return InvariantReport(False, "PriorityViolation", f"negative y at {node!r}")
            if x in seen:
                return InvariantReport(False, "DuplicateViolation", f"x={x} stored twice")
            seen.add(x)
            if (lo is not None and x <= lo) or (hi is not None and x > hi):
                return InvariantReport(
                    False, "ResidencyViolation", f"{node!r} outside interval ({lo}, {hi}]"
                )
            s = node.split
            if (lo is not None and s <= lo) or (hi is not None and s > hi):
                return InvariantReport(
                    False, "SplitOrderViolation", f"{node!r} split outside ({lo}, {hi}]"
                )
            ls = node.left.size if node.left is not None else 0
            rs = node.right.size if node.right is not None else 0
            if node.size != 1 + ls + rs:
                return InvariantReport(False, "SizeViolation", f"{node!r} children sum to {ls + rs}")
            if max(ls, rs) > self.alpha * node.size:
                return InvariantReport(
                    False, "BalanceViolation", f"{node!r} children {ls}/{rs} exceed alpha={self.alpha}"
                )
            for child in (node.left, node.right):
                if child is not None and wins(child.pair.y, y):
                    return InvariantReport(
                        False, "HeapViolation", f"child {child!r} outranks parent {node!r}"
                    )
            if node.right is not None:
                stack.append((node.right, s, hi, depth + 1))
            if node.left is not None:
                stack.append((node.left, lo, s, depth + 1))
        bound = self.height_bound(self.root.size)
        if height > bound:
            return InvariantReport(
                False, "HeightViolation", f"height {height} > {bound:.2f} for size {self.root.size}"
            )
        return InvariantReport.OK

    def height_bound(self, size):
        return math.log(size) / math.log(1 / self.alpha) + 2 if size > 0 else 0

    def dump(self) -> str:
        """Preorder listing, one ``depth x y split size`` line per node."""
        lines = []
        stack = [(self.root, 0)] if self.root is not None else []
        while stack:
            node, depth = stack.pop()
            lines.append(f"{depth} {node.pair.x} {node.pair.y} {node.split} {node.size}")
            if node.right is not None:
                stack.append((node.right, depth + 1))
            if node.left is not None:
                stack.append((node.left, depth + 1))
        return "\n".join(lines)

    # -- internals -----------------------------------------------------------

    def _require_min(self):
        if self.variant is not HeapVariant.MIN:
            raise WrongVariant("geometric queries need a min-variant tree")

    def _find_path(self, x):
        """Root-to-node path ending at the node holding ``x``, or None.

        Two counted comparisons per node passed: equality with the resident
        pair, then routing against the split key.
        """
        cmp = self.comparator.compare
        metrics = self.metrics
        path = []
        node = self.root
        while node is not None:
            metrics.nodes_visited += 1
            path.append(node)
            if cmp(x, node.pair.x) == 0:
                return path
            node = node.left if cmp(x, node.split) <= 0 else node.right
        return None

    def _insert_absent(self, pair, start=None):
        """Tournament descent for a pair whose x is known to be absent.

        ``start`` is an optional root-to-node path to resume from; the pair
        must route through it and must not outrank anything above its end.
        Returns True when a rebuild happened.
        """
        if self.root is None:
            self.root = PstNode(pair, pair.x)
            return False
        cmp = self.comparator.compare
        wins = self._wins
        if start:
            path = start[:-1]
            for node in path:
                node.size += 1
            node = start[-1]
        else:
            path = []
            node = self.root
        carried = pair
        while True:
            path.append(node)
            node.size += 1
            if wins(carried.y, node.pair.y):
                carried, node.pair = node.pair, carried
            if cmp(carried.x, node.split) <= 0:
                if node.left is None:
                    node.left = PstNode(carried, carried.x)
                    break
                node = node.left
            else:
                if node.right is None:
                    node.right = PstNode(carried, carried.x)
                    break
                node = node.right
        return self._rebalance(path)

    def _remove_at(self, path):
        """Remove the pair at ``path[-1]`` by pulling heap winners up.

        Returns the removed pair and whether a rebuild followed.
        """
        node = path[-1]
        removed = node.pair
        wins = self._wins
        while True:
            left, right = node.left, node.right
            if left is None and right is None:
                break
            if right is None or (left is not None and not wins(right.pair.y, left.pair.y)):
                child = left
            else:
                child = right
            node.pair = child.pair
            path.append(child)
            node = child
        for n in path:
            n.size -= 1
        path.pop()
        if not path:
            self.root = None
        else:
            parent = path[-1]
            if parent.left is node:
                parent.left = None
            else:
                parent.right = None
        return removed, self._rebalance(path)

    def _rebalance(self, path):
        limit = self.alpha
        for i, node in enumerate(path):
            size = node.size
            ls = node.left.size if node.left is not None else 0
            rs = node.right.size if node.right is not None else 0
            if ls > limit * size or rs > limit * size:
                rebuilt = self._rebuild_subtree(node)
                if i == 0:
                    self.root = rebuilt
                elif path[i - 1].left is node:
                    path[i - 1].left = rebuilt
                else:
                    path[i - 1].right = rebuilt
                self.metrics.restructured = True
                return True
        return False

    def _rebuild_subtree(self, node):
        if node is None:
            return None
        self.rebuilds += 1
        before = self.comparator.comparisons
        pairs = self._merge_sorted(node)
        self.metrics.rebuild_comparisons += self.comparator.comparisons - before
        return self._build(pairs)

    def _merge_sorted(self, node):
        """Pairs of a subtree in x order.

        Split keys already order the two child subtrees, so each resident
        pair only needs one routing comparison plus a binary search into
        its side. In a balanced subtree that totals O(size) comparisons.
        """
        if node is None:
            return []
        cmp = self.comparator.compare
        lower = self._merge_sorted(node.left)
        upper = self._merge_sorted(node.right)
        pair = node.pair
        side = lower if cmp(pair.x, node.split) <= 0 else upper
        lo, hi = 0, len(side)
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp(side[mid].x, pair.x) < 0:
                lo = mid + 1
            else:
                hi = mid
        side.insert(lo, pair)
        lower.extend(upper)
        return lower

    def _sorted_by_x(self, pairs):
        cmp = self.comparator.compare
        return sorted(pairs, key=cmp_to_key(lambda a, b: cmp(a.x, b.x)))

    @staticmethod
    def _collect(node):
        out = []
        stack = [node] if node is not None else []
        while stack:
            n = stack.pop()
            out.append(n.pair)
            if n.left is not None:
                stack.append(n.left)
            if n.right is not None:
                stack.append(n.right)
        return out

    def _build(self, pairs):
        """Balanced subtree from x-sorted pairs: heap winner at the root, the
        rest halved by x with the left half taking the extra element."""
        if not pairs:
            return None
        pick = min if self.variant is HeapVariant.MIN else max
        i = pick(range(len(pairs)), key=lambda j: pairs[j].y)
        top = pairs[i]
        rest = pairs[:i] + pairs[i + 1 :]
        half = (len(rest) + 1) // 2
        lower, upper = rest[:half], rest[half:]
        split = lower[-1].x if lower else top.x
        return PstNode(top, split, self._build(lower), self._build(upper), len(pairs))

    def _min_x(self, node, x0, x1, y1):
        cmp = self.comparator.compare
        self.metrics.nodes_visited += 1
        pair = node.pair
        if pair.y > y1:
            return None
        best = pair if cmp(x0, pair.x) <= 0 and cmp(pair.x, x1) <= 0 else None
        split = node.split
        if node.left is not None and cmp(x0, split) <= 0:
            found = self._min_x(node.left, x0, x1, y1)
            if found is not None:
                # everything to the right has x > split >= found.x
                return found if best is None or cmp(found.x, best.x) < 0 else best
        if best is not None and cmp(best.x, split) <= 0:
            return best
        if node.right is not None and cmp(x1, split) > 0:
            found = self._min_x(node.right, x0, x1, y1)
            if found is not None and (best is None or cmp(found.x, best.x) < 0):
                return found
        return best
