"""Instrumented comparison baselines: a top-down splay tree and an AVL tree.

Both count one unit per three-way key comparison through a shared
:class:`~adaptive_pst.instrument.CountingComparator`. AVL rebalancing reads
stored heights only, so its comparison count is exactly the search depth.
"""
from .errors import DuplicateKey, NotFound
from .instrument import CountingComparator, OpMetrics
from .pst import InvariantReport


class _Node:
    __slots__ = ("key", "left", "right")

    def __init__(self, key):
        self.key = key
        self.left = None
        self.right = None


def _inorder(node):
    out = []
    stack = []
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        out.append(node.key)
        node = node.right
    return out


def _height(node):
    if node is None:
        return 0
    return 1 + max(_height(node.left), _height(node.right))


def _check_bst_order(root):
    keys = _inorder(root)
    for a, b in zip(keys, keys[1:]):
        if not a < b:
            return InvariantReport(False, "OrderViolation", f"in-order keys {a} then {b}")
    return InvariantReport.OK


class SplayTree:
    """Sleator-Tarjan splay tree using top-down splaying."""

    def __init__(self, comparator=None):
        self.comparator = comparator if comparator is not None else CountingComparator()
        self.metrics = OpMetrics()
        self.root = None
        self._size = 0

    def __len__(self):
        return self._size

    def __iter__(self):
        return iter(_inorder(self.root))

    def keys(self):
        return _inorder(self.root)

    def height(self):
        return _height(self.root)

    def _splay(self, key):
        """Splay ``key`` (or the last node on its search path) to the root.

        Returns the three-way comparison of ``key`` with the new root key.
        """
        cmp = self.comparator.compare
        metrics = self.metrics
        t = self.root
        header = _Node(None)
        left = right = header
        while True:
            metrics.nodes_visited += 1
            c = cmp(key, t.key)
            if c < 0:
                if t.left is None:
                    break
                if cmp(key, t.left.key) < 0:
                    y = t.left
                    t.left = y.right
                    y.right = t
                    t = y
                    if t.left is None:
                        break
                right.left = t
                right = t
                t = t.left
            elif c > 0:
                if t.right is None:
                    break
                if cmp(key, t.right.key) > 0:
                    y = t.right
                    t.right = y.left
                    y.left = t
                    t = y
                    if t.right is None:
                        break
                left.right = t
                left = t
                t = t.right
            else:
                break
        left.right = t.left
        right.left = t.right
        t.left = header.right
        t.right = header.left
        self.root = t
        return c

    def search(self, key):
        self.metrics.reset()
        if self.root is None:
            return False
        return self._splay(key) == 0

    def insert(self, key):
        self.metrics.reset()
        node = _Node(key)
        if self.root is None:
            self.root = node
            self._size = 1
            return
        c = self._splay(key)
        if c == 0:
            raise DuplicateKey(f"key {key} already present")
        root = self.root
        if c < 0:
            node.left = root.left
            node.right = root
            root.left = None
        else:
            node.right = root.right
            node.left = root
            root.right = None
        self.root = node
        self._size += 1

    def delete(self, key):
        self.metrics.reset()
        if self.root is None or self._splay(key) != 0:
            raise NotFound(f"key {key} not present")
        root = self.root
        if root.left is None:
            self.root = root.right
        else:
            self.root = root.left
            # key exceeds everything on the left, so this brings up its max
            self._splay(key)
            self.root.right = root.right
        self._size -= 1

    def check_invariants(self):
        return _check_bst_order(self.root)


class _AvlNode:
    __slots__ = ("key", "height", "left", "right")

    def __init__(self, key):
        self.key = key
        self.height = 1
        self.left = None
        self.right = None


def _h(node):
    return node.height if node is not None else 0


def _fix_height(node):
    hl = node.left.height if node.left is not None else 0
    hr = node.right.height if node.right is not None else 0
    node.height = 1 + (hl if hl > hr else hr)


def _rotate_right(node):
    pivot = node.left
    node.left = pivot.right
    pivot.right = node
    _fix_height(node)
    _fix_height(pivot)
    return pivot


def _rotate_left(node):
    pivot = node.right
    node.right = pivot.left
    pivot.left = node
    _fix_height(node)
    _fix_height(pivot)
    return pivot


def _rebalance(node):
    _fix_height(node)
    balance = _h(node.left) - _h(node.right)
    if balance > 1:
        if _h(node.left.left) < _h(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if balance < -1:
        if _h(node.right.right) < _h(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


class BalancedBst:
    """AVL tree. Height bookkeeping only; no key comparisons on rebalance."""

    def __init__(self, comparator=None):
        self.comparator = comparator if comparator is not None else CountingComparator()
        self.metrics = OpMetrics()
        self.root = None
        self._size = 0

    def __len__(self):
        return self._size

    def __iter__(self):
        return iter(_inorder(self.root))

    def keys(self):
        return _inorder(self.root)

    def height(self):
        return _h(self.root)

    def search(self, key):
        cmp = self.comparator.compare
        metrics = self.metrics
        metrics.reset()
        node = self.root
        while node is not None:
            metrics.nodes_visited += 1
            c = cmp(key, node.key)
            if c == 0:
                return True
            node = node.left if c < 0 else node.right
        return False

    __contains__ = search

    def insert(self, key):
        self.metrics.reset()
        self.root = self._insert(self.root, key)
        self._size += 1

    def _insert(self, node, key):
        if node is None:
            return _AvlNode(key)
        self.metrics.nodes_visited += 1
        c = self.comparator.compare(key, node.key)
        if c < 0:
            node.left = self._insert(node.left, key)
        elif c > 0:
            node.right = self._insert(node.right, key)
        else:
            raise DuplicateKey(f"key {key} already present")
        return _rebalance(node)

    def delete(self, key):
        self.metrics.reset()
        self.root = self._delete(self.root, key)
        self._size -= 1

    def _delete(self, node, key):
        if node is None:
            raise NotFound(f"key {key} not present")
        self.metrics.nodes_visited += 1
        c = self.comparator.compare(key, node.key)
        if c < 0:
            node.left = self._delete(node.left, key)
        elif c > 0:
            node.right = self._delete(node.right, key)
        else:
            if node.left is None:
                return node.right
            if node.right is None:
                return node.left
            node.right, successor = self._pop_min(node.right)
            successor.left = node.left
            successor.right = node.right
            node = successor
        return _rebalance(node)

    def _pop_min(self, node):
        if node.left is None:
            return node.right, node
        node.left, smallest = self._pop_min(node.left)
        return _rebalance(node), smallest

    def check_invariants(self):
        report = _check_bst_order(self.root)
        if not report:
            return report
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            hl, hr = _height(node.left), _height(node.right)
            if node.height != 1 + max(hl, hr):
                return InvariantReport(False, "HeightViolation", f"stale height at key {node.key}")
            if abs(hl - hr) > 1:
                return InvariantReport(False, "BalanceViolation", f"|{hl} - {hr}| > 1 at key {node.key}")
            stack.extend(c for c in (node.left, node.right) if c is not None)
        return InvariantReport.OK
