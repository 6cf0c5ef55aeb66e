"""Access-adaptive priority search tree.

Keys live in the x slot of a max-variant :class:`~adaptive_pst.pst.Pst` and
their access counts in the y slot, so frequently accessed keys drift toward
the root while the split keys keep the tree's height logarithmic.

A query finds the key, bumps its count, and if the new count is larger than
the parent's, removes the pair and reinserts it with the new count.
"""
from .errors import DuplicateKey, NotFound
from .pst import DEFAULT_ALPHA, HeapVariant, KeyPair, Pst, _check_int

COUNT_LIMIT = 2**62


class Aapst:
    """Dictionary of integer keys whose layout follows access frequency.

    Inserting a key counts as its first access, so the stored counts always
    sum to :attr:`total_accesses`.

    ``siftup_opt`` starts the reinsertion at the highest ancestor the bumped
    pair outranks instead of at the root. The resulting tree is identical;
    only the routing comparisons above that ancestor are saved.
    """

    def __init__(self, alpha=DEFAULT_ALPHA, comparator=None, siftup_opt=False):
        self.tree = Pst(HeapVariant.MAX, alpha=alpha, comparator=comparator)
        self.comparator = self.tree.comparator
        self.metrics = self.tree.metrics
        self.siftup_opt = siftup_opt
        self.total_accesses = 0
        self.restructures = 0

    def __len__(self):
        return len(self.tree)

    def __iter__(self):
        return (pair.x for pair in self.tree)

    def __repr__(self):
        return f"Aapst(size={len(self)}, total_accesses={self.total_accesses})"

    def count(self, key):
        """Access count of ``key`` without touching it (0 if absent)."""
        pair = self.tree.get(key)
        return pair.y if pair is not None else 0

    def counts(self):
        return {pair.x: pair.y for pair in self.tree}

    def insert_key(self, key):
        key = _check_int(key, "key")
        self.tree.insert(KeyPair(key, 1))
        self.total_accesses += 1

    def delete_key(self, key):
        pair = self.tree.delete(key)
        self.total_accesses -= pair.y

    def contains(self, key):
        self.metrics.reset()
        return self.tree._find_path(key) is not None

    __contains__ = contains

    def query(self, key):
        """Access ``key``. Returns False, without mutating, if it is absent."""
        before = self.comparator.comparisons
        found = self._query(key)
        self.metrics.comparisons_this_op = self.comparator.comparisons - before
        return found

    def _query(self, key):
        tree = self.tree
        tree.metrics.reset()
        path = tree._find_path(key)
        if path is None:
            return False
        node = path[-1]
        x, y = node.pair
        if y + 1 >= COUNT_LIMIT:
            raise OverflowError(f"access count for key {x} reached 2**62")
        y += 1
        self.total_accesses += 1
        if len(path) == 1 or y <= path[-2].pair.y:
            node.pair = KeyPair(x, y)
            return True
        self.restructures += 1
        tree.metrics.restructured = True
        _, rebuilt = tree._remove_at(path[:])
        if self.siftup_opt and not rebuilt:
            # highest ancestor the bumped pair outranks; the path above it is
            # untouched by the removal, which only edits the subtree below
            top = 0
            while path[top].pair.y >= y:
                top += 1
            tree._insert_absent(KeyPair(x, y), start=path[: top + 1])
        else:
            tree._insert_absent(KeyPair(x, y))
        return True

    def check_invariants(self):
        report = self.tree.check_invariants()
        if not report:
            return report
        total = sum(pair.y for pair in self.tree)
        if total != self.total_accesses:
            return type(report)(
                False, "CountViolation", f"stored counts sum to {total}, expected {self.total_accesses}"
            )
        return report

    def keys(self):
        return sorted(self)
