"""Comparison counting shared by every tree in the package.

All key-ordering decisions go through :meth:`CountingComparator.compare`,
which returns a three-way result and bumps a counter by exactly one.
"""
from dataclasses import dataclass

LESS = -1
EQUAL = 0
GREATER = 1


class CountingComparator:
    """Three-way key comparator that counts its own invocations."""

    __slots__ = ("comparisons",)

    def __init__(self):
        self.comparisons = 0

    def compare(self, a, b):
        self.comparisons += 1
        return (a > b) - (a < b)

    def snapshot_and_reset(self):
        count = self.comparisons
        self.comparisons = 0
        return count

    def __repr__(self):
        return f"CountingComparator(comparisons={self.comparisons})"


class RecordingComparator(CountingComparator):
    """Comparator that also keeps every (a, b) argument pair, for audits."""

    __slots__ = ("calls",)

    def __init__(self):
        super().__init__()
        self.calls = []

    def compare(self, a, b):
        self.calls.append((a, b))
        return super().compare(a, b)


@dataclass
class OpMetrics:
    """Per-operation counters; trees reset these at the start of each op.

    ``rebuild_comparisons`` is the share of the operation's comparisons spent
    on partial rebuilding, which is amortized rather than per-op bounded.
    """

    comparisons_this_op: int = 0
    nodes_visited: int = 0
    restructured: bool = False
    rebuild_comparisons: int = 0

    def reset(self):
        self.comparisons_this_op = 0
        self.nodes_visited = 0
        self.restructured = False
        self.rebuild_comparisons = 0
