"""Priority search trees, the access-adaptive PST, and instrumented baselines."""
from .aapst import Aapst
from .baselines import BalancedBst, SplayTree
from .errors import DuplicateKey, NotFound, TreeError, WrongVariant
from .instrument import EQUAL, GREATER, LESS, CountingComparator, OpMetrics
from .pst import HeapVariant, InvariantReport, KeyPair, Pst, PstNode, Rect
from .workload import QueryStream, WorkloadSpec, adversarial_sequence, build_dataset

__version__ = "0.1.0"

__all__ = [
    "Aapst",
    "BalancedBst",
    "CountingComparator",
    "DuplicateKey",
    "EQUAL",
    "GREATER",
    "HeapVariant",
    "InvariantReport",
    "KeyPair",
    "LESS",
    "NotFound",
    "OpMetrics",
    "Pst",
    "PstNode",
    "QueryStream",
    "Rect",
    "SplayTree",
    "TreeError",
    "WorkloadSpec",
    "WrongVariant",
    "adversarial_sequence",
    "build_dataset",
]
