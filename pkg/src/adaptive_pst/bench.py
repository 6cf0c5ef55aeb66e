"""Comparison-count benchmark over AAPST, splay and AVL trees.

For every (n, p, seed) cell the dataset and query stream are generated once
and replayed against each requested structure. Build-phase comparisons are
discarded; only the query phase is measured.
"""
import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .aapst import Aapst
from .baselines import BalancedBst, SplayTree
from .pst import DEFAULT_ALPHA
from .workload import QueryStream, WorkloadSpec, adversarial_sequence, build_dataset

STRUCTURES = ("aapst", "splay", "avl")
DEFAULT_N_LIST = tuple(2**k for k in range(10, 18))
DEFAULT_P_LIST = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_ADVERSARIAL_N = tuple(2**k for k in range(8, 15))

CSV_HEADER = (
    "structure",
    "n",
    "p",
    "seed",
    "m",
    "total_comparisons",
    "avg_comparisons_per_query",
    "max_comparisons_single_query",
    "restructure_count",
    "wall_time_ns",
)


@dataclass
class TrialResult:
    structure: str
    n: int
    p: Optional[float]
    seed: int
    m: int
    total_comparisons: int
    max_comparisons_single_query: int
    restructure_count: Optional[int] = None
    wall_time_ns: int = 0

    @property
    def avg_comparisons_per_query(self):
        return self.total_comparisons / self.m if self.m else 0.0

    def as_row(self):
        return {
            "structure": self.structure,
            "n": self.n,
            "p": "" if self.p is None else repr(float(self.p)),
            "seed": self.seed,
            "m": self.m,
            "total_comparisons": self.total_comparisons,
            "avg_comparisons_per_query": f"{self.avg_comparisons_per_query:.4f}",
            "max_comparisons_single_query": self.max_comparisons_single_query,
            "restructure_count": "" if self.restructure_count is None else self.restructure_count,
            "wall_time_ns": self.wall_time_ns,
        }


@dataclass
class BenchConfig:
    n_list: Sequence[int] = DEFAULT_N_LIST
    p_list: Sequence[float] = DEFAULT_P_LIST
    queries_per_key: int = 16
    seeds: int = 5
    base_seed: int = 0
    structures: Sequence[str] = STRUCTURES
    alpha: float = DEFAULT_ALPHA
    siftup_opt: bool = False
    jobs: int = 1

    def __post_init__(self):
        unknown = set(self.structures) - set(STRUCTURES)
        if unknown:
            raise ValueError(f"unknown structures: {sorted(unknown)}")
        if not self.structures:
            raise ValueError("no structures selected")
        if any(n < 1 for n in self.n_list):
            raise ValueError("every n must be >= 1")
        if any(not 0.0 <= p <= 1.0 for p in self.p_list):
            raise ValueError("every p must lie in [0, 1]")
        if self.queries_per_key < 0:
            raise ValueError("queries-per-key must be >= 0")
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        if not 0.5 < self.alpha < 1:
            raise ValueError("alpha must lie in (0.5, 1)")

    def seed_values(self):
        return [self.base_seed + i for i in range(self.seeds)]


class _Driver:
    """Uniform insert/access surface over the three structures."""

    def __init__(self, structure, alpha=DEFAULT_ALPHA, siftup_opt=False):
        self.structure = structure
        if structure == "aapst":
            self.tree = Aapst(alpha=alpha, siftup_opt=siftup_opt)
            self.insert = self.tree.insert_key
            self.access = self.tree.query
        elif structure == "splay":
            self.tree = SplayTree()
            self.insert = self.tree.insert
            self.access = self.tree.search
        elif structure == "avl":
            self.tree = BalancedBst()
            self.insert = self.tree.insert
            self.access = self.tree.search
        else:
            raise ValueError(f"unknown structure {structure!r}")
        self.comparator = self.tree.comparator

    def restructures(self):
        return self.tree.restructures if self.structure == "aapst" else None


def run_trial(structure, spec, dataset, queries, alpha=DEFAULT_ALPHA, siftup_opt=False):
    driver = _Driver(structure, alpha, siftup_opt)
    for key in dataset.keys:
        driver.insert(key)
    comparator = driver.comparator
    comparator.snapshot_and_reset()
    access = driver.access
    total = worst = 0
    start = time.perf_counter_ns()
    for key in queries:
        if not access(key):
            raise RuntimeError(f"{structure}: stored key {key} not found")
        c = comparator.comparisons
        comparator.comparisons = 0
        total += c
        if c > worst:
            worst = c
    wall = time.perf_counter_ns() - start
    return TrialResult(
        structure=structure,
        n=spec.n,
        p=spec.p,
        seed=spec.seed,
        m=len(queries),
        total_comparisons=total,
        max_comparisons_single_query=worst,
        restructure_count=driver.restructures(),
        wall_time_ns=wall,
    )


def _run_cell(args):
    n, p, seed, m, structures, alpha, siftup_opt = args
    spec = WorkloadSpec(n=n, p=p, m=m, seed=seed)
    dataset = build_dataset(n, seed)
    queries = QueryStream(spec, dataset).take()
    return [run_trial(s, spec, dataset, queries, alpha, siftup_opt) for s in structures]


def _sort_key(structures):
    order = {s: i for i, s in enumerate(structures)}
    return lambda r: (order[r.structure], r.n, -1.0 if r.p is None else r.p, r.seed)


def run_bench(config: BenchConfig) -> List[TrialResult]:
    cells = [
        (n, float(p), seed, config.queries_per_key * n, tuple(config.structures), config.alpha, config.siftup_opt)
        for n in config.n_list
        for p in config.p_list
        for seed in config.seed_values()
    ]
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(_run_cell, cells))
    else:
        batches = [_run_cell(c) for c in cells]
    rows = [r for batch in batches for r in batch]
    rows.sort(key=_sort_key(config.structures))
    return rows


def run_adversarial(n_list=DEFAULT_ADVERSARIAL_N, structures=("aapst", "splay"), alpha=DEFAULT_ALPHA, siftup_opt=False):
    """Replay the ascending-insert / min-query sequence; one row per (structure, n)."""
    rows = []
    for structure in structures:
        for n in n_list:
            driver = _Driver(structure, alpha, siftup_opt)
            comparator = driver.comparator
            worst = total = queries = wall = 0
            for op, key in adversarial_sequence(n):
                if op == "insert":
                    driver.insert(key)
                    comparator.comparisons = 0
                    continue
                start = time.perf_counter_ns()
                driver.access(key)
                wall += time.perf_counter_ns() - start
                c = comparator.snapshot_and_reset()
                total += c
                queries += 1
                worst = max(worst, c)
            rows.append(
                TrialResult(
                    structure=structure,
                    n=n,
                    p=None,
                    seed=0,
                    m=queries,
                    total_comparisons=total,
                    max_comparisons_single_query=worst,
                    restructure_count=driver.restructures(),
                    wall_time_ns=wall,
                )
            )
    return rows


def write_csv(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_row())


def to_csv(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def mean_avg_by_cell(rows):
    """Mean over seeds of the per-query average, keyed by (structure, n, p)."""
    acc = {}
    for r in rows:
        acc.setdefault((r.structure, r.n, r.p), []).append(r.avg_comparisons_per_query)
    return {k: sum(v) / len(v) for k, v in acc.items()}


def write_plot_data(rows, directory, structures=STRUCTURES):
    """One gnuplot data file per p: ``n`` followed by each structure's mean."""
    os.makedirs(directory, exist_ok=True)
    means = mean_avg_by_cell(rows)
    present = [s for s in structures if any(k[0] == s for k in means)]
    paths = []
    for p in sorted({k[2] for k in means}):
        path = os.path.join(directory, f"p_{p:.2f}.dat")
        with open(path, "w") as fh:
            fh.write("# n " + " ".join(present) + "\n")
            for n in sorted({k[1] for k in means if k[2] == p}):
                cols = [f"{means[(s, n, p)]:.4f}" if (s, n, p) in means else "nan" for s in present]
                fh.write(f"{n} " + " ".join(cols) + "\n")
        paths.append(path)
    return paths
