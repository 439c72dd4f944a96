"""Clustering evaluation (Rand index) and wall-time benchmarking."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ClusterAssignment, Dataset


@dataclass(frozen=True)
class BenchReport:
    """One benchmark row: an algorithm's timing and scores on one dataset."""

    algorithm: str
    dataset: str
    wall_time: float
    rand_index: float | None
    cluster_count: int
    noise_count: int

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "dataset": self.dataset,
            "wall_time_s": self.wall_time,
            "rand_index": self.rand_index,
            "cluster_count": self.cluster_count,
            "noise_count": self.noise_count,
        }


def rand_index(labels_a, labels_b) -> float:
    """Fraction of point pairs on which two labellings agree.

    A pair agrees when both labellings put it together or both apart.  The
    noise label -1 is compared literally, like any other label.  Counting is
    exact integer arithmetic over the label contingency table.
    """
    a = np.asarray(labels_a).ravel()
    b = np.asarray(labels_b).ravel()
    if a.size != b.size:
        raise ValueError(f"label vectors differ in length: {a.size} vs {b.size}")
    n = a.size
    if n < 2:
        raise ValueError("rand_index needs at least 2 points")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    cont = np.zeros((int(ai.max()) + 1, int(bi.max()) + 1), dtype=np.int64)
    np.add.at(cont, (ai, bi), 1)
    same_both = sum(math.comb(int(v), 2) for v in cont.ravel() if v > 1)
    same_a = sum(math.comb(int(v), 2) for v in cont.sum(axis=1))
    same_b = sum(math.comb(int(v), 2) for v in cont.sum(axis=0))
    total = math.comb(n, 2)
    return (total + 2 * same_both - same_a - same_b) / total


def benchmark(runner: Callable[[Dataset], ClusterAssignment], dataset: Dataset,
              repetitions: int = 1, algorithm: str = "", dataset_name: str = "") -> BenchReport:
    """Time a clustering runner end to end.

    Reports the median wall time over ``repetitions`` runs (data loading and
    generation excluded: the dataset is already in memory).  Scores come from
    the first run; the runners here are deterministic, so reruns agree.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    times = []
    assignment = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = runner(dataset)
        times.append(time.perf_counter() - t0)
        if assignment is None:
            assignment = result
    ri = None
    if dataset.labels is not None:
        ri = rand_index(dataset.labels, assignment.labels)
    return BenchReport(
        algorithm=algorithm,
        dataset=dataset_name,
        wall_time=statistics.median(times),
        rand_index=ri,
        cluster_count=assignment.cluster_count,
        noise_count=assignment.noise_count,
    )
