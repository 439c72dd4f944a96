"""Core types and the primitive ball computations.

A granular ball summarizes a group of points by the mean of its members
(the center) and the maximum member-to-center distance (the radius).  Ball
quality is the average member-to-center distance: the smaller, the tighter.
All distances are Euclidean (L2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

# Label given to points not assigned to any cluster.
NOISE = -1


@dataclass(frozen=True, eq=False)
class Dataset:
    """A fixed set of d-dimensional points with optional ground-truth labels.

    ``points`` is coerced to a float64 array of shape (n, d) with n >= 1;
    every coordinate must be finite.  ``labels``, when given, holds one
    integer per point.
    """

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("points must form a non-empty (n, d) array")
        if not np.isfinite(pts).all():
            raise ValueError("points must contain only finite coordinates")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise ValueError("labels must have exactly one entry per point")
            object.__setattr__(self, "labels", lab)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class GranularBall:
    """A ball over a subset of dataset points.

    members:      sorted array of point indices (never empty)
    center:       arithmetic mean of the member points
    radius:       maximum member-to-center distance
    sum_radius:   sum of member-to-center distances
    avg_distance: sum_radius / member count (the quality measure)
    """

    members: np.ndarray
    center: np.ndarray
    radius: float
    sum_radius: float
    avg_distance: float

    @property
    def size(self) -> int:
        return self.members.size


@dataclass(eq=False)
class BallSet:
    """The final partition of a dataset into balls.

    ``overlap_counts[i]`` is the number of other non-noise balls whose region
    intersects ball i (zero until the differentiation stage fills it in).
    ``noise_ball_flags[i]`` marks single-point balls, which sit out of the
    merging stage.
    """

    balls: list[GranularBall]
    overlap_counts: np.ndarray | None = None
    noise_ball_flags: np.ndarray | None = None

    def __post_init__(self):
        m = len(self.balls)
        if self.overlap_counts is None:
            self.overlap_counts = np.zeros(m, dtype=np.int64)
        if self.noise_ball_flags is None:
            self.noise_ball_flags = np.array([b.size == 1 for b in self.balls], dtype=bool)

    def __len__(self) -> int:
        return len(self.balls)


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """Per-point cluster labels: -1 marks noise, clusters are 0..K-1."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", lab)
        real = np.unique(lab[lab != NOISE])
        if real.size and (real[0] != 0 or real[-1] != real.size - 1):
            raise ValueError("cluster labels must be contiguous from 0")

    @property
    def cluster_count(self) -> int:
        return int(np.unique(self.labels[self.labels != NOISE]).size)

    @property
    def noise_count(self) -> int:
        return int(np.count_nonzero(self.labels == NOISE))

    def __len__(self) -> int:
        return self.labels.size


def fit_ball(dataset: Dataset, members: Iterable[int]) -> GranularBall:
    """Fit a ball to the given member indices.

    Members are deduplicated and summed in ascending index order, so fitting
    the same member set twice is bit-for-bit reproducible.
    """
    idx = np.unique(np.fromiter(members, dtype=np.int64))
    if idx.size == 0:
        raise ValueError("cannot fit a ball to an empty member set")
    if idx[0] < 0 or idx[-1] >= len(dataset):
        raise ValueError(f"member index out of range for dataset of size {len(dataset)}")
    pts = dataset.points[idx]
    center = pts.mean(axis=0)
    dists = np.sqrt(((pts - center) ** 2).sum(axis=1))
    sum_radius = float(dists.sum())
    return GranularBall(
        members=idx,
        center=center,
        radius=float(dists.max()),
        sum_radius=sum_radius,
        avg_distance=sum_radius / idx.size,
    )


def average_distance(ball: GranularBall) -> float:
    """Quality of a ball: mean member-to-center distance (0 for singletons)."""
    return ball.sum_radius / ball.size


def farthest_pair_seed(dataset: Dataset, ball: GranularBall) -> tuple[int, int]:
    """Pick the two split seeds for a ball.

    p1 is the member farthest from the center; p2 the member farthest from
    p1.  Ties break toward the lowest point index, which keeps splitting
    deterministic.
    """
    if ball.size < 2:
        raise ValueError("seed selection needs a ball with at least 2 members")
    pts = dataset.points[ball.members]
    d_center = np.sqrt(((pts - ball.center) ** 2).sum(axis=1))
    p1 = int(ball.members[int(np.argmax(d_center))])
    d_p1 = np.sqrt(((pts - dataset.points[p1]) ** 2).sum(axis=1))
    p2 = int(ball.members[int(np.argmax(d_p1))])
    return p1, p2
