"""Ball differentiation: merge adjacent balls into clusters.

Two balls are adjacent when the gap between their surfaces is below an
adjustment coefficient tau = min(radius) / (1 + min(overlap count)); the more
a ball already overlaps its neighbours, the stricter the criterion gets.
Clusters are the connected components of the adjacency graph over non-noise
balls, found with a disjoint-set union in a single pass.  Singleton (noise)
balls sit out of the merge and are attached to the nearest cluster afterwards
or labelled noise.

Only ball centers and radii enter this stage, never point pairs; the module
counts its distance evaluations so that budget is checkable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NOISE, BallSet, ClusterAssignment, Dataset
from .division import DivisionConfig, DivisionTrace, generate_balls

_DIST_EVALS = 0


def reset_distance_counter() -> None:
    global _DIST_EVALS
    _DIST_EVALS = 0


def distance_evaluations() -> int:
    """Distance evaluations performed by this module since the last reset."""
    return _DIST_EVALS


def _count(n: int) -> None:
    global _DIST_EVALS
    _DIST_EVALS += n


class UnionFind:
    """Disjoint-set union with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def _pairwise_center_distances(centers: np.ndarray) -> np.ndarray:
    """Symmetric center-distance matrix; counts m*(m-1)/2 evaluations."""
    m = centers.shape[0]
    _count(m * (m - 1) // 2)
    diff = centers[:, None, :] - centers[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def count_overlaps(ballset: BallSet, _center_dists: np.ndarray | None = None) -> np.ndarray:
    """Number of other non-noise balls strictly overlapping each ball.

    Noise balls neither overlap nor are overlapped; their count is 0.
    """
    counts = np.zeros(len(ballset), dtype=np.int64)
    live = np.flatnonzero(~ballset.noise_ball_flags)
    if live.size < 2:
        return counts
    radii = np.array([ballset.balls[i].radius for i in live])
    if _center_dists is None:
        centers = np.array([ballset.balls[i].center for i in live])
        _center_dists = _pairwise_center_distances(centers)
    overlap = _center_dists < radii[:, None] + radii[None, :]
    np.fill_diagonal(overlap, False)
    counts[live] = overlap.sum(axis=1)
    return counts


def tau(r_i: float, r_j: float, o_i: int, o_j: int) -> float:
    """Adjacency slack: the smaller radius, shrunk by prior overlap count."""
    return min(r_i, r_j) / (1 + min(o_i, o_j))


def are_adjacent(ball_i, ball_j, o_i: int, o_j: int) -> bool:
    """True when the surface gap between two balls is below their tau."""
    _count(1)
    gap = float(np.sqrt(((ball_i.center - ball_j.center) ** 2).sum())) - (ball_i.radius + ball_j.radius)
    return gap < tau(ball_i.radius, ball_j.radius, o_i, o_j)


@dataclass(frozen=True, eq=False)
class AdjacencyGraph:
    """Undirected adjacency over non-noise balls.

    ``nodes`` are ball indices; ``edges`` hold (i, j) ball-index pairs with
    i < j, so the relation is symmetric by construction and self-loop free.
    """

    nodes: np.ndarray
    edges: list[tuple[int, int]]


def adjacency_graph(ballset: BallSet, _center_dists: np.ndarray | None = None) -> AdjacencyGraph:
    """Evaluate the adjacency criterion over every pair of non-noise balls.

    Requires ballset.overlap_counts to be filled in (two-pass scheme: counts
    first, adjacency second).
    """
    live = np.flatnonzero(~ballset.noise_ball_flags)
    if live.size < 2:
        return AdjacencyGraph(nodes=live, edges=[])
    radii = np.array([ballset.balls[i].radius for i in live])
    overlaps = ballset.overlap_counts[live]
    if _center_dists is None:
        centers = np.array([ballset.balls[i].center for i in live])
        _center_dists = _pairwise_center_distances(centers)
    gaps = _center_dists - (radii[:, None] + radii[None, :])
    slack = np.minimum(radii[:, None], radii[None, :]) / (
        1 + np.minimum(overlaps[:, None], overlaps[None, :]))
    edges = [(int(live[a]), int(live[b]))
             for a, b in zip(*np.nonzero(np.triu(gaps < slack, k=1)))]
    return AdjacencyGraph(nodes=live, edges=edges)


def merge_adjacent(ballset: BallSet, _center_dists: np.ndarray | None = None) -> np.ndarray:
    """Cluster id per ball: connected components of the adjacency graph.

    One disjoint-set pass over the adjacency edges; no iteration.  Components
    are numbered 0..K-1 in order of the smallest ball index they contain;
    noise balls get -1.
    """
    ids = np.full(len(ballset), NOISE, dtype=np.int64)
    graph = adjacency_graph(ballset, _center_dists)
    live = graph.nodes
    if live.size == 0:
        return ids
    pos = {int(ball_idx): p for p, ball_idx in enumerate(live)}
    uf = UnionFind(live.size)
    for i, j in graph.edges:
        uf.union(pos[i], pos[j])
    next_id = 0
    root_to_id: dict[int, int] = {}
    for p, ball_idx in enumerate(live):
        root = uf.find(p)
        if root not in root_to_id:
            root_to_id[root] = next_id
            next_id += 1
        ids[ball_idx] = root_to_id[root]
    return ids


def assign_noise(dataset: Dataset, ballset: BallSet, ball_cluster_ids: np.ndarray) -> ClusterAssignment:
    """Turn ball cluster ids into per-point labels.

    Points of noise balls join the cluster of the nearest non-noise ball
    (nearest by gap: point-to-center distance minus radius) when that gap is
    within the mean non-noise radius; otherwise they are labelled -1.
    """
    labels = np.full(len(dataset), NOISE, dtype=np.int64)
    live = np.flatnonzero(~ballset.noise_ball_flags)
    for i in live:
        labels[ballset.balls[i].members] = ball_cluster_ids[i]
    noise_idx = np.flatnonzero(ballset.noise_ball_flags)
    if live.size == 0 or noise_idx.size == 0:
        return ClusterAssignment(labels=labels)
    centers = np.array([ballset.balls[i].center for i in live])
    radii = np.array([ballset.balls[i].radius for i in live])
    mean_radius = float(radii.mean())
    for i in noise_idx:
        for p in ballset.balls[i].members:
            _count(live.size)
            gaps = np.sqrt(((centers - dataset.points[p]) ** 2).sum(axis=1)) - radii
            nearest = int(np.argmin(gaps))
            if gaps[nearest] <= mean_radius:
                labels[p] = ball_cluster_ids[live[nearest]]
    return ClusterAssignment(labels=labels)


def cluster(dataset: Dataset, config: DivisionConfig | None = None,
            trace: DivisionTrace | None = None) -> tuple[ClusterAssignment, BallSet]:
    """Full granular-ball clustering: divide, count overlaps, merge, label.

    Takes no algorithmic parameters; ``config`` only carries the structural
    constants of the division loop.
    """
    ballset = generate_balls(dataset, config, trace)
    live = np.flatnonzero(~ballset.noise_ball_flags)
    dists = None
    if live.size >= 2:
        # one center-distance matrix serves both the overlap and adjacency passes
        centers = np.array([ballset.balls[i].center for i in live])
        dists = _pairwise_center_distances(centers)
    ballset.overlap_counts = count_overlaps(ballset, dists)
    ids = merge_adjacent(ballset, dists)
    assignment = assign_noise(dataset, ballset, ids)
    return assignment, ballset
