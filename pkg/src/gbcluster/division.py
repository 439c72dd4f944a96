"""Ball division: quality-driven splitting followed by oversized-ball cleanup.

Phase 1 starts from one ball over the whole dataset and keeps splitting while
both children improve on the parent's average distance.  Phase 2 then
force-splits balls whose radius exceeds twice the larger of the mean and
median radius, recomputing those statistics each round, until none are left
or the round cap trips.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import BallSet, Dataset, GranularBall, farthest_pair_seed, fit_ball


@dataclass(frozen=True)
class DivisionConfig:
    """Structural constants of the division loop; not per-dataset knobs.

    ``min_split_size`` is the smallest ball the quality loop will try to
    split.  It needs a floor well above 2: the improvement test alone never
    stops on smooth data (any two distinct points split into two singletons
    of quality 0), so without a floor every ball fragments to single points.
    ``max_refinement_rounds`` caps the oversized-ball cleanup.
    """

    max_refinement_rounds: int = 100
    min_split_size: int = 20

    def __post_init__(self):
        if self.max_refinement_rounds < 1:
            raise ValueError("max_refinement_rounds must be >= 1")
        if self.min_split_size < 2:
            raise ValueError("min_split_size must be >= 2")


@dataclass(frozen=True)
class RoundStats:
    phase: str  # "divide" or "refine"
    ball_count: int
    split_count: int
    oversized_count: int


@dataclass
class DivisionTrace:
    """Optional instrumentation collector for generate_balls.

    ``accepted_splits`` records (parent AD, child ADs) for every quality-
    accepted split.  With ``capture_partitions`` set, the member arrays of
    every ball are snapshotted after each round (costly; tests only).
    """

    capture_partitions: bool = False
    rounds: list[RoundStats] = field(default_factory=list)
    accepted_splits: list[tuple[float, float, float]] = field(default_factory=list)
    partitions: list[list[np.ndarray]] = field(default_factory=list)
    round_cap_hit: bool = False

    def _snapshot(self, balls):
        if self.capture_partitions:
            self.partitions.append([b.members.copy() for b in balls])


def split_once(dataset: Dataset, ball: GranularBall):
    """Split a ball in a single assignment pass.

    The initial child centers are the midpoints between the ball center and
    each seed; every member then joins the nearer one (ties go to the first
    child).  Returns the two fitted children, or None when one side ends up
    empty (coincident members).
    """
    if ball.size < 2:
        raise ValueError("cannot split a ball with fewer than 2 members")
    p1, p2 = farthest_pair_seed(dataset, ball)
    c1 = (ball.center + dataset.points[p1]) / 2.0
    c2 = (ball.center + dataset.points[p2]) / 2.0
    pts = dataset.points[ball.members]
    d1 = np.sqrt(((pts - c1) ** 2).sum(axis=1))
    d2 = np.sqrt(((pts - c2) ** 2).sum(axis=1))
    to_a = d1 <= d2
    if to_a.all() or not to_a.any():
        return None
    return (fit_ball(dataset, ball.members[to_a]),
            fit_ball(dataset, ball.members[~to_a]))


def should_split(parent: GranularBall, child_a: GranularBall, child_b: GranularBall) -> bool:
    """Accept a split only when both children strictly improve the parent."""
    return (child_a.avg_distance < parent.avg_distance
            and child_b.avg_distance < parent.avg_distance)


def detect_oversized(balls: Sequence[GranularBall]) -> set[int]:
    """Indices of balls with radius > 2 * max(mean radius, median radius)."""
    if len(balls) == 0:
        raise ValueError("detect_oversized needs at least one ball")
    radii = np.array([b.radius for b in balls])
    threshold = 2.0 * max(float(radii.mean()), float(np.median(radii)))
    return {i for i in range(len(balls)) if radii[i] > threshold}


def generate_balls(dataset: Dataset, config: DivisionConfig | None = None,
                   trace: DivisionTrace | None = None) -> BallSet:
    """Divide a dataset into granular balls.

    Returns a BallSet whose member sets partition the dataset.  Singleton
    balls are flagged as noise; overlap counts are left zeroed for the
    differentiation stage.  Pass a DivisionTrace to observe per-round
    progress and the round-cap warning flag.
    """
    if config is None:
        config = DivisionConfig()
    if trace is None:
        trace = DivisionTrace()

    # Phase 1: quality-driven splitting.  Each ball is examined once; a ball
    # whose split fails or is rejected is final, its children otherwise
    # re-enter the queue.
    pending = [fit_ball(dataset, np.arange(len(dataset)))]
    final: list[GranularBall] = []
    while pending:
        next_pending: list[GranularBall] = []
        split_count = 0
        for ball in pending:
            if ball.size < config.min_split_size:
                final.append(ball)
                continue
            children = split_once(dataset, ball)
            if children is not None and should_split(ball, *children):
                trace.accepted_splits.append(
                    (ball.avg_distance, children[0].avg_distance, children[1].avg_distance))
                next_pending.extend(children)
                split_count += 1
            else:
                final.append(ball)
        pending = next_pending
        trace.rounds.append(RoundStats("divide", len(final) + len(pending), split_count, 0))
        trace._snapshot(final + pending)

    # Phase 2: force-split oversized balls, recomputing the radius statistics
    # each round because splits shift the mean and median.
    rounds = 0
    while True:
        oversized = detect_oversized(final)
        if not oversized:
            break
        if rounds >= config.max_refinement_rounds:
            trace.round_cap_hit = True
            warnings.warn("ball refinement hit the round cap with oversized balls remaining",
                          RuntimeWarning, stacklevel=2)
            break
        rounds += 1
        refined: list[GranularBall] = []
        split_count = 0
        split_failed = False
        for i, ball in enumerate(final):
            if i not in oversized:
                refined.append(ball)
                continue
            children = split_once(dataset, ball)
            if children is None:
                split_failed = True  # degenerate ball; keep it as-is
                refined.append(ball)
            else:
                refined.extend(children)
                split_count += 1
        final = refined
        trace.rounds.append(RoundStats("refine", len(final), split_count, len(oversized)))
        trace._snapshot(final)
        if split_failed:
            break

    final.sort(key=lambda b: int(b.members[0]))
    return BallSet(balls=final)
