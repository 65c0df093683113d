"""One-dimensional timeline of the whole sequence.

Each snapshot is flattened to its upper-triangle weight vector; the first
principal component of the centered vectors gives every timeslice a scalar
offset, so similar states land near each other on a 1-D strip. A second
channel carries the total change magnitude entering each timeslice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DynamicWeightedGraph, diff_stack, weight_stack

__all__ = ["TimelinePoint", "TimelineProjection", "project_timeline"]


@dataclass(frozen=True, slots=True)
class TimelinePoint:
    time_index: int
    offset: float
    change_intensity: float


@dataclass(frozen=True)
class TimelineProjection:
    """Per-timeslice offsets and intensities.

    ``degenerate`` is set when all snapshots are identical; offsets are all
    zero then, which is a valid (if dull) timeline rather than an error.
    """

    points: tuple[TimelinePoint, ...]
    degenerate: bool

    def offsets(self) -> np.ndarray:
        return np.array([p.offset for p in self.points])

    def intensities(self) -> np.ndarray:
        return np.array([p.change_intensity for p in self.points])


def project_timeline(g: DynamicWeightedGraph) -> TimelineProjection:
    """Project every snapshot onto the first principal component.

    The sign of the component is pinned by forcing its largest-magnitude
    loading positive, so reruns and mirrored eigenvectors cannot flip the
    axis. Intensity at t is the summed |delta| of the incoming transition
    (0 at t = 0).
    """
    t_total = g.timeslice_count
    if t_total < 2:
        raise DomainError("timeline needs at least 2 timeslices")

    stack = weight_stack(g)
    n = g.node_count
    iu, iv = np.triu_indices(n, k=1)
    x = stack[:, iu, iv]  # (T, n*(n-1)/2)

    intensity = np.zeros(t_total, dtype=np.float64)
    if x.shape[1]:
        intensity[1:] = np.abs(diff_stack(stack)).sum(axis=(1, 2)) / 2.0

    centered = x - x.mean(axis=0) if x.shape[1] else x
    degenerate = centered.size == 0 or not centered.any()
    if degenerate:
        offsets = np.zeros(t_total, dtype=np.float64)
    else:
        u, s, vt = np.linalg.svd(centered, full_matrices=False)
        offsets = u[:, 0] * s[0]
        loading = vt[0]
        if loading[int(np.argmax(np.abs(loading)))] < 0:
            offsets = -offsets

    points = tuple(
        TimelinePoint(t, float(offsets[t]), float(intensity[t]))
        for t in range(t_total)
    )
    return TimelineProjection(points=points, degenerate=degenerate)
