"""Difference mask: highlighted cells and the paths connecting them.

A highlight marks an overview cell whose change clears a threshold. Paths
link highlights so the eye can follow them: within one column (several nodes
changing the same way at the same transition) and across columns (the same
node changing again within a bounded gap).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import DomainError
from .aggregate import OverviewMatrix

__all__ = [
    "MaskConfig",
    "Highlight",
    "WithinColumnPath",
    "CrossColumnPath",
    "select_highlights",
    "build_paths",
]

Criterion = Literal["avgChange", "changedEdgeCount"]
Sign = Literal["positive", "negative"]


@dataclass(frozen=True, slots=True)
class MaskConfig:
    """Threshold rule for the mask.

    ``avgChange`` highlights cells whose mean change magnitude reaches the
    threshold; ``changedEdgeCount`` highlights cells whose changed-edge count
    does. ``gap_limit`` is the largest number of unhighlighted columns a
    cross-column link may skip.
    """

    criterion: Criterion = "avgChange"
    threshold: float = 1.0
    gap_limit: int = 3

    def __post_init__(self):
        if self.criterion not in ("avgChange", "changedEdgeCount"):
            raise DomainError(f"unknown criterion {self.criterion!r}")
        if not self.threshold > 0:
            raise DomainError(f"threshold must be positive, got {self.threshold}")
        if self.gap_limit < 0:
            raise DomainError(f"gap limit must be >= 0, got {self.gap_limit}")


@dataclass(frozen=True, slots=True)
class Highlight:
    node: str
    transition_index: int
    sign: Sign


@dataclass(frozen=True, slots=True)
class WithinColumnPath:
    """Two or more nodes highlighted with the same sign at one transition."""

    column: int
    sign: Sign
    nodes: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class CrossColumnPath:
    """The same node highlighted at two nearby transitions.

    The two signs are carried separately; a node can swing from positive to
    negative between the linked columns.
    """

    node: str
    from_column: int
    from_sign: Sign
    to_column: int
    to_sign: Sign


def select_highlights(ov: OverviewMatrix, cfg: MaskConfig) -> list[Highlight]:
    """Cells of the overview matrix that clear the configured threshold.

    Under ``avgChange`` the sign is the sign of the mean change; under
    ``changedEdgeCount`` it is the majority sign, positive on ties.
    """
    out: list[Highlight] = []
    for c, t in enumerate(ov.transitions):
        for r, node in enumerate(ov.node_order):
            if cfg.criterion == "avgChange":
                avg = float(ov.avg_change[r, c])
                if abs(avg) >= cfg.threshold:
                    sign: Sign = "positive" if avg > 0 else "negative"
                    out.append(Highlight(node, t, sign))
            else:
                pos = int(ov.pos_counts[r, c])
                neg = int(ov.neg_counts[r, c])
                if pos + neg >= cfg.threshold:
                    sign = "positive" if pos >= neg else "negative"
                    out.append(Highlight(node, t, sign))
    return out


def build_paths(
    highlights: Sequence[Highlight],
    columns: Sequence[int],
    cfg: MaskConfig,
    node_order: Sequence[str] | None = None,
) -> list[WithinColumnPath | CrossColumnPath]:
    """Connect highlights into within-column and cross-column paths.

    ``columns`` fixes the column layout (the transition indices on display,
    in order); gaps are counted in column positions, not transition-index
    arithmetic. ``node_order`` fixes the vertical order inside within-column
    paths and defaults to first appearance among the highlights.
    """
    col_pos = {t: i for i, t in enumerate(columns)}
    for h in highlights:
        if h.transition_index not in col_pos:
            raise DomainError(
                f"highlight at transition {h.transition_index} outside columns"
            )

    if node_order is None:
        seen: dict[str, int] = {}
        for h in highlights:
            seen.setdefault(h.node, len(seen))
        rank = seen
    else:
        rank = {n: i for i, n in enumerate(node_order)}

    by_col: dict[int, dict[str, Sign]] = {}
    for h in highlights:
        by_col.setdefault(h.transition_index, {})[h.node] = h.sign

    paths: list[WithinColumnPath | CrossColumnPath] = []
    for t in columns:
        signs = by_col.get(t)
        if not signs:
            continue
        for sign in ("positive", "negative"):
            nodes = sorted(
                (n for n, s in signs.items() if s == sign),
                key=lambda n: (rank.get(n, len(rank)), n),
            )
            if len(nodes) >= 2:
                paths.append(WithinColumnPath(t, sign, tuple(nodes)))

    lit = [t for t in columns if t in by_col]
    for t1, t2 in zip(lit, lit[1:]):
        gap = col_pos[t2] - col_pos[t1] - 1
        if gap > cfg.gap_limit:
            continue
        shared = sorted(
            set(by_col[t1]) & set(by_col[t2]),
            key=lambda n: (rank.get(n, len(rank)), n),
        )
        for node in shared:
            paths.append(
                CrossColumnPath(node, t1, by_col[t1][node], t2, by_col[t2][node])
            )
    return paths
