"""
Reading a small collaboration network through its differences
=============================================================

Five people work together over six weeks. Instead of staring at six
adjacency matrices, we look at what changed between consecutive weeks:
who gained edges, who lost them, and where the changes cluster.
"""

import numpy as np

from diffseer import (
    build_charts,
    build_overview,
    compute_diff_sequence,
    dynamic_graph,
    order_nodes,
)
from diffseer.mask import MaskConfig, build_paths, select_highlights

# Week 3 is the interesting one: Dana joins Amy's project and the old
# Amy-Bob tie weakens. Week 5 everything settles down again.
weeks = [f"week{i + 1}" for i in range(6)]
slices = [
    [("amy", "bob", 5.0), ("bob", "carol", 2.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 5.0), ("bob", "carol", 3.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 2.0), ("amy", "dana", 4.0), ("bob", "carol", 3.0), ("carol", "eve", 1.0)],
    [("amy", "bob", 1.0), ("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
    [("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
    [("amy", "dana", 6.0), ("bob", "carol", 3.0), ("carol", "eve", 2.0)],
]
g = dynamic_graph(weeks, slices)

# The diff sequence is the ground truth everything else summarizes.
diffs = compute_diff_sequence(g)
for d in diffs:
    changed = ", ".join(f"{u}-{v}: {delta:+g}" for (u, v), delta in sorted(d.deltas().items()))
    print(f"transition {d.transition_index} ({weeks[d.transition_index - 1]} -> "
          f"{weeks[d.transition_index]}): {changed or 'no change'}")

# Aggregate per node and transition. Rows are ordered by the seriation
# pipeline so that people with similar change patterns sit together.
ordering = order_nodes(g, diffs, alpha=0.5)
ov = build_overview(diffs, ordering.permutation)
charts = build_charts(diffs, ordering.permutation)

print("\nnode order:", " ".join(ordering.permutation))
header = "".join(f"  t{t}" for t in ov.transitions)
print("avg change per cell" + header)
for r, node in enumerate(ov.node_order):
    row = "".join(f" {ov.avg_change[r, c]:+4.1f}" for c in range(len(ov.transitions)))
    print(f"  {node:>6}{row}")

print("\nedges changed per transition:",
      [(f"t{t}", int(p), int(n)) for t, p, n in
       zip(charts.transitions, charts.pos_edges, charts.neg_edges)])

# The mask points at the cells worth reading first. With the average
# change criterion at 2.0 only the Dana story survives.
cfg = MaskConfig(criterion="avgChange", threshold=2.0, gap_limit=1)
highlights = select_highlights(ov, cfg)
paths = build_paths(highlights, list(ov.transitions), cfg, ordering.permutation)

print("\nhighlights:")
for h in highlights:
    print(f"  {h.node} at t{h.transition_index} ({h.sign})")
print("paths:")
for p in paths:
    if hasattr(p, "nodes"):
        print(f"  within t{p.column} ({p.sign}): {' '.join(p.nodes)}")
    else:
        print(f"  {p.node}: t{p.from_column} ({p.from_sign}) -> t{p.to_column} ({p.to_sign})")

# Total volume of change per transition, useful as a timeline strip.
intensity = [sum(abs(e.delta) for e in d.edges) for d in diffs]
print("\nchange intensity:", np.round(intensity, 2).tolist())
