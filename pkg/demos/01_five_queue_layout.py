"""Lay out a random planar 3-tree in five queues and inspect the result.

Run: python demos/01_five_queue_layout.py [n] [seed]
"""

import sys

from q3t.engine import five_queue_construction, structure_violations
from q3t.graph_core import random_3tree
from q3t.verify import is_valid_queue_layout, max_rainbow


def main(n=200, seed=1):
    st = random_3tree(n, seed)
    res = five_queue_construction(st)
    lay = res.layout
    print(f"planar 3-tree: n={st.n}, m={st.m}, levels={res.levels.depth + 1}, "
          f"components={len(res.components)}")
    for level, start, end in lay.intervals:
        print(f"  level {level}: positions {start}..{end - 1}")
    counts = {}
    for q in lay.queue_of.values():
        counts[q] = counts.get(q, 0) + 1
    print("edges per queue:", dict(sorted(counts.items())))
    print("valid with 5 queues:", bool(is_valid_queue_layout(st.graph, lay, 5)))
    print("structure violations:", structure_violations(res) or "none")
    need, cert = max_rainbow(st.graph, lay.order)
    print(f"largest rainbow in this order: {need} edges {list(cert.edges)}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
