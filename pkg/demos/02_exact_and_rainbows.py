"""Fixed-order queue assignment, exact queue numbers and twist or necklace extraction.

Run: python demos/02_exact_and_rainbows.py
"""

import random

from q3t.engine import five_queue_layout
from q3t.graph_core import goldner_harary
from q3t.verify import assign_min_queues, exact_queue_number, find_twist_or_necklace, max_rainbow


def main():
    gh = goldner_harary()
    lay = five_queue_layout(gh)
    best = assign_min_queues(gh.graph, lay.order)
    print(f"Goldner-Harary, construction order: {lay.queues_used} queues by construction, "
          f"{best.queues_used} after optimal reassignment")
    q, order = exact_queue_number(gh.graph)
    print(f"exact queue number {q}, witness order {order}")
    print(f"  largest rainbow of the witness: {max_rainbow(gh.graph, order)[0]}")

    # r*r non-nesting independent edges always contain an r-twist or an r-necklace
    rng = random.Random(0)
    r = 4
    opens = closes = 0
    pending, edges = [], []
    for v in range(2 * r * r):
        if opens < r * r and (opens == closes or rng.random() < 0.5):
            pending.append(v)
            opens += 1
        else:
            edges.append((pending.pop(0), v))
            closes += 1
    cert = find_twist_or_necklace(edges, range(2 * r * r), r)
    print(f"{r}-{cert.kind} among {len(edges)} edges: {list(cert.edges)} (check: {cert.check()})")

if __name__ == "__main__":
    main()
