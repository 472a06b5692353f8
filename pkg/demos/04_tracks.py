"""Acyclic 4-colouring of a planar 3-tree and the track-number bound.

Run: python demos/04_tracks.py
"""

from q3t.graph_core import random_3tree
from q3t.tracks import acyclic_4_coloring, is_acyclic, track_bound


def main():
    st = random_3tree(60, 7)
    col = acyclic_4_coloring(st)
    sizes = [len(c) for c in col.classes()]
    print(f"n={st.n}: {col.num_colors} colours, class sizes {sizes}, acyclic={is_acyclic(st.graph, col)}")
    for q, c in ((5, 4), (4, 4), (3, 4)):
        print(f"track bound for queue number {q} and acyclic chromatic number {c}: {track_bound(q, c)}")


if __name__ == "__main__":
    main()
