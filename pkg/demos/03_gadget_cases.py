"""Build the lower-bound gadget and re-run the finite case analysis.

Run: python demos/03_gadget_cases.py
"""

import time

from q3t.gadgets import CASES, augment_recursive, build_gt, check_case, classify_permutation


def main():
    g = build_gt(3)
    print(f"G_3: {g.n} vertices, {g.m} edges; s-t edges {g.st_edges()}")
    order = list(range(g.n))
    print("classes of s_i t_i in the identity order:",
          [classify_permutation(order, g, i) for i in range(1, 4)])
    deep = augment_recursive(build_gt(2), 2)
    print(f"two rounds of copies on G_2: {deep.n} vertices")
    for case in CASES:
        t0 = time.perf_counter()
        rep = check_case(case)
        print(f"{case:>18}: {rep.enumerated:6d} placements, {len(rep.failures)} failures "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
