"""Which (I, J, K) triples the three-case separating recipe handles, and how
often the exhaustive fallback is needed."""

import argparse
from collections import Counter

from tropmat.convexity import separates, separating_halfspace, separating_halfspace_recipe
from tropmat.core import full_mask, mask_str


def table(d: int, show: int) -> None:
    top = full_mask(d)
    cases, fails = Counter(), Counter()
    examples = []
    for I in range(1, top):
        for J in range(1, top):
            for K in range(1, top + 1):
                if K in (I, J, I | J):
                    continue
                case, L, pi = separating_halfspace_recipe(I, J, K, d)
                cases[case] += 1
                if not separates(L, pi, I, J, K):
                    fails[case] += 1
                    L2, pi2 = separating_halfspace(I, J, K, d)
                    if len(examples) < show:
                        examples.append((I, J, K, L, pi, L2, pi2))
    print(f"d={d}")
    for case in sorted(cases):
        print(f"  {case:<8} triples={cases[case]:>5} recipe failures={fails[case]:>4}")
    for I, J, K, L, pi, L2, pi2 in examples:
        m = lambda x: mask_str(x, d)
        print(f"  I={m(I)} J={m(J)} K={m(K)}: recipe ({m(L)}, {pi}) fails, search gives ({m(L2)}, {pi2})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, action="append")
    ap.add_argument("--show", type=int, default=3)
    a = ap.parse_args()
    for d in a.d or (3, 4):
        table(d, a.show)
