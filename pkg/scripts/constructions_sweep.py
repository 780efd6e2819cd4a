"""Run every placing and blow-up on every subdivision of a census and verify
the results. The (3, 3) census takes tens of minutes."""

import argparse
import time

from tropmat.subdivision import (
    all_permutations,
    blow_up,
    blow_up_nonfine,
    census,
    d_placing,
    is_fine,
    n_placing,
    placing_simplex,
    verify_subdivision,
)


def sweep(n: int, d: int) -> None:
    t = time.perf_counter()
    checked = failed = 0
    for S in census(n, d):
        outs = [n_placing(S, s) for s in all_permutations(d)]
        outs += [d_placing(S, s) for s in all_permutations(n)]
        for i in range(1, n + 1):
            for p in all_permutations(d):
                outs.append(blow_up_nonfine(S, i, p))
                if is_fine(S):
                    outs.append(blow_up(S, i, placing_simplex(p)))
        for R in outs:
            checked += 1
            if not verify_subdivision(R).passed:
                failed += 1
                print("failed:", sorted(map(str, S.maximal_cells)), "->", sorted(map(str, R.maximal_cells)))
    print(f"({n},{d}): {checked} constructions, {failed} failures, {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--d", type=int, default=3)
    a = ap.parse_args()
    sweep(a.n, a.d)
