"""Realize a seeded corpus of generic weight matrices and check every TOM,
comparing the vertex route with the exact feasibility sweep."""

import argparse
import time
from collections import defaultdict
from math import comb

from tropmat.axioms import check_all, topes, vertices
from tropmat.corpus import CorpusConfig, generic_corpus
from tropmat.realize import lattice_points, lattice_tope, realize_tom, realize_tom_sweep


def survey(cfg: CorpusConfig, sweep: bool) -> None:
    stats = defaultdict(lambda: defaultdict(float))
    for W in generic_corpus(cfg).matrices:
        s = stats[(W.n, W.d)]
        t = time.perf_counter()
        M = realize_tom(W)
        s["realize"] += time.perf_counter() - t
        t = time.perf_counter()
        s["axioms_ok"] += all(r.passed for r in check_all(M))
        s["check"] += time.perf_counter() - t
        s["count"] += 1
        s["types"] += len(M.types)
        s["counts_ok"] += len(vertices(M)) == comb(W.n + W.d - 2, W.d - 1) and len(topes(M)) == comb(W.n + W.d - 1, W.d - 1)
        lattice = set().union(*(lattice_tope(W, q) for q in lattice_points(W.n, W.d)))
        s["topes_ok"] += topes(M) == lattice
        if sweep:
            t = time.perf_counter()
            s["sweep_ok"] += realize_tom_sweep(W).types == M.types
            s["sweep"] += time.perf_counter() - t
    cols = ["count", "types", "axioms_ok", "counts_ok", "topes_ok"] + (["sweep_ok"] if sweep else [])
    print("shape  " + " ".join(f"{c:>10}" for c in cols) + "  realize(s)  check(s)" + ("  sweep(s)" if sweep else ""))
    for (n, d), s in sorted(stats.items()):
        row = [s["count"], s["types"] / s["count"]] + [s[c] for c in cols[2:]]
        line = f"{n}x{d}    " + " ".join(f"{v:>10.1f}" for v in row)
        line += f"  {s['realize']:>10.2f}  {s['check']:>8.2f}"
        if sweep:
            line += f"  {s['sweep']:>8.2f}"
        print(line)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-shape", type=int, default=CorpusConfig.per_shape)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--no-sweep", action="store_true")
    a = ap.parse_args()
    survey(CorpusConfig(per_shape=a.per_shape, seed=a.seed), not a.no_sweep)
