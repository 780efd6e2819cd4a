"""Enumerate every mixed subdivision of nΔ^{d-1} and certify each one."""

import argparse
import time
from dataclasses import dataclass

from tropmat.axioms import check_all
from tropmat.subdivision import census, is_fine, to_tom, verify_subdivision


@dataclass(frozen=True)
class Config:
    shapes: tuple[tuple[int, int], ...] = ((2, 2), (3, 2), (2, 3), (3, 3))
    axioms: bool = True


def report(cfg: Config) -> None:
    print(f"{'n':>2} {'d':>2} {'all':>6} {'fine':>6} {'certified':>10} {'secs':>7}")
    for n, d in cfg.shapes:
        t = time.perf_counter()
        found = census(n, d)
        ok = 0
        for S in found:
            good = verify_subdivision(S).passed
            if good and cfg.axioms:
                good = all(r.passed for r in check_all(to_tom(S)))
            ok += good
        fine = sum(is_fine(S) for S in found)
        print(f"{n:>2} {d:>2} {len(found):>6} {fine:>6} {ok:>10} {time.perf_counter() - t:>7.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shape", action="append", help="n,d (repeatable)")
    ap.add_argument("--no-axioms", action="store_true", help="skip check_all on each TOM")
    a = ap.parse_args()
    shapes = tuple(tuple(int(x) for x in s.split(",")) for s in a.shape) if a.shape else Config.shapes
    report(Config(shapes, not a.no_axioms))
