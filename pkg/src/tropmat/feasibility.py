"""Exact Fourier-Motzkin feasibility for mixed strict/weak linear systems.

Rows are ``(coeffs, rhs, kind)`` meaning ``coeffs · x  kind  rhs`` with
``kind`` one of ``"=", ">=", ">"``. All arithmetic is over ``Fraction``.
When feasible, a rational witness point is produced by back-substitution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = tuple[tuple[Fraction, ...], Fraction, str]


def _norm(coeffs, rhs, kind) -> Row:
    return tuple(Fraction(c) for c in coeffs), Fraction(rhs), kind


def _eliminate_equalities(rows: list[Row], nvars: int):
    """Gaussian substitution. Returns (inequalities, substitutions) or None if
    the equalities are inconsistent. A substitution ``(k, coeffs, rhs)`` means
    ``x_k = rhs - coeffs · x`` where ``coeffs[k] == 0``."""
    eqs = [r for r in rows if r[2] == "="]
    ineqs = [r for r in rows if r[2] != "="]
    subs = []
    while eqs:
        coeffs, rhs, _ = eqs.pop()
        pivot = next((k for k, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            if rhs != 0:
                return None
            continue
        p = coeffs[pivot]
        sc = tuple(Fraction(0) if k == pivot else c / p for k, c in enumerate(coeffs))
        sr = rhs / p

        def apply(row: Row) -> Row:
            c, r, kind = row
            f = c[pivot]
            if f == 0:
                return row
            return tuple(Fraction(0) if k == pivot else c[k] - f * sc[k] for k in range(nvars)), r - f * sr, kind

        eqs = [apply(r) for r in eqs]
        ineqs = [apply(r) for r in ineqs]
        subs = [(k, *apply((c, r, "="))[:2]) for k, c, r in subs]
        subs.append((pivot, sc, sr))
    return ineqs, subs


def _bounds(rows: Sequence[Row], k: int, point: dict[int, Fraction]):
    """Lower/upper bounds on x_k implied by rows once the other coordinates
    are fixed from ``point`` (missing ones count as zero)."""
    lo, lo_strict, hi, hi_strict = None, False, None, False
    for coeffs, rhs, kind in rows:
        c = coeffs[k]
        rest = rhs - sum(v * point.get(m, Fraction(0)) for m, v in enumerate(coeffs) if m != k and v)
        strict = kind == ">"
        if c == 0:
            continue
        bound = rest / c
        if c > 0:  # x_k >= bound
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        else:  # x_k <= bound
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    return lo, lo_strict, hi, hi_strict


def solve(rows: Sequence[tuple], nvars: int) -> tuple[Fraction, ...] | None:
    """A rational point satisfying every row, or ``None`` if infeasible."""
    rows = [_norm(*r) for r in rows]
    reduced = _eliminate_equalities(rows, nvars)
    if reduced is None:
        return None
    ineqs, subs = reduced
    substituted = {k for k, _, _ in subs}
    order = [k for k in range(nvars) if k not in substituted]

    stages = [ineqs]
    for k in order:
        current = stages[-1]
        pos = [r for r in current if r[0][k] > 0]
        neg = [r for r in current if r[0][k] < 0]
        nxt = [r for r in current if r[0][k] == 0]
        for pc, pr, pk in pos:
            for nc, nr, nk in neg:
                a, b = pc[k], -nc[k]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                kind = ">" if ">" in (pk, nk) else ">="
                nxt.append((coeffs, b * pr + a * nr, kind))
        # drop exact duplicates to keep the blow-up in check
        stages.append(list(dict.fromkeys(nxt)))

    for _, rhs, kind in stages[-1]:
        if (kind == ">" and not 0 > rhs) or (kind == ">=" and not 0 >= rhs):
            return None

    point: dict[int, Fraction] = {}
    for stage, k in zip(reversed(stages[:-1]), reversed(order)):
        lo, lo_s, hi, hi_s = _bounds(stage, k, point)
        if lo is None and hi is None:
            v = Fraction(0)
        elif lo is None:
            v = hi - 1 if hi_s else hi
        elif hi is None:
            v = lo + 1 if lo_s else lo
        else:
            v = (lo + hi) / 2 if (lo_s or hi_s) else lo
        point[k] = v
    for k, sc, sr in reversed(subs):
        point[k] = sr - sum(c * point.get(m, Fraction(0)) for m, c in enumerate(sc) if c)
    return tuple(point.get(k, Fraction(0)) for k in range(nvars))


def feasible(rows: Sequence[tuple], nvars: int) -> bool:
    return solve(rows, nvars) is not None


def satisfies(rows: Sequence[tuple], x: Sequence[Fraction]) -> bool:
    for coeffs, rhs, kind in rows:
        lhs = sum(Fraction(c) * v for c, v in zip(coeffs, x))
        if kind == "=" and lhs != rhs:
            return False
        if kind == ">=" and not lhs >= rhs:
            return False
        if kind == ">" and not lhs > rhs:
            return False
    return True
