"""Exact realization of tropical hyperplane arrangements.

Convention: min-plus. Hyperplane ``i`` has apex ``-w_i`` and a point ``p``
lies in the closed sectors ``argmin_j (w_ij + p_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import feasibility
from .axioms import Tom
from .core import NdType, bits, full_mask
from .ops import closure


@dataclass(frozen=True)
class WeightMatrix:
    """n×d exact rationals; row i holds the negated apex of hyperplane i."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("weight matrix must be at least 1x1")
        d = len(self.rows[0])
        if any(len(r) != d for r in self.rows):
            raise ValueError("weight matrix rows must have equal length")

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "WeightMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    def drop_row(self, i: int) -> "WeightMatrix":
        return WeightMatrix(self.rows[: i - 1] + self.rows[i:])

    def drop_column(self, j: int) -> "WeightMatrix":
        return WeightMatrix(tuple(r[: j - 1] + r[j:] for r in self.rows))

    def transpose(self) -> "WeightMatrix":
        return WeightMatrix(tuple(zip(*self.rows)))


def normalize_point(p: Sequence) -> tuple[Fraction, ...]:
    """Canonical representative of a projective point: last coordinate 0."""
    p = [Fraction(x) for x in p]
    return tuple(x - p[-1] for x in p)


def point_type(W: WeightMatrix, p: Sequence) -> NdType:
    p = [Fraction(x) for x in p]
    if len(p) != W.d:
        raise ValueError(f"point has {len(p)} coordinates, expected {W.d}")
    entries = []
    for row in W.rows:
        vals = [w + x for w, x in zip(row, p)]
        m = min(vals)
        entries.append(sum(1 << j for j, v in enumerate(vals) if v == m))
    return NdType(W.d, tuple(entries))


def lattice_points(n: int, d: int) -> list[tuple[int, ...]]:
    """All q ∈ Z_{>=0}^d with sum n, descending lexicographic."""
    if d == 1:
        return [(n,)]
    out = []
    for first in range(n, -1, -1):
        out.extend((first,) + rest for rest in lattice_points(n - first, d - 1))
    return out


def _representations(q: Sequence[int], n: int) -> Iterable[tuple[int, ...]]:
    """Tuples (j_1..j_n) (0-based) using coordinate j exactly q_j times."""
    d = len(q)
    for js in product(range(d), repeat=n):
        counts = [0] * d
        for j in js:
            counts[j] += 1
        if counts == list(q):
            yield js


def lattice_tope(W: WeightMatrix, q: Sequence[int]) -> frozenset[NdType]:
    """Cost-minimizing tope tuples located at lattice point q."""
    if len(q) != W.d or sum(q) != W.n or min(q) < 0:
        raise ValueError(f"{tuple(q)} is not a lattice point of {W.n}Δ^{W.d - 1}")
    best = None
    found: list[tuple[int, ...]] = []
    for js in _representations(q, W.n):
        cost = sum(W.rows[i][j] for i, j in enumerate(js))
        if best is None or cost < best:
            best, found = cost, [js]
        elif cost == best:
            found.append(js)
    return frozenset(NdType(W.d, tuple(1 << j for j in js)) for js in found)


# --- feasibility route -------------------------------------------------------


def type_system(W: WeightMatrix, A: NdType) -> list[tuple]:
    """Linear system in p_1..p_{d-1} (p_d = 0) whose strict feasibility means
    that some point has type exactly A."""
    d = W.d
    rows = []

    def diff(a: int, b: int, c: Fraction, kind: str):
        # p_a - p_b  kind  c, dropping the normalized last coordinate
        coeffs = [Fraction(0)] * (d - 1)
        if a < d - 1:
            coeffs[a] += 1
        if b < d - 1:
            coeffs[b] -= 1
        rows.append((tuple(coeffs), c, kind))

    for row, e in zip(W.rows, A.entries):
        js = bits(e)
        j0 = js[0]
        for j in js[1:]:
            diff(j, j0, row[j0] - row[j], "=")
        for k in range(d):
            if not (e >> k) & 1:
                diff(k, j0, row[j0] - row[k], ">")
    return rows


def type_witness(W: WeightMatrix, A: NdType) -> tuple[Fraction, ...] | None:
    """A point of type A, or ``None`` when no such point exists."""
    sol = feasibility.solve(type_system(W, A), W.d - 1)
    if sol is None:
        return None
    return tuple(sol) + (Fraction(0),)


def type_feasible(W: WeightMatrix, A: NdType) -> bool:
    return type_witness(W, A) is not None


def all_types(n: int, d: int) -> Iterable[NdType]:
    subsets = range(1, full_mask(d) + 1)
    for entries in product(subsets, repeat=n):
        yield NdType(d, entries)


def realize_tom_sweep(W: WeightMatrix, candidates: Iterable[NdType] | None = None) -> Tom:
    """Decide every candidate type by exact strict feasibility."""
    if candidates is None:
        candidates = all_types(W.n, W.d)
    return Tom.from_types(W.n, W.d, (A for A in candidates if type_feasible(W, A)))


# --- vertex route -----------------------------------------------------------


@lru_cache(maxsize=None)
def spanning_trees(n: int, d: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Spanning trees of K_{n,d} as edge lists (i, j), 0-based."""
    edges = [(i, j) for i in range(n) for j in range(d)]
    out = []
    for chosen in combinations(edges, n + d - 1):
        parent = list(range(n + d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for i, j in chosen:
            a, b = find(i), find(n + j)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            out.append(chosen)
    return tuple(out)


def _tree_point(W: WeightMatrix, tree) -> tuple[Fraction, ...]:
    """Solve mu_i - p_j = w_ij along the tree edges with p_d = 0."""
    d = W.d
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for i, j in tree:
        adj.setdefault(("N", i), []).append(("D", j))
        adj.setdefault(("D", j), []).append(("N", i))
    val: dict[tuple[str, int], Fraction] = {("D", d - 1): Fraction(0)}
    stack = [("D", d - 1)]
    while stack:
        node = stack.pop()
        for nb in adj.get(node, []):
            if nb in val:
                continue
            if node[0] == "D":  # mu_i = w_ij + p_j
                val[nb] = W.rows[nb[1]][node[1]] + val[node]
            else:  # p_j = mu_i - w_ij
                val[nb] = val[node] - W.rows[node[1]][nb[1]]
            stack.append(nb)
    return tuple(val[("D", j)] for j in range(d))


def realize_vertices(W: WeightMatrix) -> frozenset[NdType]:
    """Vertex types of the arrangement.

    Every spanning tree of K_{n,d} pins down one point. Its type is a vertex
    when the tree's equalities are actual minima, i.e. the tree lies inside
    K_A; each vertex arises this way from a spanning tree of its own graph.
    """
    out = set()
    for t in spanning_trees(W.n, W.d):
        A = point_type(W, _tree_point(W, t))
        if all((A.entries[i] >> j) & 1 for i, j in t):
            out.add(A)
    return frozenset(out)


def realize_tom(W: WeightMatrix, method: str = "vertices") -> Tom:
    """All types of the arrangement given by W.

    ``"vertices"`` closes the vertex types under refinement; ``"sweep"``
    decides every (n, d)-type by exact feasibility. Both agree.
    """
    if method == "vertices":
        return Tom.from_types(W.n, W.d, closure(realize_vertices(W)))
    if method == "sweep":
        return realize_tom_sweep(W)
    raise ValueError(f"unknown method {method!r}")


def is_generic(W: WeightMatrix) -> bool:
    """True iff every lattice point carries a unique cost-minimizing tope."""
    return all(len(lattice_tope(W, q)) == 1 for q in lattice_points(W.n, W.d))
