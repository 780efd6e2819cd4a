"""Types, ordered partitions, refinement and the comparability calculus.

Subsets of ``{1..d}`` are stored as bitmasks: coordinate ``j`` is bit ``j-1``.
All user-facing coordinates and positions are 1-based.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Sequence

MAX_D = 16


def max_enumeration_d() -> int:
    """Cap on the ground-set size for exhaustive ordered-partition enumeration."""
    return int(os.environ.get("TROPMAT_MAX_D", "6"))


# --- bitmask helpers -------------------------------------------------------


@lru_cache(maxsize=None)
def bits(mask: int) -> tuple[int, ...]:
    """0-based indices of the set bits of ``mask``, ascending."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(d: int) -> int:
    return (1 << d) - 1


def to_mask(subset: Iterable[int]) -> int:
    m = 0
    for j in subset:
        m |= 1 << (j - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    return tuple(j + 1 for j in bits(mask))


def mask_str(mask: int, d: int) -> str:
    if d <= 9:
        return "".join(str(j) for j in from_mask(mask))
    return "{" + ",".join(str(j) for j in from_mask(mask)) + "}"


def parse_subset(text: str) -> int:
    """Parse ``"123"`` or ``"{1,2,3}"`` into a mask."""
    text = text.strip()
    if text.startswith("{"):
        inner = text.strip("{}")
        return to_mask(int(t) for t in inner.split(",") if t.strip())
    return to_mask(int(c) for c in text)


# --- NdType ----------------------------------------------------------------


@dataclass(frozen=True, slots=True, order=True)
class NdType:
    """An n-tuple of nonempty subsets of ``{1..d}``.

    Ordering is by ``d`` and then entry-wise by bitmask value, which is the
    total order used for reproducible witnesses.
    """

    d: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.d <= MAX_D:
            raise ValueError(f"d={self.d} outside supported range 1..{MAX_D}")
        if len(self.entries) < 1:
            raise ValueError("a type needs at least one position")
        top = full_mask(self.d)
        for i, e in enumerate(self.entries, 1):
            if e <= 0 or e & ~top:
                raise ValueError(f"entry {i} must be a nonempty subset of 1..{self.d}")

    @classmethod
    def of(cls, d: int, *entries: Iterable[int]) -> "NdType":
        return cls(d, tuple(to_mask(e) for e in entries))

    @classmethod
    def parse(cls, text: str, d: int) -> "NdType":
        """Parse the compact notation ``"12,3,13"``."""
        text = text.strip().strip("()")
        return cls(d, tuple(parse_subset(part) for part in text.split(",")))

    @property
    def n(self) -> int:
        return len(self.entries)

    def sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(from_mask(e) for e in self.entries)

    def __getitem__(self, i: int) -> int:
        """Entry at 1-based position ``i`` as a mask."""
        return self.entries[i - 1]

    def __str__(self) -> str:
        return "(" + ",".join(mask_str(e, self.d) for e in self.entries) + ")"

    def __repr__(self) -> str:
        return f"NdType{self}"

    def support(self) -> int:
        u = 0
        for e in self.entries:
            u |= e
        return u

    def is_bounded(self) -> bool:
        return self.support() == full_mask(self.d)

    def is_tope(self) -> bool:
        return all(e & (e - 1) == 0 for e in self.entries)

    def contains(self, other: "NdType") -> bool:
        """Entrywise ``self ⊇ other``."""
        return all(b & ~a == 0 for a, b in zip(self.entries, other.entries))


def constant_type(n: int, d: int, j: int) -> NdType:
    return NdType(d, (1 << (j - 1),) * n)


# --- type graph and dimension ---------------------------------------------


@dataclass(frozen=True)
class TypeGraph:
    """Bipartite graph K_A; nodes are ``("N", i)`` and ``("D", j)``."""

    n: int
    d: int
    edges: frozenset[tuple[int, int]]

    def nodes(self) -> list[tuple[str, int]]:
        return [("N", i) for i in range(1, self.n + 1)] + [("D", j) for j in range(1, self.d + 1)]

    def components(self) -> int:
        return _component_count(_edge_masks(self), full_mask(self.d))

    def is_forest(self) -> bool:
        return len(self.edges) == self.n + self.d - self.components()


def _edge_masks(g: TypeGraph) -> list[int]:
    masks = [0] * g.n
    for i, j in g.edges:
        masks[i - 1] |= 1 << (j - 1)
    return masks


def type_graph(A: NdType) -> TypeGraph:
    return TypeGraph(A.n, A.d, frozenset((i, j) for i, e in enumerate(A.entries, 1) for j in from_mask(e)))


def _component_count(entries: Sequence[int], coords: int) -> int:
    """Connected components of the bipartite graph of ``entries`` on the
    position nodes plus the coordinate nodes in ``coords``."""
    # groups stay pairwise disjoint, so one pass per entry suffices
    groups: list[int] = []
    for e in entries:
        merged = e
        rest = []
        for g in groups:
            if g & e:
                merged |= g
            else:
                rest.append(g)
        rest.append(merged)
        groups = rest
    covered = 0
    for g in groups:
        covered |= g
    return len(groups) + popcount(coords & ~covered)


def dimension(A: NdType) -> int:
    """Number of connected components of K_A minus one."""
    return _component_count(A.entries, full_mask(A.d)) - 1


def dimension_on(entries: Sequence[int], coords: int) -> int:
    """Dimension of a type whose entries live inside the coordinate set ``coords``."""
    return _component_count(entries, coords) - 1


def cell_dimension(A: NdType) -> int:
    """Dimension of the Minkowski cell sum of the faces A_i of the simplex."""
    return A.d - 1 - dimension(A)


def is_acyclic_type(A: NdType) -> bool:
    """True iff K_A is a forest."""
    edges = sum(popcount(e) for e in A.entries)
    return edges == A.n + A.d - (dimension(A) + 1)


# --- ordered partitions and refinement --------------------------------------


def _ordered_partitions_of(items: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _ordered_partitions_of(rest):
        # put `first` into an existing block or into a new block at any slot
        for k in range(len(sub)):
            yield sub[:k] + (sub[k] | (1 << first),) + sub[k + 1:]
        for k in range(len(sub) + 1):
            yield sub[:k] + (1 << first,) + sub[k:]


@lru_cache(maxsize=None)
def ordered_partitions(d: int) -> tuple[tuple[int, ...], ...]:
    """All ordered partitions of ``{1..d}`` as tuples of block masks."""
    cap = max_enumeration_d()
    if d > cap:
        raise ValueError(f"ordered partitions of [{d}] exceed TROPMAT_MAX_D={cap}")
    return tuple(sorted(set(_ordered_partitions_of(tuple(range(d))))))


def is_ordered_partition(P: Sequence[int], d: int) -> bool:
    seen = 0
    for block in P:
        if block <= 0 or block & seen:
            return False
        seen |= block
    return seen == full_mask(d)


def refine(A: NdType, P: Sequence[int]) -> NdType:
    """Refinement of A with respect to the ordered partition P of [d]."""
    out = []
    for e in A.entries:
        for block in P:
            if e & block:
                out.append(e & block)
                break
        else:
            raise ValueError("P does not cover the coordinates of A")
    return NdType(A.d, tuple(out))


@lru_cache(maxsize=200_000)
def faces(A: NdType) -> frozenset[NdType]:
    """All refinements of A over every ordered partition of [d]."""
    return frozenset(refine(A, P) for P in ordered_partitions(A.d))


# --- comparability graph -----------------------------------------------------


@dataclass(frozen=True)
class CGEdge:
    tail: int
    head: int
    directed: bool
    position: int


@dataclass(frozen=True)
class ComparabilityGraph:
    d: int
    edges: tuple[CGEdge, ...] = field(default_factory=tuple)

    def directed_edges(self) -> list[CGEdge]:
        return [e for e in self.edges if e.directed]


def comparability_graph(A: NdType, B: NdType) -> ComparabilityGraph:
    if (A.n, A.d) != (B.n, B.d):
        raise ValueError("types must share (n, d)")
    edges = []
    for i, (a, b) in enumerate(zip(A.entries, B.entries), 1):
        both = a & b
        for j in bits(a):
            for k in bits(b):
                if j == k:
                    continue
                undirected = (both >> j) & 1 and (both >> k) & 1
                edges.append(CGEdge(j + 1, k + 1, not undirected, i))
    return ComparabilityGraph(A.d, tuple(edges))


def is_acyclic(G: ComparabilityGraph) -> bool:
    """No closed walk that uses a directed edge forwards and undirected edges freely."""
    parent = list(range(G.d + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in G.edges:
        if not e.directed:
            parent[find(e.tail)] = find(e.head)
    sorter: TopologicalSorter = TopologicalSorter()
    for e in G.edges:
        if e.directed:
            t, h = find(e.tail), find(e.head)
            if t == h:
                return False
            sorter.add(h, t)
    try:
        sorter.prepare()
    except CycleError:
        return False
    return True


def comparable(a_entries: Sequence[int], b_entries: Sequence[int], d: int) -> bool:
    """Fast acyclicity test of the comparability graph on raw masks."""
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(a_entries, b_entries):
        u = a & b
        if u & (u - 1):
            bs = bits(u)
            r = find(bs[0])
            for j in bs[1:]:
                parent[find(j)] = r
    succ = [0] * d
    for a, b in zip(a_entries, b_entries):
        u = a & b
        for j in bits(a):
            ju = (u >> j) & 1
            fj = find(j)
            for k in bits(b):
                if j == k or (ju and (u >> k) & 1):
                    continue
                fk = find(k)
                if fj == fk:
                    return False
                succ[fj] |= 1 << fk
    # Kahn's algorithm on component representatives
    indeg = [0] * d
    nodes = [x for x in range(d) if find(x) == x]
    for x in nodes:
        for y in bits(succ[x]):
            indeg[y] += 1
    stack = [x for x in nodes if indeg[x] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in bits(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen == len(nodes)


def is_face(B: NdType, A: NdType) -> bool:
    """True iff B is a refinement of A.

    B is a refinement iff B ⊆ A entrywise and some weak order on [d] picks
    exactly B_i as the minimal elements of every A_i; the latter is the
    acyclicity of the comparability graph of (B, A).
    """
    if (A.n, A.d) != (B.n, B.d):
        raise ValueError("types must share (n, d)")
    if not A.contains(B):
        return False
    return comparable(B.entries, A.entries, A.d)
