"""Combinatorial convexity, elimination by connectivity, the subcomplexes
M(I, J) with their constructibility splits, halfspace covectors and
separating halfspaces."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Sequence

from .axioms import Tom, find_elimination, is_general_position
from .core import NdType, bits, dimension, full_mask, is_face, popcount

SIGNS = ("+", "-", "0")


class TheoremViolation(RuntimeError):
    """A computation contradicted a statement that should hold for every input."""


def _types(M) -> frozenset[NdType]:
    if isinstance(M, Tom):
        return M.types
    if hasattr(M, "all_cells"):
        return M.all_cells
    return frozenset(M)


# --- hulls and distance ------------------------------------------------------


def convex_hull(M, A: NdType, B: NdType) -> frozenset[NdType]:
    types = _types(M)
    if A not in types or B not in types:
        raise ValueError("both types must belong to M")
    return frozenset(C for C in types if in_hull(C, A, B))


def in_hull(C: NdType, A: NdType, B: NdType) -> bool:
    return all(c in (a, b, a | b) for a, b, c in zip(A.entries, B.entries, C.entries))


def is_convex(M, cells: Iterable[NdType]) -> bool:
    cells = frozenset(cells)
    types = _types(M)
    for A in cells:
        for B in cells:
            if any(in_hull(C, A, B) and C not in cells for C in types):
                return False
    return True


def dist(A: NdType, B: NdType) -> frozenset[int]:
    """Positions where neither entry contains the other."""
    return frozenset(
        i for i, (a, b) in enumerate(zip(A.entries, B.entries), 1) if a & ~b and b & ~a
    )


# --- connectivity -------------------------------------------------------------


def _components(nodes: list[NdType], adjacent) -> int:
    seen: set[NdType] = set()
    count = 0
    for start in nodes:
        if start in seen:
            continue
        count += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in nodes:
                if y not in seen and adjacent(x, y):
                    seen.add(y)
                    queue.append(y)
    return count


def closures_meet(S, C: NdType, D: NdType) -> bool:
    """Closed cells C and D share a face of S."""
    return any(is_face(E, C) and is_face(E, D) for E in _types(S) if C.contains(E) and D.contains(E))


def is_connected_subcomplex(S, cells: Iterable[NdType]) -> bool:
    """Connectivity of ``cells`` where two cells touch when they share a face of S."""
    nodes = sorted(cells)
    return _components(nodes, lambda x, y: closures_meet(S, x, y)) <= 1


def face_related(C: NdType, D: NdType) -> bool:
    return is_face(C, D) or is_face(D, C)


def is_connected_by_faces(cells: Iterable[NdType]) -> bool:
    """Connectivity where two cells touch when one is a face of the other."""
    nodes = sorted(cells)
    return _components(nodes, face_related) <= 1


def _path(nodes: list[NdType], adjacent, A: NdType, B: NdType) -> list[NdType] | None:
    prev: dict[NdType, NdType | None] = {A: None}
    queue = deque([A])
    while queue:
        x = queue.popleft()
        if x == B:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in nodes:
            if y not in prev and adjacent(x, y):
                prev[y] = x
                queue.append(y)
    return None


def eliminate_via_connectivity(S, A: NdType, B: NdType, j: int) -> NdType:
    """An elimination of A and B at position j read off a path from A to B
    inside their convex hull.

    Along a path whose consecutive cells are faces of one another, entry j
    can only move between incomparable A_j and B_j through A_j ∪ B_j.
    """
    if A == B:
        return A
    hull = sorted(convex_hull(S, A, B))
    target = A[j] | B[j]
    path = _path(hull, face_related, A, B)
    if path is None:
        path = _path(hull, lambda x, y: closures_meet(S, x, y), A, B)
    if path is None:
        raise TheoremViolation(f"convex hull of {A} and {B} is disconnected")
    for C in path:
        if C[j] == target:
            return C
    raise TheoremViolation(f"path from {A} to {B} avoids entry {target} at position {j}")


@dataclass(frozen=True)
class ChainStep:
    A: NdType
    B: NdType
    position: int
    C: NdType


def elimination_chain(M, A: NdType, B: NdType) -> list[ChainStep]:
    """Recursive eliminations shrinking ``dist`` down to zero, depth first."""
    types = _types(M)
    steps: list[ChainStep] = []
    stack = [(A, B)]
    while stack:
        X, Y = stack.pop()
        ds = dist(X, Y)
        if not ds:
            continue
        i = min(ds)
        C = find_elimination(types, X, Y, i)
        if C is None:
            raise TheoremViolation(f"no elimination of {X} and {Y} at {i}")
        steps.append(ChainStep(X, Y, i, C))
        stack.append((X, C))
        stack.append((C, Y))
    return steps


# --- M(I, J) ---------------------------------------------------------------------


def set_partitions(d: int) -> list[tuple[int, ...]]:
    """Unordered partitions of [d] as sorted tuples of block masks."""
    out: list[tuple[int, ...]] = []

    def go(j: int, blocks: list[int]):
        if j == d:
            out.append(tuple(sorted(blocks)))
            return
        for k in range(len(blocks)):
            blocks[k] |= 1 << j
            go(j + 1, blocks)
            blocks[k] &= ~(1 << j)
        blocks.append(1 << j)
        go(j + 1, blocks)
        blocks.pop()

    go(0, [])
    return sorted(out)


def m_of(M, I: Sequence[int], J: Sequence[Sequence[int]]) -> frozenset[NdType]:
    """Types with A_i ⊆ I_i that meet every block of J_i."""
    return frozenset(
        A
        for A in _types(M)
        if all(not a & ~ii for a, ii in zip(A.entries, I))
        and all(a & blk for a, Ji in zip(A.entries, J) for blk in Ji)
    )


def maximal_members(cells: Iterable[NdType]) -> frozenset[NdType]:
    """Members with no proper refinement inside the set (largest arrangement cells)."""
    cells = frozenset(cells)
    return frozenset(A for A in cells if not any(B != A and A.contains(B) and is_face(B, A) for B in cells))


def expected_dimension(n: int, d: int, J: Sequence[Sequence[int]]) -> int:
    return d + n - 1 - sum(len(Ji) for Ji in J)


def is_pure(cells: Iterable[NdType], dim: int) -> bool:
    return all(dimension(A) == dim for A in maximal_members(cells))


def up_closure(M, cells: Iterable[NdType]) -> frozenset[NdType]:
    """All members of M that are faces (in the arrangement) of the given cells,
    i.e. coarser types of which a given cell is a refinement."""
    cells = list(cells)
    return frozenset(C for C in _types(M) if any(C.contains(A) and is_face(A, C) for A in cells))


@dataclass
class ConstructNode:
    I: tuple[int, ...]
    J: tuple[tuple[int, ...], ...]
    dimension: int
    split: dict | None = None
    left: "ConstructNode | None" = None
    right: "ConstructNode | None" = None
    meet: "ConstructNode | None" = None
    checks: dict[str, bool] = field(default_factory=dict)

    def is_leaf(self) -> bool:
        return self.split is None

    def nodes(self):
        yield self
        for child in (self.left, self.right, self.meet):
            if child is not None:
                yield from child.nodes()

    def all_checks_pass(self) -> bool:
        return all(all(node.checks.values()) for node in self.nodes())


def split_data(A: NdType, B: NdType, I, J) -> dict:
    """The split of M(I, J) separating the maximal cells A and B."""
    k = next(p for p, (a, b) in enumerate(zip(A.entries, B.entries)) if a != b)
    ell = next(x for x, blk in enumerate(J[k]) if A.entries[k] & blk != B.entries[k] & blk)
    block = J[k][ell]
    a = A.entries[k] & block
    b = B.entries[k] & block
    if popcount(a) != 1 or popcount(b) != 1:
        raise TheoremViolation(f"maximal cells {A}, {B} meet block {block} in more than one element")
    rest = block & ~a
    I1 = tuple(ii & ~a if p == k else ii for p, ii in enumerate(I))
    I2 = tuple(ii & ~rest if p == k else ii for p, ii in enumerate(I))
    Jk = tuple(sorted([blk for x, blk in enumerate(J[k]) if x != ell] + [a, rest]))
    J0 = tuple(Jk if p == k else Ji for p, Ji in enumerate(J))
    return {"k": k + 1, "l": ell + 1, "a": bits(a)[0] + 1, "b": bits(b)[0] + 1, "I1": I1, "I2": I2, "J0": J0}


def constructibility_witness(
    M, I: Sequence[int], J: Sequence[Sequence[int]], pair: tuple[NdType, NdType] | None = None
) -> ConstructNode:
    """Recursive split of M(I, J) into two pieces meeting in a piece of one
    dimension less, with every node's claims checked."""
    types = _types(M)
    if not is_general_position(Tom.from_types(next(iter(types)).n, next(iter(types)).d, types)):
        raise ValueError("constructibility needs a TOM in general position")
    I = tuple(I)
    J = tuple(tuple(Ji) for Ji in J)
    members = m_of(types, I, J)
    if not members:
        raise ValueError("M(I, J) is empty")
    return _construct(types, I, J, pair)


def _construct(types, I, J, pair=None) -> ConstructNode:
    members = m_of(types, I, J)
    some = next(iter(members))
    dim = expected_dimension(some.n, some.d, J)
    node = ConstructNode(I, J, dim)
    maximal = sorted(maximal_members(members))
    node.checks["pure"] = all(dimension(A) == dim for A in maximal)
    node.checks["connected"] = is_connected_by_faces(members)
    if len(maximal) == 1:
        return node
    A, B = pair if pair is not None else (maximal[0], maximal[1])
    data = split_data(A, B, I, J)
    node.split = data
    m1 = m_of(types, data["I1"], J)
    m2 = m_of(types, data["I2"], J)
    m0 = m_of(types, I, data["J0"])
    c1, c2, c0, c = (up_closure(types, x) for x in (m1, m2, m0, members))
    node.checks["nonempty"] = bool(m1 and m2 and m0)
    node.checks["union"] = c1 | c2 == c
    node.checks["intersection"] = c1 & c2 == c0
    node.checks["sides"] = B in m1 and A in m2
    if not node.checks["nonempty"]:
        return node
    node.left = _construct(types, data["I1"], J)
    node.right = _construct(types, data["I2"], J)
    node.meet = _construct(types, I, data["J0"])
    node.checks["meet_dimension"] = node.meet.dimension == dim - 1
    node.checks["side_dimension"] = node.left.dimension == dim == node.right.dimension
    return node


# --- halfspaces ------------------------------------------------------------------


def sign(C: int, I: int) -> str:
    if not C & ~I:
        return "+"
    if not C & I:
        return "-"
    return "0"


def halfspace_covectors(M, positions: Sequence[int], I: Sequence[int]) -> frozenset[tuple[str, ...]]:
    """Sign vectors (T_{I_i}(C_i))_{i ∈ positions} over C ∈ M; positions 1-based."""
    return frozenset(tuple(sign(C[i], I[i - 1]) for i in positions) for C in _types(M))


def covectors_complete(L: frozenset[tuple[str, ...]], k: int) -> bool:
    """Either the zero vector is absent or every sign vector is present."""
    if ("0",) * k not in L:
        return True
    return len(L) == 3**k


def approximated_types(I: int, pi: Sequence[int]) -> frozenset[int]:
    """Types approximated by the shifted halfspace of I at a point of sector π."""
    out = set()
    for pos, i in enumerate(pi):
        if not (I >> (i - 1)) & 1:
            continue
        before = 0
        for q in pi[:pos]:
            before |= 1 << (q - 1)
        # subsets of the predecessors, each joined with i
        sub = before
        while True:
            out.add(sub | (1 << (i - 1)))
            if sub == 0:
                break
            sub = (sub - 1) & before
    return frozenset(out)


def separates(L: int, pi: Sequence[int], I: int, J: int, K: int) -> bool:
    T = approximated_types(L, pi)
    return I in T and J in T and (I | J) in T and K not in T


def separating_halfspace_recipe(I: int, J: int, K: int, d: int) -> tuple[str, int, tuple[int, ...]]:
    """The three-case construction; the result is not guaranteed to separate."""
    U = I | J

    def order(first: int, middle: Sequence[int], last: int = 0) -> tuple[int, ...]:
        seq = [j + 1 for j in bits(first)] + list(middle)
        tail = [j + 1 for j in bits(last)]
        used = set(seq) | set(tail)
        seq += [j for j in range(1, d + 1) if j not in used]
        return tuple(seq + tail)

    outside = K & ~U
    if outside:
        x = bits(outside)[0]
        common = I & J
        if common:
            i = bits(common)[0]
            return "outside", 1 << i, order(U & ~(1 << i), [i + 1], 1 << x)
        i, j = bits(I)[0], bits(J)[0]
        return "outside", (1 << i) | (1 << j), order(U & ~((1 << i) | (1 << j)), [i + 1, j + 1], 1 << x)
    if not K & ~(I & J):
        common = (I & J) & ~K
        if common:
            i = bits(common)[0]
            return "inside", 1 << i, order(U & ~(1 << i), [i + 1])
        i, j = bits(I & ~K)[0], bits(J & ~K)[0]
        return "inside", (1 << i) | (1 << j), order(U & ~((1 << i) | (1 << j)), [i + 1, j + 1])
    i = bits(U & ~K)[0]
    return "other", 1 << i, order(U & ~(1 << i), [i + 1])


def separating_halfspace(I: int, J: int, K: int, d: int) -> tuple[int, tuple[int, ...]]:
    """(L, π) whose approximated types contain I, J, I ∪ J but not K.

    The three-case recipe is tried first; otherwise every proper nonempty L
    and every π are searched in order. The answer is always verified.
    """
    top = full_mask(d)
    if not (0 < I < top and 0 < J < top):
        raise ValueError("I and J must be proper nonempty subsets")
    if not 0 < K <= top or K in (I, J, I | J):
        raise ValueError("K must be a nonempty subset different from I, J and their union")
    _, L, pi = separating_halfspace_recipe(I, J, K, d)
    if separates(L, pi, I, J, K):
        return L, pi
    for L in range(1, top):
        for pi in permutations(range(1, d + 1)):
            if separates(L, pi, I, J, K):
                return L, pi
    raise TheoremViolation(f"no separating halfspace for I={I}, J={J}, K={K}")


# --- star ------------------------------------------------------------------------


def star(M, T: NdType) -> frozenset[NdType]:
    """Members entrywise contained in T."""
    types = _types(M)
    if T not in types:
        raise ValueError(f"{T} is not a member")
    return frozenset(C for C in types if T.contains(C))


def all_halfspace_systems(n: int, d: int) -> Iterable[tuple[int, ...]]:
    return product(range(1, full_mask(d)), repeat=n)
