"""Deletion, contraction, type transpose and the dual of a TOM."""

from __future__ import annotations

from typing import Iterable

from .axioms import Tom, vertices
from .core import NdType, bits, faces, full_mask, ordered_partitions, refine


def delete_positions(A: NdType, positions: Iterable[int]) -> NdType:
    drop = set(positions)
    return NdType(A.d, tuple(e for i, e in enumerate(A.entries, 1) if i not in drop))


def deletion(M: Tom, i: int) -> Tom:
    if M.n == 1:
        raise ValueError("deletion would empty the tuple")
    if not 1 <= i <= M.n:
        raise ValueError(f"position {i} outside 1..{M.n}")
    return Tom.from_types(M.n - 1, M.d, (delete_positions(A, [i]) for A in M.types), M.labels)


def relabel_coords(mask: int, keep: int) -> int:
    """Compress ``mask`` (a subset of ``keep``) onto 1..|keep| order-preservingly."""
    out = 0
    for new, old in enumerate(bits(keep)):
        if (mask >> old) & 1:
            out |= 1 << new
    return out


def expand_coords(mask: int, keep: int) -> int:
    """Inverse of :func:`relabel_coords`."""
    out = 0
    kb = bits(keep)
    for new in bits(mask):
        out |= 1 << kb[new]
    return out


def contraction(M: Tom, j: int) -> Tom:
    if M.d == 1:
        raise ValueError("contraction needs d >= 2")
    if not 1 <= j <= M.d:
        raise ValueError(f"coordinate {j} outside 1..{M.d}")
    jm = 1 << (j - 1)
    keep = full_mask(M.d) & ~jm
    labels = M.labels or tuple(range(1, M.d + 1))
    kept = [A for A in M.types if not A.support() & jm]
    return Tom.from_types(
        M.n,
        M.d - 1,
        (NdType(M.d - 1, tuple(relabel_coords(e, keep) for e in A.entries)) for A in kept),
        labels[: j - 1] + labels[j:],
    )


def transpose(A: NdType) -> NdType:
    """The (d, n)-type with i ∈ A^t_j iff j ∈ A_i."""
    cols = [0] * A.d
    for i, e in enumerate(A.entries):
        for j in bits(e):
            cols[j] |= 1 << i
    for j, c in enumerate(cols, 1):
        if not c:
            raise ValueError(f"type {A} is unbounded: coordinate {j} occurs in no entry")
    return NdType(A.n, tuple(cols))


def dual_tom(M: Tom) -> Tom:
    out: set[NdType] = set()
    parts = ordered_partitions(M.n)
    for A in vertices(M):
        At = transpose(A)
        out.update(refine(At, P) for P in parts)
    return Tom.from_types(M.d, M.n, out)


def closure(types: Iterable[NdType]) -> frozenset[NdType]:
    """All faces of the given types."""
    out: set[NdType] = set()
    for A in types:
        out |= faces(A)
    return frozenset(out)
