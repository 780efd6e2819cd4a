"""Tropical oriented matroid axioms, general position, vertices and topes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Iterable

from .core import (
    NdType,
    comparable,
    constant_type,
    dimension,
    faces,
    is_acyclic_type,
    ordered_partitions,
    refine,
)


@dataclass(frozen=True)
class Tom:
    """A finite set of (n, d)-types, claimed to satisfy the four axioms.

    ``labels`` maps the coordinates 1..d back to the labels they carried
    before a contraction; ``None`` means the identity.
    """

    n: int
    d: int
    types: frozenset[NdType]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        for A in self.types:
            if (A.n, A.d) != (self.n, self.d):
                raise ValueError(f"type {A} does not have parameters ({self.n},{self.d})")

    @classmethod
    def from_types(cls, n: int, d: int, types: Iterable[NdType], labels=None) -> "Tom":
        return cls(n, d, frozenset(types), labels)

    def __len__(self) -> int:
        return len(self.types)

    def __contains__(self, A: object) -> bool:
        return A in self.types

    def __iter__(self):
        return iter(sorted(self.types))


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    passed: bool
    witness: dict[str, Any] | None = None

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a witness is present exactly when the check fails")


def check_boundary(M: Tom) -> AxiomReport:
    for j in range(1, M.d + 1):
        if constant_type(M.n, M.d, j) not in M.types:
            return AxiomReport("boundary", False, {"j": j})
    return AxiomReport("boundary", True)


def check_comparability(M: Tom) -> AxiomReport:
    ordered = sorted(M.types)
    # the graph of (B, A) is that of (A, B) reversed, so unordered pairs suffice
    for A, B in combinations(ordered, 2):
        if not comparable(A.entries, B.entries, M.d):
            return AxiomReport("comparability", False, {"A": A, "B": B})
    return AxiomReport("comparability", True)


def elimination_candidates(A: NdType, B: NdType, j: int) -> Iterable[NdType]:
    """Every type C with C_j = A_j ∪ B_j and C_k ∈ {A_k, B_k, A_k ∪ B_k}."""
    choices = []
    for k, (a, b) in enumerate(zip(A.entries, B.entries), 1):
        if k == j:
            choices.append((a | b,))
        else:
            choices.append(tuple(sorted({a, b, a | b})))
    for entries in product(*choices):
        yield NdType(A.d, entries)


def find_elimination(types: frozenset[NdType], A: NdType, B: NdType, j: int) -> NdType | None:
    """Smallest C in ``types`` eliminating A and B at position j, if any."""
    found = [C for C in elimination_candidates(A, B, j) if C in types]
    return min(found) if found else None


def check_elimination(M: Tom) -> AxiomReport:
    ordered = sorted(M.types)
    for x, A in enumerate(ordered):
        for B in ordered[x + 1:]:
            for j in range(1, M.n + 1):
                if find_elimination(M.types, A, B, j) is None:
                    return AxiomReport("elimination", False, {"A": A, "B": B, "j": j})
    return AxiomReport("elimination", True)


def check_surrounding(M: Tom) -> AxiomReport:
    for A in sorted(M.types):
        missing = faces(A) - M.types
        if missing:
            for P in ordered_partitions(M.d):
                if refine(A, P) in missing:
                    return AxiomReport("surrounding", False, {"A": A, "P": P, "refinement": refine(A, P)})
    return AxiomReport("surrounding", True)


def check_all(M: Tom) -> list[AxiomReport]:
    return [check_boundary(M), check_comparability(M), check_elimination(M), check_surrounding(M)]


def is_tom(M: Tom) -> bool:
    return all(r.passed for r in check_all(M))


def is_general_position(M: Tom) -> bool:
    return all(is_acyclic_type(A) for A in M.types)


def vertices(M: Tom) -> frozenset[NdType]:
    return frozenset(A for A in M.types if dimension(A) == 0)


def topes(M: Tom) -> frozenset[NdType]:
    return frozenset(A for A in M.types if dimension(A) == M.d - 1)
