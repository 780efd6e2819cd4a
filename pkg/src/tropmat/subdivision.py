"""Mixed subdivisions of dilated simplices and the constructions on them.

A cell is stored by its type: the Minkowski cell of ``A`` is
``Δ_{A_1} + ... + Δ_{A_n}`` inside ``nΔ^{d-1}``. Full-dimensional cells are
exactly the types whose graph K_A is connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Any, Iterable, Sequence

from . import feasibility
from .axioms import Tom, vertices
from .core import (
    NdType,
    bits,
    comparable,
    dimension,
    dimension_on,
    full_mask,
    is_acyclic_type,
    is_face,
    popcount,
)
from .ops import closure, delete_positions, dual_tom, relabel_coords
from .realize import WeightMatrix, lattice_points, realize_vertices


@dataclass(frozen=True)
class MixedSubdivision:
    n: int
    d: int
    maximal_cells: frozenset[NdType]

    def __post_init__(self):
        for A in self.maximal_cells:
            if (A.n, A.d) != (self.n, self.d):
                raise ValueError(f"cell {A} does not have parameters ({self.n},{self.d})")

    @classmethod
    def of(cls, n: int, d: int, cells: Iterable[NdType]) -> "MixedSubdivision":
        return cls(n, d, frozenset(cells))

    @cached_property
    def all_cells(self) -> frozenset[NdType]:
        return closure(self.maximal_cells)

    def __iter__(self):
        return iter(sorted(self.maximal_cells))

    def __len__(self) -> int:
        return len(self.maximal_cells)


def trivial_subdivision(n: int, d: int) -> MixedSubdivision:
    """The single-cell subdivision of nΔ^{d-1}."""
    return MixedSubdivision.of(n, d, [NdType(d, (full_mask(d),) * n)])


def regular_mixed_subdivision(W: WeightMatrix) -> MixedSubdivision:
    """Dual of the arrangement of W: its maximal cells are the vertex types."""
    return MixedSubdivision.of(W.n, W.d, realize_vertices(W))


def is_full_dimensional(A: NdType) -> bool:
    return dimension(A) == 0


# --- volume ------------------------------------------------------------------


def _connected(entries: Sequence[int], coords: int) -> bool:
    return dimension_on(entries, coords) == 0


@lru_cache(maxsize=None)
def _nvol(entries: tuple[int, ...], d: int) -> int:
    """Normalized volume of Σ Δ_{entries} in coordinates 0..d-1 (connected).

    Pyramid decomposition from the vertex ``Σ e_{min A_i}`` over the facets
    ``x_J >= #{i : A_i ⊆ J}``. Each facet is a product of two smaller cells.
    """
    if d == 1:
        return 1
    top = full_mask(d)
    v0 = [0] * d
    for e in entries:
        v0[bits(e)[0]] += 1
    total = 0
    for J in range(1, top):
        Jc = top & ~J
        inside = [e for e in entries if not e & Jc]
        h = sum(v0[j] for j in bits(J)) - len(inside)
        if h == 0:
            continue
        outside = [e & Jc for e in entries if e & Jc]
        if not (_connected(inside, J) and _connected(outside, Jc)):
            continue
        kj, kc = popcount(J), popcount(Jc)
        vin = _nvol(tuple(sorted(relabel_coords(e, J) for e in inside)), kj)
        vout = _nvol(tuple(sorted(relabel_coords(e, Jc) for e in outside)), kc)
        total += h * comb(d - 2, kj - 1) * vin * vout
    return total


def cell_volume(A: NdType) -> int:
    """Normalized ((d-1)! × Euclidean) volume of the Minkowski cell of A."""
    if not is_full_dimensional(A):
        raise ValueError(f"cell {A} is not full-dimensional")
    return _nvol(tuple(sorted(A.entries)), A.d)


def facet_heights(A: NdType) -> dict[int, int]:
    """Right-hand sides ``z_J = #{i : A_i ⊆ J}`` of the inequalities
    ``x_J >= z_J`` cutting out the cell of A, keyed by the mask J."""
    top = full_mask(A.d)
    return {J: sum(1 for e in A.entries if not e & ~J) for J in range(1, top)}


def interiors_meet(A: NdType, B: NdType) -> bool:
    """Exact test whether the relative interiors of two full-dimensional
    cells intersect."""
    d, n = A.d, A.n
    za, zb = facet_heights(A), facet_heights(B)
    rows = [((Fraction(1),) * d, Fraction(n), "=")]
    for J in za:
        coeffs = tuple(Fraction((J >> j) & 1) for j in range(d))
        rows.append((coeffs, Fraction(max(za[J], zb[J])), ">"))
    return feasibility.feasible(rows, d)


# --- verification ------------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionFailure:
    kind: str  # dimension | comparability | volume | overlap
    witness: dict[str, Any]


@dataclass(frozen=True)
class SubdivisionReport:
    passed: bool
    failures: tuple[SubdivisionFailure, ...] = field(default_factory=tuple)
    volume: int = 0


def verify_subdivision(S: MixedSubdivision, geometric: bool = False) -> SubdivisionReport:
    """Full-dimensionality, pairwise comparability and total volume n^{d-1}.

    With ``geometric=True`` also decide interior disjointness of every pair of
    maximal cells by exact feasibility.
    """
    failures = []
    cells = sorted(S.maximal_cells)
    full = [A for A in cells if is_full_dimensional(A)]
    for A in cells:
        if not is_full_dimensional(A):
            failures.append(SubdivisionFailure("dimension", {"cell": A, "dimension": dimension(A)}))
    for A, B in combinations(cells, 2):
        if not comparable(A.entries, B.entries, S.d):
            failures.append(SubdivisionFailure("comparability", {"A": A, "B": B}))
    if geometric:
        for A, B in combinations(full, 2):
            if interiors_meet(A, B):
                failures.append(SubdivisionFailure("overlap", {"A": A, "B": B}))
    volume = sum(cell_volume(A) for A in full)
    expected = S.n ** (S.d - 1)
    if volume != expected:
        failures.append(SubdivisionFailure("volume", {"volume": volume, "expected": expected}))
    return SubdivisionReport(not failures, tuple(failures), volume)


# --- topes and conversions -----------------------------------------------------


def lattice_point_of(T: NdType) -> tuple[int, ...]:
    q = [0] * T.d
    for e in T.entries:
        q[bits(e)[0]] += 1
    return tuple(q)


def topes_of(S: MixedSubdivision) -> dict[tuple[int, ...], frozenset[NdType]]:
    out: dict[tuple[int, ...], set[NdType]] = {q: set() for q in lattice_points(S.n, S.d)}
    for A in S.all_cells:
        if A.is_tope():
            out[lattice_point_of(A)].add(A)
    return {q: frozenset(ts) for q, ts in out.items()}


def to_tom(S: MixedSubdivision) -> Tom:
    return Tom.from_types(S.n, S.d, S.all_cells)


def from_tom(M: Tom) -> MixedSubdivision:
    """Maximal cells are the members that are faces of no other member."""
    maximal = [A for A in M.types if not any(B != A and is_face(A, B) for B in M.types)]
    return MixedSubdivision.of(M.n, M.d, maximal)


def product_cell_to_type(vertexset: Iterable[tuple[int, int]], n: int, d: int) -> NdType:
    """Vertices (i, j) of Δ^{n-1}×Δ^{d-1} to the type with A_i = {j : (i,j)}."""
    entries = [0] * n
    for i, j in vertexset:
        if not (1 <= i <= n and 1 <= j <= d):
            raise ValueError(f"vertex {(i, j)} outside [{n}]×[{d}]")
        entries[i - 1] |= 1 << (j - 1)
    for i, e in enumerate(entries, 1):
        if not e:
            raise ValueError(f"position {i} is not covered by the vertex set")
    return NdType(d, tuple(entries))


def type_to_product_cell(A: NdType) -> frozenset[tuple[int, int]]:
    return frozenset((i, j + 1) for i, e in enumerate(A.entries, 1) for j in bits(e))


def is_fine(S: MixedSubdivision) -> bool:
    return all(is_acyclic_type(A) for A in S.maximal_cells)


# --- placing -------------------------------------------------------------------


def _check_permutation(p: Sequence[int], k: int, what: str) -> tuple[int, ...]:
    p = tuple(p)
    if sorted(p) != list(range(1, k + 1)):
        raise ValueError(f"{what} {p} is not a permutation of 1..{k}")
    return p


def restricted_vertices(cells: Iterable[NdType], face: int) -> list[NdType]:
    """Cells lying in the face ``face`` of the simplex that are full-dimensional there."""
    return [A for A in cells if not A.support() & ~face and dimension_on(A.entries, face) == 0]


def n_placing(S: MixedSubdivision, sigma: Sequence[int]) -> MixedSubdivision:
    sigma = _check_permutation(sigma, S.d, "sigma")
    top = full_mask(S.d)
    out = set()
    placed = 0
    for s in sigma:
        new = placed | (1 << (s - 1))
        for V in restricted_vertices(S.all_cells, top & ~placed):
            out.add(NdType(S.d, V.entries + (new,)))
        placed = new
    return MixedSubdivision.of(S.n + 1, S.d, out)


def d_placing(S: MixedSubdivision, tau: Sequence[int]) -> MixedSubdivision:
    tau = _check_permutation(tau, S.n, "tau")
    d1 = S.d + 1
    extra = 1 << S.d
    out = set()
    for k, t in enumerate(tau):
        gone = tau[:k]
        kept = [p for p in range(1, S.n + 1) if p not in gone]
        for V in {delete_positions(C, gone) for C in S.all_cells}:
            if dimension(V) != 0:
                continue
            entries = [extra] * S.n
            for p, e in zip(kept, V.entries):
                entries[p - 1] = e
            entries[t - 1] |= extra
            out.add(NdType(d1, tuple(entries)))
    return MixedSubdivision.of(S.n, d1, out)


# --- blow-ups ------------------------------------------------------------------


def blow_up(S: MixedSubdivision, i: int, S2: MixedSubdivision) -> MixedSubdivision:
    if not is_fine(S):
        raise ValueError("blow-up needs a fine subdivision S")
    if not is_fine(S2):
        raise ValueError("blow-up needs a fine subdivision S2")
    if S2.d != S.d:
        raise ValueError("S and S2 must share d")
    if not 1 <= i <= S.n:
        raise ValueError(f"position {i} outside 1..{S.n}")
    out = set()
    for C in S.maximal_cells:
        rest = delete_positions(C, [i]).entries if S.n > 1 else ()
        for X in restricted_vertices(S2.all_cells, C[i]):
            out.add(NdType(S.d, rest + X.entries))
    return MixedSubdivision.of(S.n - 1 + S2.n, S.d, out)


def placing_simplex(pi: Sequence[int]) -> MixedSubdivision:
    """The n-placing extension of the single simplex Δ^{d-1} along π."""
    pi = tuple(pi)
    return n_placing(trivial_subdivision(1, len(pi)), pi)


def _shift(pi: Sequence[int]) -> list[int]:
    """Apex shift with u_{π_1} < u_{π_2} < ...; powers of two keep it generic."""
    u = [0] * len(pi)
    for k, s in enumerate(pi):
        u[s - 1] = 1 << k
    return u


def local_blow_up(A: NdType, i: int, pi: Sequence[int]) -> frozenset[NdType]:
    """Maximal cells replacing the cell A when position i is doubled and the
    copy is pushed off along π.

    Near the vertex dual to A the old hyperplanes form the fan of the cell A
    (all apices at the origin, sectors outside A_k pushed far away), and the
    copy of hyperplane i has its apex at -u on the coordinates A_i. The new
    cells are the vertices of that small arrangement that stay near the origin.
    """
    n, d = A.n, A.d
    u = _shift(pi)
    far = 4 * (n + 2) * sum(u)
    rows = [[0 if (e >> j) & 1 else far for j in range(d)] for e in A.entries]
    rows.append([u[j] if (A[i] >> j) & 1 else far for j in range(d)])
    allowed = A.entries + (A[i],)
    out = set()
    for V in realize_vertices(WeightMatrix.of(rows)):
        if all(not v & ~a for v, a in zip(V.entries, allowed)):
            out.add(V)
    return frozenset(out)


def blow_up_nonfine(S: MixedSubdivision, i: int, pi: Sequence[int]) -> MixedSubdivision:
    """Blow up position ``i`` of an arbitrary subdivision along π.

    Each full-dimensional A is replaced by the cells (A|_P, C) with C ⊆ A_i
    coming from a copy of hyperplane i shifted by u, u increasing along π.
    The trivial P gives (A, {first element of A_i in π}); when |A_i| = 1 the
    cell is just (A, A_i). For fine S this is blow_up(S, i, S_π) with the
    old position i moved next to the new one.
    """
    pi = _check_permutation(pi, S.d, "pi")
    if not 1 <= i <= S.n:
        raise ValueError(f"position {i} outside 1..{S.n}")
    out: set[NdType] = set()
    for A in S.maximal_cells:
        out |= local_blow_up(A, i, pi)
    return MixedSubdivision.of(S.n + 1, S.d, out)


def blow_up_order(A: NdType, i: int) -> NdType:
    """Move position i of an (n+1)-type to position n, next to the last one."""
    e = A.entries
    return NdType(A.d, e[: i - 1] + e[i:-1] + (e[i - 1], e[-1]))


# --- duality ---------------------------------------------------------------------


def dual_subdivision(S: MixedSubdivision) -> MixedSubdivision:
    D = dual_tom(to_tom(S))
    return MixedSubdivision.of(D.n, D.d, vertices(D))


# --- census ----------------------------------------------------------------------


def full_dimensional_types(n: int, d: int) -> list[NdType]:
    from .realize import all_types

    return [A for A in all_types(n, d) if is_full_dimensional(A)]


def census(n: int, d: int) -> list[MixedSubdivision]:
    """Every mixed subdivision of nΔ^{d-1}.

    Sets of pairwise comparable full-dimensional cells whose volumes add up
    to n^{d-1}; comparable cells meet in a common face, so such a set tiles.
    """
    cells = sorted(full_dimensional_types(n, d), key=lambda A: (-cell_volume(A), A))
    vol = [cell_volume(A) for A in cells]
    ok = [[comparable(A.entries, B.entries, d) for B in cells] for A in cells]
    target = n ** (d - 1)
    found: list[MixedSubdivision] = []

    def search(start: int, chosen: list[int], remaining: int):
        if remaining == 0:
            found.append(MixedSubdivision.of(n, d, (cells[k] for k in chosen)))
            return
        for k in range(start, len(cells)):
            if vol[k] <= remaining and all(ok[k][c] for c in chosen):
                chosen.append(k)
                search(k + 1, chosen, remaining - vol[k])
                chosen.pop()

    search(0, [], target)
    return sorted(found, key=lambda S: sorted(S.maximal_cells))


def all_permutations(k: int) -> list[tuple[int, ...]]:
    return list(permutations(range(1, k + 1)))
