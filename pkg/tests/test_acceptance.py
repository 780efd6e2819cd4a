"""Acceptance criteria 1-8, one test each; the conftest hook prints a
pass/fail line per criterion at the end of the run."""

import time
from functools import lru_cache
from itertools import combinations, product
from math import comb


from conftest import T, cached_census
from tropmat.axioms import check_all, find_elimination, is_general_position, topes, vertices
from tropmat.convexity import (
    constructibility_witness,
    convex_hull,
    covectors_complete,
    dist,
    elimination_chain,
    eliminate_via_connectivity,
    expected_dimension,
    halfspace_covectors,
    in_hull,
    is_connected_by_faces,
    is_connected_subcomplex,
    is_pure,
    m_of,
    maximal_members,
    separates,
    separating_halfspace,
    set_partitions,
)
from tropmat.core import full_mask, to_mask
from tropmat.corpus import generic_corpus
from tropmat.ops import dual_tom
from tropmat.realize import WeightMatrix, all_types, lattice_points, lattice_tope, realize_tom, realize_tom_sweep
from tropmat.subdivision import (
    all_permutations,
    blow_up,
    blow_up_nonfine,
    d_placing,
    is_fine,
    n_placing,
    placing_simplex,
    to_tom,
    trivial_subdivision,
    verify_subdivision,
)

CENSUS_SHAPES = ((2, 2), (3, 2), (2, 3))


def passes(M) -> bool:
    return all(r.passed for r in check_all(M))


@lru_cache(maxsize=None)
def corpus():
    return generic_corpus()


def test_criterion_1_realizable_axiom_suite():
    start = time.perf_counter()
    C = corpus()
    assert len(C.matrices) >= 200
    assert {(W.n, W.d) for W in C.matrices} == {(2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (3, 4)}
    failures = [W for W in C.matrices if not passes(realize_tom(W))]
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {len(C.matrices)} matrices, {len(failures)} failures, {elapsed:.1f}s")
    assert not failures
    assert elapsed < 120


def test_criterion_2_oracle_agreement():
    for W in corpus().matrices:
        M = realize_tom(W)
        lattice = set().union(*(lattice_tope(W, q) for q in lattice_points(W.n, W.d)))
        assert topes(M) == lattice
        # counts come from the exact feasibility sweep over every (n, d)-type
        S = realize_tom_sweep(W)
        assert S.types == M.types
        assert len(vertices(S)) == comb(W.n + W.d - 2, W.d - 1)
        assert len(topes(S)) == comb(W.n + W.d - 1, W.d - 1)


def test_criterion_3_bijection_at_desk_scale():
    # numbers of faces of the secondary polytopes (segment, hexagon, hexagon)
    expected = {(2, 2): 3, (3, 2): 13, (2, 3): 13}
    for n, d in CENSUS_SHAPES:
        found = cached_census(n, d)
        assert len(found) == expected[(n, d)]
        assert any(not is_fine(S) for S in found)
        for S in found:
            assert verify_subdivision(S).passed
            assert verify_subdivision(S, geometric=True).passed
            assert passes(to_tom(S))
        assert len({S.all_cells for S in found}) == len(found)
    print(f"criterion 3: census sizes {[len(cached_census(n, d)) for n, d in CENSUS_SHAPES]}")


def test_criterion_4_elimination_iff_connectivity():
    pairs = 0
    for n, d in CENSUS_SHAPES:
        for S in cached_census(n, d):
            cells = S.all_cells
            for A, B in combinations(sorted(cells), 2):
                pairs += 1
                eliminable = all(find_elimination(cells, A, B, j) is not None for j in range(1, n + 1))
                assert eliminable == is_connected_subcomplex(S, convex_hull(S, A, B))
                for j in range(1, n + 1):
                    C = eliminate_via_connectivity(S, A, B, j)
                    assert C[j] == A[j] | B[j] and in_hull(C, A, B)
                for step in elimination_chain(S, A, B):
                    k = len(dist(step.A, step.B))
                    assert len(dist(step.A, step.C)) <= k - 1
                    assert len(dist(step.B, step.C)) <= k - 1
    print(f"criterion 4: {pairs} pairs")


def test_criterion_5_duality():
    for n, d in CENSUS_SHAPES:
        for S in cached_census(n, d):
            M = to_tom(S)
            D = dual_tom(M)
            assert (D.n, D.d) == (d, n)
            assert passes(D)
            assert vertices(dual_tom(D)) == vertices(M)


def test_criterion_6_constructions_preserve_validity():
    start = time.perf_counter()
    inputs = [trivial_subdivision(1, 2), trivial_subdivision(1, 3)]
    inputs += [S for n, d in CENSUS_SHAPES for S in cached_census(n, d)]
    checked = 0

    def ok(R, n, d):
        nonlocal checked
        checked += 1
        rep = verify_subdivision(R)
        return (R.n, R.d) == (n, d) and rep.passed and rep.volume == n ** (d - 1)

    for S in inputs:
        n, d = S.n, S.d
        for sigma in all_permutations(d):
            assert ok(n_placing(S, sigma), n + 1, d)
        for tau in all_permutations(n):
            assert ok(d_placing(S, tau), n, d + 1)
        for i in range(1, n + 1):
            for pi in all_permutations(d):
                assert ok(blow_up_nonfine(S, i, pi), n + 1, d)
                if is_fine(S):
                    assert ok(blow_up(S, i, placing_simplex(pi)), n + 1, d)
            if is_fine(S) and n + 1 <= 3:
                for S2 in cached_census(2, d):
                    if is_fine(S2):
                        assert ok(blow_up(S, i, S2), n + 1, d)
    elapsed = time.perf_counter() - start
    print(f"criterion 6: {checked} constructions verified in {elapsed:.1f}s")
    assert elapsed < 300


def general_position_corpora():
    for n, d in CENSUS_SHAPES:
        for S in cached_census(n, d):
            if is_fine(S):
                yield n, d, S.all_cells
    for W in (WeightMatrix.of([[0, 1, 0], [0, 0, 3], [0, 3, -1]]), WeightMatrix.of([[3, -7, 2], [0, 5, -4], [6, 1, -9]])):
        M = realize_tom(W)
        assert is_general_position(M)
        yield 3, 3, M.types


def test_criterion_7_halfspace_machinery():
    nonempty = 0
    for n, d, types in general_position_corpora():
        for I in product(range(1, full_mask(d) + 1), repeat=n):
            for J in product(set_partitions(d), repeat=n):
                members = m_of(types, I, J)
                if not members:
                    continue
                nonempty += 1
                assert is_connected_by_faces(members)
                assert is_pure(members, expected_dimension(n, d, J))
                assert constructibility_witness(types, I, J).all_checks_pass()
        for k in range(1, n + 1):
            for positions in combinations(range(1, n + 1), k):
                for I in product(range(1, full_mask(d)), repeat=n):
                    assert covectors_complete(halfspace_covectors(types, positions, I), k)
    triples = 0
    for d in (3, 4):
        top = full_mask(d)
        for I, J in product(range(1, top), repeat=2):
            for K in range(1, top + 1):
                if K in (I, J, I | J):
                    continue
                triples += 1
                L, pi = separating_halfspace(I, J, K, d)
                assert separates(L, pi, I, J, K)
    print(f"criterion 7: {nonempty} nonempty M(I,J), {triples} separating triples")


def test_criterion_8_figure_fixtures():
    # convex hull figure, realized by a frozen weight matrix
    M = realize_tom(WeightMatrix.of([[0, 1, 0], [0, 0, 3], [0, 3, -1]]))
    assert T("1,1,3", 3) in convex_hull(M, T("2,2,3", 3), T("1,1,1", 3))
    # constructibility split of M([4], 14 ⊔ 23) for the single hyperplane in d = 4
    H = frozenset(all_types(1, 4))
    I, J = (full_mask(4),), ((to_mask([1, 4]), to_mask([2, 3])),)
    assert maximal_members(m_of(H, I, J)) == {T(x, 4) for x in ("12", "13", "24", "34")}
    root = constructibility_witness(H, I, J, pair=(T("13", 4), T("24", 4)))
    s = root.split
    assert (s["a"], s["b"]) == (1, 4)
    assert set(s["J0"][0]) == {to_mask([1]), to_mask([4]), to_mask([2, 3])}
    assert s["I1"] == (to_mask([2, 3, 4]),) and s["I2"] == (to_mask([1, 2, 3]),)
    # placing example: the staircase from a single triangle
    S = n_placing(trivial_subdivision(1, 3), (1, 2, 3))
    assert S.maximal_cells == {T("123,1", 3), T("23,12", 3), T("3,123", 3)}
    assert verify_subdivision(S).volume == 4
