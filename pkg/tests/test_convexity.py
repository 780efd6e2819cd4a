from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import T, cached_census, types
from tropmat.axioms import Tom, find_elimination
from tropmat.convexity import (
    TheoremViolation,
    approximated_types,
    constructibility_witness,
    convex_hull,
    covectors_complete,
    dist,
    eliminate_via_connectivity,
    elimination_chain,
    expected_dimension,
    halfspace_covectors,
    in_hull,
    is_connected_by_faces,
    is_connected_subcomplex,
    is_convex,
    is_pure,
    m_of,
    maximal_members,
    separates,
    separating_halfspace,
    separating_halfspace_recipe,
    set_partitions,
    split_data,
    star,
)
from tropmat.core import faces, full_mask, to_mask
from tropmat.realize import all_types, realize_tom
from tropmat.subdivision import MixedSubdivision, is_fine, trivial_subdivision

m = to_mask
H4 = frozenset(all_types(1, 4))


def test_convex_hull_examples(generic33):
    M = realize_tom(generic33)
    A, B = T("2,2,3", 3), T("1,1,1", 3)
    assert convex_hull(M, A, A) == {A}
    H = convex_hull(M, A, B)
    assert T("1,1,3", 3) in H
    assert is_convex(M, H)
    with pytest.raises(ValueError):
        convex_hull(M, A, T("3,3,2", 3))


def test_dist_examples():
    A = T("2,2,3", 3)
    assert dist(A, A) == set()
    assert dist(A, T("1,1,1", 3)) == {1, 2, 3}
    assert dist(T("12,1", 2), T("2,12", 2)) == set()


def _connected_oracle(S, cells) -> bool:
    # closed cells touch iff some cell of S is a face of both
    g = nx.Graph()
    cells = list(cells)
    g.add_nodes_from(cells)
    for C, D in combinations(cells, 2):
        if faces(C) & faces(D) & S.all_cells:
            g.add_edge(C, D)
    return nx.is_connected(g) if cells else True


def test_connectivity_examples():
    S4 = trivial_subdivision(1, 4)
    assert is_connected_subcomplex(S4, types(4, "12"))
    assert is_connected_subcomplex(S4, types(4, "12", "13", "24", "34"))
    # (1) and (2) have no common face, so the pair alone is disconnected
    S2 = trivial_subdivision(1, 2)
    assert not is_connected_subcomplex(S2, types(2, "1", "2"))
    assert is_connected_subcomplex(S2, types(2, "1", "2", "12"))


@given(st.sampled_from(cached_census(2, 3)), st.randoms(use_true_random=False))
def test_connectivity_matches_networkx(S, rnd):
    cells = sorted(S.all_cells)
    sample = rnd.sample(cells, rnd.randint(1, min(6, len(cells))))
    assert is_connected_subcomplex(S, sample) == _connected_oracle(S, sample)


def test_eliminate_examples(staircase):
    A, B = T("123,1", 3), T("3,123", 3)
    assert eliminate_via_connectivity(staircase, A, A, 1) == A
    C = eliminate_via_connectivity(staircase, A, B, 1)
    assert C[1] == 0b111 and in_hull(C, A, B)


def test_eliminate_agrees_with_brute_force():
    for n, d in ((2, 2), (2, 3)):
        for S in cached_census(n, d):
            cells = S.all_cells
            for A, B in combinations(sorted(cells), 2):
                for j in range(1, n + 1):
                    C = eliminate_via_connectivity(S, A, B, j)
                    assert find_elimination(cells, A, B, j) is not None
                    assert C[j] == A[j] | B[j] and in_hull(C, A, B)


def test_eliminate_reports_disconnected_hull():
    # the two topes of a segment, without the segment itself
    S = MixedSubdivision.of(1, 2, types(2, "12"))
    with pytest.raises(TheoremViolation):
        eliminate_via_connectivity(types(2, "1", "2"), T("1", 2), T("2", 2), 1)
    assert eliminate_via_connectivity(S, T("1", 2), T("2", 2), 1) == T("12", 2)


def test_elimination_chain_shrinks_dist(generic33):
    M = realize_tom(generic33)
    steps = elimination_chain(M, T("2,2,3", 3), T("1,1,1", 3))
    assert steps
    for s in steps:
        k = len(dist(s.A, s.B))
        assert len(dist(s.A, s.C)) < k and len(dist(s.C, s.B)) < k


# --- M(I, J) --------------------------------------------------------------------------


def test_set_partitions_are_bell_numbers():
    assert [len(set_partitions(d)) for d in range(1, 6)] == [1, 2, 5, 15, 52]


def test_m_of_examples(path_tom):
    full = (full_mask(2),) * 2
    trivial = ((full_mask(2),),) * 2
    assert m_of(path_tom, full, trivial) == path_tom.types
    members = m_of(H4, (full_mask(4),), ((m([1, 4]), m([2, 3])),))
    assert maximal_members(members) == types(4, "12", "13", "24", "34")
    assert is_pure(members, 2) and is_connected_by_faces(members)


def test_constructibility_figure_split():
    I, J = (full_mask(4),), ((m([1, 4]), m([2, 3])),)
    root = constructibility_witness(H4, I, J, pair=(T("13", 4), T("24", 4)))
    s = root.split
    assert (s["a"], s["b"]) == (1, 4)
    assert s["I1"] == (m([2, 3, 4]),) and s["I2"] == (m([1, 2, 3]),)
    assert set(s["J0"][0]) == {m([1]), m([4]), m([2, 3])}
    assert root.all_checks_pass()
    assert split_data(T("13", 4), T("24", 4), I, J) == s


def test_single_cell_is_a_leaf():
    root = constructibility_witness(H4, (m([1, 2]),), ((m([1]), m([2, 3, 4])),))
    assert root.is_leaf() and root.all_checks_pass()


def test_constructibility_needs_general_position():
    M = Tom.from_types(2, 2, types(2, "12,12", "1,1", "2,2"))
    with pytest.raises(ValueError, match="general position"):
        constructibility_witness(M, (3, 3), ((3,), (3,)))


@pytest.mark.parametrize("S", [S for S in cached_census(2, 3) if is_fine(S)][:3], ids=str)
def test_m_of_pure_convex_and_constructible(S):
    n, d = S.n, S.d
    for I in [(7, 7), (3, 7), (7, 6), (5, 3)]:
        for J in [((7,), (7,)), ((1, 6), (7,)), ((3, 4), (1, 6))]:
            members = m_of(S, I, J)
            if not members:
                continue
            assert is_convex(S, members)
            assert is_pure(members, expected_dimension(n, d, J))
            assert constructibility_witness(S, I, J).all_checks_pass()


# --- halfspaces -----------------------------------------------------------------------------


def test_covector_examples(path_tom):
    L = halfspace_covectors(path_tom, (1,), (m([1]), m([1])))
    assert L == {("+",), ("0",), ("-",)} and covectors_complete(L, 1)
    L = halfspace_covectors(path_tom, (1, 2), (m([1]), m([1])))
    assert ("0", "0") not in L
    assert halfspace_covectors(types(1, "1"), (1,), (m([1]),)) == {("+",)}


def _approx_oracle(I, pi):
    d = len(pi)
    out = set()
    for i in pi:
        if not (I >> (i - 1)) & 1:
            continue
        allowed = {i} | set(pi[: pi.index(i)])
        for J in range(1, 1 << d):
            Js = {j + 1 for j in range(d) if (J >> j) & 1}
            if i in Js and Js <= allowed:
                out.add(J)
    return out


def test_approximated_types_examples():
    assert approximated_types(m([1]), (1, 2, 3)) == {m([1])}
    assert approximated_types(m([1]), (2, 1, 3)) == {m([1]), m([1, 2])}
    assert approximated_types(m([2, 3]), (1, 2, 3)) == {m(s) for s in ([2], [1, 2], [3], [1, 3], [2, 3], [1, 2, 3])}


@given(st.integers(1, 15), st.permutations([1, 2, 3, 4]))
def test_approximated_types_matches_formula(I, pi):
    assert approximated_types(I, tuple(pi)) == _approx_oracle(I, tuple(pi))


@given(st.integers(1, 15), st.permutations([1, 2, 3, 4]), st.integers(0, 2))
def test_approximated_types_invariant_under_irrelevant_swaps(I, pi, k):
    pi = list(pi)
    swapped = pi[:k] + [pi[k + 1], pi[k]] + pi[k + 2:]
    members = [q for q in range(1, 5) if (I >> (q - 1)) & 1]
    pos = {q: x for x, q in enumerate(pi)}
    # both entries before every member of I, or both after
    if all(pos[q] > k + 1 for q in members) or all(pos[q] < k for q in members):
        assert approximated_types(I, tuple(pi)) == approximated_types(I, tuple(swapped))


def test_separating_examples():
    assert separating_halfspace(m([1, 2]), m([1, 3]), m([1]), 3) == (m([2, 3]), (1, 2, 3))
    L, pi = separating_halfspace(m([1]), m([2, 3]), m([1, 2]), 3)
    assert separates(L, pi, m([1]), m([2, 3]), m([1, 2]))
    L, pi = separating_halfspace(m([1]), m([2]), m([1, 2, 3]), 3)
    assert separates(L, pi, m([1]), m([2]), m([1, 2, 3]))
    assert separates(m([1, 2]), (1, 2, 3), m([1]), m([2]), m([1, 2, 3]))


def test_separating_recipe_third_case_can_fail():
    case, L, pi = separating_halfspace_recipe(m([1]), m([2, 3]), m([1, 2]), 3)
    assert case == "other" and not separates(L, pi, m([1]), m([2, 3]), m([1, 2]))


def test_separating_rejects_bad_input():
    with pytest.raises(ValueError):
        separating_halfspace(m([1, 2, 3]), m([1]), m([2]), 3)
    with pytest.raises(ValueError):
        separating_halfspace(m([1]), m([2]), m([1, 2]), 3)


def test_star_examples(path_tom):
    assert star(path_tom, T("1,1", 2)) == {T("1,1", 2)}
    M = Tom.from_types(1, 3, all_types(1, 3))
    assert len(star(M, T("123", 3))) == 7
    assert star(path_tom, T("12,1", 2)) == types(2, "12,1", "1,1", "2,1")
    with pytest.raises(ValueError):
        star(path_tom, T("12,12", 2))
