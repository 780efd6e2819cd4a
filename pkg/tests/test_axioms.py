from math import comb

from hypothesis import given
from hypothesis import strategies as st

from conftest import T, types
from tropmat.axioms import (
    Tom,
    check_all,
    check_boundary,
    check_comparability,
    check_elimination,
    check_surrounding,
    find_elimination,
    is_general_position,
    topes,
    vertices,
)
from tropmat.core import faces, popcount
from tropmat.ops import closure
from tropmat.realize import WeightMatrix, realize_tom, realize_tom_sweep


def one_tuples(d):
    return Tom.from_types(1, d, (T(str(m), d) for m in ("1", "2", "3", "12", "13", "23", "123")[: 2**d - 1]))


def test_boundary():
    assert check_boundary(one_tuples(3)).passed
    rep = check_boundary(Tom.from_types(2, 2, types(2, "1,1")))
    assert not rep.passed and rep.witness == {"j": 2}


def test_boundary_on_realized(generic23):
    assert check_boundary(realize_tom(generic23)).passed


def test_comparability():
    rep = check_comparability(Tom.from_types(2, 2, types(2, "1,2", "2,1")))
    assert not rep.passed
    assert {rep.witness["A"], rep.witness["B"]} == {T("1,2", 2), T("2,1", 2)}
    assert check_comparability(Tom.from_types(2, 2, types(2, "12,12"))).passed


def test_comparability_on_realized(generic23):
    assert check_comparability(realize_tom(generic23)).passed


def test_elimination():
    M = one_tuples(3)
    assert find_elimination(M.types, T("1", 3), T("2", 3), 1) == T("12", 3)
    broken = Tom.from_types(1, 3, M.types - {T("12", 3)})
    rep = check_elimination(broken)
    assert not rep.passed
    assert rep.witness == {"A": T("1", 3), "B": T("2", 3), "j": 1}


def test_elimination_on_figure_arrangement(generic33):
    M = realize_tom(generic33)
    C = find_elimination(M.types, T("2,2,3", 3), T("1,1,1", 3), 3)
    assert C is not None and C[3] == 0b101


def test_surrounding():
    assert check_surrounding(Tom.from_types(1, 3, faces(T("123", 3)))).passed
    rep = check_surrounding(Tom.from_types(1, 3, types(3, "123")))
    assert not rep.passed and rep.witness["A"] == T("123", 3)


def test_surrounding_on_realized(generic33):
    assert check_surrounding(realize_tom(generic33)).passed


def test_check_all():
    assert all(r.passed for r in check_all(one_tuples(3)))
    empty = check_all(Tom.from_types(1, 3, []))
    assert not empty[0].passed and empty[0].axiom == "boundary"


def test_check_all_on_realized(generic33):
    assert all(r.passed for r in check_all(realize_tom(generic33)))


def test_general_position():
    assert is_general_position(one_tuples(3))
    assert not is_general_position(Tom.from_types(2, 2, types(2, "12,12")))
    degenerate = realize_tom(WeightMatrix.of([[0, 0], [0, 0]]))
    assert T("12,12", 2) in degenerate
    assert not is_general_position(degenerate)


def test_vertices_and_topes(generic23):
    M = one_tuples(3)
    assert vertices(M) == types(3, "123")
    assert topes(M) == types(3, "1", "2", "3")
    # counts against the feasibility sweep, not the vertex route
    S = realize_tom_sweep(generic23)
    assert len(vertices(S)) == comb(3, 2) == len(vertices(realize_tom(generic23)))
    assert len(topes(S)) == comb(4, 2)


weights = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=3)


@given(weights)
def test_realized_toms_satisfy_axioms(rows):
    M = realize_tom(WeightMatrix.of(rows))
    assert all(r.passed for r in check_all(M))
    # vertices and their faces give everything back
    assert closure(vertices(M)) == M.types
    if is_general_position(M):
        assert all(sum(popcount(e) - 1 for e in A.entries) <= M.d - 1 for A in M.types)
