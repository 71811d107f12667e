import pytest
from pydantic import ValidationError
from sympy import QQ

from zonocalc.errors import DoesNotSpan
from zonocalc.lattice.combinatorics import (cocircuits, enumerate_bases, is_long, is_unimodular, rational_subspaces,
                                            require_span, weight_normals)
from zonocalc.lattice.toric import ToricVertex, fixed_sublist, toric_vertices
from zonocalc.lattice.weights import WeightList


def test_rank_one_lists_accept_scalars():
    X = WeightList.model_validate({"dim": 1, "weights": [1, 2]})
    assert X.weights == ((1,), (2,))
    assert str(X) == "[1, 2]"


def test_weight_list_validation():
    with pytest.raises(ValidationError):
        WeightList.of([(1, 0), (0, 0)])
    with pytest.raises(ValidationError):
        WeightList(dim=2, weights=((1, 0), (1,)))


def test_derived_lists(u2):
    assert u2.doubled().weights[3:] == ((-1, 0), (0, -1), (-1, -1))
    assert u2.negated([2]).weights == ((1, 0), (0, 1), (-1, -1))
    assert u2.total() == (2, 2)
    assert u2.complement([0, 2]) == (1,)
    assert u2.sublist([2, 0]).weights == ((1, 1), (1, 0))


def test_bases_of_the_hexagon_system(u2):
    bases = enumerate_bases(u2)
    assert [sigma for sigma, _ in bases] == [(0, 1), (0, 2), (1, 2)]
    assert all(abs(d) == 1 for _, d in bases)
    assert is_unimodular(u2)


def test_non_unimodular_lists(n2, s4):
    assert not is_unimodular(n2)
    assert not is_unimodular(s4)
    assert sum(abs(d) for _, d in enumerate_bases(n2)) == 7


def test_cocircuits(s2, u2):
    assert cocircuits(s2) == [(0, 1)]
    assert set(cocircuits(u2)) == {(1, 2), (0, 1), (0, 2)}
    assert weight_normals(u2) == ((0, 1), (1, -1), (1, 0))


def test_long_sublists(u2):
    assert is_long(u2, [0, 2])
    assert not is_long(u2, [2])


def test_span_is_required():
    with pytest.raises(DoesNotSpan):
        require_span(WeightList.of([(1, 0), (2, 0)]))


def test_rational_subspaces_grow_by_dimension(u2):
    flats = rational_subspaces(u2)
    assert len(flats) == 5
    assert flats[0] == ([], ())
    assert [indices for _, indices in flats[1:4]] == [(0,), (1,), (2,)]
    assert flats[-1][1] == (0, 1, 2)


def test_toric_vertices_of_scalar_lists(s4):
    assert [g.coords for g in toric_vertices(s4)] == [(QQ(0),), (QQ(1, 2),)]
    assert len(toric_vertices(WeightList.of([3]))) == 3
    assert len(toric_vertices(WeightList.of([2, 3]))) == 4


def test_unimodular_lists_have_only_the_identity(u2):
    vertices = toric_vertices(u2)
    assert len(vertices) == 1
    assert vertices[0].is_identity()


def test_toric_vertices_of_the_non_unimodular_plane_system(n2):
    vertices = toric_vertices(n2)
    assert {g.coords for g in vertices} == {(QQ(0), QQ(0)), (QQ(1, 2), QQ(1, 2))}
    g = vertices[1]
    assert fixed_sublist(n2, g) == (2, 3)
    assert g.order == 2


def test_pairing():
    g = ToricVertex.canonical([QQ(-1, 2)])
    assert g.coords == (QQ(1, 2),)
    assert g.pairing((1,)) == -1
    assert g.pairing((2,)) == 1
    assert g.inverse() == g
    h = ToricVertex.canonical([QQ(1, 3)])
    assert h.pairing((1,)) * h.inverse().pairing((1,)) == 1
