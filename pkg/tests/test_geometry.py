import pytest
from sympy import QQ

from zonocalc.errors import IrregularPoint, NotPointed, Unbounded
from zonocalc.geometry.arrangement import Arrangement, alcoves, chambers, is_pointed, polarizing_functional, require_pointed
from zonocalc.geometry.oracle import OracleKind, fiber_volume, spline_point_oracle
from zonocalc.geometry.polyhedron import Polyhedron, Window
from zonocalc.geometry.zonotope import (alcove_containing, alcoves_at_origin, base_alcove, cone_polyhedron, delta_set,
                                        zonotope, zonotope_box, zonotope_volume)
from zonocalc.lattice.weights import WeightList
from zonocalc.piecewise.polynomials import poly_ring


def test_window_lattice_points():
    w = Window.box([QQ(-1, 2), 0], [QQ(3, 2), 1])
    assert w.lattice_points() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert w.lattice_points(strict=True) == []
    assert Window.cube(1, 0, 2).lattice_points(strict=True) == [(1,)]
    assert w.padded(1).volume() == 12
    with pytest.raises(ValueError):
        Window.box([1], [0])


def test_unit_square():
    square = Window.cube(2, 0, 1).to_polyhedron()
    assert square.volume() == 1
    assert len(square.vertices) == 4
    assert square.contains((QQ(1, 2), QQ(1, 2)), strict=True)
    assert not square.contains((1, QQ(1, 2)), strict=True)
    R = poly_ring(2)
    v1, v2 = R.gens
    assert square.integrate(v1 * v2) == QQ(1, 4)


def test_unbounded_polyhedron():
    half_plane = Polyhedron(2, [((-1, 0), 0)])
    assert not half_plane.is_bounded()
    with pytest.raises(Unbounded):
        half_plane.require_bounded()


def test_hexagon(u2):
    Z = zonotope(u2)
    assert len(Z.vertices) == 6
    assert zonotope_volume(u2) == 3
    assert zonotope_box(u2) == ((0, 0), (2, 2))


def test_zonotope_volume_is_the_sum_of_basis_determinants(n2, s4):
    assert zonotope_volume(n2) == 7
    assert zonotope_volume(s4) == 2


def test_cone_of_the_hexagon_system(u2):
    cone = cone_polyhedron(u2.vectors(), 2)
    assert cone.contains((3, 1))
    assert not cone.contains((-1, 1))


def test_affine_signatures(s1):
    arrangement = Arrangement.of_weights(s1)
    assert arrangement.signature((QQ(1, 2),)) == (0,)
    assert arrangement.signature((QQ(-3, 2),)) == (-2,)
    with pytest.raises(IrregularPoint):
        arrangement.signature((1,))


def test_cells_of_a_rational_window_are_all_found():
    arrangement = Arrangement([(1, 0), (0, 1), (1, 2)], 2)
    window = Window.box([QQ(1, 3), QQ(1, 3)], [QQ(4, 3), QQ(4, 3)])
    assert arrangement.grid_denominator(window) == 6
    fine = 180
    seen = set()
    for i in range(61, 240):
        for j in range(61, 240):
            signature = arrangement.try_signature((QQ(i, fine), QQ(j, fine)))
            if signature is not None:
                seen.add(signature)
    assert {cell.signature for cell in arrangement.cells(window)} == seen


def test_alcoves_in_a_window(u2):
    # the unit square is cut by the diagonal
    assert len(alcoves(u2, Window.cube(2, 0, 1))) == 2
    assert len(alcoves(u2, Window.cube(2, 0, 2))) == 8


def test_chambers_and_pointed_cones(u2):
    assert len(chambers(u2.vectors(), 2)) == 6
    assert is_pointed(u2.vectors(), 2)
    assert not is_pointed([(1,), (-1,)], 1)
    assert polarizing_functional([(1,), (-1,)], 1) is None
    with pytest.raises(NotPointed):
        require_pointed([(1, 0), (-1, 0), (0, 1)], 2)


def test_base_alcove_of_the_hat(s2):
    assert len(alcoves_at_origin(s2)) == 2
    c = base_alcove(s2)
    assert c.interior_point == (QQ(1, 2),)


def test_base_alcove_is_reverse_lexicographic(u2):
    c = base_alcove(u2)
    # both triangles at the origin inside the hexagon; the lower one wins
    assert c.interior_point == (QQ(2, 3), QQ(1, 3))


def test_alcove_containing(s2):
    c = alcove_containing(s2, [QQ(-1, 3)])
    assert c.interior_point == (QQ(-1, 2),)
    assert alcove_containing(s2, [QQ(5, 2)]) is None


def test_delta_sets(s2, u2, n2):
    assert sorted(delta_set(base_alcove(s2), s2)) == [(-1,), (0,)]
    assert len(delta_set(base_alcove(u2), u2)) == 3
    assert len(delta_set(base_alcove(n2), n2)) == 7


def test_box_oracle(s2, u2):
    assert spline_point_oracle(s2, OracleKind.BOX, [QQ(1, 2)]) == QQ(1, 2)
    assert spline_point_oracle(s2, OracleKind.BOX, [QQ(3, 2)]) == QQ(1, 2)
    assert spline_point_oracle(s2, OracleKind.BOX, [QQ(5, 2)]) == 0
    assert spline_point_oracle(u2, OracleKind.BOX, [QQ(1, 3), QQ(2, 3)]) == QQ(1, 3)
    assert spline_point_oracle(WeightList.of([2]), OracleKind.BOX, [QQ(1, 2)]) == QQ(1, 2)


def test_cone_oracle(s1, s2):
    assert spline_point_oracle(s1, OracleKind.CONE, [QQ(7, 2)]) == 1
    assert spline_point_oracle(s2, OracleKind.CONE, [QQ(5, 2)]) == QQ(5, 2)
    assert spline_point_oracle(s2, OracleKind.CONE, [QQ(-1, 2)]) == 0


def test_oracle_rejects_walls(s2):
    with pytest.raises(IrregularPoint):
        spline_point_oracle(s2, OracleKind.BOX, [1])


def test_mixed_fiber_volume():
    # interval [0,1] convolved with a ray is the ramp min(v, 1) for v > 0
    assert fiber_volume([(1,), (1,)], [True, False], [QQ(1, 2)]) == QQ(1, 2)
    assert fiber_volume([(1,), (1,)], [True, False], [QQ(5, 2)]) == 1
