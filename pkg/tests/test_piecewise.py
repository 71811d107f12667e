import pytest
from sympy import QQ

from zonocalc.discrete.faces import RegularFace
from zonocalc.discrete.functions import FiniteFunction, MappedFunction
from zonocalc.errors import DoesNotSpan, NotPointed, TruncationTooLow, WindowExceeded
from zonocalc.exactnum import cyclo_from_root_power
from zonocalc.geometry.polyhedron import Window
from zonocalc.geometry.zonotope import base_alcove
from zonocalc.lattice.weights import WeightList
from zonocalc.piecewise.builders import (PartKind, build_box, build_box_direct, build_spline, build_T_polarized,
                                         translate_sums)
from zonocalc.piecewise.engine import spline_engine
from zonocalc.piecewise.export import sample_csv, sample_grid, to_json
from zonocalc.piecewise.functions import (apply_series_pw, equal_on_window, integrate, is_single_polynomial,
                                          lim_alcove, nabla, partial_pw, reflect, semidiscrete_convolve, translate,
                                          wall_jumps)
from zonocalc.piecewise.polynomials import MultiPoly
from zonocalc.piecewise.series import OperatorSeries, todd_coefficients


def v():
    return MultiPoly.variable(1, 0)


def one():
    return MultiPoly.constant(1, 1)


@pytest.fixture
def hat(s2):
    return build_box(s2, Window.cube(1, -1, 3))


# ------------------------------------------
# Polynomials and series
# ------------------------------------------

def test_polynomial_calculus():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    p = x * y + x
    assert p.degree() == 2
    assert p.derivative((1, 1)) == x + y + one_2d()
    assert p.shift((1, 0)) == (x - one_2d()) * y + x - one_2d()
    assert p.evaluate((2, 3)) == 8
    assert p.reflect((0, 0)).evaluate((1, 1)) == 0


def one_2d():
    return MultiPoly.constant(2, 1)


def test_twisted_polynomials():
    i = cyclo_from_root_power(4, 1)
    z = v().scale(i)
    assert z.order == 4
    assert not z.is_rational()
    assert z.scale(i) == -v()
    assert z.evaluate((2,)) == i * 2
    assert v().embed(4) == v()


def test_todd_coefficients():
    assert todd_coefficients(3) == (QQ(1), QQ(1, 2), QQ(1, 12), QQ(0))


def test_cube_average_and_todd_are_inverse():
    p = v() * v() * v()
    average = OperatorSeries.cube_average([(1,)], 3)
    todd = OperatorSeries.todd([(1,)], 3)
    assert average.apply(v()) == v() - one().scale(QQ(1, 2))
    assert todd.apply(average.apply(p)) == p


def test_truncation_is_enforced():
    with pytest.raises(TruncationTooLow):
        OperatorSeries.todd([(1,)], 1).apply(v() * v())


# ------------------------------------------
# Splines
# ------------------------------------------

def test_hat_values(hat):
    assert hat.value((QQ(1, 2),)) == QQ(1, 2)
    assert hat.value((QQ(3, 2),)) == QQ(1, 2)
    assert hat.value((QQ(5, 2),)) == 0
    assert hat.piece_near((QQ(1, 2),)) == v()
    assert hat.piece_near((QQ(3, 2),)) == one().scale(2) - v()


def test_values_outside_the_window_are_refused(hat):
    with pytest.raises(WindowExceeded):
        hat.value((QQ(7, 2),))


def test_box_spline_of_a_long_vector(s4):
    b = build_box(s4, Window.cube(1, -1, 3))
    assert b.value((QQ(1, 2),)) == QQ(1, 2)
    assert b.value((QQ(3, 2),)) == QQ(1, 2)
    assert integrate(b) == 1


def test_courant_element(u2):
    window = Window.cube(2, -1, 3)
    b = build_box(u2, window)
    assert b.value((QQ(1, 3), QQ(2, 3))) == QQ(1, 3)
    assert integrate(b) == 1
    assert b.max_degree() == 1


def test_box_from_any_face_agrees(u2):
    window = Window.cube(2, -1, 3)
    reference = build_box_direct(u2, window)
    for face in ([1, 2], [-1, -2], [2, -1]):
        assert equal_on_window(build_box(u2, window, face=face), reference)


def test_translate_sums_group_equal_translates(s2):
    assert translate_sums(s2) == {(0,): 1, (1,): -2, (2,): 1}


def test_cone_splines(s2):
    window = Window.cube(1, -2, 4)
    T = build_spline([(a, PartKind.RAY) for a in s2.vectors()], window)
    assert T.piece_near((QQ(5, 2),)) == v()
    assert T.value((QQ(-1, 2),)) == 0


def test_polarized_multispline_of_a_negative_face(s1):
    window = Window.cube(1, -3, 3)
    T = build_T_polarized(s1, RegularFace.of([-1], s1), window)
    assert T.value((QQ(-1, 2),)) == -1
    assert T.value((QQ(1, 2),)) == 0


def test_rays_must_be_pointed():
    window = Window.cube(1, -2, 2)
    with pytest.raises(NotPointed):
        build_spline([((1,), PartKind.RAY), ((1,), PartKind.NEG_RAY)], window)
    with pytest.raises(DoesNotSpan):
        build_spline([((1, 0), PartKind.INTERVAL)], Window.cube(2, -1, 1))


def test_engine_memoizes_pieces(s2):
    spline_engine.clear()
    b = build_box_direct(s2, Window.cube(1, -1, 3))
    b.value((QQ(1, 3),))
    size = spline_engine.cache_size()
    build_box_direct(s2, Window.cube(1, -1, 3)).value((QQ(2, 3),))
    assert spline_engine.cache_size() == size


# ------------------------------------------
# Operations on piecewise polynomials
# ------------------------------------------

def test_todd_of_the_hat(hat):
    transformed = apply_series_pw(OperatorSeries.todd([(1,), (1,)], 2), hat)
    assert transformed.piece_near((QQ(1, 2),)) == v() + one()
    assert transformed.piece_near((QQ(3, 2),)) == one() - v()


def test_lattice_limit_recovers_delta(s2, hat):
    transformed = apply_series_pw(OperatorSeries.todd([(1,), (1,)], 2), hat)
    limit = lim_alcove(transformed, base_alcove(s2), [(-1,), (0,), (1,), (2,)])
    assert limit.support() == [(0,)]
    assert limit.value((0,)) == 1


def test_difference_of_the_hat(s1, hat):
    difference = nabla(hat, (1,))
    assert difference.value((QQ(1, 2),)) == QQ(1, 2)
    assert difference.value((QQ(3, 2),)) == 0
    assert difference.value((QQ(5, 2),)) == -QQ(1, 2)
    # d B_[1,1] = nabla B_[1]
    window = Window.cube(1, -1, 3)
    assert equal_on_window(partial_pw(hat, (1,)), nabla(build_box(s1, window), (1,)), window)


def test_translation_and_reflection(s2, hat):
    shifted = translate(hat, (1,))
    assert shifted.value((QQ(3, 2),)) == QQ(1, 2)
    assert shifted.value((QQ(1, 2),)) == 0
    assert equal_on_window(reflect(hat, s2.total()), hat, Window.cube(1, -1, 3))


def test_partition_of_unity(s2, hat):
    ones = MappedFunction(1, lambda lam: 1, None, "1")
    convolved = semidiscrete_convolve(hat, ones, Window.cube(1, 0, 2))
    assert is_single_polynomial(convolved) == one()


def test_convolution_with_finite_data(hat):
    K = FiniteFunction(1, {(0,): 1, (2,): 3})
    convolved = semidiscrete_convolve(hat, K, Window.cube(1, -1, 5))
    assert convolved.value((QQ(5, 2),)) == QQ(3, 2)
    assert convolved.support == Window.cube(1, 0, 4)


def test_box_splines_are_continuous_where_smooth(s2):
    # B_[1,1] is continuous, so no jumps; B_[1] jumps at 0 and 1
    assert wall_jumps(build_box(s2, Window.cube(1, -1, 3))) == []
    jumps = wall_jumps(build_box(WeightList.of([1]), Window.cube(1, -1, 2)))
    assert len(jumps) == 2


def test_sampling_skips_walls(s1):
    b = build_box(s1, Window.cube(1, -1, 2))
    assert sample_grid(b, 2) == [["-1/2", "0"], ["1/2", "1"], ["3/2", "0"]]
    assert sample_csv(b, 2).splitlines()[0] == "v1,value"


def test_json_export(hat):
    data = to_json(hat, skip_zero=True)
    assert data["support"] == [["0", "2"]]
    assert len(data["cells"]) == 2
    assert data["normals"] == [[1]]
