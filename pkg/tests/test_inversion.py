import pytest
from sympy import QQ

from zonocalc.discrete.dm import dm_space_basis, linear_combination
from zonocalc.discrete.faces import RegularFace, regular_faces
from zonocalc.discrete.functions import FiniteFunction
from zonocalc.errors import NotAVertex, NotPointed, NotUnimodular
from zonocalc.geometry.polyhedron import Window
from zonocalc.geometry.zonotope import alcove_containing
from zonocalc.inversion.brion_vergne import brion_vergne_partition
from zonocalc.inversion.general import (components_match, dm_components, invert_general, omega_g,
                                        twisted_kernel_check, vertex_operator)
from zonocalc.inversion.index import (atiyah_index_report, bott_delta_identity, general_index_reconstruction,
                                      verify_box_index, vertex_index_identity)
from zonocalc.inversion.report import lattice_box, working_window
from zonocalc.inversion.unimodular import action_on_d_space, invert_unimodular
from zonocalc.lattice.toric import ToricVertex, toric_vertices
from zonocalc.lattice.weights import WeightList
from zonocalc.piecewise.polynomials import MultiPoly


def random_data(X, seed):
    return FiniteFunction.random(X.dim, 2, seed)


# ------------------------------------------
# Unimodular inversion
# ------------------------------------------

def test_delta_is_recovered_on_the_hat(s2):
    report = invert_unimodular(s2, FiniteFunction.delta(1), lattice_box([-3], [3]))
    assert report.verdict
    assert report.kind == "unimodular"
    assert report.alcove == ["1/2"]
    assert report.reconstructed[3] == {"lambda": [0], "value": "1"}


@pytest.mark.parametrize("seed", [1, 2])
def test_random_data_is_recovered(u2, seed):
    report = invert_unimodular(u2, random_data(u2, seed), lattice_box([-2, -2], [2, 2]))
    assert report.verdict, report.mismatch


def test_any_alcove_inside_the_zonotope_works(u2):
    # the upper of the two triangles at the origin, not the base alcove
    c = alcove_containing(u2, [QQ(1, 3), QQ(2, 3)])
    report = invert_unimodular(u2, random_data(u2, 3), lattice_box([-2, -2], [2, 2]), alcove=c)
    assert report.verdict, report.mismatch
    assert report.alcove == ["1/3", "2/3"]


def test_unimodular_inversion_refuses_other_lists(s4):
    with pytest.raises(NotUnimodular):
        invert_unimodular(s4, FiniteFunction.delta(1), lattice_box([0], [1]))


def test_convolution_acts_as_the_cube_average_on_d_space(u2):
    window = Window.cube(2, -1, 2)
    x = MultiPoly.variable(2, 0)
    assert action_on_d_space(u2, x, window)
    assert action_on_d_space(u2, MultiPoly.constant(2, 1), window)


def test_report_keeps_the_transformed_spline(s2):
    report = invert_unimodular(s2, FiniteFunction.delta(1), lattice_box([0], [1]), keep_piecewise=True)
    assert report.contributions[0].operator == "todd"
    assert report.contributions[0].piecewise["cells"]
    assert "function" not in report.model_dump(mode="json")


# ------------------------------------------
# Toric vertex inversion
# ------------------------------------------

def test_vertex_operators(s4):
    assert vertex_operator(s4, ToricVertex.identity(1), 2).name == "todd"
    # [2] is fixed by g = 1/2, so nothing moves
    assert vertex_operator(s4, toric_vertices(s4)[1], 2).name == "todd"
    X = WeightList.of([1, 2])
    assert vertex_operator(X, toric_vertices(X)[1], 3).name == "todd*twisted-inverse"


@pytest.mark.parametrize("weights", [[2], [1, 2], [3]])
def test_general_inversion_in_rank_one(weights):
    X = WeightList.of(weights)
    for K in (FiniteFunction.delta(1), random_data(X, 5)):
        report = invert_general(X, K, lattice_box([-3], [3]))
        assert report.verdict, report.mismatch
        assert report.notes["vertices"] == len(toric_vertices(X))


def test_general_inversion_on_the_plane_system(n2):
    report = invert_general(n2, FiniteFunction.delta(2), lattice_box([-1, -1], [1, 1]))
    assert report.verdict, report.mismatch
    assert len(report.contributions) == 2


def test_general_and_unimodular_inversion_agree(u2):
    K = random_data(u2, 11)
    box = lattice_box([-2, -2], [2, 2])
    first = invert_unimodular(u2, K, box).function
    second = invert_general(u2, K, box).function
    assert first.agrees_with(second, box.lattice_points()) is None


def test_omega_needs_a_vertex(s2):
    with pytest.raises(NotAVertex):
        omega_g(s2, ToricVertex.canonical([QQ(1, 2)]), FiniteFunction.delta(1), Window.cube(1, -2, 2))


def test_twisted_kernel(s4):
    g = toric_vertices(s4)[1]
    assert twisted_kernel_check(s4, g, MultiPoly.constant(1, 1), Window.cube(1, -1, 3))


def test_components_of_dm_elements(s4, n2):
    for X in (s4, n2):
        basis = dm_space_basis(X)
        K = linear_combination(X.dim, [2 - i for i in range(len(basis))], basis)
        window = Window.cube(X.dim, -1, 2)
        assert components_match(X, K, window)
        assert set(dm_components(X, K, window)) == set(toric_vertices(X))


# ------------------------------------------
# Partition functions from multisplines
# ------------------------------------------

def test_vertex_sum_for_a_long_vector(s4):
    P, report = brion_vergne_partition(s4, lattice_box([0], [6]))
    assert [P.value((k,)) for k in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    assert report.verdict
    assert len(report.contributions) == 2


@pytest.mark.parametrize("weights, r", [
    ([1, 1], 8),
    ([1, 2], 4),
    ([3], 6),
    ([[1, 0], [0, 1], [1, 1]], 3),
    ([[1, 0], [0, 1], [1, 1], [1, -1]], 6),
])
def test_vertex_sum_matches_the_partition_function(weights, r):
    X = WeightList.of(weights)
    _, report = brion_vergne_partition(X, lattice_box([0] * X.dim, [r] * X.dim))
    assert report.verdict, report.mismatch


def test_vertex_sum_needs_a_pointed_cone():
    with pytest.raises(NotPointed):
        brion_vergne_partition(WeightList.of([1, -1]), lattice_box([0], [2]))


# ------------------------------------------
# Index identities
# ------------------------------------------

def test_both_index_formulas_agree(u2):
    for face in regular_faces(u2):
        assert atiyah_index_report(u2, face, lattice_box([-3, -3], [3, 3])).verdict


INDEX_SYSTEMS = {"S1": [1], "S4": [2], "U2": [[1, 0], [0, 1], [1, 1]]}


@pytest.mark.parametrize("name", ["S1", "S4", "U2"])
def test_box_index_identity(name):
    X = WeightList.of(INDEX_SYSTEMS[name])
    faces = regular_faces(X)
    assert len(faces) >= 2
    for face in faces:
        verdict, mismatch = verify_box_index(X, face, Window.cube(X.dim, -3, 3))
        assert verdict, mismatch


@pytest.mark.parametrize("name", ["S1", "S4", "U2"])
def test_index_is_reconstructed_over_the_doubled_list(name):
    X = WeightList.of(INDEX_SYSTEMS[name])
    faces = regular_faces(X)[:2]
    assert len(faces) == 2
    for face in faces:
        report = general_index_reconstruction(X, face, lattice_box([-3] * X.dim, [3] * X.dim))
        assert report.verdict, report.mismatch
        assert report.kind == "index-reconstruction"


def test_vertex_index_sign_is_recorded(s4):
    face = RegularFace.positive(1)
    for g in toric_vertices(s4.doubled()):
        report = vertex_index_identity(s4, face, g, Window.cube(1, -2, 2))
        assert report.notes["sign"] in (-1, 0, 1)
        assert report.verdict == (report.notes["sign"] != 0)


def test_bott_delta_for_unimodular_lists(s1):
    report = bott_delta_identity(s1, lattice_box([-2], [2]))
    assert report.verdict, report.notes
    assert report.notes["wall_jumps"] == 0
    with pytest.raises(NotUnimodular):
        bott_delta_identity(WeightList.of([2]), lattice_box([0], [1]))


def test_working_window_covers_the_limit_alcoves(u2):
    window = working_window(u2, lattice_box([0, 0], [1, 1]))
    assert window.contains_window(Window.cube(2, -2, 3))
