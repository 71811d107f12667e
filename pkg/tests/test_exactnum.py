from fractions import Fraction

import pytest
from sympy import QQ

from zonocalc.errors import ConfigError, IncompatibleOrder, NotRational
from zonocalc.exactnum import (Cyclo, ceil_rat, common_order, cyclo_embed, cyclo_from_root_power, cyclo_to_rational,
                               floor_rat, format_rat, is_integral, parse_rat, rat)
from zonocalc.exactnum.linalg import det, int_det, nullspace, rank, smith_decomposition, solve, solve_in_span


def test_parse_and_format_rationals():
    assert parse_rat("3/6") == QQ(1, 2)
    assert parse_rat(" -4 ") == QQ(-4)
    assert format_rat(QQ(2, 2)) == "1"
    assert format_rat(QQ(-1, 2)) == "-1/2"
    assert rat(Fraction(3, 4)) == QQ(3, 4)


@pytest.mark.parametrize("text", ["1/0", "x", "1.5", ""])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ConfigError):
        parse_rat(text)


def test_floats_and_booleans_are_not_rationals():
    with pytest.raises(ConfigError):
        rat(0.5)
    with pytest.raises(ConfigError):
        rat(True)


def test_floor_and_ceil():
    assert floor_rat(QQ(-1, 2)) == -1
    assert ceil_rat(QQ(-1, 2)) == 0
    assert floor_rat(QQ(7, 2)) == 3
    assert is_integral(QQ(4, 2))
    assert not is_integral(QQ(1, 3))


def test_roots_of_unity():
    i = cyclo_from_root_power(4, 1)
    assert i * i == -1
    assert i ** 4 == 1
    w = cyclo_from_root_power(3, 1)
    assert w + w * w == -1
    assert cyclo_from_root_power(5, 7) == cyclo_from_root_power(5, 2)


def test_field_inverse():
    z = Cyclo.one(5) - cyclo_from_root_power(5, 1)
    assert z * z.inverse() == 1
    assert (Cyclo.rational(3) / 6).to_rational() == QQ(1, 2)
    with pytest.raises(ZeroDivisionError):
        Cyclo.zero(4).inverse()


def test_mixed_orders_lift_to_the_common_order():
    total = cyclo_from_root_power(4, 1) + cyclo_from_root_power(2, 1)
    assert total.order == 4
    assert total == cyclo_from_root_power(4, 1) - 1
    assert cyclo_embed(cyclo_from_root_power(2, 1), 4) == cyclo_from_root_power(4, 2)
    assert common_order([2, 3, 4]) == 12


def test_embedding_needs_a_multiple():
    with pytest.raises(IncompatibleOrder):
        cyclo_from_root_power(4, 1).embed(6)


def test_projection_to_rationals():
    assert cyclo_to_rational(cyclo_from_root_power(6, 3)) == -1
    with pytest.raises(NotRational):
        cyclo_to_rational(cyclo_from_root_power(4, 1))
    assert cyclo_from_root_power(4, 1).to_json() == {"order": 4, "coeffs": ["0", "1"]}
    assert Cyclo.rational(QQ(-3, 4)).to_json() == "-3/4"


def test_determinants_and_rank():
    assert det([[1, 1], [1, -1]]) == -2
    assert int_det([[2, 0], [0, 3]]) == 6
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([]) == 0


def test_solving():
    assert solve([[2, 0], [0, 4]], [1, 1]) == (QQ(1, 2), QQ(1, 4))
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_in_span([(1, 0, 0), (0, 1, 0)], (3, 4, 0)) == (3, 4)
    assert solve_in_span([(1, 0, 0)], (0, 1, 0)) is None


def test_nullspace_is_annihilated():
    rows = [[1, 1, 1]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for vector in basis:
        assert sum(vector) == 0


def test_smith_decomposition_index():
    diagonal, s, t = smith_decomposition([[1, 1], [1, -1]])
    product = 1
    for d in diagonal:
        product *= abs(d)
    assert product == 2
    assert abs(int_det(s)) == 1
    assert abs(int_det(t)) == 1
