import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylkit.abelian_group import (Character, GroupElement, character_eval, group_add,
                                   make_group, parse_group)
from weylkit.errors import GroupSizeError, InvalidElementError, InvalidGroupError


def test_cyclic_enumeration():
    g = make_group([4])
    assert g.order == 4
    assert [g.element(i).residues for i in range(4)] == [(0,), (1,), (2,), (3,)]


def test_klein_four():
    g = make_group([2, 2])
    assert g.order == 4
    assert len(g.elements) == 4


def test_row_major_index():
    g = make_group([2, 3])
    assert g.order == 6
    assert g.index((1, 2)) == 5
    assert g.index(GroupElement((1, 0))) == 3


@pytest.mark.parametrize("orders", [[], [0], [3, 0], [-2]])
def test_invalid_orders(orders):
    with pytest.raises(InvalidGroupError):
        make_group(orders)


def test_size_cap():
    make_group([64, 64])
    with pytest.raises(GroupSizeError):
        make_group([65, 64])
    with pytest.raises(GroupSizeError):
        make_group([10], size_cap=9)


def test_parse_spec():
    assert parse_group("2x3x4").orders == (2, 3, 4)
    assert parse_group("16").order == 16
    assert parse_group("2x3").spec == "2x3"
    with pytest.raises(InvalidGroupError):
        parse_group("2xx3")


@pytest.mark.parametrize("orders", [[1], [5], [2, 3], [3, 4, 2], [8, 8]])
def test_index_round_trip(orders):
    g = make_group(orders)
    assert all(g.index(g.element(i)) == i for i in range(g.order))


def test_group_add_examples():
    z4 = make_group([4])
    assert group_add(z4, (3,), (2,)).residues == (1,)
    g = make_group([2, 3])
    assert group_add(g, (1, 2), (1, 2)).residues == (0, 1)
    a = GroupElement((1, 1))
    assert group_add(g, a, (0, 0)) == a


def test_group_add_dimension_mismatch():
    g = make_group([2, 3])
    with pytest.raises(InvalidElementError):
        group_add(g, (1,), (1, 2))
    with pytest.raises(InvalidElementError):
        group_add(g, (2, 0), (0, 0))


def test_character_examples():
    z4 = make_group([4])
    assert character_eval(z4, Character((1,)), (3,)) == pytest.approx(-1j, abs=1e-15)
    g = make_group([2, 2])
    assert character_eval(g, Character((1, 1)), (1, 0)) == pytest.approx(-1, abs=1e-15)
    g = make_group([3, 5])
    for i in range(g.order):
        assert character_eval(g, Character((0, 0)), g.element(i)) == 1


def test_character_table_matches_eval():
    g = make_group([2, 3, 4])
    tab = g.character_table
    for k in range(g.order):
        for x in range(0, g.order, 5):
            assert tab[k, x] == pytest.approx(character_eval(g, g.character(k), g.element(x)), abs=1e-14)


@pytest.mark.parametrize("orders", [[2], [7], [12], [2, 2], [2, 3, 4], [4, 4, 4], [64], [8, 8]])
def test_character_orthogonality(orders):
    g = make_group(orders)
    tab = g.character_table
    gram = tab @ tab.conj().T / g.order
    assert np.abs(gram - np.eye(g.order)).max() <= 1e-12


def test_addition_table():
    g = make_group([2, 3])
    for a in range(g.order):
        for b in range(g.order):
            expect = g.index(group_add(g, g.element(a), g.element(b)))
            assert g.addition_table[a, b] == expect


@settings(max_examples=60, deadline=None)
@given(orders=st.lists(st.integers(1, 6), min_size=1, max_size=3), data=st.data())
def test_homomorphism(orders, data):
    g = make_group(orders)
    n = g.order
    k, x, y = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    chi = g.character(k)
    xe, ye = g.element(x), g.element(y)
    lhs = character_eval(g, chi, group_add(g, xe, ye))
    rhs = character_eval(g, chi, xe) * character_eval(g, chi, ye)
    assert abs(lhs - rhs) <= 1e-12
    assert abs(abs(lhs) - 1) <= 1e-12


def test_immutable():
    g = make_group([3])
    with pytest.raises(Exception):
        g.orders = (4,)
    with pytest.raises(ValueError):
        g.elements[0, 0] = 2
