import pytest

from isosing.exactfield import ONE, ZERO
from isosing.reflgroup import (
    g4_table,
    g5_table,
    generate_group,
    is_symplectic,
    molien_series,
    symplectic_reflections,
)


@pytest.fixture(scope="module")
def g5():
    return g5_table()


def test_group_orders(g5):
    assert len(g4_table()) == 24
    assert len(g5) == 72


def test_cotangent_action_is_symplectic(g5):
    assert all(is_symplectic(g.m4) for g in g5)


def test_reflection_count(g5):
    assert len(symplectic_reflections(g5)) == 16


def test_molien_trivial_group():
    table = generate_group({"e": [[ONE, ZERO], [ZERO, ONE]]})
    assert len(table) == 1
    assert molien_series(table).equals((1,), (1, 1, 1, 1))


def test_molien_minus_identity_on_plane():
    table = generate_group({"m": [[-ONE, ZERO], [ZERO, -ONE]]})
    assert len(table) == 2
    assert molien_series(table, action="m2").equals((1, 0, 1), (2, 2))


def test_molien_class_sum_agrees(g5):
    a = molien_series(g5)
    b = molien_series(g5, by_classes=True)
    assert a.equals(b.numerator, b.denominator)
