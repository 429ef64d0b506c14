import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isosing.exactfield import CycloElement
from isosing.polyring import (
    GREVLEX,
    INFINITE_ORDER,
    PolyError,
    Polynomial,
    VarTable,
    apply_linear,
    format_poly,
    parse_poly,
)

R = VarTable.make(["x", "y", "z"], w=(1, 2, 3))

coeff = st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(bool)
monomial = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(monomial, coeff, max_size=5).map(lambda d: Polynomial(R, {m: CycloElement.from_rational(c) for m, c in d.items()}))
points = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=3)] * 3)


def at(p, pt):
    return p.evaluate(dict(zip("xyz", pt)))


@given(polys, polys, points)
def test_arithmetic_agrees_with_evaluation(p, q, pt):
    assert at(p + q, pt) == at(p, pt) + at(q, pt)
    assert at(p * q, pt) == at(p, pt) * at(q, pt)
    assert at(p - q, pt) == at(p, pt) - at(q, pt)


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), R) == p


@given(polys, polys)
@settings(max_examples=60)
def test_order_of_product_is_sum_of_orders(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).order_at_origin() == INFINITE_ORDER
    else:
        assert (p * q).order_at_origin() == p.order_at_origin() + q.order_at_origin()
        assert (p * q).lowest_form() == p.lowest_form() * q.lowest_form()


@given(polys, polys)
@settings(max_examples=60)
def test_substitution_is_a_homomorphism(p, q):
    images = {"x": parse_poly("y + z", R), "y": parse_poly("x*z - 1", R), "z": parse_poly("2*x", R)}
    assert (p * q).substitute(images) == p.substitute(images) * q.substitute(images)


def test_grammar():
    p = parse_poly("(x + I*y)*(x - I*y) - conj(I)*z^2", R)
    assert p == parse_poly("x^2 + y^2 + I*z^2", R)
    assert parse_poly("SQRT3^2", R) == Polynomial.constant(R, 3)
    assert parse_poly("[z^4]*x", R) == parse_poly("(1/2 + 1/2*I*SQRT3)*x", R)


def test_signed_identifiers():
    T = VarTable.make(["r_-3_-1", "r_1_0", "x_1"])
    p = parse_poly("r_-3_-1*r_1_0 - x_1-2", T)
    assert p.variables_used() == {"r_-3_-1", "r_1_0", "x_1"}
    assert p.constant_term() == CycloElement.from_rational(-2)


def test_unknown_variable_rejected():
    with pytest.raises(PolyError):
        parse_poly("x + w", R)


def test_gradings_and_lowest_form():
    p = parse_poly("x^2*y + z^3 + x*y", R)
    assert p.degree() == 3
    assert p.degree("w") == 9
    assert not p.is_homogeneous()
    assert p.lowest_form() == parse_poly("x*y", R)
    assert parse_poly("x + x^2", R).lowest_form() == R.var("x")


def test_apply_linear_swaps_a_block():
    p = parse_poly("x^2 + 3*y", R)
    swapped = apply_linear(p, [[0, 1], [1, 0]], ["x", "y"])
    assert swapped == parse_poly("y^2 + 3*x", R)


def test_conjugation():
    p = parse_poly("I*x + SQRT3*y", R)
    assert p.conj() == parse_poly("-I*x + SQRT3*y", R)
    assert (p * p.conj()).is_real()


def test_division():
    f = parse_poly("x*y - z", R)
    q = parse_poly("x^2 + y", R)
    quo, rem = (f * q + R.var("z") ** 5).divmod_exact(f, GREVLEX)
    assert quo * f + rem == f * q + R.var("z") ** 5
