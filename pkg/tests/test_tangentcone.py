import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isosing import tangentcone as tc
from isosing.exactfield import CycloElement
from isosing.polyring import Polynomial, VarTable, parse_poly

R = VarTable.make(["x", "y", "z"])


def test_lowest_form_and_order():
    p = parse_poly("x + x^2", R)
    assert p.lowest_form() == R.var("x")
    assert tc.order_scan([p, parse_poly("x*y + z^3", R)]) == [1, 2]


coeff = st.integers(-4, 4).filter(bool)
polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), coeff, min_size=1, max_size=4).map(
    lambda d: Polynomial(R, {m: CycloElement.from_rational(c) for m, c in d.items()})
)


@given(polys, coeff)
@settings(max_examples=60, deadline=None)
def test_squares_are_recognised(p, c):
    sq = (p * p).scale(c)
    root = tc.square_root(sq)
    assert root is not None
    assert (root * root).scale(sq.leading_term(tc.GREVLEX)[1]) == sq


@given(polys)
@settings(max_examples=60, deadline=None)
def test_square_times_variable_is_not_a_square(p):
    assert not tc.is_square(p * p * R.var("x"))


def test_known_non_squares():
    assert not tc.is_square(parse_poly("x^2 + y^2", R))
    assert not tc.is_square(parse_poly("x^2 - 4*y*z", R))
    assert tc.is_square(parse_poly("4*x^2 + 4*x*y + y^2", R))


def point_on_target(rng):
    """A random rational point of est = qt^2 + Qs^2 with s, t nonzero."""
    q, Q = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
    s, t = (Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in range(2))
    e = (q * t * t + Q * s * s) / (s * t)
    return {"q": q, "Q": Q, "e": e, "s": s, "t": t}


@pytest.mark.parametrize("d", [4, 5, 6, 7, 8])
def test_yd_images_vanish_on_the_target_surface(d):
    # the target is irreducible and the points are dense in it, so vanishing
    # there is an independent route to principal-ideal membership
    rng = random.Random(d)
    images = tc.yd_substitution(d)
    pts = [point_on_target(rng) for _ in range(6)]
    for label, rel in tc.yd_relations(d):
        img = rel.substitute(images, tc.AFFINE)
        assert all(img.evaluate(pt) == 0 for pt in pts), label
        assert tc.principal_membership(img, tc.yd_target())[0], label


def test_yd_relation_count():
    d = 5
    assert len(tc.yd_relations(d)) == (d - 1) + d * (d - 1) // 2


def test_yd_control_non_member():
    stray = parse_poly("e*s - q*t", tc.AFFINE)
    assert not tc.principal_membership(stray, tc.yd_target())[0]


def test_yd_needs_d_at_least_4():
    with pytest.raises(ValueError):
        tc.verify_Yd_tangent_cone(3)


@pytest.mark.parametrize("d", range(4, 11))
def test_yd_family_reports(d):
    assert tc.verify_Yd_tangent_cone(d).ok


def test_nilpotency_witness(corpus):
    w = tc.nilpotency_witness_yogh(corpus)
    assert w.report.ok
    assert w.min_order == 2
    z1 = corpus.Y.var("z1")
    assert w.lowest_forms[tc.WITNESS_RELATION] == z1 * z1 * 2


def test_lemma_hypotheses_fail_for_constant_f():
    T = VarTable.make(["a", "b"], w=(1, 1))
    f = Polynomial.constant(T, 1)
    rels = [parse_poly("a*b", T)]
    gs, hs = tc.split_off(f, rels)
    rep = tc.verify_lemma_B(f, gs, hs, rels)
    assert not rep.ok
    assert not next(i for i in rep.items if "positive degree" in i.label).ok


def test_lemma_split_reassembles():
    T = VarTable.make(["a", "b"], w=(1, 1))
    f = T.var("a")
    rels = [parse_poly("a^2 + a*b + b^2", T), parse_poly("b^3", T)]
    gs, hs = tc.split_off(f, rels)
    assert tc.verify_lemma_B(f, gs, hs, rels).ok
    assert gs[1] == rels[1] and hs[1].is_zero()


def test_rho_and_nu_relation(corpus):
    rep = tc.verify_rho_machinery(corpus)
    assert rep.ok
    images = rep.data["nonzero_images"]
    # relations 29..34 map onto the nu relation itself, relation 35 onto three times it
    assert all(images[k] == "1" for k in range(29, 35))
    assert images[35] == "3"
    assert set(images) == set(range(29, 36))


def test_rho_kills_h(corpus):
    assert tc.rho(corpus.generators["h"]).is_zero()


def test_rho_lemma_report(corpus):
    rep = tc.verify_rho_and_lemma(corpus)
    assert rep.ok
    assert len(rep.items) == 267
