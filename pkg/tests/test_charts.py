import pytest

from isosing import charts
from isosing.charts import chart_presentation, clear_fractions, same_fraction
from isosing.groebner import buchberger, jacobian_smoothness, krull_dimension
from isosing.polyring import VarTable, parse_poly


def test_blowup_of_plane_at_origin():
    R = VarTable.make(["x", "y"])
    x, y = R.var("x"), R.var("y")
    ch = chart_presentation([], [x, y], 0, R)
    # chart x != 0: y = u1*x, a smooth surface
    assert ch.tags == ["u1"]
    gb = buchberger(ch.relations, ring=ch.ring)
    assert krull_dimension(gb) == 2
    u = ch.ring.var("u1")
    assert gb.contains(y.rename(ch.ring) - u * x.rename(ch.ring))


def test_blowup_of_cone_chart_is_smooth():
    R = VarTable.make(["x", "y", "z"])
    cone = parse_poly("x*y - z^2", R)
    gens = [R.var("x"), R.var("y"), R.var("z")]
    ch = chart_presentation([cone], gens, 2, R)
    gb = buchberger(ch.relations, ring=ch.ring)
    assert krull_dimension(gb) == 2
    assert jacobian_smoothness(ch.relations, len(ch.ring) - 2)


def test_clear_fractions():
    R = VarTable.make(["u", "v"])
    T = VarTable.make(["a", "b", "g"])
    g = T.var("g")
    fr = {"u": (T.var("a"), 1), "v": (T.var("b"), 2)}
    num, e = clear_fractions(parse_poly("u^2 + v + 1", R), fr, g)
    # a^2/g^2 + b/g^2 + 1 = (a^2 + b + g^2) / g^2
    assert e == 2
    assert num == parse_poly("a^2 + b + g^2", T)
    assert same_fraction((num, e), (num * g, e + 1), g)
    assert not same_fraction((num, e), (num, e + 1), g)


@pytest.mark.parametrize(
    "verifier",
    [
        charts.verify_X24_syzygies,
        charts.verify_a2_isomorphism,
        charts.verify_X93,
        charts.verify_yogh_expressions,
        charts.verify_preimage_dimensions,
        charts.verify_ideal_J_and_chart,
    ],
)
def test_chart_verifiers(verifier, corpus):
    rep = verifier(corpus)
    assert rep.ok, [i for i in rep.items if not i.ok]


def test_a2_has_nine_minors_and_trace(corpus):
    rep = charts.verify_a2_isomorphism(corpus)
    assert sum("minor" in i.label for i in rep.items) == 9
    assert any("trace" in i.label for i in rep.items)
