import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isosing import coulomb
from isosing.coulomb import (
    BfnRing,
    ToricData,
    TorusRep,
    binomial,
    d_fn,
    h23_presentation,
    smith_normal_form,
    verify_exact_sequence,
)
from isosing.polyring import parse_poly

ints = st.integers(-30, 30)


@given(ints, ints)
def test_d_closed_form(k, l):
    # zero counts as either sign, so d is half the triangle-inequality defect
    assert d_fn(k, l) == (abs(k) + abs(l) - abs(k + l)) // 2


@given(ints, ints)
def test_d_symmetries(k, l):
    assert d_fn(k, l) == d_fn(l, k) == d_fn(-k, -l)
    assert d_fn(k, l) >= 0
    if k * l >= 0:
        assert d_fn(k, l) == 0


lattice = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(st.lists(lattice, min_size=2, max_size=5), st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_chained_product_is_order_independent(lams, rnd):
    rep = coulomb.h23_rep()
    shuffled = list(lams)
    rnd.shuffle(shuffled)
    assert rep.chain(lams) == rep.chain(shuffled)


def determinantal_invariants(M):
    """Oracle: invariant factors d_k / d_(k-1) from gcds of k x k minors."""
    rows, cols = len(M), len(M[0])

    def det(sub):
        if len(sub) == 1:
            return sub[0][0]
        return sum((-1) ** j * sub[0][j] * det([r[:j] + r[j + 1:] for r in sub[1:]]) for j in range(len(sub)))

    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[M[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        ds.append(g)
    return [ds[k] // ds[k - 1] for k in range(1, len(ds))]


matrices = st.integers(1, 3).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))
)


@given(matrices)
@settings(max_examples=150)
def test_smith_form_against_minors(M):
    assert smith_normal_form(M) == determinantal_invariants(M)


@given(matrices, st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_smith_form_invariant_under_unimodular_moves(M, rnd):
    N = [list(r) for r in M]
    for _ in range(6):
        if rnd.random() < 0.5 and len(N) > 1:
            i, j = rnd.sample(range(len(N)), 2)
            c = rnd.choice([-2, -1, 1, 2])
            N[i] = [a + c * b for a, b in zip(N[i], N[j])]
        elif len(N[0]) > 1:
            i, j = rnd.sample(range(len(N[0])), 2)
            c = rnd.choice([-2, -1, 1, 2])
            for row in N:
                row[i] += c * row[j]
    assert smith_normal_form(N) == smith_normal_form(M)


def test_smith_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]) == []


def test_exact_sequences():
    assert not verify_exact_sequence(ToricData(((2,),), ())).ok
    assert verify_exact_sequence(ToricData(((1, 0),), ((0,), (1,)))).ok
    assert verify_exact_sequence(ToricData.from_characters(coulomb.H23_A, coulomb.H23_CHARACTERS)).ok
    # the image of B is not saturated here
    assert not verify_exact_sequence(ToricData(((1, 0),), ((0,), (2,)))).ok


def test_rank_one_example():
    ring = BfnRing(TorusRep(((1,),)), ((1,), (-1,)), ("x",))
    rels = ring.relation_polys()
    R = ring.ring
    assert rels == [parse_poly("r_1*r_-1 - x", R)] or rels == [parse_poly("x - r_1*r_-1", R)]
    scan = coulomb.reducedness_scan(ring.rep, radius=3, generators=ring.generators)
    assert scan.ok
    assert not scan.data["tangent_cone_reducible"]


def brute_force_pair_count(gens, rep):
    gset = set(gens)
    count = 0
    weights = {}
    for a, b in itertools.combinations_with_replacement(gens, 2):
        nu = tuple(x + y for x, y in zip(a, b))
        if not any(nu) or nu in gset:
            count += 1
        weights[nu] = weights.get(nu, 0) + 1
    return count + sum(n * (n - 1) // 2 for n in weights.values())


def test_pairwise_relation_count():
    ring = h23_presentation()
    assert len(ring.pairwise_relations()) == brute_force_pair_count(ring.generators, ring.rep) == 55


def test_relations_are_weight_homogeneous_binomials():
    ring = h23_presentation()
    for rel in ring.pairwise_relations():
        assert ring.rep.chain(rel.left)[1] == ring.rep.chain(rel.right)[1]
        assert all(v >= 0 for v in rel.coef_left + rel.coef_right)
        assert not any(a and b for a, b in zip(rel.coef_left, rel.coef_right))


def test_binomial_rejects_unequal_weights():
    with pytest.raises(ValueError):
        binomial(coulomb.h23_rep(), [(1, 0)], [(0, 1)])


def test_torus_rep_validation():
    with pytest.raises(ValueError):
        TorusRep(((0, 0),))
    with pytest.raises(ValueError):
        TorusRep(((1, 0), (1,)))
    with pytest.raises(ValueError):
        BfnRing(coulomb.h23_rep(), ((0, 0),))


def test_parse_characters():
    assert coulomb.parse_characters("(-1,0);(1,-3);(0,1)") == list(coulomb.H23_CHARACTERS)


def test_h23_report():
    rep = coulomb.verify_h23_relations()
    assert rep.ok
    assert rep.data["pairwise_relations"] == 55


def test_qft_ideals():
    assert coulomb.h23_qft_blowup_data().ok


def test_embedding(corpus):
    rep = coulomb.verify_h23_embedding(corpus)
    assert rep.ok
    assert len(rep.items) == 60
