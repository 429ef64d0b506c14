"""Tangent cones at the origin: order certificates, the Y(d) family, and the rho projection.

All arguments here avoid standard bases.  The non-reducedness witness needs
only that no relation has a linear part plus one lowest form; the Y(d)
argument reduces to membership in a principal ideal and one non-square test;
the rho machinery is a handful of polynomial identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactfield import ONE
from .groebner import DEFAULT_BUDGET
from .paperdata import Corpus, load_corpus
from .polyring import GREVLEX, INFINITE_ORDER, MonomialOrder, Polynomial, VarTable, parse_poly
from .report import Report

NILPOTENT = "z1"
# The relation whose lowest form exhibits the nilpotent: c1^2 c0 + d1^2 d0 + 2 z1^2 + ...
WITNESS_RELATION = 31


@dataclass
class GradedQuotientWitness:
    """Certificate that ``nilpotent`` is a nonzero nilpotent of gr_m(R)."""

    ring: VarTable
    nilpotent: str
    orders: list
    lowest_forms: dict[int, Polynomial]
    report: Report = field(default_factory=lambda: Report("nilpotency-yogh"))

    @property
    def min_order(self):
        return min(self.orders) if self.orders else INFINITE_ORDER


def order_scan(relations: Sequence[Polynomial]) -> list:
    """Order at the origin of each relation, every variable in filtration degree 1."""
    return [r.order_at_origin() for r in relations]


def nilpotency_witness_yogh(corpus: Optional[Corpus] = None) -> GradedQuotientWitness:
    corpus = corpus or load_corpus()
    rels = corpus.yogh_relations
    orders = order_scan(rels)
    rep = Report("nilpotency-yogh")
    for k, (rel, o) in enumerate(zip(rels, orders), 1):
        rep.check(f"relation {k} has order >= 2", o >= 2, f"order {o}, lowest form {rel.lowest_form()}")
    low = rels[WITNESS_RELATION - 1].lowest_form()
    z = corpus.Y.var(NILPOTENT)
    rep.check(f"lowest form of relation {WITNESS_RELATION} is 2*{NILPOTENT}^2", low == z * z * 2, str(low))
    rep.notes.append(
        "No relation has a linear part, and the order of a product is the sum of the orders, "
        "so no element of the ideal has order 1; hence z1 is nonzero in m/m^2 while z1^2 "
        "is the lowest form of an ideal element, i.e. z1 is a nonzero nilpotent of gr_m(R)."
    )
    rep.data["min_order"] = min(orders)
    return GradedQuotientWitness(corpus.Y, NILPOTENT, orders, {WITNESS_RELATION: low}, rep)


# -- the Y(d) family ---------------------------------------------------------


def yd_ring(d: int) -> VarTable:
    return VarTable.make(["q", "Q", "e"] + [f"b{j}" for j in range(d + 1)])


def yd_relations(d: int) -> list[tuple[str, Polynomial]]:
    """Labelled relations of the tangent-cone ring S_d."""
    R = yd_ring(d)
    q, Q, e = R.var("q"), R.var("Q"), R.var("e")
    b = [R.var(f"b{j}") for j in range(d + 1)]
    out = []
    for j in range(1, d):
        out.append((f"e*b{j} - q*b{j + 1} - Q*b{j - 1}", e * b[j] - q * b[j + 1] - Q * b[j - 1]))
    for j in range(1, d):
        for k in range(j, d):
            out.append((f"b{j}*b{k} - b{j - 1}*b{k + 1}", b[j] * b[k] - b[j - 1] * b[k + 1]))
    return out


AFFINE = VarTable.make(["q", "Q", "e", "s", "t"])


def yd_target() -> Polynomial:
    return parse_poly("e*s*t - q*t^2 - Q*s^2", AFFINE)


def yd_substitution(d: int) -> dict[str, Polynomial]:
    s, t = AFFINE.var("s"), AFFINE.var("t")
    images = {n: AFFINE.var(n) for n in ("q", "Q", "e")}
    for j in range(d + 1):
        images[f"b{j}"] = s ** (d - j) * t**j
    return images


def principal_membership(p: Polynomial, f: Polynomial) -> tuple[bool, Polynomial]:
    """Membership in ``<f>`` by division; a single generator is its own Groebner basis."""
    quo, rem = p.divmod_exact(f)
    return rem.is_zero(), quo


def square_root(p: Polynomial, order: MonomialOrder = GREVLEX) -> Optional[Polynomial]:
    """A square root of ``p / lc(p)`` by leading-term extraction, or None.

    Over C, ``p`` is a square iff ``p / lc(p)`` is the square of a monic
    polynomial, whose coefficients then lie in the field generated by those of
    ``p``; so no coefficient square roots are needed.  ``order`` must be graded.
    """
    if p.is_zero():
        return p
    p = p.monic(order)
    lm, _ = p.leading_term(order)
    if any(e % 2 for e in lm):
        return None
    r0 = tuple(e // 2 for e in lm)
    root = Polynomial(p.ring, {r0: ONE})
    rem = p - root * root
    while not rem.is_zero():
        m, c = rem.leading_term(order)
        if any(a < b for a, b in zip(m, r0)):
            return None
        # the next term t must cancel lm(rem) through the cross term 2 * lead(root) * t
        term = Polynomial(p.ring, {tuple(a - b for a, b in zip(m, r0)): c / 2})
        new_root = root + term
        new_rem = p - new_root * new_root
        if not new_rem.is_zero() and not _smaller(new_rem.leading_term(order)[0], m, order, len(p.ring)):
            return None
        root, rem = new_root, new_rem
    return root


def _smaller(a, b, order: MonomialOrder, n: int) -> bool:
    key = order.key_function(n)
    return key(a) < key(b)


def is_square(p: Polynomial) -> bool:
    return square_root(p) is not None


def verify_Yd_tangent_cone(d: int) -> Report:
    if d < 4:
        raise ValueError("the Y(d) argument needs d >= 4")
    rep = Report(f"tangent-cone-yd-{d}")
    target = yd_target()
    images = yd_substitution(d)
    for label, rel in yd_relations(d):
        img = rel.substitute(images, AFFINE)
        ok, quo = principal_membership(img, target)
        rep.check(f"d={d}: {label} in <est - qt^2 - Qs^2>", ok, "" if ok else str(img))
    disc = parse_poly("e^2 - 4*q*Q", AFFINE)
    rep.check("e^2 - 4qQ is not a square", not is_square(disc))
    rep.check("control: (e - 2q)^2 is a square", is_square(parse_poly("(e - 2*q)^2", AFFINE)))
    rep.notes.append(
        "est - qt^2 - Qs^2 is quadratic in s with discriminant t^2(e^2 - 4qQ); "
        "as e^2 - 4qQ is not a square it is irreducible."
    )
    return rep


def verify_Yd_family(dmax: int = 8, dmin: int = 4) -> Report:
    rep = Report("tangent-cone-yd")
    for d in range(dmin, dmax + 1):
        sub = verify_Yd_tangent_cone(d)
        rep.items.extend(sub.items)
    rep.data["d_range"] = [dmin, dmax]
    return rep


# -- the rho projection --------------------------------------------------------

XY = VarTable.make(["x", "y"])
NU = VarTable.make(["nA", "nB", "nC"], total=(6, 8, 12))
RHO_IMAGES = {"x": "x", "y": "y", "X": "y", "Y": "-x"}


def rho(p: Polynomial) -> Polynomial:
    images = {k: parse_poly(v, XY) for k, v in RHO_IMAGES.items()}
    return p.substitute(images, XY)


def nu_values(corpus: Optional[Corpus] = None) -> dict[str, Polynomial]:
    corpus = corpus or load_corpus()
    F40 = rho(corpus.semi["F40"])
    return {
        "nA": rho(corpus.semi["F60"]).scale(6),
        "nB": (F40 * F40.conj()).scale(2),
        "nC": F40**3 + F40.conj() ** 3,
    }


NU_RELATION = "2*nA^4 - 3*nB^3 + 6*nC^2"


def label_map(name: str) -> Optional[str]:
    """Generator symbol to its nu label (None for h)."""
    return {"A": "nA", "B": "nB", "C": "nC"}.get(name[0])


def verify_rho_machinery(corpus: Optional[Corpus] = None) -> Report:
    corpus = corpus or load_corpus()
    rep = Report("rho-machinery")
    nu = nu_values(corpus)
    for name, p in corpus.generators.items():
        img = rho(p)
        label = label_map(name)
        want = XY.zero() if label is None else nu[label]
        rep.check(f"rho({name}) = {label or '0'}", img == want)
    rel = parse_poly(NU_RELATION, NU)
    rep.check("2 nu_A^4 - 3 nu_B^3 + 6 nu_C^2 = 0 in C[x,y]", rel.substitute(nu, XY).is_zero())
    rep.check("control: 2 nu_A^4 + 3 nu_B^3 + 6 nu_C^2 != 0", not parse_poly("2*nA^4 + 3*nB^3 + 6*nC^2", NU).substitute(nu, XY).is_zero())

    G = corpus.G
    to_nu = {n: (NU.zero() if label_map(n) is None else NU.var(label_map(n))) for n in G.names}
    multiples = {}
    for k, r in enumerate(corpus.g5_relations, 1):
        img = r.substitute(to_nu, NU)
        ok, quo = principal_membership(img, rel)
        if not img.is_zero():
            multiples[k] = str(quo)
        rep.check(f"relation {k} at h = 0 lies in <nu relation>", ok, str(img))
        rep.check(f"rho of relation {k} expanded is 0", rho(corpus.expand_g5(r)).is_zero())
    rep.data["nonzero_images"] = multiples
    return rep


# -- the completeness lemma ------------------------------------------------------


def split_off(f: Polynomial, relations: Sequence[Polynomial]) -> tuple[list[Polynomial], list[Polynomial]]:
    """Write each relation as ``g + f*h`` with ``g`` the remainder on division by ``f``."""
    gs, hs = [], []
    for r in relations:
        quo, rem = r.divmod_exact(f)
        gs.append(rem)
        hs.append(quo)
    return gs, hs


def verify_lemma_B(
    f: Polynomial,
    gs: Sequence[Polynomial],
    hs: Sequence[Polynomial],
    relations: Sequence[Polynomial],
    channel: str = "w",
    name: str = "lemma-b",
    in_J=None,
    f_not_in_J=None,
) -> Report:
    """Machine-checkable hypotheses of the completeness lemma.

    ``in_J`` decides membership of a relation in J when J is known independently
    (for C[W/G5], J is the kernel of the expansion map); ``f_not_in_J`` is the
    verdict on ``f``.  Primality of J is not checked.
    """
    rep = Report(name)
    weights = f.ring.weights(channel)
    rep.check("grading is non-negative", all(w >= 0 for w in weights), str(weights))
    rep.check("f has positive degree", not f.is_zero() and f.is_homogeneous(channel) and f.degree(channel) > 0, str(f))
    rep.check("as many g as relations", len(gs) == len(hs) == len(relations))
    for k, (g, h, r) in enumerate(zip(gs, hs, relations), 1):
        rep.check(f"g{k} homogeneous", g.is_homogeneous(channel))
        rep.check(f"g{k} + f*h{k} is relation {k}", g + f * h == r)
        if in_J is not None:
            rep.check(f"relation {k} lies in J", in_J(r))
    if f_not_in_J is not None:
        rep.check("f is not in J", f_not_in_J)
    rep.notes.append("conclusion J = <g_i + f h_i> holds provided J is prime (not checked here)")
    return rep


def lemma_B_g5(corpus: Optional[Corpus] = None) -> Report:
    corpus = corpus or load_corpus()
    h = corpus.G.var("h")
    gs, hs = split_off(h, corpus.g5_relations)
    return verify_lemma_B(
        h,
        gs,
        hs,
        corpus.g5_relations,
        name="lemma-b-g5",
        in_J=lambda r: corpus.expand_g5(r).is_zero(),
        f_not_in_J=not corpus.expand_g5(h).is_zero(),
    )


def lemma_B_yogh(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    corpus = corpus or load_corpus()
    h = corpus.Y.var("h")
    gs, hs = split_off(h, corpus.yogh_relations)
    gb = corpus.yogh_groebner(budget)
    return verify_lemma_B(h, gs, hs, corpus.yogh_relations, name="lemma-b-yogh", f_not_in_J=not gb.contains(h))


def verify_rho_and_lemma(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    """rho images, the nu relation and the lemma hypotheses for both relation lists."""
    corpus = corpus or load_corpus()
    rep = Report("rho-lemma")
    for sub in (verify_rho_machinery(corpus), lemma_B_g5(corpus), lemma_B_yogh(corpus, budget)):
        rep.items.extend(sub.items)
        rep.notes.extend(sub.notes)
        rep.data[sub.name] = sub.data
    return rep
