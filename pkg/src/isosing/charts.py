"""Affine charts of blow-ups and the chart identities for C^4/G5.

Chart coordinates are ratios ``g_i / g_k``.  A chart function is carried
upstairs as a pair ``(numerator, e)`` meaning ``numerator / g_k^e`` with the
numerator a polynomial in x, y, X, Y; identities between chart functions are
then polynomial identities after clearing a common power of ``g_k``.  Where
no polynomial lift is available the check falls back to Groebner bases in a
chart presentation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import linalg
from .exactfield import I, ONE, SQRT3
from .groebner import (
    DEFAULT_BUDGET,
    GroebnerTimeout,
    buchberger,
    jacobian_smoothness,
    krull_dimension,
    radical_membership,
    saturation,
)
from .paperdata import _ENTRY, CHI_YOGH, PHI_YOGH, W, Corpus, CorpusError, GeneratorMap, load_corpus, yogh_order
from .polyring import GREVLEX, PolyError, Polynomial, VarTable, parse_poly
from .report import Report

Frac = tuple[Polynomial, int]

# Chart-ratio prefixes and the singular-locus generator each one divides by.
CHART_DENOMINATORS = {"k": "R44", "g": "R93", "f": "R131", "q": "R240"}


# -- fraction bookkeeping ------------------------------------------------------


def clear_fractions(p: Polynomial, fractions: Mapping[str, Frac], denom: Polynomial) -> Frac:
    """Write ``p(fractions)`` as ``N / denom^e`` with the least ``e`` that clears every term."""
    ring = p.ring
    weight = [fractions[n][1] if n in fractions else None for n in ring.names]
    groups: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = 0
        for i, k in enumerate(m):
            if k:
                if weight[i] is None:
                    raise PolyError(f"no chart value for {ring.names[i]!r}")
                e += k * weight[i]
        groups.setdefault(e, {})[m] = c
    top = max(groups, default=0)
    target = denom.ring
    images = {n: fractions[n][0] for n in ring.names if n in fractions}
    num = target.zero()
    for e, terms in sorted(groups.items()):
        part = Polynomial(ring, terms, True).substitute(images, target)
        num = num + part * denom ** (top - e)
    return num, top


def same_fraction(a: Frac, b: Frac, denom: Polynomial) -> bool:
    (na, ea), (nb, eb) = a, b
    if ea < eb:
        na = na * denom ** (eb - ea)
    elif eb < ea:
        nb = nb * denom ** (ea - eb)
    return na == nb


def monomials_with(ring: VarTable, bidegree: tuple[int, int], max_total: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree at most ``max_total`` and the given bidegree."""
    bx, bX = ring.weights("bx"), ring.weights("bX")
    n = len(ring)
    out = []

    def rec(i, left, acc, sx, sX):
        if i == n:
            if (sx, sX) == bidegree:
                out.append(tuple(acc))
            return
        for e in range(left + 1):
            acc.append(e)
            rec(i + 1, left - e, acc, sx + e * bx[i], sX + e * bX[i])
            acc.pop()

    rec(0, max_total, [], 0, 0)
    return out


def derive_expression(
    target: Frac,
    ring: VarTable,
    fractions: Mapping[str, Frac],
    denom: Polynomial,
    candidates: Sequence[tuple[int, ...]],
) -> Optional[Polynomial]:
    """Find a linear combination of the candidate monomials equal to ``target`` on the chart.

    Solves the exact linear system obtained by clearing a common power of
    ``denom``; returns the solution with free coefficients set to zero, or
    None when the target is not in the span.
    """
    cols = []
    for m in candidates:
        cols.append(clear_fractions(Polynomial(ring, {m: ONE}, True), fractions, denom))
    top = max([target[1]] + [e for _, e in cols])
    vecs = [num * denom ** (top - e) for num, e in cols]
    rhs = target[0] * denom ** (top - target[1])
    support = sorted({m for v in vecs + [rhs] for m in v.terms})
    rows = [[v.coefficient(s) for v in vecs] + [rhs.coefficient(s)] for s in support]
    if not rows:
        return ring.zero()
    R, pivots = linalg.rref(rows)
    if len(cols) in pivots:
        return None
    sol = {}
    for r, p in enumerate(pivots):
        if not R[r][-1].is_zero():
            sol[candidates[p]] = R[r][-1]
    return Polynomial(ring, sol)


# -- chart presentations -------------------------------------------------------


@dataclass
class ChartPresentation:
    ring: VarTable
    relations: list[Polynomial]
    tags: list[str]
    denominator: Polynomial


def chart_presentation(
    relations: Sequence[Polynomial],
    ideal_gens: Sequence[Polynomial],
    k: int,
    ring: Optional[VarTable] = None,
    tag_prefix: str = "u",
    budget: int = DEFAULT_BUDGET,
) -> ChartPresentation:
    """The affine chart ``g_k != 0`` of the blow-up of ``V(relations)`` along ``ideal_gens``.

    Adds a tag ``u_i`` with ``g_i - u_i g_k`` for every ``i != k`` and
    saturates by ``g_k``.  Raises :class:`GroebnerTimeout` past the budget.
    """
    ring = ring or (ideal_gens[0].ring if ideal_gens else relations[0].ring)
    tags = [f"{tag_prefix}{i}" for i in range(len(ideal_gens)) if i != k]
    big = ring.extend(tags)
    gk = ideal_gens[k].rename(big)
    rels = [p.rename(big) for p in relations]
    t = iter(tags)
    for i, g in enumerate(ideal_gens):
        if i != k:
            rels.append(g.rename(big) - big.var(next(t)) * gk)
    sat = saturation(rels, gk, budget)
    gb = buchberger(sat, GREVLEX, big, budget)
    return ChartPresentation(big, list(gb.polys), tags, gk)


# -- the chart data file ---------------------------------------------------------


_RING_LINE = re.compile(r"^%ring\s+(.*)$")


def load_chart_data(corpus: Optional[Corpus] = None) -> dict[str, Polynomial]:
    """Parse ``corpus/charts.txt``.

    ``%ring name:i,j ...`` lines switch the ring (each variable with its
    bidegree); ``%ring W`` selects x, y, X, Y with every semi-invariant,
    generator and singular-locus polynomial in scope.
    """
    corpus = corpus or load_corpus()
    path = corpus.root / "charts.txt"
    out: dict[str, Polynomial] = {}
    ring = None
    env: dict = {}
    w_env = {**corpus.semi, **corpus.generators, **corpus.singular}
    block: list[str] = []

    def flush():
        if not block:
            return
        for line in block:
            m = _ENTRY.match(line)
            if not m:
                raise CorpusError(f"charts.txt: bad line {line!r}")
            name = m.group(1)
            poly = parse_poly(m.group(4), ring, env)
            if m.group(2) is not None and not poly.is_zero():
                want = (int(m.group(2)), int(m.group(3)))
                if poly.bidegree() != want:
                    raise CorpusError(f"charts.txt: {name} declared bidegree {want}, found {poly.bidegree()}")
            env[name] = out[name] = poly
        block.clear()

    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RING_LINE.match(line)
        if m:
            flush()
            spec = m.group(1).split()
            if spec == ["W"]:
                ring, env = W, dict(w_env)
            else:
                names, bx, bX = [], [], []
                for item in spec:
                    name, _, bd = item.partition(":")
                    i, j = bd.split(",")
                    names.append(name)
                    bx.append(int(i))
                    bX.append(int(j))
                ring = VarTable.make(names, bx=bx, bX=bX)
                env = {}
            continue
        if ring is None:
            raise CorpusError("charts.txt: entry before any %ring line")
        block.append(line)
    flush()
    return out


def ratio_fractions(ring: VarTable, corpus: Corpus) -> tuple[dict[str, Frac], Polynomial]:
    """Chart values of the variables of a ratio ring: h and A_i are ambient, ``g142`` is R142/R93, etc."""
    fr: dict[str, Frac] = {}
    denom = None
    for n in ring.names:
        if n in corpus.generators:
            fr[n] = (corpus.generators[n], 0)
            continue
        prefix, rest = n[0], n[1:]
        if prefix not in CHART_DENOMINATORS:
            raise CorpusError(f"unknown chart variable {n!r}")
        d = corpus.singular[CHART_DENOMINATORS[prefix]]
        if denom is not None and d != denom:
            raise CorpusError("mixed chart denominators in one ring")
        denom = d
        fr[n] = (corpus.singular["R" + rest], 1)
    return fr, denom


# -- the verifications -----------------------------------------------------------


def _lowest(p: Polynomial) -> str:
    return "" if p.is_zero() else f"nonzero, lowest form has {len(p.lowest_form())} terms"


def verify_X24_syzygies(corpus: Optional[Corpus] = None) -> Report:
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    rep = Report("x24-syzygies")
    for name in ("x24_syz1", "x24_syz2"):
        rep.check(name, data[name].is_zero(), _lowest(data[name]))
    g, s = corpus.generators, corpus.singular
    flipped = g["h"] * s["R240"] - (
        (I * SQRT3 / 6) * g["A1"] ** 2 * s["R131"] - g["A1"] * s["R191"] + g["C2"] * s["R131"] / 2
    )
    rep.check("sign-flipped first syzygy is nonzero (control)", not flipped.is_zero())
    return rep


A2_ENTRIES = [[f"m{i}{j}" for j in (1, 2, 3)] for i in (1, 2, 3)]


def a2_matrix(corpus: Optional[Corpus] = None) -> tuple[list[list[Frac]], Polynomial]:
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    ring = data["m11"].ring
    fr, denom = ratio_fractions(ring, corpus)
    return [[clear_fractions(data[n], fr, denom) for n in row] for row in A2_ENTRIES], denom


def verify_a2_isomorphism(corpus: Optional[Corpus] = None) -> Report:
    """The X_{13,1} matrix is traceless, has vanishing 2x2 minors and factors as a rank-one product."""
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    rep = Report("a2-isomorphism")
    M, denom = a2_matrix(corpus)
    powers = {e for row in M for _, e in row}
    rep.check("every entry clears with a single power of R131", powers <= {1}, str(sorted(powers)))
    N = [[num * denom ** (1 - e) for num, e in row] for row in M]
    for (r1, r2), (c1, c2) in itertools.product(itertools.combinations(range(3), 2), repeat=2):
        minor = N[r1][c1] * N[r2][c2] - N[r1][c2] * N[r2][c1]
        rep.check(f"minor rows {r1 + 1}{r2 + 1} cols {c1 + 1}{c2 + 1}", minor.is_zero(), _lowest(minor))
    trace = N[0][0] + N[1][1] + N[2][2]
    rep.check("trace", trace.is_zero(), _lowest(trace))
    u = [data[f"u{i}"] for i in (1, 2, 3)]
    v = [data[f"v{j}"] for j in (1, 2, 3)]
    for i in range(3):
        for j in range(3):
            rep.check(f"rank-one form entry {i + 1}{j + 1}", N[i][j] == u[i] * v[j])
    rep.check("matrix is nonzero", any(not n.is_zero() for row in N for n in row))
    return rep


def x93_fractions(corpus: Optional[Corpus] = None) -> tuple[dict[str, Frac], Polynomial]:
    """Chart values of a, b, c, d, e on X_{9,3}."""
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    ring = data["a"].ring
    fr, denom = ratio_fractions(ring, corpus)
    return {n: clear_fractions(data[n], fr, denom) for n in "abcde"}, denom


def verify_X93(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    rep = Report("x93-smooth")
    fr, denom = x93_fractions(corpus)
    rel = data["x93_relation"]
    num, e = clear_fractions(rel, fr, denom)
    rep.data["clearing_power"] = e
    rep.check("relation vanishes on the chart", num.is_zero(), _lowest(num))
    origin = {n: 0 for n in rel.ring.names}
    rep.check("relation passes through the origin", rel.evaluate(origin).is_zero())
    try:
        rep.check("Jacobian criterion gives the unit ideal", jacobian_smoothness([rel], 1, budget=budget))
    except GroebnerTimeout as exc:
        rep.undecided("Jacobian criterion", str(exc))
    h_expr = data["x93_h"]
    rep.check(
        "recorded expression of h holds on the chart",
        same_fraction(clear_fractions(h_expr, fr, denom), (corpus.generators["h"], 0), denom),
    )
    return rep


# -- isolatedness and preimage dimensions ----------------------------------------


AMBIENT_NAMES = ("h", "A1", "A0", "Am1", "B1", "B0", "Bm1", "C2", "C1", "C0", "Cm1", "Cm2")
EXCEPTIONAL_K = ("k93", "k93p", "k39", "k39p", "k131", "k113", "k240", "k024")


def yogh_ambient_expressions(corpus: Optional[Corpus] = None) -> dict[str, Polynomial]:
    """Recorded expressions, in the yogh generators, of h, A_i, B_i, C_i and the eight k_ij."""
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    out = {}
    for n in AMBIENT_NAMES + EXCEPTIONAL_K:
        p = data[f"yogh_{n}"]
        out[n] = p.rename(corpus.Y)
    return out


def _chart_value(name: str, corpus: Corpus) -> Frac:
    if name in corpus.generators:
        return corpus.generators[name], 0
    return corpus.singular["R" + name[1:]], 1


def verify_yogh_expressions(corpus: Optional[Corpus] = None) -> Report:
    """Each recorded yogh-chart expression agrees with its x, y, X, Y definition."""
    corpus = corpus or load_corpus()
    rep = Report("yogh-expressions")
    r44 = corpus.singular["R44"]
    fr = corpus.yogh_fractions
    for name, p in yogh_ambient_expressions(corpus).items():
        ok = same_fraction(clear_fractions(p, fr, r44), _chart_value(name, corpus), r44)
        rep.check(f"{name} expression", ok)
    return rep


def verify_isolatedness_yogh(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    """Every ambient generator lies in the radical of the 35 relations plus the eight k_ij."""
    corpus = corpus or load_corpus()
    rep = verify_yogh_expressions(corpus)
    rep.name = "isolatedness-yogh"
    if not rep.ok:
        return rep
    ex = yogh_ambient_expressions(corpus)
    ideal = list(corpus.yogh_relations) + [ex[k] for k in EXCEPTIONAL_K]
    try:
        gb = buchberger(ideal, yogh_order(corpus.Y), corpus.Y, budget)
        rep.check("combined ideal is proper", not gb.is_unit())
        rep.data["combined_dimension"] = krull_dimension(gb)
    except GroebnerTimeout as exc:
        rep.undecided("combined ideal", str(exc))
        return rep
    for name in AMBIENT_NAMES:
        try:
            rep.check(f"{name} in the radical", radical_membership(ex[name], ideal, budget))
        except GroebnerTimeout as exc:
            rep.undecided(name, str(exc))
    return rep


def a2_presentation() -> tuple[VarTable, list[Polynomial]]:
    """Traceless 3x3 matrices with vanishing 2x2 minors (m33 = -m11 - m22)."""
    names = ["m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32"]
    R = VarTable.make(names)
    v = {n: R.var(n) for n in names}
    v["m33"] = -v["m11"] - v["m22"]
    M = [[v[f"m{i}{j}"] for j in (1, 2, 3)] for i in (1, 2, 3)]
    minors = []
    for (r1, r2), (c1, c2) in itertools.product(itertools.combinations(range(3), 2), repeat=2):
        minors.append(M[r1][c1] * M[r2][c2] - M[r1][c2] * M[r2][c1])
    return R, minors


def verify_preimage_dimensions(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    corpus = corpus or load_corpus()
    data = load_chart_data(corpus)
    rep = Report("preimage-dimensions")

    def dim(gens, ring, order=GREVLEX):
        return krull_dimension(buchberger(gens, order, ring, budget))

    try:
        free = VarTable.make(["A1", "C2", "q131", "q191"])
        d = dim([free.var("A1"), free.var("C2")], free)
        rep.data["X24,0"] = d
        rep.check("X24,0: <A1, C2> has dimension <= 2", d <= 2, str(d))

        # X13,1 through its a2 presentation: h = (m33 - m11)/2, A1 = -(i sqrt3 m21 + m32/2)
        R, minors = a2_presentation()
        m11, m22, m21, m32 = (R.var(n) for n in ("m11", "m22", "m21", "m32"))
        h = (-m11 - m22 - m11) / 2
        a1 = -(m21.scale(I * SQRT3) + m32 / 2)
        d = dim(minors + [h, a1], R)
        rep.data["X13,1"] = d
        rep.check("X13,1: <h, A1> has dimension <= 2", d <= 2, str(d))
        rep.check("X13,1: a2 itself has dimension 4", dim(minors, R) == 4)

        rel = data["x93_relation"]
        h93 = data["x93_h"]
        a1_93 = rel.ring.var("a") + h93.scale(I * SQRT3) * rel.ring.var("e")
        d = dim([rel, h93, a1_93], rel.ring)
        rep.data["X9,3"] = d
        rep.check("X9,3: <h, A1> has dimension <= 2", d <= 2, str(d))

        Y = corpus.Y
        gb = corpus.yogh_groebner(budget)
        d = dim(list(corpus.yogh_relations) + [Y.var("h"), Y.var("z0")], Y, yogh_order(Y))
        rep.data["X4,4"] = d
        rep.check("X4,4: <h, z0> has dimension <= 2", d <= 2, str(d))
        rep.check("X4,4 itself has dimension 4", krull_dimension(gb) == 4)
    except GroebnerTimeout as exc:
        rep.undecided("dimension computation", str(exc))
    return rep


# -- the ideal J and its orbit ---------------------------------------------------


J_NAMES = ("a0t", "w1", "w0", "wm1", "t2", "tm2")


def j_orbit(corpus: Optional[Corpus] = None) -> dict[str, list[Polynomial]]:
    """J_1..J_6 generated from J by phi and chi."""
    corpus = corpus or load_corpus()
    J = [corpus.ideal_J[n] for n in J_NAMES]
    phi = GeneratorMap(PHI_YOGH, "phi")
    chi = GeneratorMap(CHI_YOGH, "chi")
    chi2 = chi.compose(chi)
    J3 = [chi(p) for p in J]
    J5 = [chi2(p) for p in J]
    return {
        "J1": J,
        "J2": [phi(p) for p in J],
        "J3": J3,
        "J4": [phi(p) for p in J3],
        "J5": J5,
        "J6": [phi(p) for p in J5],
    }


def verify_ideal_J_and_chart(corpus: Optional[Corpus] = None, budget: int = DEFAULT_BUDGET) -> Report:
    corpus = corpus or load_corpus()
    rep = Report("ideal-J")
    Y = corpus.Y
    wdeg = {n: corpus.ideal_J[n].degree("w") for n in J_NAMES}
    rep.data["weighted_degrees"] = wdeg
    rep.check("w0 has weighted degree 6", wdeg["w0"] == 6 and corpus.ideal_J["w0"].is_homogeneous("w"))
    for n in J_NAMES:
        rep.check(f"{n} is weighted homogeneous", corpus.ideal_J[n].is_homogeneous("w"))
    orbit = j_orbit(corpus)
    order = yogh_order(Y)
    rels = list(corpus.yogh_relations)
    try:
        gbs = {k: buchberger(rels + v, order, Y, budget) for k, v in orbit.items()}
        for k, gb in gbs.items():
            rep.check(f"{k} is a proper ideal", not gb.is_unit())
        dims = {k: krull_dimension(gb) for k, gb in gbs.items()}
        rep.data["dimensions"] = dims
        rep.check("dim(relations + J) = 3", dims["J1"] == 3, str(dims["J1"]))
        for k, d in dims.items():
            rep.check(f"dim(relations + {k}) = 3", d == 3, str(d))
        phi = GeneratorMap(PHI_YOGH, "phi")
        rep.check(
            "phi(J2) = J1 modulo the relations",
            all(gbs["J1"].contains(phi(p)) for p in orbit["J2"]) and all(gbs["J2"].contains(phi(p)) for p in orbit["J1"]),
        )
        distinct = len({tuple(str(p) for p in gb.polys) for gb in gbs.values()})
        rep.data["distinct_ideals"] = distinct
        rep.check("the six ideals are distinct", distinct == 6, str(distinct))
    except GroebnerTimeout as exc:
        rep.undecided("J orbit", str(exc))
    return rep
