"""Abelian Coulomb branches in the BFN presentation, and the h_{2,3} example.

For a torus ``T = (C^*)^n`` acting through characters ``xi_1..xi_m`` the
coordinate ring is spanned by ``x_1..x_n`` and monopoles ``r^lam`` with

    r^0 = 1,   r^lam r^mu = prod_i xi_i^d(xi_i(lam), xi_i(mu)) r^(lam + mu).

A product coefficient is kept as an exponent vector over the characters, so
gcds and the count of linear factors are exact integer operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .charts import clear_fractions
from .groebner import DEFAULT_BUDGET, GroebnerTimeout, buchberger
from .paperdata import RATIO_NAMES, RATIO_SOURCES, YOGH_NAMES, Corpus, load_corpus
from .polyring import Polynomial, VarTable, parse_poly
from .report import Report

Lattice = tuple[int, ...]


def d_fn(k: int, l: int) -> int:
    """0 when k and l weakly share a sign (zero counts as either), else min(|k|, |l|)."""
    if (k >= 0 and l >= 0) or (k <= 0 and l <= 0):
        return 0
    return min(abs(k), abs(l))


def default_var_names(n: int) -> tuple[str, ...]:
    return ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i}" for i in range(1, n + 1))


def monopole_name(lam: Lattice) -> str:
    return "r_" + "_".join(str(v) for v in lam)


def parse_characters(text: str) -> list[Lattice]:
    """``"(-1,0);(1,-3);(0,1)"`` -> ``[(-1, 0), (1, -3), (0, 1)]``."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if chunk:
            out.append(tuple(int(v) for v in chunk.split(",")))
    return out


@dataclass(frozen=True)
class TorusRep:
    characters: tuple[Lattice, ...]

    def __post_init__(self):
        chars = tuple(tuple(c) for c in self.characters)
        if not chars:
            raise ValueError("need at least one character")
        n = len(chars[0])
        if any(len(c) != n for c in chars):
            raise ValueError("characters must have equal length")
        if any(not any(c) for c in chars):
            raise ValueError("characters must be nonzero")
        object.__setattr__(self, "characters", chars)

    @property
    def n(self) -> int:
        return len(self.characters[0])

    def pair(self, lam: Lattice) -> tuple[int, ...]:
        """``(xi_1(lam), ..., xi_m(lam))``."""
        return tuple(sum(a * b for a, b in zip(c, lam)) for c in self.characters)

    def coefficient(self, lam: Lattice, mu: Lattice) -> tuple[int, ...]:
        """Exponents of the characters in ``r^lam r^mu = (...) r^(lam + mu)``."""
        return tuple(d_fn(a, b) for a, b in zip(self.pair(lam), self.pair(mu)))

    def chain(self, lams: Sequence[Lattice]) -> tuple[tuple[int, ...], Lattice]:
        """Coefficient exponents and weight of ``r^lam_1 ... r^lam_k``, multiplied left to right."""
        exps = [0] * len(self.characters)
        acc: Lattice = (0,) * self.n
        for lam in lams:
            for i, e in enumerate(self.coefficient(acc, lam)):
                exps[i] += e
            acc = tuple(a + b for a, b in zip(acc, lam))
        return tuple(exps), acc


def box(n: int, radius: int) -> list[Lattice]:
    """Nonzero lattice points with every coordinate in ``[-radius, radius]``."""
    return [lam for lam in itertools.product(range(-radius, radius + 1), repeat=n) if any(lam)]


@dataclass(frozen=True)
class BfnRelation:
    """``coef_left * prod r^left == coef_right * prod r^right`` (empty product = 1)."""

    left: tuple[Lattice, ...]
    right: tuple[Lattice, ...]
    coef_left: tuple[int, ...]
    coef_right: tuple[int, ...]

    @property
    def key(self):
        return (tuple(sorted(self.left)), tuple(sorted(self.right)))


def bfn_relation(rep: TorusRep, lam: Lattice, mu: Lattice) -> tuple[tuple[int, ...], Lattice]:
    """``r^lam r^mu = prod xi_i^e_i r^(lam + mu)``: returns ``(e, lam + mu)``."""
    return rep.coefficient(lam, mu), tuple(a + b for a, b in zip(lam, mu))


def binomial(rep: TorusRep, left: Sequence[Lattice], right: Sequence[Lattice]) -> BfnRelation:
    """The relation between two monopole monomials of equal weight, divided by the common factor."""
    cl, wl = rep.chain(left)
    cr, wr = rep.chain(right)
    if wl != wr:
        raise ValueError("monomials of different weight")
    g = tuple(min(a, b) for a, b in zip(cl, cr))
    # c_r * M_l - c_l * M_r vanishes; the ring is a domain so the gcd can be cancelled
    return BfnRelation(tuple(left), tuple(right), tuple(a - b for a, b in zip(cr, g)), tuple(a - b for a, b in zip(cl, g)))


@dataclass
class BfnRing:
    rep: TorusRep
    generators: tuple[Lattice, ...]
    var_names: tuple[str, ...] = ()
    ring: VarTable = field(init=False)

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        if any(not any(g) for g in gens):
            raise ValueError("r^0 = 1 is not a generator")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator")
        self.generators = gens
        self.var_names = tuple(self.var_names) or default_var_names(self.rep.n)
        self.ring = VarTable.make(self.var_names + tuple(monopole_name(g) for g in gens))

    def xi(self, i: int) -> Polynomial:
        """The character ``xi_i`` as a linear form in the x variables."""
        p = self.ring.zero()
        for v, c in zip(self.var_names, self.rep.characters[i]):
            if c:
                p = p + self.ring.var(v).scale(c)
        return p

    def coefficient_poly(self, exps: Sequence[int]) -> Polynomial:
        p = self.ring.one()
        for i, e in enumerate(exps):
            if e:
                p = p * self.xi(i) ** e
        return p

    def monomial(self, lams: Sequence[Lattice]) -> Polynomial:
        p = self.ring.one()
        for lam in lams:
            if any(lam):
                p = p * self.ring.var(monopole_name(lam))
        return p

    def to_poly(self, rel: BfnRelation) -> Polynomial:
        left = self.coefficient_poly(rel.coef_left) * self.monomial(rel.left)
        return left - self.coefficient_poly(rel.coef_right) * self.monomial(rel.right)

    def pairwise_relations(self) -> list[BfnRelation]:
        """Every relation read off a product of two generators.

        A product landing on ``0`` or on a generator gives ``r r' = c r''``;
        two products with the same weight give a binomial.
        """
        gset = set(self.generators)
        by_weight: dict[Lattice, list[tuple[Lattice, Lattice]]] = {}
        out = []
        for lam, mu in itertools.combinations_with_replacement(self.generators, 2):
            exps, nu = bfn_relation(self.rep, lam, mu)
            if not any(nu) or nu in gset:
                out.append(binomial(self.rep, (lam, mu), (nu,) if any(nu) else ()))
            by_weight.setdefault(nu, []).append((lam, mu))
        for nu, pairs in by_weight.items():
            for p, q in itertools.combinations(pairs, 2):
                out.append(binomial(self.rep, p, q))
        return out

    def relation_polys(self) -> list[Polynomial]:
        return [self.to_poly(r) for r in self.pairwise_relations()]

    def labelled_relations(self) -> list[tuple[str, Polynomial]]:
        def mono(lams):
            return "*".join(monopole_name(l) for l in lams) or "1"

        return [(f"{mono(r.left)} ~ {mono(r.right)}", self.to_poly(r)) for r in self.pairwise_relations()]


# -- toric data and exactness ------------------------------------------------------


def smith_normal_form(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    factors = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, rows):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    done = False
            if done:
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                M[t] = [a + b for a, b in zip(M[t], M[i])]
                continue
            nz = [(abs(M[i][t]), i, t) for i in range(t, rows) if M[i][t]] + [
                (abs(M[t][j]), t, j) for j in range(t, cols) if M[t][j]
            ]
            _, i, j = min(nz)
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(M[t][t]))
        t += 1
    return factors


@dataclass(frozen=True)
class ToricData:
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    @classmethod
    def from_characters(cls, A: Sequence[Sequence[int]], characters: Sequence[Lattice]) -> "ToricData":
        """``B`` has the characters as its rows."""
        return cls(tuple(map(tuple, A)), tuple(map(tuple, characters)))

    @property
    def a(self) -> int:
        return len(self.B) if self.B else (len(self.A[0]) if self.A else 0)


def verify_exact_sequence(data: ToricData) -> Report:
    """``0 -> Z^(a-b) -B-> Z^a -A-> Z^b -> 0`` is exact."""
    rep = Report("exact-sequence")
    A, B = [list(r) for r in data.A], [list(r) for r in data.B]
    a = data.a
    b = len(A)
    k = len(B[0]) if B and B[0] else 0
    rep.check("A has a columns", all(len(r) == a for r in A))
    AB = [[sum(A[i][l] * B[l][j] for l in range(a)) for j in range(k)] for i in range(b)]
    rep.check("A B = 0", all(v == 0 for row in AB for v in row), str(AB))
    fa = smith_normal_form(A) if b else []
    fb = smith_normal_form(B) if k else []
    rep.data.update(snf_A=fa, snf_B=fb)
    rep.check("A surjective: b invariant factors, all 1", len(fa) == b and all(f == 1 for f in fa), str(fa))
    rep.check("B injective with saturated image: a-b invariant factors, all 1", len(fb) == k and all(f == 1 for f in fb), str(fb))
    rep.check("rank A + rank B = a", len(fa) + len(fb) == a, f"{len(fa)} + {len(fb)} vs {a}")
    return rep


# -- h_{2,3} --------------------------------------------------------------------

H23_CHARACTERS = ((-1, 0), (1, -3), (0, 1))
H23_A = ((1, 1, 3),)
H23_GENERATORS = ((1, 0), (-1, 0), (3, 1), (2, 1), (1, 1), (0, 1), (-3, -1), (-2, -1), (-1, -1), (0, -1))
H23_QFT_IDEALS = (("y", (3, 1), (2, 1), (1, 1), (0, 1)), ("y", (-3, -1), (-2, -1), (-1, -1), (0, -1)))


def h23_rep() -> TorusRep:
    return TorusRep(H23_CHARACTERS)


def h23_presentation() -> BfnRing:
    return BfnRing(h23_rep(), H23_GENERATORS, ("x", "y"))


def h23_displayed_relations(ring: Optional[BfnRing] = None) -> dict[str, Polynomial]:
    """The two example relations, built by chaining pairwise products."""
    ring = ring or h23_presentation()
    rep = ring.rep
    out = {
        "r_3_1*r_0_-1 = y*r_1_0^3": ring.to_poly(binomial(rep, [(3, 1), (0, -1)], [(1, 0)] * 3)),
        "r_3_1*r_0_1 = r_2_1*r_1_1": ring.to_poly(binomial(rep, [(3, 1), (0, 1)], [(2, 1), (1, 1)])),
    }
    return out


def verify_h23_relations() -> Report:
    """Exactness of the toric data, the displayed relations, and the d-function table."""
    rep = Report("coulomb-h23")
    ex = verify_exact_sequence(ToricData.from_characters(H23_A, H23_CHARACTERS))
    for item in ex.items:
        rep.check(f"exactness: {item.label}", item.ok, item.detail)
    ring = h23_presentation()
    R = ring.ring
    shown = h23_displayed_relations(ring)
    want = {
        "r_3_1*r_0_-1 = y*r_1_0^3": parse_poly("r_3_1*r_0_-1 - y*r_1_0^3", R),
        "r_3_1*r_0_1 = r_2_1*r_1_1": parse_poly("r_3_1*r_0_1 - r_2_1*r_1_1", R),
    }
    for label, p in shown.items():
        rep.check(f"emitter reproduces {label}", p == want[label] or p == -want[label], str(p))
    rels = set(map(str, ring.relation_polys()))
    rep.check("r_3_1*r_0_1 - r_2_1*r_1_1 is among the pairwise relations",
              str(want["r_3_1*r_0_1 = r_2_1*r_1_1"]) in rels or str(-want["r_3_1*r_0_1 = r_2_1*r_1_1"]) in rels)
    xi = [ring.xi(i) for i in range(3)]
    rep.check("xi_1 = -x, xi_2 = x - 3y, xi_3 = y",
              [str(p) for p in xi] == [str(parse_poly(s, R)) for s in ("-x", "x - 3*y", "y")])
    grid = range(-10, 11)
    bad = [(k, l) for k in grid for l in grid if d_fn(k, l) != _d_oracle(k, l)]
    rep.check("d(k, l) on [-10, 10]^2 matches the sign-case table", not bad, str(bad[:5]))
    rep.data["pairwise_relations"] = len(rels)
    return rep


def _d_oracle(k: int, l: int) -> int:
    if k == 0 or l == 0:
        return 0
    if (k > 0) == (l > 0):
        return 0
    return min(abs(k), abs(l))


# -- the embedding into the a0t chart ---------------------------------------------


def embedding_images(corpus: Corpus, images: Optional[dict[str, Polynomial]] = None) -> dict[str, Polynomial]:
    """Images of x, y and the monopoles in the ring E (yogh generators plus W_i, T_+-2)."""
    images = dict(images or corpus.h23_images)
    out = {"x": -images["xi1"], "y": images["xi3"]}
    for lam in H23_GENERATORS:
        out[monopole_name(lam)] = images[monopole_name(lam)]
    return out


def chart_fractions(corpus: Corpus):
    Y = corpus.Y
    fr = {n: (Y.var(n), 0) for n in YOGH_NAMES}
    for r in RATIO_NAMES:
        fr[r] = (corpus.ideal_J[RATIO_SOURCES[r]], 1)
    return fr, corpus.ideal_J["a0t"]


def verify_h23_embedding(
    corpus: Optional[Corpus] = None,
    budget: int = DEFAULT_BUDGET,
    images: Optional[dict[str, Polynomial]] = None,
    control: bool = True,
) -> Report:
    """Every h_{2,3} relation maps to zero on the a0t chart of the blow-up of yogh at J.

    Each image is a polynomial in the yogh generators and the ratios
    ``W_i = w_i / a0t``, ``T_+-2 = t_+-2 / a0t``; clearing ``a0t`` gives a
    polynomial in the yogh generators, which must lie in the yogh ideal.
    """
    corpus = corpus or load_corpus()
    rep = Report("coulomb-h23-embedding")
    imgs = images or corpus.h23_images
    rep.check("xi1 + xi2 + 3 xi3 maps to 0", (imgs["xi1"] + imgs["xi2"] + imgs["xi3"].scale(3)).is_zero())
    ring = h23_presentation()
    emb = embedding_images(corpus, imgs)
    rep.check("xi2 = x - 3y is respected", ring.xi(1).substitute(emb, corpus.E) == imgs["xi2"])
    try:
        gb = corpus.yogh_groebner(budget)
    except GroebnerTimeout as exc:
        rep.undecided("yogh Groebner basis", str(exc))
        return rep
    fr, a0t = chart_fractions(corpus)
    relations = ring.labelled_relations()
    relations += list(h23_displayed_relations(ring).items())
    failed = []
    for label, rel in relations:
        num, e = clear_fractions(rel.substitute(emb, corpus.E), fr, a0t)
        ok = gb.contains(num)
        if not ok:
            failed.append(label)
        rep.check(f"{label} holds on the a0t chart", ok)
    rep.data["relations"] = len(relations)
    if control and images is None:
        broken = dict(corpus.h23_images)
        p = broken["r_1_1"]
        m = max(p.terms)
        broken["r_1_1"] = p - Polynomial(p.ring, {m: p.terms[m]})
        sub = verify_h23_embedding(corpus, budget, broken, control=False)
        rep.check("dropping a term of r^(1,1)'s image breaks the embedding (control)", sub.status == "FAIL")
    return rep


# -- tangent-cone reducedness scan --------------------------------------------------


def reducedness_scan(rep: TorusRep, radius: int = 3, k_max: int = 4, generators: Optional[Iterable[Lattice]] = None) -> Report:
    """The two computational facts behind reducedness, on a finite window.

    (r^lam)^k = r^(k lam) with coefficient 1 for every lam in the box, and a
    list of generator pairs whose coefficient has at least two linear factors
    (such a pair multiplies to 0 in gr_m, so the tangent cone is reducible).
    """
    out = Report("reducedness-scan")
    pts = box(rep.n, radius)
    for lam in pts:
        for k in range(2, k_max + 1):
            exps, nu = rep.chain([lam] * k)
            if any(exps) or nu != tuple(k * v for v in lam):
                out.check(f"(r^{lam})^{k} = r^{nu}", False, str(exps))
    out.check(f"(r^lam)^k = r^(k lam) for all lam in the box, k <= {k_max}", not out.failures())
    gens = list(generators) if generators is not None else pts
    flagged = []
    for lam, mu in itertools.combinations(gens, 2):
        exps, _ = bfn_relation(rep, lam, mu)
        if sum(exps) >= 2:
            flagged.append((lam, mu, exps))
    out.data["reducible_pairs"] = [(list(a), list(b), list(e)) for a, b, e in flagged]
    out.data["tangent_cone_reducible"] = bool(flagged)
    out.notes.append(
        "products r^lam r^mu with a coefficient of two or more linear factors vanish in gr_m, "
        f"{'so the tangent cone is reducible' if flagged else 'none found in the window'}"
    )
    return out


def h23_qft_blowup_data(budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report("h23-qft-ideals")
    ring = h23_presentation()
    R = ring.ring
    base = ring.relation_polys()

    def gens_of(spec):
        return [R.var(s) if isinstance(s, str) else R.var(monopole_name(s)) for s in spec]

    first, second = H23_QFT_IDEALS
    image = tuple(s if isinstance(s, str) else tuple(-v for v in s) for s in first)
    rep.check("lambda -> -lambda sends the first ideal to the second", set(image) == set(second))
    neg = {monopole_name(g): R.var(monopole_name(tuple(-v for v in g))) for g in H23_GENERATORS}
    neg.update(x=R.var("x"), y=R.var("y"))
    rep.check("lambda -> -lambda preserves the relation set",
              set(map(str, (p.substitute(neg, R) for p in base))) <= set(map(str, base)) | set(str(-p) for p in base))
    extra = R.var("r_1_0") * R.var("r_-1_0") + R.var("x") * (R.var("x") - R.var("y").scale(3))
    for k, spec in enumerate(H23_QFT_IDEALS, 1):
        try:
            gb = buchberger(base + gens_of(spec), budget=budget)
            rep.check(f"ideal {k} is proper", not gb.is_unit())
            gb2 = buchberger(base + gens_of(spec) + [extra], budget=budget)
            rep.check(f"ideal {k} plus r_1_0 r_-1_0 - (-x)(x - 3y) is proper", not gb2.is_unit())
        except GroebnerTimeout as exc:
            rep.undecided(f"ideal {k}", str(exc))
    return rep
