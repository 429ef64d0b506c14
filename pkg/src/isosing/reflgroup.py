"""The reflection group G5 as explicit matrices over Q(zeta_24).

Elements act on V = C^2 by a 2x2 matrix ``A`` and on W = T*V by
``diag(A, A^{-T})``.  A polynomial ``p`` in x, y, X, Y is acted on by
``p -> p(M^T v)`` (see :func:`~isosing.polyring.apply_linear`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import linalg
from .exactfield import I, ONE, OMEGA, SIGMA, SQRT2, ZERO, CycloElement
from .groebner import HilbertSeries, one_minus_product, trim
from .polyring import Polynomial, VarTable, apply_linear

SAFETY_BOUND = 10_000

COTANGENT_VARS = ("x", "y", "X", "Y")

Matrix = tuple[tuple[CycloElement, ...], ...]


class GroupError(RuntimeError):
    pass


def _freeze(M) -> Matrix:
    return tuple(tuple(CycloElement.coerce(v) for v in row) for row in M)


def cotangent(A: Sequence[Sequence[CycloElement]]) -> Matrix:
    """``diag(A, A^{-T})`` for a 2x2 matrix ``A``."""
    inv_t = linalg.transpose(linalg.inverse([list(r) for r in A], ONE, ZERO))
    M = [[ZERO] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            M[i][j] = A[i][j]
            M[2 + i][2 + j] = inv_t[i][j]
    return _freeze(M)


SYMPLECTIC_J = _freeze([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


def is_symplectic(M: Matrix) -> bool:
    return _freeze(linalg.mat_mul(linalg.mat_mul(linalg.transpose(M), SYMPLECTIC_J), M)) == SYMPLECTIC_J


class GroupElement:
    """A group element with its action on V (``m2``) and, for 2x2 input, on W (``m4``)."""

    __slots__ = ("matrix", "word", "_m4")

    def __init__(self, matrix, word: str = ""):
        self.matrix = _freeze(matrix)
        self.word = word
        self._m4: Optional[Matrix] = None

    @property
    def m4(self) -> Optional[Matrix]:
        if self._m4 is None and len(self.matrix) == 2:
            self._m4 = cotangent(self.matrix)
        return self._m4

    def check_symplectic(self) -> None:
        if self.m4 is not None and not is_symplectic(self.m4):
            raise GroupError(f"cotangent action of {self.word or 'element'} is not symplectic")

    @property
    def m2(self) -> Matrix:
        return self.matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(linalg.mat_mul(self.matrix, other.matrix), self.word + other.word)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == _freeze(linalg.identity(n, ONE, ZERO))

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = cur * self
            k += 1
            if k > SAFETY_BOUND:
                raise GroupError("element order exceeds the safety bound")
        return k


@dataclass
class GroupTable:
    elements: list[GroupElement]
    generators: dict[str, GroupElement] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def exponent(self) -> int:
        return math.lcm(*(g.order() for g in self.elements))

    def conjugacy_classes(self) -> list[list[GroupElement]]:
        inverse = {g: GroupElement(linalg.inverse([list(r) for r in g.matrix], ONE, ZERO)) for g in self.elements}
        seen: set = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            cls = {h * g * inverse[h] for h in self.elements}
            seen |= cls
            classes.append(sorted(cls, key=lambda e: e.word))
        return classes


def generate_group(gens: Mapping[str, Sequence[Sequence]], bound: int = SAFETY_BOUND) -> GroupTable:
    """Close the named generator matrices under multiplication (breadth first)."""
    named = {k: GroupElement(v, k) for k, v in gens.items()}
    if not named:
        raise GroupError("no generators")
    n = len(next(iter(named.values())).matrix)
    identity = GroupElement(linalg.identity(n, ONE, ZERO), "")
    seen = {identity}
    elements = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in named.values():
                h = g * s
                if h not in seen:
                    h.check_symplectic()
                    seen.add(h)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > bound:
                        raise GroupError(f"group closure exceeded {bound} elements")
        frontier = nxt
    return GroupTable(elements, named)


def g5_generators() -> dict[str, Matrix]:
    s = OMEGA / SQRT2
    return {
        "a": _freeze([[I, 0], [0, -I]]),
        "b": _freeze([[0, 1], [-1, 0]]),
        "c": _freeze([[s, -s], [s * I, s * I]]),
        "d": _freeze([[SIGMA, 0], [0, SIGMA]]),
    }


def cbar_matrix() -> Matrix:
    """``c-bar`` built as the word a*c*d^2."""
    g = g5_generators()
    return _freeze(linalg.mat_mul(linalg.mat_mul(g["a"], g["c"]), linalg.mat_mul(g["d"], g["d"])))


def cbar_is_entrywise_conjugate() -> bool:
    c = g5_generators()["c"]
    return cbar_matrix() == tuple(tuple(v.conj() for v in row) for row in c)


def g4_table() -> GroupTable:
    g = g5_generators()
    return generate_group({k: g[k] for k in "abc"})


def g5_table() -> GroupTable:
    return generate_group(g5_generators())


# -- reflections and fixed planes -------------------------------------------


def _minus_identity(M: Matrix) -> list[list[CycloElement]]:
    return [[v - (ONE if i == j else ZERO) for j, v in enumerate(row)] for i, row in enumerate(M)]


@dataclass(frozen=True)
class SymplecticReflection:
    element: GroupElement
    plane: tuple[tuple[CycloElement, ...], tuple[CycloElement, ...]]

    def parametrization(self, ring: Optional[VarTable] = None) -> dict[str, Polynomial]:
        """Images of x, y, X, Y for the point ``u*v1 + v*v2`` of the fixed plane."""
        ring = ring or VarTable.make(["u", "v"])
        u, v = ring.var(ring.names[0]), ring.var(ring.names[1])
        v1, v2 = self.plane
        return {name: u.scale(v1[k]) + v.scale(v2[k]) for k, name in enumerate(COTANGENT_VARS)}


def symplectic_reflections(table: GroupTable) -> list[SymplecticReflection]:
    """Elements whose cotangent action fixes exactly a 2-plane, with a basis of that plane."""
    out = []
    for g in table:
        if g.m4 is None:
            raise GroupError("symplectic reflections need the cotangent action")
        D = _minus_identity(g.m4)
        if linalg.rank(D) == 2:
            basis = linalg.kernel(D, ONE, ZERO)
            out.append(SymplecticReflection(g, (tuple(basis[0]), tuple(basis[1]))))
    return out


# -- invariance and eigenvalues ---------------------------------------------


def act(g: GroupElement, p: Polynomial) -> Polynomial:
    return apply_linear(p, g.m4, COTANGENT_VARS)


def invariance_check(p: Polynomial, elements) -> bool:
    """True if every given group element fixes ``p``."""
    if isinstance(elements, Mapping):
        elements = elements.values()
    return all(act(g, p) == p for g in elements)


def eigenvalue(g: GroupElement, p: Polynomial) -> Optional[CycloElement]:
    """The scalar ``l`` with ``g.p == l*p``, or None if ``p`` is not an eigenvector."""
    if p.is_zero():
        return None
    q = act(g, p)
    mon, co = next(iter(p.terms.items()))
    lam = q.coefficient(mon) / co
    return lam if q == p.scale(lam) else None


# Eigenvalue table for the 13 semi-invariants and their conjugates: entry
# (name, conjugated) -> (c exponent, c-bar exponent) as powers of sigma.
EIGEN_TABLE: dict[tuple[str, bool], tuple[int, int]] = {
    ("F11", False): (0, 0), ("F60", False): (0, 0), ("F33", False): (0, 0), ("F06", False): (0, 0),
    ("F40", True): (1, 0), ("F13", True): (1, 0),
    ("F31", True): (2, 0), ("F04", True): (2, 0),
    ("F40", False): (0, 1), ("F13", False): (0, 1),
    ("G42", False): (1, 1), ("G15", False): (1, 1),
    ("G22", True): (2, 1),
    ("F31", False): (0, 2), ("F04", False): (0, 2),
    ("G22", False): (1, 2),
    ("G51", False): (2, 2), ("G24", False): (2, 2),
}


@dataclass
class EigenReport:
    rows: list[dict]
    c_column_ok: bool
    cbar_row_ok_literal: bool
    cbar_row_ok_conjugated: bool

    @property
    def ok(self) -> bool:
        return self.c_column_ok and self.cbar_row_ok_conjugated


def eigentable_check(semi: Mapping[str, Polynomial]) -> EigenReport:
    """Compare the c and c-bar eigenvalues of the tabulated semi-invariants.

    ``c-bar`` is the word a*c*d^2, which equals the entrywise conjugate of c,
    so for every semi-invariant the c-bar eigenvalue of its conjugate is the
    conjugate of its c eigenvalue.  The tabulated c-bar entries follow the
    opposite labelling (sigma and sigma^2 exchanged), so the row check is
    reported both literally and against the conjugated label.
    """
    gens = g5_generators()
    c = GroupElement(gens["c"], "c")
    cbar = GroupElement(cbar_matrix(), "acdd")
    power = {0: ONE, 1: SIGMA, 2: SIGMA * SIGMA}
    rows = []
    c_ok = lit_ok = conj_ok = True
    for (name, bar), (ec, ecb) in EIGEN_TABLE.items():
        p = semi[name].conj() if bar else semi[name]
        lc, lcb = eigenvalue(c, p), eigenvalue(cbar, p)
        row = {
            "poly": ("conj " if bar else "") + name,
            "c": lc == power[ec],
            "cbar": lcb == power[ecb],
            "cbar_conjugated": lcb is not None and lcb.conj() == power[ecb],
        }
        c_ok &= row["c"]
        lit_ok &= row["cbar"]
        conj_ok &= row["cbar_conjugated"]
        rows.append(row)
    return EigenReport(rows, c_ok, lit_ok, conj_ok)


# -- Molien series ------------------------------------------------------------


def _char_poly_one_minus(M: Sequence[Sequence[CycloElement]]) -> list[CycloElement]:
    """Coefficients of ``det(1 - t M)`` in t, from sums of principal minors."""
    n = len(M)
    out = [ONE]
    for k in range(1, n + 1):
        acc = ZERO
        for idx in itertools.combinations(range(n), k):
            acc = acc + linalg.det([[M[i][j] for j in idx] for i in idx], ONE, ZERO)
        out.append(acc if k % 2 == 0 else -acc)
    return out


def _divide_exact(num: list, den: list) -> list:
    num = list(num)
    q = [ZERO] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        coef = num[k + len(den) - 1] / lead
        q[k] = coef
        if coef:
            for j, d in enumerate(den):
                num[k + j] = num[k + j] - coef * d
    if any(num):
        raise ArithmeticError("inexact polynomial division in Molien sum")
    return q


def _molien_terms(matrices: Sequence[Sequence[Sequence[CycloElement]]], e: int, weights: Sequence[int]) -> list:
    n = len(matrices[0])
    big = [CycloElement.coerce(c) for c in one_minus_product([e] * n)]
    total = [ZERO] * len(big)
    for M, w in zip(matrices, weights):
        den = _char_poly_one_minus(M)
        while len(den) > 1 and not den[-1]:
            den.pop()
        q = _divide_exact(big, den)
        for k, v in enumerate(q):
            total[k] = total[k] + v * w
    return total


def molien_series(table: GroupTable, weight: int = 1, action: str = "m4", by_classes: bool = False) -> HilbertSeries:
    """Molien series ``|G|^-1 sum 1/det(1 - t^w g)`` as an exact rational function.

    Each term ``(1 - t^e)^n / det(1 - t g)`` is a polynomial for the group
    exponent ``e``; the averaged numerator must come out rational.  With
    ``by_classes`` the sum runs over conjugacy-class representatives weighted
    by class size instead of over all elements.
    """
    def mat(g: GroupElement):
        return g.m4 if action == "m4" else g.matrix

    e = table.exponent()
    if by_classes:
        classes = table.conjugacy_classes()
        mats = [mat(cls[0]) for cls in classes]
        mult = [len(cls) for cls in classes]
    else:
        mats = [mat(g) for g in table]
        mult = [1] * len(mats)
    total = _molien_terms(mats, e, mult)
    order = len(table)
    num = []
    for v in total:
        v = v / order
        if not v.is_rational():
            raise ArithmeticError("Molien numerator is not rational")
        q = v.to_fraction()
        if q.denominator != 1:
            raise ArithmeticError("Molien numerator is not integral")
        num.append(int(q))
    n = len(mats[0])
    if weight != 1:
        stretched = [0] * (weight * (len(num) - 1) + 1)
        for k, v in enumerate(num):
            stretched[weight * k] = v
        num = stretched
    return HilbertSeries(tuple(trim(num)), tuple([e * weight] * n))
