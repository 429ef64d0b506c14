"""Buchberger engine and ideal-theoretic operations.

Internally a monomial is one Python int ``(key << F) | E`` where ``E`` packs
the exponents into guard-bit fields and ``key`` is a linear order embedding,
so monomial multiplication is integer addition, comparison is integer
comparison and divisibility is a mask test.  When every input is rational,
basis elements are primitive integer polynomials and reduction runs over Q;
otherwise coefficients are monic :class:`CycloElement` values.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .exactfield import ONE, CycloElement
from .polyring import GREVLEX, MonomialOrder, PolyError, Polynomial, VarTable, format_poly, parse_poly

log = logging.getLogger(__name__)

FIELD_BITS = 10
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
ROW_BASE = 1 << 28

DEFAULT_BUDGET = 5_000_000


class GroebnerTimeout(RuntimeError):
    """Step budget exhausted; ``stats`` records the partial progress."""

    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


class ExponentOverflow(OverflowError):
    pass


# -- monomial packing --------------------------------------------------------


def _order_rows(order: MonomialOrder, n: int) -> list[list[int]]:
    def grev_rows(w, lo, hi):
        rows = [[w[i] if lo <= i < hi else 0 for i in range(n)]]
        for i in range(hi - 1, lo, -1):
            rows.append([-1 if k == i else 0 for k in range(n)])
        return rows

    kind = order.kind
    if kind == "lex":
        return [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    if kind == "grevlex":
        return grev_rows([1] * n, 0, n)
    if kind == "weighted":
        if len(order.weights) != n or any(v <= 0 for v in order.weights):
            raise PolyError("weighted order needs one positive weight per variable")
        return grev_rows(list(order.weights), 0, n)
    if kind == "block":
        w = list(order.weights) if order.weights else [1] * n
        s = order.split
        rows = grev_rows(w, 0, s) if s else []
        if s < n:
            rows += grev_rows(w, s, n)
        return rows
    raise PolyError(f"unknown monomial order {kind!r}")


class MonomialCodec:
    """Packs exponent tuples for one (variable count, order) pair."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.n = nvars
        self.order = order
        rows = _order_rows(order, nvars)
        self.fbits = FIELD_BITS * nvars
        self.emask = (1 << self.fbits) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(nvars))
        self.fmask = (1 << FIELD_BITS) - 1
        scale = [ROW_BASE ** (len(rows) - 1 - r) for r in range(len(rows))]
        unit_key = [sum(row[i] * sc for row, sc in zip(rows, scale)) for i in range(nvars)]
        self.unit = [(unit_key[i] << self.fbits) + (1 << (FIELD_BITS * i)) for i in range(nvars)]

    def encode(self, exps: Sequence[int]) -> int:
        m = 0
        for i, e in enumerate(exps):
            if e:
                if e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
                m += e * self.unit[i]
        return m

    def exps(self, m: int) -> tuple[int, ...]:
        E = m & self.emask
        fb, fm = FIELD_BITS, self.fmask
        return tuple((E >> (fb * i)) & fm for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        """True if monomial ``a`` divides ``b``."""
        g = self.guard
        return (((b & self.emask) | g) - (a & self.emask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode([x if x > y else y for x, y in zip(self.exps(a), self.exps(b))])

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.exps(a), self.exps(b)))


# -- coefficient domains -----------------------------------------------------


def _int_normalize(terms: list) -> list:
    """Clear denominators and content; make the lead coefficient positive."""
    den = 1
    for _, c in terms:
        if type(c) is Fraction and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    terms = [(m, int(c * den)) for m, c in terms]
    g = 0
    for _, c in terms:
        g = math.gcd(g, c)
        if g == 1:
            break
    if terms[0][1] < 0:
        g = -g
    if g != 1:
        terms = [(m, c // g) for m, c in terms]
    return terms


def _field_normalize(terms: list) -> list:
    lc = terms[0][1]
    if lc.is_one():
        return terms
    inv = lc.inverse()
    return [(m, c * inv) for m, c in terms]


@dataclass
class EngineStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    pairs_skipped_coprime: int = 0
    pairs_skipped_chain: int = 0
    zero_reductions: int = 0
    reduction_steps: int = 0
    basis_size: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class _Engine:
    """One Buchberger run over a fixed ring, order and coefficient domain.

    Internal polynomials are lists ``[(m, c), ...]`` sorted by ``m`` descending.
    """

    def __init__(self, ring: VarTable, order: MonomialOrder, rational: bool, budget: int):
        self.ring = ring
        self.codec = MonomialCodec(len(ring), order)
        self.rational = rational
        self.normalize = _int_normalize if rational else _field_normalize
        self.budget = budget
        self.stats = EngineStats()
        if order.kind in ("weighted", "block") and order.weights:
            self.weights = tuple(order.weights)
        else:
            self.weights = (1,) * len(ring)

    def to_internal(self, p: Polynomial) -> Optional[list]:
        if p.is_zero():
            return None
        enc = self.codec.encode
        if self.rational:
            items = ((enc(m), c.to_fraction()) for m, c in p.terms.items())
        else:
            items = ((enc(m), c) for m, c in p.terms.items())
        return self.normalize(sorted(items, key=lambda t: t[0], reverse=True))

    def to_poly(self, f: list) -> Polynomial:
        exps = self.codec.exps
        if self.rational:
            terms = {exps(m): CycloElement.from_rational(c) for m, c in f}
        else:
            terms = {exps(m): c for m, c in f}
        return Polynomial(self.ring, terms)

    def wdeg(self, m: int) -> int:
        return sum(w * e for w, e in zip(self.weights, self.codec.exps(m)))

    def _tick(self, n: int) -> None:
        self.stats.reduction_steps += n
        if self.stats.reduction_steps > self.budget:
            raise GroebnerTimeout(f"Groebner step budget {self.budget} exhausted", self.stats.as_dict())

    def reduce(self, f: list, basis: Sequence[list], full: bool) -> tuple[object, Optional[list]]:
        """Reduce ``f``; return ``(s, r)`` with ``s*f == r`` modulo ``basis``.

        ``s`` is a nonzero scalar, currently always 1.  With ``full``
        False only leading terms are reduced and the tail is left alone.
        ``r`` is returned unnormalised.
        """
        codec = self.codec
        emask, guard = codec.emask, codec.guard
        leads = [((g[0][0] & emask), g) for g in basis]
        rational = self.rational
        coeffs = dict(f)
        heap = [-m for m, _ in f]
        heapq.heapify(heap)
        rem: list = []
        scale = 1
        steps = 0
        while heap:
            m = -heapq.heappop(heap)
            c = coeffs.pop(m, None)
            if not c:
                continue
            Em = (m & emask) | guard
            red = None
            for Eg, g in leads:
                if (Em - Eg) & guard == guard:
                    red = g
                    break
            if red is None:
                rem.append((m, c))
                if not full:
                    rest = [(k, v) for k, v in coeffs.items() if v]
                    rest.sort(key=lambda t: t[0], reverse=True)
                    rem.extend(rest)
                    break
                continue
            steps += 1
            if steps > 4096:
                self._tick(steps)
                steps = 0
            shift = m - red[0][0]
            mult = c
            if rational:
                glc = red[0][1]
                if glc != 1:
                    # exact division over Q; fraction-free scaling blows up on long chains
                    mult = Fraction(c, glc) if type(c) is int else c / glc
            it = iter(red)
            next(it)
            for gm, gc in it:
                k = gm + shift
                if k & guard & emask:
                    raise ExponentOverflow("exponent overflow during reduction")
                old = coeffs.get(k)
                if old is None:
                    coeffs[k] = -mult * gc
                    heapq.heappush(heap, -k)
                else:
                    coeffs[k] = old - mult * gc
        self._tick(steps)
        return scale, (rem or None)

    def spoly(self, f: list, g: list, lcm: int) -> Optional[list]:
        sf = lcm - f[0][0]
        sg = lcm - g[0][0]
        a, b = f[0][1], g[0][1]
        if self.rational:
            d = math.gcd(a, b)
            a, b = a // d, b // d
        acc: dict = {}
        for m, c in f[1:]:
            acc[m + sf] = c * b
        for m, c in g[1:]:
            k = m + sg
            acc[k] = acc.get(k, 0) - c * a
        terms = [(m, c) for m, c in acc.items() if c]
        terms.sort(key=lambda t: t[0], reverse=True)
        return terms or None

    def groebner(self, gens: Iterable[list]) -> list[list]:
        codec = self.codec
        stats = self.stats
        basis: list[list] = []
        active: list[int] = []
        sugar: list[int] = []
        pairs: list[tuple] = []  # heap of (sugar, lcm, i, j)
        wdeg = self.wdeg

        def add(h: list, sg: int) -> None:
            # Gebauer-Moeller update; pairs are taken by sugar degree, which
            # keeps non-graded orders (lex) from chasing huge intermediate bases
            nonlocal pairs, active
            hidx = len(basis)
            basis.append(h)
            sugar.append(sg)
            hlm = h[0][0]
            C = []
            for gi in active:
                glm = basis[gi][0][0]
                C.append((gi, codec.lcm(glm, hlm), codec.coprime(glm, hlm)))
            stats.pairs_total += len(C)
            D = []
            while C:
                p = C.pop(0)
                if p[2] or not any(codec.divides(q[1], p[1]) for q in itertools.chain(C, D)):
                    D.append(p)
                else:
                    stats.pairs_skipped_chain += 1
            fresh = []
            for gi, l, cop in D:
                if cop:
                    stats.pairs_skipped_coprime += 1
                else:
                    wl = wdeg(l)
                    s_pair = max(sugar[gi] + wl - wdeg(basis[gi][0][0]), sg + wl - wdeg(hlm))
                    fresh.append((s_pair, l, gi, hidx))
            kept = []
            for p in pairs:
                _, l, i, j = p
                if (
                    codec.divides(hlm, l)
                    and codec.lcm(basis[i][0][0], hlm) != l
                    and codec.lcm(basis[j][0][0], hlm) != l
                ):
                    stats.pairs_skipped_chain += 1
                    continue
                kept.append(p)
            pairs = kept + fresh
            heapq.heapify(pairs)
            active = [gi for gi in active if not codec.divides(hlm, basis[gi][0][0])] + [hidx]

        for g in sorted((g for g in gens if g), key=lambda g: g[0][0]):
            _, r = self.reduce(g, [basis[i] for i in active], full=False)
            if r is None:
                continue
            r = self.normalize(r)
            if r[0][0] & codec.emask == 0:
                return [self._unit()]
            add(r, max(wdeg(m) for m, _ in g))
        while pairs:
            sg, l, i, j = heapq.heappop(pairs)
            s = self.spoly(basis[i], basis[j], l)
            stats.pairs_reduced += 1
            r = None
            if s is not None:
                _, r = self.reduce(s, [basis[k] for k in active], full=True)
            if r is None:
                stats.zero_reductions += 1
                continue
            r = self.normalize(r)
            if r[0][0] & codec.emask == 0:
                return [self._unit()]
            add(r, sg)
        out = self.interreduce([basis[k] for k in active])
        stats.basis_size = len(out)
        return out

    def _unit(self) -> list:
        return [(0, 1 if self.rational else ONE)]

    def interreduce(self, polys: list[list]) -> list[list]:
        codec = self.codec
        minimal: list[list] = []
        for g in sorted(polys, key=lambda g: g[0][0]):
            if not any(codec.divides(h[0][0], g[0][0]) for h in minimal):
                minimal.append(g)
        out = []
        for idx, g in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail = g[1:]
            if tail and others:
                scale, r = self.reduce(tail, others, full=True)
                if r:
                    r.sort(key=lambda t: t[0], reverse=True)
                terms = [(g[0][0], g[0][1] * scale)] + (r or [])
            else:
                terms = g
            out.append(self.normalize(terms))
        out.sort(key=lambda g: g[0][0], reverse=True)
        return out


# -- public API --------------------------------------------------------------


def _ring_of(polys: Sequence[Polynomial], ring: Optional[VarTable]) -> VarTable:
    if ring is None:
        if not polys:
            raise PolyError("cannot infer the ring of an empty generator list")
        ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise PolyError("generators live in different rings")
    return ring


class GroebnerBasis:
    """Reduced Groebner basis; ``polys`` are sorted by leading monomial, largest first."""

    def __init__(self, ring: VarTable, order: MonomialOrder, polys: list[Polynomial], rational: bool, stats: Optional[dict] = None):
        self.ring = ring
        self.order = order
        self.polys = polys
        self.rational = rational
        self.stats = stats or {}
        self._engine = _Engine(ring, order, rational, DEFAULT_BUDGET)
        internal = [self._engine.to_internal(p) for p in polys]
        self._internal = sorted(internal, key=lambda f: f[0][0], reverse=True)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and list(self.polys[0].terms) == [(0,) * len(self.ring)]

    def lead_exponents(self) -> list[tuple[int, ...]]:
        codec = self._engine.codec
        return [codec.exps(f[0][0]) for f in self._internal]

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Remainder of ``p`` on division by the basis (exact scalar)."""
        if p.is_zero():
            return p
        if p.ring != self.ring:
            raise PolyError("polynomial and basis live in different rings")
        if self.rational and not p.is_rational():
            return self._normal_form_split(p)
        eng = self._engine
        enc = eng.codec.encode
        if self.rational:
            items = [(enc(m), c.to_fraction()) for m, c in p.terms.items()]
            den = math.lcm(*(c.denominator for _, c in items))
            f = [(m, int(c * den)) for m, c in items]
        else:
            den = 1
            f = [(enc(m), c) for m, c in p.terms.items()]
        f.sort(key=lambda t: t[0], reverse=True)
        scale, r = eng.reduce(f, self._internal, full=True)
        if not r:
            return p.ring.zero()
        exps = eng.codec.exps
        if self.rational:
            factor = Fraction(1, scale * den)
            return Polynomial(p.ring, {exps(m): CycloElement.from_rational(c * factor) for m, c in r})
        return Polynomial(p.ring, {exps(m): c for m, c in r})

    def _normal_form_split(self, p: Polynomial) -> Polynomial:
        # a rational basis reduces each power-basis coordinate independently
        total = p.ring.zero()
        for k in range(8):
            part = {m: CycloElement.from_rational(c.coeffs[k]) for m, c in p.terms.items() if c.num[k]}
            if part:
                r = self.normal_form(Polynomial(p.ring, part))
                total = total + r.scale(CycloElement.zeta_power(k))
        return total

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def to_text(self) -> str:
        lines = [f"# order {self.order.descriptor()}", f"# vars {' '.join(self.ring.names)}"]
        lines += [format_poly(p, self.order) for p in self.polys]
        return "\n".join(lines) + "\n"


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    ring: Optional[VarTable] = None,
    budget: int = DEFAULT_BUDGET,
    cache: Optional["GBCache"] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Raises :class:`GroebnerTimeout` when more than ``budget`` reduction steps
    are needed.
    """
    gens = list(gens)
    ring = _ring_of(gens, ring)
    if cache is not None:
        hit = cache.load(gens, order, ring)
        if hit is not None:
            return hit
    rational = all(p.is_rational() for p in gens)
    eng = _Engine(ring, order, rational, budget)
    internal = [eng.to_internal(p) for p in gens]
    out = eng.groebner(f for f in internal if f)
    gb = GroebnerBasis(ring, order, [eng.to_poly(f) for f in out], rational, eng.stats.as_dict())
    log.debug("groebner basis: %d elements, stats %s", len(gb), gb.stats)
    if cache is not None:
        cache.store(gens, order, ring, gb)
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def membership(p: Polynomial, gens_or_gb, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_BUDGET) -> bool:
    gb = gens_or_gb if isinstance(gens_or_gb, GroebnerBasis) else buchberger(gens_or_gb, order, budget=budget)
    return gb.contains(p)


# -- derived constructions ---------------------------------------------------


def _fresh_name(ring: VarTable, base: str = "t_") -> str:
    k = 0
    while f"{base}{k}" in ring.names:
        k += 1
    return f"{base}{k}"


def _elimination_order(ring: VarTable, split: int, weights: Optional[dict]) -> MonomialOrder:
    w = tuple(weights.get(n, 1) for n in ring.names) if weights else (1,) * len(ring)
    return MonomialOrder("block", w, split)


def elimination(
    gens: Sequence[Polynomial],
    eliminate: Sequence[str],
    weights: Optional[dict] = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Polynomial]:
    """Generators of ``I`` intersected with the subring of the remaining variables."""
    gens = list(gens)
    ring = _ring_of(gens, None)
    rest = [n for n in ring.names if n not in eliminate]
    work = VarTable.make(list(eliminate) + rest)
    moved = [p.rename(work) for p in gens]
    gb = buchberger(moved, _elimination_order(work, len(eliminate), weights), work, budget)
    elim = set(eliminate)
    return [p.rename(ring) for p in gb.polys if not (p.variables_used() & elim)]


def _tagged(gens: Sequence[Polynomial], extra: Sequence[Polynomial]) -> tuple[VarTable, VarTable, str]:
    ring = _ring_of(list(gens) + list(extra), None)
    t = _fresh_name(ring)
    return ring, VarTable.make([t] + list(ring.names)), t


def saturation(gens: Sequence[Polynomial], f: Polynomial, budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of ``I : f^infinity`` via ``I + <1 - t f>`` with ``t`` eliminated."""
    ring, big, t = _tagged(gens, [f])
    lifted = [p.rename(big) for p in gens]
    lifted.append(big.one() - big.var(t) * f.rename(big))
    gb = buchberger(lifted, _elimination_order(big, 1, None), big, budget)
    return [p.rename(ring) for p in gb.polys if t not in p.variables_used()]


def radical_membership(f: Polynomial, gens: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> bool:
    """Rabinowitsch test: ``f`` is in the radical iff ``I + <1 - t f>`` is the unit ideal."""
    ring, big, t = _tagged(gens, [f])
    lifted = [p.rename(big) for p in gens]
    lifted.append(big.one() - big.var(t) * f.rename(big))
    return buchberger(lifted, GREVLEX, big, budget).is_unit()


def intersection(a: Sequence[Polynomial], b: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of ``I cap J`` via ``t I + (1 - t) J`` with ``t`` eliminated."""
    ring, big, t = _tagged(a, b)
    tv = big.var(t)
    lifted = [tv * p.rename(big) for p in a] + [(big.one() - tv) * p.rename(big) for p in b]
    gb = buchberger(lifted, _elimination_order(big, 1, None), big, budget)
    return [p.rename(ring) for p in gb.polys if t not in p.variables_used()]


def ideal_quotient(gens: Sequence[Polynomial], f: Polynomial, budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Generators of ``I : f``."""
    if f.is_zero():
        raise PolyError("quotient by the zero polynomial")
    out = []
    for p in intersection(gens, [f], budget):
        q, r = p.divmod_exact(f)
        if not r.is_zero():
            raise ArithmeticError("intersection element not divisible by f")
        out.append(q)
    return out


def ideals_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> bool:
    ga = buchberger(list(a), budget=budget)
    gb_ = buchberger(list(b), budget=budget)
    return all(ga.contains(p) for p in b) and all(gb_.contains(p) for p in a)


def is_regular_sequence(
    seq: Sequence[Polynomial], base: Sequence[Polynomial] = (), budget: int = DEFAULT_BUDGET
) -> tuple[bool, list[dict]]:
    """Check that ``seq`` is a regular sequence on ``R / base``.

    Each step verifies ``I_k : f_k == I_k``; finally ``R / I`` must be nonzero.
    Returns the verdict and one record per step.
    """
    current = list(base)
    records: list[dict] = []
    for k, f in enumerate(seq):
        if current:
            gb = buchberger(current, budget=budget)
            if gb.is_unit():
                records.append({"step": k, "status": "unit ideal"})
                return False, records
            nzd = all(gb.contains(q) for q in ideal_quotient(current, f, budget))
        else:
            nzd = not f.is_zero()
        records.append({"step": k, "nonzerodivisor": nzd})
        if not nzd:
            return False, records
        current.append(f)
    if buchberger(current, budget=budget).is_unit():
        records.append({"step": len(seq), "status": "unit ideal"})
        return False, records
    return True, records


def krull_dimension(gb: GroebnerBasis) -> int:
    """Dimension of ``R / I`` from the lead-term ideal (maximal independent sets).

    Returns -1 for the unit ideal.
    """
    if gb.is_unit():
        return -1
    leads = [frozenset(i for i, e in enumerate(m) if e) for m in gb.lead_exponents()]
    n = len(gb.ring)
    best = 0

    def search(start: int, chosen: frozenset) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (n - start) <= best:
            return
        for i in range(start, n):
            cand = chosen | {i}
            if all(not s <= cand for s in leads):
                search(i + 1, cand)

    search(0, frozenset())
    return best


# -- Hilbert series ----------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / prod(1 - t^d for d in denominator)`` with integer coefficients."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def coefficients(self, count: int) -> list[int]:
        series = list(self.numerator[:count]) + [0] * max(0, count - len(self.numerator))
        for d in self.denominator:
            for k in range(d, count):
                series[k] += series[k - d]
        return series[:count]

    def equals(self, numerator: Sequence[int], denominator: Sequence[int]) -> bool:
        """Exact rational-function equality by cross multiplication."""
        lhs = poly_mul(list(self.numerator), one_minus_product(denominator))
        rhs = poly_mul(list(numerator), one_minus_product(self.denominator))
        return trim(lhs) == trim(rhs)

    def reduced(self) -> "HilbertSeries":
        """Cancel every denominator factor ``1 - t^d`` that divides the numerator."""
        num = list(self.numerator)
        den = list(self.denominator)
        progress = True
        while progress:
            progress = False
            for d in sorted(set(den), reverse=True):
                q = _div_one_minus(num, d)
                if q is not None:
                    num = q
                    den.remove(d)
                    progress = True
                    break
        return HilbertSeries(tuple(trim(num)), tuple(sorted(den)))

    def __str__(self) -> str:
        num = " + ".join(f"{c}*t^{k}" for k, c in enumerate(self.numerator) if c) or "0"
        den = "".join(f"(1-t^{d})" for d in self.denominator)
        return f"({num}) / {den}" if den else num


def trim(p: Sequence[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def one_minus_product(ds: Sequence[int]) -> list[int]:
    """Coefficients of ``prod(1 - t^d)``."""
    out = [1]
    for d in ds:
        out = poly_mul(out, [1] + [0] * (d - 1) + [-1])
    return out


def _div_one_minus(num: list[int], d: int) -> Optional[list[int]]:
    num = trim(num)
    if not num:
        return []
    q: list[int] = []
    for k in range(max(0, len(num) - d)):
        q.append(num[k] + (q[k - d] if k >= d else 0))
    back = poly_mul(q, [1] + [0] * (d - 1) + [-1]) if q else []
    return q if trim(back) == num else None


def _add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for m in sorted(set(gens), key=sum):
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def monomial_hilbert_numerator(gens: Sequence[tuple[int, ...]], w: Sequence[int]) -> list[int]:
    """Numerator ``N`` with ``HS(R/M) = N(t) / prod(1 - t^{w_i})`` for a monomial ideal ``M``."""
    gens = _minimalize(list(gens))
    if not gens:
        return [1]
    supports = [[k for k, e in enumerate(m) if e] for m in gens]
    flat = [k for s in supports for k in s]
    if len(flat) == len(set(flat)):
        # pairwise coprime generators form a regular sequence
        out = [1]
        for m in gens:
            d = sum(a * b for a, b in zip(w, m))
            out = poly_mul(out, [1] + [0] * (d - 1) + [-1]) if d else []
        return out
    # split on p = x_i^e:  N(M) = N(M + p) + t^deg(p) N(M : p).  Taking e from a
    # generator that is not a pure power keeps p outside the minimal ideal M.
    mixed = [m for m, s in zip(gens, supports) if len(s) > 1]
    counts = [0] * len(w)
    for m in mixed:
        for k, e in enumerate(m):
            if e:
                counts[k] += 1
    i = max(range(len(w)), key=lambda k: counts[k])
    exps = sorted(m[i] for m in mixed if m[i])
    e = exps[len(exps) // 2]
    p = tuple(e if k == i else 0 for k in range(len(w)))
    plus = monomial_hilbert_numerator(gens + [p], w)
    colon = monomial_hilbert_numerator([tuple(max(0, a - b) for a, b in zip(m, p)) for m in gens], w)
    return _add(plus, [0] * (w[i] * e) + colon)


def hilbert_series(gb: GroebnerBasis, weights: Optional[Sequence[int]] = None) -> HilbertSeries:
    """Hilbert series of ``R / I`` for a positive grading, from the lead-term ideal.

    Valid when the ideal is homogeneous for ``weights`` (any order works then).
    """
    w = tuple(weights) if weights is not None else (1,) * len(gb.ring)
    if len(w) != len(gb.ring) or any(v <= 0 for v in w):
        raise PolyError("Hilbert series needs one positive weight per variable")
    if gb.is_unit():
        return HilbertSeries((), w)
    num = monomial_hilbert_numerator(gb.lead_exponents(), w)
    return HilbertSeries(tuple(trim(num)), w)


# -- Jacobian criterion ------------------------------------------------------


def poly_det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = M[0][0].ring.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [list(row[:j]) + list(row[j + 1:]) for row in M[1:]]
        term = M[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(gens: Sequence[Polynomial], variables: Sequence[str], size: int) -> list[Polynomial]:
    """All nonzero ``size`` x ``size`` minors of the Jacobian matrix."""
    jac = [[g.partial(v) for v in variables] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), size):
        for cols in itertools.combinations(range(len(variables)), size):
            m = poly_det([[jac[r][c] for c in cols] for r in rows])
            if not m.is_zero():
                out.append(m)
    return out


def jacobian_smoothness(
    gens: Sequence[Polynomial],
    codim: int,
    variables: Optional[Sequence[str]] = None,
    extra: Sequence[Polynomial] = (),
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """True if ``V(I)`` has no point where the Jacobian rank drops below ``codim``.

    Checks that ``I`` + ``extra`` + the ``codim``-minors is the unit ideal;
    ``extra`` restricts the test to a locally closed piece.
    """
    gens = list(gens)
    ring = _ring_of(gens, None)
    variables = list(variables) if variables else list(ring.names)
    minors = jacobian_minors(gens, variables, codim)
    return buchberger(gens + list(extra) + minors, budget=budget).is_unit()


# -- disk cache --------------------------------------------------------------


class GBCache:
    """Content-addressed store of reduced bases; writes are atomic renames."""

    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)

    @staticmethod
    def key(gens: Sequence[Polynomial], order: MonomialOrder, ring: VarTable) -> str:
        h = hashlib.sha256()
        h.update(" ".join(ring.names).encode())
        h.update(b"|" + order.descriptor().encode())
        for text in sorted(format_poly(p) for p in gens):
            h.update(b"\n" + text.encode())
        return h.hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.gb"

    def load(self, gens, order, ring) -> Optional[GroebnerBasis]:
        path = self._path(self.key(gens, order, ring))
        if not path.exists():
            return None
        try:
            header, polys = {}, []
            for line in path.read_text().splitlines():
                if line.startswith("#"):
                    k, _, v = line[1:].partition(":")
                    header[k.strip()] = v.strip()
                elif line.strip():
                    polys.append(parse_poly(line, ring))
            if header["vars"].split() != list(ring.names) or header["order"] != order.descriptor():
                raise ValueError("header does not match the request")
            stats = json.loads(header.get("stats", "{}"))
            return GroebnerBasis(ring, order, polys, header["rational"] == "true", stats)
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None

    def store(self, gens, order, ring, gb: GroebnerBasis) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        lines = [
            f"# vars: {' '.join(ring.names)}",
            f"# order: {order.descriptor()}",
            f"# rational: {'true' if gb.rational else 'false'}",
            f"# stats: {json.dumps(gb.stats, sort_keys=True)}",
        ]
        lines += [format_poly(p) for p in gb.polys]
        path = self._path(self.key(gens, order, ring))
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
