"""Sparse multivariate polynomials over Q(zeta_24).

A :class:`VarTable` fixes the variable names and any number of integer
grading channels.  :class:`Polynomial` is an immutable map from exponent
tuples to nonzero :class:`CycloElement` coefficients.  The module also holds
the text grammar used by the corpus files, the CLI and the GB cache.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .exactfield import CONSTANTS, ONE, ZERO, CycloElement, format_cyclo, parse_cyclo

Monomial = tuple[int, ...]
Coefficient = Union[int, Fraction, CycloElement]

INFINITE_ORDER = float("inf")  # order of the zero polynomial at the origin


class PolyError(ValueError):
    """Raised on ring mismatches, missing substitution images and parse errors."""


# -- variable tables ---------------------------------------------------------


@dataclass(frozen=True)
class VarTable:
    """Ordered variable names plus named integer grading channels."""

    names: tuple[str, ...]
    gradings: tuple[tuple[str, tuple[int, ...]], ...] = ()
    index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        grads = tuple((k, tuple(w)) for k, w in (dict(self.gradings).items()))
        for k, w in grads:
            if len(w) != len(names):
                raise PolyError(f"grading {k!r} does not cover every variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "gradings", grads)
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    @classmethod
    def make(cls, names: Iterable[str], **gradings: Sequence[int]) -> "VarTable":
        return cls(tuple(names), tuple((k, tuple(v)) for k, v in gradings.items()))

    def __len__(self) -> int:
        return len(self.names)

    def weights(self, channel: str) -> tuple[int, ...]:
        if channel == "total":
            for k, w in self.gradings:
                if k == "total":
                    return w
            return (1,) * len(self.names)
        for k, w in self.gradings:
            if k == channel:
                return w
        raise PolyError(f"no grading channel {channel!r}")

    def has_grading(self, channel: str) -> bool:
        return channel == "total" or any(k == channel for k, _ in self.gradings)

    def extend(self, extra: Iterable[str], **extra_weights: Sequence[int]) -> "VarTable":
        """A larger table with ``extra`` names appended; gradings padded with the given weights (default 0)."""
        extra = tuple(extra)
        grads = []
        for k, w in self.gradings:
            pad = tuple(extra_weights.get(k, (0,) * len(extra)))
            grads.append((k, w + pad))
        return VarTable(self.names + extra, tuple(grads))

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def vars(self) -> list["Polynomial"]:
        return [self.var(n) for n in self.names]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)


# -- monomial orders ---------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order given by a sort key (larger key = larger monomial).

    ``kind`` is one of ``lex``, ``grevlex``, ``weighted`` (weighted degree then
    grevlex) or ``block`` (grevlex on ``names[:split]`` then grevlex on the
    rest, an elimination order for the first block).
    """

    kind: str = "grevlex"
    weights: tuple[int, ...] = ()
    split: int = 0

    def key_function(self, nvars: int) -> Callable[[Monomial], tuple]:
        kind = self.kind
        if kind == "lex":
            return lambda m: m
        if kind == "grevlex":
            return lambda m: (sum(m),) + tuple(-e for e in reversed(m))
        if kind == "weighted":
            w = self.weights
            if len(w) != nvars or any(v <= 0 for v in w):
                raise PolyError("weighted order needs one positive weight per variable")
            return lambda m: (sum(a * b for a, b in zip(w, m)),) + tuple(-e for e in reversed(m))
        if kind == "block":
            s = self.split
            w = self.weights or (1,) * nvars

            def key(m):
                a, b = m[:s], m[s:]
                return (
                    (sum(x * y for x, y in zip(w[:s], a)),)
                    + tuple(-e for e in reversed(a))
                    + (sum(x * y for x, y in zip(w[s:], b)),)
                    + tuple(-e for e in reversed(b))
                )

            return key
        raise PolyError(f"unknown monomial order {kind!r}")

    def descriptor(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.weights))}:{self.split}"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# -- polynomials -------------------------------------------------------------


def _coerce_coeff(c: Coefficient) -> CycloElement:
    return c if isinstance(c, CycloElement) else CycloElement.from_rational(c)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: VarTable, terms: Mapping[Monomial, Coefficient], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = len(ring)
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise PolyError("monomial length does not match the variable table")
                c = _coerce_coeff(c)
                if not c.is_zero():
                    clean[m] = c
            self.terms = clean

    # constructors
    @classmethod
    def constant(cls, ring: VarTable, c: Coefficient) -> "Polynomial":
        c = _coerce_coeff(c)
        if c.is_zero():
            return cls(ring, {}, True)
        return cls(ring, {(0,) * len(ring): c}, True)

    @classmethod
    def variable(cls, ring: VarTable, name: str, power: int = 1) -> "Polynomial":
        if name not in ring.index:
            raise PolyError(f"unknown variable {name!r}")
        m = [0] * len(ring)
        m[ring.index[name]] = power
        return cls(ring, {tuple(m): ONE}, True)

    # basic protocol
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycloElement)):
            return self.terms == Polynomial.constant(self.ring, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial") -> None:
        if other.ring.names != self.ring.names:
            raise PolyError(f"variable tables differ: {self.ring.names} vs {other.ring.names}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CycloElement)):
            return Polynomial.constant(self.ring, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # arithmetic
    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return Polynomial(self.ring, out, True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, True)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, c: Coefficient) -> "Polynomial":
        c = _coerce_coeff(c)
        if c.is_zero():
            return Polynomial(self.ring, {}, True)
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, True)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction, CycloElement)):
            return self.scale(other)
        other = self._lift(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple([p + q for p, q in zip(m1, m2)])
                v = get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if not c.is_zero()}, True)

    __rmul__ = __mul__

    def __truediv__(self, other: Coefficient) -> "Polynomial":
        if isinstance(other, Polynomial):
            q, r = self.divmod_exact(other)
            if r:
                raise PolyError("polynomial division is not exact")
            return q
        return self.scale(ONE / _coerce_coeff(other))

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolyError("negative polynomial power")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> "Polynomial":
        """Conjugate every coefficient (the overline of the corpus)."""
        return Polynomial(self.ring, {m: c.conj() for m, c in self.terms.items()}, True)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    # structure
    def variables_used(self) -> set[str]:
        used = set()
        for m in self.terms:
            used.update(self.ring.names[i] for i, e in enumerate(m) if e)
        return used

    def coefficient(self, mon: Monomial) -> CycloElement:
        return self.terms.get(tuple(mon), ZERO)

    def constant_term(self) -> CycloElement:
        return self.terms.get((0,) * len(self.ring), ZERO)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Monomial, CycloElement]]:
        key = order.key_function(len(self.ring))
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Monomial, CycloElement]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        key = order.key_function(len(self.ring))
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(ONE / self.leading_term(order)[1])

    # gradings
    def degrees(self, channel: str = "total") -> set[int]:
        w = self.ring.weights(channel)
        return {sum(a * b for a, b in zip(w, m)) for m in self.terms}

    def degree(self, channel: str = "total") -> int:
        if not self.terms:
            return -1
        return max(self.degrees(channel))

    def is_homogeneous(self, channel: str = "total") -> bool:
        return len(self.degrees(channel)) <= 1

    def bidegree(self, channels: tuple[str, str] = ("bx", "bX")) -> Optional[tuple[int, int]]:
        """Common bidegree of all terms, or None if not bi-homogeneous (or zero)."""
        a, b = self.degrees(channels[0]), self.degrees(channels[1])
        if len(a) == 1 and len(b) == 1:
            return (a.pop(), b.pop())
        return None

    def homogeneous_part(self, deg: int, channel: str = "total") -> "Polynomial":
        w = self.ring.weights(channel)
        return Polynomial(
            self.ring,
            {m: c for m, c in self.terms.items() if sum(a * b for a, b in zip(w, m)) == deg},
            True,
        )

    def order_at_origin(self, channel: str = "total"):
        """Minimal degree of a term; ``INFINITE_ORDER`` for the zero polynomial."""
        if not self.terms:
            return INFINITE_ORDER
        return min(self.degrees(channel))

    def lowest_form(self, channel: str = "total") -> "Polynomial":
        if not self.terms:
            return self
        return self.homogeneous_part(self.order_at_origin(channel), channel)

    def grading_data(self, channel: str = "total") -> dict:
        data = {
            "total_degree": self.degree("total"),
            "is_homogeneous": self.is_homogeneous("total"),
            "order_at_origin": self.order_at_origin(channel),
            "lowest_form": self.lowest_form(channel),
        }
        if channel != "total":
            data["weighted_degree"] = self.degree(channel)
            data["is_weighted_homogeneous"] = self.is_homogeneous(channel)
        if self.ring.has_grading("bx") and self.ring.has_grading("bX"):
            data["bidegree"] = self.bidegree()
        return data

    # maps
    def substitute(self, images: Mapping[str, "Polynomial"], target: Optional[VarTable] = None) -> "Polynomial":
        """Ring homomorphism sending each variable to ``images[name]``.

        Variables missing from ``images`` are an error unless they do not occur
        in ``self``.  ``target`` is the ring of the images (inferred when possible).
        """
        used = self.variables_used()
        missing = used - set(images)
        if missing:
            raise PolyError(f"no image for variables {sorted(missing)}")
        if target is None:
            rings = {p.ring for p in images.values() if isinstance(p, Polynomial)}
            target = rings.pop() if len(rings) == 1 else self.ring
        imgs = []
        for i, n in enumerate(self.ring.names):
            if n in used:
                img = images[n]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(target, img)
                elif img.ring.names != target.names:
                    raise PolyError("substitution images live in different rings")
                imgs.append((i, img))
        # cache powers per variable
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, img, e):
            key = (i, e)
            if key not in powers:
                if e == 1:
                    powers[key] = img
                else:
                    powers[key] = power(i, img, e - 1) * img
            return powers[key]

        result = Polynomial(target, {}, True)
        acc: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, img in imgs:
                if m[i]:
                    term = term * power(i, img, m[i])
            for k, v in term.terms.items():
                old = acc.get(k)
                acc[k] = v if old is None else old + v
        result = Polynomial(target, {k: v for k, v in acc.items() if not v.is_zero()}, True)
        return result

    def rename(self, target: VarTable, mapping: Optional[Mapping[str, str]] = None) -> "Polynomial":
        """Move into ``target`` by variable name (optionally renamed); no arithmetic."""
        mapping = mapping or {}
        idx = []
        for i, n in enumerate(self.ring.names):
            t = mapping.get(n, n)
            idx.append(target.index.get(t))
        out = {}
        for m, c in self.terms.items():
            new = [0] * len(target)
            for i, e in enumerate(m):
                if e:
                    if idx[i] is None:
                        raise PolyError(f"variable {self.ring.names[i]!r} missing from target ring")
                    new[idx[i]] += e
            out[tuple(new)] = c
        return Polynomial(target, out, True)

    def evaluate(self, point: Mapping[str, Coefficient]) -> CycloElement:
        total = ZERO
        vals = [_coerce_coeff(point[n]) if n in point else None for n in self.ring.names]
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    if vals[i] is None:
                        raise PolyError(f"no value for {self.ring.names[i]!r}")
                    t = t * vals[i] ** e
            total = total + t
        return total

    def divmod_exact(self, divisor: "Polynomial", order: MonomialOrder = GREVLEX):
        """Multivariate division by a single polynomial; returns (quotient, remainder)."""
        self._check(divisor)
        lm, lc = divisor.leading_term(order)
        key = order.key_function(len(self.ring))
        q: dict = {}
        r: dict = {}
        p = dict(self.terms)
        while p:
            m = max(p, key=key)
            c = p[m]
            if all(a >= b for a, b in zip(m, lm)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = c / lc
                q[qm] = q.get(qm, ZERO) + qc
                for dm, dc in divisor.terms.items():
                    t = tuple(a + b for a, b in zip(dm, qm))
                    v = p.get(t, ZERO) - qc * dc
                    if v.is_zero():
                        p.pop(t, None)
                    else:
                        p[t] = v
            else:
                r[m] = c
                del p[m]
        return Polynomial(self.ring, q), Polynomial(self.ring, r)

    def partial(self, name: str) -> "Polynomial":
        i = self.ring.index[name]
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Polynomial(self.ring, out, True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


def apply_linear(p: Polynomial, matrix: Sequence[Sequence[Coefficient]], block: Sequence[str]) -> Polynomial:
    """Act on ``p`` by the linear map ``matrix`` on the variables ``block``.

    Coordinates transform as ``v -> M^T v``, i.e. variable ``block[i]`` is
    replaced by ``sum_j M[j][i] * block[j]``.  With this convention
    ``apply_linear(apply_linear(p, H), G) == apply_linear(p, G @ H)``.
    """
    n = len(block)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise PolyError("matrix size does not match the variable block")
    M = [[_coerce_coeff(c) for c in row] for row in matrix]
    if _det(M).is_zero():
        raise PolyError("singular matrix in apply_linear")
    ring = p.ring
    images = {name: ring.var(name) for name in ring.names}
    for i, name in enumerate(block):
        img = ring.zero()
        for j, other in enumerate(block):
            if not M[j][i].is_zero():
                img = img + ring.var(other).scale(M[j][i])
        images[name] = img
    return p.substitute(images, ring)


def _det(M: list[list[CycloElement]]) -> CycloElement:
    n = len(M)
    A = [row[:] for row in M]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not A[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det = det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if not A[r][col].is_zero():
                f = A[r][col] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


# -- text grammar ------------------------------------------------------------


def _format_coeff(c: CycloElement) -> str:
    if c.is_rational():
        return str(c.to_fraction())
    return f"[{format_cyclo(c)}]"


def format_poly(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text: terms sorted by ``order`` descending, e.g. ``3/2*x^2*y - [z^6]*X + 1``."""
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms(order):
        mon = "*".join(
            (n if e == 1 else f"{n}^{e}") for n, e in zip(p.ring.names, m) if e
        )
        neg = False
        if c.is_rational() and c.to_fraction() < 0:
            neg, c = True, -c
        if mon:
            body = mon if c.is_one() else f"{_format_coeff(c)}*{mon}"
        else:
            body = _format_coeff(c)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TOKEN = re.compile(
    r"\s*(?:(\d+)|(\[[^\]]*\])|([A-Za-z_](?:[A-Za-z0-9']|_(?:-(?=\d))?)*)|(\*\*|[-+*/^(),]))"
)


class _Parser:
    def __init__(self, text: str, ring: VarTable, env: Mapping[str, object]):
        self.text = text
        self.ring = ring
        self.env = env
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolyError(f"unexpected character at {text[pos:pos + 10]!r}")
            pos = m.end()
            if m.group(1):
                self.toks.append(("num", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("cyc", parse_cyclo(m.group(2)[1:-1])))
            elif m.group(3):
                self.toks.append(("name", m.group(3)))
            else:
                op = m.group(4)
                self.toks.append(("op", "^" if op == "**" else op))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise PolyError(f"parse error near token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not (rhs.is_zero() or set(rhs.terms) == {(0,) * len(self.ring)}):
                    raise PolyError("division only by constants")
                acc = acc / rhs.constant_term()
        return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            e = self.take("num")[1]
            if neg:
                c = base.constant_term()
                if len(base) != 1 or c.is_zero():
                    raise PolyError("negative powers only of constants")
                return Polynomial.constant(self.ring, c ** (-e))
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            return Polynomial.constant(ring, val)
        if kind == "cyc":
            return Polynomial.constant(ring, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.take("op", ")")
            return p
        if kind == "op" and val == "-":
            return -self.power()
        if kind == "name":
            if val == "conj" and self.peek() == ("op", "("):
                self.take()
                p = self.expr()
                self.take("op", ")")
                return p.conj()
            if val in ring.index:
                return ring.var(val)
            if val in self.env:
                v = self.env[val]
                if isinstance(v, Polynomial):
                    if v.ring.names != ring.names:
                        v = v.rename(ring)
                    return v
                return Polynomial.constant(ring, v)
            if val in CONSTANTS:
                return Polynomial.constant(ring, CONSTANTS[val])
            raise PolyError(f"unknown name {val!r}")
        raise PolyError(f"unexpected token {val!r}")


def parse_poly(text: str, ring: VarTable, env: Optional[Mapping[str, object]] = None) -> Polynomial:
    """Parse the polynomial/expression grammar.

    Accepts ``+ - * / ^ ( )``, integers, bracketed field literals ``[1/2*z^6]``,
    the named constants I, SQRT2, SQRT3, OMEGA, SIGMA, ``conj(...)`` and any
    name bound in ``env``.
    """
    return _Parser(text, ring, env or {}).parse()
