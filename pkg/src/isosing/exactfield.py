"""Exact arithmetic in the cyclotomic field Q(zeta_24).

Elements are stored over the power basis 1, z, ..., z^7 where z = e^{i pi/12}
and z^8 = z^4 - 1 (the 24th cyclotomic polynomial).  The representation is a
tuple of eight integer numerators over one positive common denominator, kept
in lowest terms, so equal elements always compare equal field by field.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

DEGREE = 8
ORDER = 24

Number = Union[int, Fraction, "CycloElement"]


class FieldError(ArithmeticError):
    """Raised for invalid field operations such as division by zero."""


def _reduce_product(c: list[int]) -> list[int]:
    # z^k = z^(k-4) - z^(k-8) for k >= 8
    for k in range(len(c) - 1, DEGREE - 1, -1):
        v = c[k]
        if v:
            c[k - 4] += v
            c[k - 8] -= v
    return c[:DEGREE]


class CycloElement:
    """An element of Q(zeta_24); immutable and hashable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = (), den: int = 1):
        vals = list(coeffs)
        if len(vals) > DEGREE:
            vals = _reduce_product(vals)
        vals += [0] * (DEGREE - len(vals))
        if any(isinstance(v, Fraction) for v in vals):
            common = math.lcm(*(Fraction(v).denominator for v in vals))
            vals = [int(Fraction(v) * common) for v in vals]
            den *= common
        self._set(tuple(int(v) for v in vals), den)

    def _set(self, num: tuple[int, ...], den: int) -> None:
        if den == 0:
            raise FieldError("zero denominator")
        if den < 0:
            num = tuple(-v for v in num)
            den = -den
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(v // g for v in num)
            den //= g
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int) -> "CycloElement":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def from_rational(cls, q: Union[int, Fraction]) -> "CycloElement":
        q = Fraction(q)
        return cls._raw((q.numerator, 0, 0, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def zeta_power(cls, k: int) -> "CycloElement":
        return _zeta_power(k % ORDER)

    @staticmethod
    def coerce(value: Number) -> "CycloElement":
        if isinstance(value, CycloElement):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloElement.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycloElement")

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num == (1, 0, 0, 0, 0, 0, 0, 0)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_real(self) -> bool:
        return self == self.conj()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Number) -> "CycloElement":
        if not isinstance(other, CycloElement):
            if isinstance(other, (int, Fraction)):
                other = CycloElement.from_rational(other)
            else:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycloElement._raw(tuple(a + b for a, b in zip(self.num, other.num)), d1)
        return CycloElement._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> "CycloElement":
        obj = CycloElement.__new__(CycloElement)
        obj.num = tuple(-v for v in self.num)
        obj.den = self.den
        obj._hash = None
        return obj

    def __sub__(self, other: Number) -> "CycloElement":
        if not isinstance(other, CycloElement):
            if isinstance(other, (int, Fraction)):
                other = CycloElement.from_rational(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "CycloElement":
        return CycloElement.coerce(other) - self

    def __mul__(self, other: Number) -> "CycloElement":
        if not isinstance(other, CycloElement):
            if isinstance(other, (int, Fraction)):
                q = Fraction(other)
                return CycloElement._raw(
                    tuple(v * q.numerator for v in self.num), self.den * q.denominator
                )
            return NotImplemented
        a, b = self.num, other.num
        if not any(b[1:]):
            b0 = b[0]
            return CycloElement._raw(tuple(v * b0 for v in a), self.den * other.den)
        if not any(a[1:]):
            a0 = a[0]
            return CycloElement._raw(tuple(v * a0 for v in b), self.den * other.den)
        c = [0] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        c[i + j] += ai * bj
        return CycloElement._raw(tuple(_reduce_product(c)), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise FieldError("division by zero in Q(zeta_24)")
        if self.is_rational():
            return CycloElement._raw((self.den,) + (0,) * 7, self.num[0])
        # columns of the multiplication-by-self matrix are self * z^k
        cols = []
        cur = self
        for _ in range(DEGREE):
            cols.append(cur.coeffs)
            cur = cur * _zeta_power(1)
        rows = [[cols[k][r] for k in range(DEGREE)] + [Fraction(int(r == 0))] for r in range(DEGREE)]
        sol = _solve_augmented(rows)
        return CycloElement(sol)

    def __truediv__(self, other: Number) -> "CycloElement":
        other = CycloElement.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "CycloElement":
        return CycloElement.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CycloElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> "CycloElement":
        """Complex conjugation, z -> z^{-1} = z^23."""
        if self.is_rational():
            return self
        acc = [0] * DEGREE
        for k, v in enumerate(self.num):
            if v:
                zk = _zeta_power((-k) % ORDER).num
                for j in range(DEGREE):
                    acc[j] += v * zk[j]
        return CycloElement._raw(tuple(acc), self.den)

    def to_complex(self) -> complex:
        """Diagnostic embedding z -> e^{i pi/12}; carries no exactness contract."""
        import cmath

        z = cmath.exp(1j * math.pi / 12)
        return sum(v * z**k for k, v in enumerate(self.num)) / self.den

    # -- comparison, hashing, text ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElement):
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_cyclo(self)

    def __repr__(self) -> str:
        return f"CycloElement({format_cyclo(self)!r})"


def _solve_augmented(rows: list[list[Fraction]]) -> list[Fraction]:
    n = len(rows)
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _zeta_power(k: int) -> CycloElement:
    c = [0] * max(DEGREE, k + 1)
    c[k] = 1
    return CycloElement._raw(tuple(_reduce_product(c)), 1)


ZERO = CycloElement()
ONE = CycloElement((1,))


# -- named constants --------------------------------------------------------

def named_constants() -> dict[str, CycloElement]:
    """Return I, SQRT2, SQRT3, OMEGA, SIGMA, each checked by its defining identity."""
    z = CycloElement.zeta_power
    consts = {
        "I": z(6),
        "SQRT2": z(3) + z(-3),
        "SQRT3": z(2) + z(-2),
        "OMEGA": z(1),
        "SIGMA": z(8),
    }
    checks = [
        consts["I"] ** 2 == -1,
        consts["SQRT2"] ** 2 == 2,
        consts["SQRT3"] ** 2 == 3,
        consts["OMEGA"] ** 8 == consts["SIGMA"],
        consts["SIGMA"] ** 3 == 1 and consts["SIGMA"] != 1,
    ]
    if not all(checks):
        raise FieldError("named constant self-check failed")
    return consts


CONSTANTS = named_constants()
I = CONSTANTS["I"]
SQRT2 = CONSTANTS["SQRT2"]
SQRT3 = CONSTANTS["SQRT3"]
OMEGA = CONSTANTS["OMEGA"]
SIGMA = CONSTANTS["SIGMA"]


# -- text format ------------------------------------------------------------

def format_cyclo(a: CycloElement) -> str:
    """Render as e.g. ``1/2*z^6 - 3*z^2``; highest power first."""
    parts = []
    for k in range(DEGREE - 1, -1, -1):
        q = Fraction(a.num[k], a.den)
        if q == 0:
            continue
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        if k == 0:
            body = str(mag)
        else:
            mon = "z" if k == 1 else f"z^{k}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*)?)?(z(?:\^(\d+))?)?$")


def parse_cyclo(text: str) -> CycloElement:
    """Inverse of :func:`format_cyclo`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sg + body for sg, body in pieces) != s:
        raise ValueError(f"malformed field element: {text!r}")
    acc = [Fraction(0)] * DEGREE
    for sign, body in pieces:
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"malformed term {body!r} in {text!r}")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(1) and m.group(2) and "*" not in body:
            raise ValueError(f"missing '*' in {body!r}")
        power = 0
        if m.group(2):
            power = int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            coef = -coef
        term = CycloElement.zeta_power(power) * coef
        acc = [a + b for a, b in zip(acc, term.coeffs)]
    return CycloElement(acc)
