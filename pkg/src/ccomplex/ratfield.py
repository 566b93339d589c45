"""Rational functions Q(t1, ..., tmu), the localized ring and the quotient Q / Lambda_S.

A ``RatFunc`` is stored reduced over the Laurent ring: numerator and
denominator are coprime, the denominator has minimal exponents 0 and a
positive leading coefficient.  This is a canonical form for elements of Q,
so ``==`` and ``hash`` are structural.

Elements of the localized ring are ordinary ``RatFunc`` values whose reduced
denominator is a unit there (``in_lambda_s``).  Classes in Q / Lambda_S are
``QmodLS`` values; their equality is decided by ``qls_equal``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .laurent import (
    LaurentPoly,
    LSUnit,
    divide,
    exact_div,
    gcd_lambda,
    is_unit_ls,
    normalize_lambda,
    parse_fraction,
    reduce_mod,
    strip_units,
    to_text,
)

Scalar = Union["RatFunc", LaurentPoly, int]


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None, *, _reduced: bool = False):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def nvars(self) -> int:
        return self.num.nvars

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "RatFunc":
        return cls(LaurentPoly.zero(nvars), LaurentPoly.one(nvars), _reduced=True)

    @classmethod
    def one(cls, nvars: int) -> "RatFunc":
        return cls(LaurentPoly.one(nvars), LaurentPoly.one(nvars), _reduced=True)

    @classmethod
    def const(cls, c: int, nvars: int) -> "RatFunc":
        return cls(LaurentPoly.const(c, nvars), LaurentPoly.one(nvars), _reduced=True)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p, LaurentPoly.one(p.nvars), _reduced=True)

    @classmethod
    def from_unit(cls, u: LSUnit) -> "RatFunc":
        num, den = u.parts()
        return cls(num, den)

    @classmethod
    def coerce(cls, x: Scalar, nvars: int) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.nvars != nvars:
                raise ValueError(f"variable count mismatch: {x.nvars} vs {nvars}")
            return x
        if isinstance(x, LaurentPoly):
            if x.nvars != nvars:
                raise ValueError(f"variable count mismatch: {x.nvars} vs {nvars}")
            return cls.from_poly(x)
        if isinstance(x, LSUnit):
            return cls.from_unit(x)
        if isinstance(x, int):
            return cls.const(x, nvars)
        raise TypeError(f"cannot interpret {x!r} as a rational function")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def size(self) -> int:
        """Total number of stored terms; used as the pivot complexity measure."""
        return len(self.num) + len(self.den)

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (LaurentPoly, int)):
            return RatFunc.coerce(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.nvars)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, _reduced=True)
        # cross-cancel first so the final reduction sees small inputs
        g1 = gcd_lambda(self.num, other.den)
        g2 = gcd_lambda(other.num, self.den)
        n1, d2 = divide(self.num, g1), divide(other.den, g1)
        n2, d1 = divide(other.num, g2), divide(self.den, g2)
        return RatFunc(*_normalize_den(n1 * n2, d1 * d2), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(*_normalize_den(self.den, self.num), _reduced=True)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def conj(self) -> "RatFunc":
        return RatFunc(*_normalize_den(self.num.conj(), self.den.conj()), _reduced=True)

    def evaluate(self, point):
        return Fraction(self.num.evaluate(point)) / Fraction(self.den.evaluate(point))

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc.coerce(other, self.nvars)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({to_text_rf(self)!r})"

    def __str__(self) -> str:
        return to_text_rf(self)


def _normalize_den(num: LaurentPoly, den: LaurentPoly):
    """Move ``±t^a`` out of an already coprime denominator into the numerator."""
    shift = den.min_exponents()
    if any(shift):
        neg = tuple(-x for x in shift)
        num, den = num.shift(neg), den.shift(neg)
    if den.leading_coeff() < 0:
        num, den = -num, -den
    return num, den


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, LaurentPoly.one(num.nvars)
    if den.is_monomial():
        (e, c), = den.terms.items()
        num = num.shift(tuple(-x for x in e))
        g = math.gcd(num.content(), c)
        if c < 0:
            g = -g
        if g != 1:
            num = LaurentPoly({k: v // g for k, v in num.terms.items()}, num.nvars, _clean=True)
        return num, LaurentPoly.const(c // g, num.nvars)
    q = exact_div(num, den)
    if q is not None:
        return q, LaurentPoly.one(num.nvars)
    g = gcd_lambda(num, den)
    if not g.is_one():
        num, den = divide(num, g), divide(den, g)
    return _normalize_den(num, den)


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field arithmetic by operator symbol: one of ``+ - * /``."""
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def in_lambda_s(f: RatFunc) -> bool:
    """Membership in the localized ring: the reduced denominator is a unit there."""
    return f.den.is_one() or is_unit_ls(f.den)


# ---------------------------------------------------------------------------
# Q / Lambda_S


class QmodLS:
    """A class in Q / Lambda_S, carried by any representative."""

    __slots__ = ("rep",)
    __hash__ = None  # no canonical form in several variables

    def __init__(self, rep: RatFunc):
        self.rep = rep

    @property
    def nvars(self) -> int:
        return self.rep.nvars

    @classmethod
    def zero(cls, nvars: int) -> "QmodLS":
        return cls(RatFunc.zero(nvars))

    def __add__(self, other: "QmodLS") -> "QmodLS":
        return QmodLS(self.rep + other.rep)

    def __sub__(self, other: "QmodLS") -> "QmodLS":
        return QmodLS(self.rep - other.rep)

    def __neg__(self) -> "QmodLS":
        return QmodLS(-self.rep)

    def scale(self, f: RatFunc) -> "QmodLS":
        """Multiply by an element of the localized ring."""
        return QmodLS(self.rep * f)

    def is_zero(self) -> bool:
        return in_lambda_s(self.rep)

    def conj(self) -> "QmodLS":
        return qls_conj(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QmodLS):
            return NotImplemented
        return qls_equal(self, other)

    def __repr__(self) -> str:
        return f"QmodLS({to_text_rf(self.rep)!r})"

    def __str__(self) -> str:
        return to_text_qls(self)


def qls_equal(a: QmodLS, b: QmodLS) -> bool:
    return in_lambda_s(a.rep - b.rep)


def qls_conj(a: QmodLS) -> QmodLS:
    return QmodLS(a.rep.conj())


def _unit_inverse_mod(unit_part: LaurentPoly, core: LaurentPoly):
    """Find ``alpha`` in the Laurent ring with ``alpha*unit_part == 1`` mod ``core``.

    Only attempted in one variable, where the extended Euclidean algorithm
    over Q applies; returns None when no integral inverse is found.
    """
    if unit_part.nvars != 1:
        return None
    a = _to_qpoly(unit_part)
    b = _to_qpoly(core)
    # extended Euclid over Q: s*a + t*b = g
    r0, r1 = b, a
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    if len(r0) != 1:
        return None
    inv = [c / r0[0] for c in s0]
    if any(c.denominator != 1 for c in inv):
        return None
    alpha = LaurentPoly({(i,): int(c) for i, c in enumerate(inv) if c}, 1)
    check = exact_div(alpha * unit_part - 1, core)
    return alpha if check is not None else None


def _to_qpoly(p: LaurentPoly):
    lo = p.min_exponents()[0]
    hi = p.max_exponents()[0]
    return [Fraction(p.terms.get((lo + i,), 0)) for i in range(hi - lo + 1)]


def _qtrim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qtrim(out)


def _qdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] -= c * y
        a = _qtrim(a)
    return _qtrim(q), a


def _canonical_step(f: RatFunc) -> RatFunc:
    if in_lambda_s(f):
        return RatFunc.zero(f.nvars)
    core, unit = strip_units(f.den)
    num = f.num
    if not unit.is_one():
        unit_num = unit.to_poly()
        # f = num * unit^{-1} / core; the class only needs unit^{-1} mod core
        # den is an honest polynomial, so its unit part has no denominator
        alpha = _unit_inverse_mod(unit_num, core)
        if alpha is not None:
            return RatFunc(num * alpha, core)
    rem = reduce_mod(num, f.den)
    if rem == num:
        return f
    return RatFunc(rem, f.den)


def qls_canonical(a: QmodLS) -> RatFunc:
    """Deterministic display representative of a class (best effort).

    Classes in Lambda_S give 0.  Otherwise, where an inverse of the unit part
    of the denominator modulo its core can be found the denominator is made
    unit free; the numerator is then reduced modulo the denominator.  The
    loop runs to a fixed point, which makes the map idempotent.
    """
    f = a.rep
    for _ in range(64):
        g = _canonical_step(f)
        if g == f:
            return f
        f = g
    return f


# ---------------------------------------------------------------------------
# Text form


def to_text_rf(f: RatFunc) -> str:
    """``num / den`` with the polynomial text form; plain polynomial if den is 1."""
    if f.den.is_one():
        return to_text(f.num)
    num = to_text(f.num)
    den = to_text(f.den)
    if len(f.num) > 1:
        num = f"({num})"
    if len(f.den) > 1:
        den = f"({den})"
    return f"{num} / {den}"


def to_text_qls(a: QmodLS) -> str:
    return f"[{to_text_rf(qls_canonical(a))}] mod Λ_S"


def parse_ratfunc(text: str, nvars: int) -> RatFunc:
    num, den = parse_fraction(text, nvars)
    return RatFunc(num, den)


def parse_qls(text: str, nvars: int) -> QmodLS:
    """Inverse of ``to_text_qls``; also accepts a bare fraction."""
    s = text.strip()
    if s.endswith("mod Λ_S"):
        s = s[: -len("mod Λ_S")].strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    return QmodLS(parse_ratfunc(s, nvars))


def lambda_s_unit_value(u: LSUnit) -> RatFunc:
    return RatFunc.from_unit(u)


__all__ = [
    "RatFunc",
    "QmodLS",
    "rf_arith",
    "in_lambda_s",
    "qls_equal",
    "qls_conj",
    "qls_canonical",
    "to_text_rf",
    "to_text_qls",
    "parse_ratfunc",
    "parse_qls",
    "normalize_lambda",
]
