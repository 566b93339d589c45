"""Sparse multivariate Laurent polynomials over the integers.

Elements of ``Z[t1^±1, ..., tmu^±1]`` are stored as a map from exponent
tuples to nonzero Python integers.  Everything is immutable.  The module also
knows about the units of the localized ring obtained by inverting every
``1 - ti``: those are ``±t^a * prod (1 - ti)^ki``.
"""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

ExpVec = Tuple[int, ...]


def grlex_key(e: ExpVec) -> tuple:
    """Sort key for the graded lexicographic order.

    The order is translation invariant, so comparing raw signed exponents
    gives the same answer as comparing exponents shifted to be nonnegative.
    """
    return (sum(e), e)


def _add_exp(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Dict[ExpVec, int], nvars: int, *, _clean: bool = False):
        if nvars < 1:
            raise ValueError("a Laurent polynomial needs at least one variable")
        if not _clean:
            terms = {tuple(e): int(c) for e, c in terms.items() if c}
            for e in terms:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
        self.terms = terms
        self.nvars = nvars
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls({}, nvars, _clean=True)

    @classmethod
    def const(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c} if c else {}, nvars, _clean=True)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(1, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], nvars: int, coeff: int = 1) -> "LaurentPoly":
        return cls({tuple(exps): coeff} if coeff else {}, nvars, _clean=True)

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable ``t_{i+1}`` (zero-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, nvars)

    @classmethod
    def one_minus_var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        """``(1 - t_{i+1})**power`` for ``power >= 0``."""
        base = cls.one(nvars) - cls.var(i, nvars)
        return base ** power

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.nvars) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def is_monomial(self) -> bool:
        """True for a single term ``c * t^a`` (any nonzero integer ``c``)."""
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[ExpVec, int]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ordering data ------------------------------------------------------

    def leading_term(self) -> Tuple[ExpVec, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> int:
        return self.leading_term()[1]

    def min_exponents(self) -> ExpVec:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> ExpVec:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.terms))

    def variables(self) -> Tuple[int, ...]:
        """Indices of variables that actually occur with a nonzero exponent."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return tuple(sorted(used))

    def degree_in(self, i: int) -> int:
        return max(e[i] for e in self.terms)

    def content(self) -> int:
        """Nonnegative gcd of the integer coefficients."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out, self.nvars, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly.zero(self.nvars)
        if len(a) * len(b) >= KRONECKER_THRESHOLD:
            return LaurentPoly(_kron_mul(a, b, self.nvars), self.nvars, _clean=True)
        return LaurentPoly(_naive_mul(a, b, self.nvars), self.nvars, _clean=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly({e: c * v for e, v in self.terms.items()}, self.nvars, _clean=True)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``t^exps``."""
        exps = tuple(exps)
        if not any(exps):
            return self
        return LaurentPoly({_add_exp(e, exps): c for e, c in self.terms.items()},
                           self.nvars, _clean=True)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if self.is_monomial() and abs(self.leading_coeff()) == 1:
                (e, c), = self.terms.items()
                return LaurentPoly.monomial([-x * (-k) for x in e], self.nvars, c ** (-k))
            raise ValueError("negative powers only exist for ±monomials")
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conj(self) -> "LaurentPoly":
        return conj(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        return to_text(self)

    # -- substitution -------------------------------------------------------

    def substitute_one(self, i: int) -> "LaurentPoly":
        """Set ``t_{i+1} = 1``."""
        out: Dict[ExpVec, int] = {}
        for e, c in self.terms.items():
            k = e[:i] + (0,) + e[i + 1:]
            out[k] = out.get(k, 0) + c
        return LaurentPoly({e: c for e, c in out.items() if c}, self.nvars, _clean=True)

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point (ints, Fractions, ...).  Negative powers need invertible values."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * (x ** k)
            total = total + term
        return total

    def rename(self, mapping: Sequence[int], nvars: int) -> "LaurentPoly":
        """Move variable ``i`` to variable ``mapping[i]`` in a ring with ``nvars`` variables."""
        out: Dict[ExpVec, int] = {}
        for e, c in self.terms.items():
            k = [0] * nvars
            for i, x in enumerate(e):
                k[mapping[i]] += x
            k = tuple(k)
            out[k] = out.get(k, 0) + c
        return LaurentPoly({e: c for e, c in out.items() if c}, nvars, _clean=True)


KRONECKER_THRESHOLD = 400


def _naive_mul(a: Dict[ExpVec, int], b: Dict[ExpVec, int], nvars: int) -> Dict[ExpVec, int]:
    if len(a) < len(b):
        a, b = b, a
    out: Dict[ExpVec, int] = {}
    get = out.get
    if nvars == 1:
        for (e2,), c2 in b.items():
            for (e1,), c1 in a.items():
                k = (e1 + e2,)
                out[k] = get(k, 0) + c1 * c2
    elif nvars == 2:
        for (x2, y2), c2 in b.items():
            for (x1, y1), c1 in a.items():
                k = (x1 + x2, y1 + y2)
                out[k] = get(k, 0) + c1 * c2
    else:
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                k = tuple(x + y for x, y in zip(e1, e2))
                out[k] = get(k, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


class _Kronecker:
    """Dense packing of bounded-degree polynomials into one big integer.

    Exponent ``e`` (already shifted to be nonnegative, ``e_i < sizes[i]``)
    goes to slot ``e0 + sizes0*(e1 + sizes1*(...))``; slot ``i`` holds a
    signed coefficient in ``width`` bytes at bit offset ``8*width*i``.
    """

    def __init__(self, sizes: Sequence[int], width: int):
        self.sizes = tuple(sizes)
        self.width = width
        self.nslots = 1
        for d in sizes:
            self.nslots *= d

    def slot(self, e: ExpVec) -> int:
        k = 0
        for x, d in zip(reversed(e), reversed(self.sizes)):
            k = k * d + x
        return k

    def exps(self, k: int) -> ExpVec:
        out = []
        for d in self.sizes:
            k, x = divmod(k, d)
            out.append(x)
        return tuple(out)

    def pack(self, terms: Dict[ExpVec, int], shift: ExpVec) -> int:
        w = self.width
        pos = bytearray(w * self.nslots)
        neg = bytearray(w * self.nslots)
        for e, c in terms.items():
            k = self.slot(tuple(x - y for x, y in zip(e, shift))) * w
            if c > 0:
                pos[k:k + w] = c.to_bytes(w, "little")
            else:
                neg[k:k + w] = (-c).to_bytes(w, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    def unpack(self, z: int, shift: ExpVec) -> Optional[Dict[ExpVec, int]]:
        w = self.width
        half = 1 << (8 * w - 1)
        bias = int.from_bytes(half.to_bytes(w, "little") * self.nslots, "little")
        zs = z + bias
        if zs < 0 or zs.bit_length() > 8 * w * self.nslots:
            return None
        raw = zs.to_bytes(w * self.nslots, "little")
        out: Dict[ExpVec, int] = {}
        for k in range(self.nslots):
            c = int.from_bytes(raw[k * w:(k + 1) * w], "little") - half
            if c:
                out[tuple(x + y for x, y in zip(self.exps(k), shift))] = c
        return out


def _kron_mul(a: Dict[ExpVec, int], b: Dict[ExpVec, int], nvars: int) -> Dict[ExpVec, int]:
    min_a = tuple(min(col) for col in zip(*a))
    min_b = tuple(min(col) for col in zip(*b))
    max_a = tuple(max(col) for col in zip(*a))
    max_b = tuple(max(col) for col in zip(*b))
    sizes = [(xa - ya) + (xb - yb) + 1 for xa, ya, xb, yb in zip(max_a, min_a, max_b, min_b)]
    bound = max(abs(c) for c in a.values()) * max(abs(c) for c in b.values()) * min(len(a), len(b))
    width = (bound.bit_length() + 2) // 8 + 1
    kr = _Kronecker(sizes, width)
    if kr.nslots > 64 * (len(a) + len(b)) * max(len(a), len(b)):
        return _naive_mul(a, b, nvars)  # too sparse for dense packing
    z = kr.pack(a, min_a) * kr.pack(b, min_b)
    return kr.unpack(z, tuple(x + y for x, y in zip(min_a, min_b)))


def _kron_div(a: Dict[ExpVec, int], b: Dict[ExpVec, int], nvars: int) -> Optional[Dict[ExpVec, int]]:
    """Exact quotient of honest polynomials via big-integer division.

    Returns None when the packed division is inexact; a returned quotient
    still has to be confirmed by the caller (coefficient width is a guess).
    """
    max_a = tuple(max(col) for col in zip(*a))
    sizes = [x + 1 for x in max_a]
    zero = (0,) * nvars
    bits = max(abs(c) for c in a.values()).bit_length() + sum(max_a) + 2 * len(a).bit_length() + 16
    kr = _Kronecker(sizes, bits // 8 + 1)
    if kr.nslots > 4096 * (len(a) + 1):
        return None
    za, zb = kr.pack(a, zero), kr.pack(b, zero)
    q, r = divmod(za, zb)
    if r:
        return None
    return kr.unpack(q, zero)


def conj(p: LaurentPoly) -> LaurentPoly:
    """The involution ``t_i -> t_i^{-1}``: negate every exponent vector."""
    return LaurentPoly({tuple(-x for x in e): c for e, c in p.terms.items()}, p.nvars, _clean=True)


# ---------------------------------------------------------------------------
# Division


def _poly_divide(a: Dict[ExpVec, int], b: Dict[ExpVec, int]) -> Optional[Dict[ExpVec, int]]:
    """Exact division of honest polynomials (nonnegative exponents), or None.

    Exponents are packed into integers ``deg*B^n + e0*B^(n-1) + ... + e_{n-1}``
    which turns grlex comparison and monomial multiplication into integer
    comparison and addition.  An exact quotient never has exponents above
    ``max(a) - max(b)``, so with that check every packed key stays in range.
    """
    n = len(next(iter(a)))
    max_a = tuple(max(col) for col in zip(*a))
    max_b = tuple(max(col) for col in zip(*b))
    room = tuple(x - y for x, y in zip(max_a, max_b))
    if min(room) < 0:
        return None
    base = sum(max_a) + 1

    def pack(e):
        k = sum(e)
        for x in e:
            k = k * base + x
        return k

    def unpack(k):
        e = []
        for _ in range(n):
            k, x = divmod(k, base)
            e.append(x)
        return tuple(reversed(e))

    lt_b = max(b, key=grlex_key)
    lc_b = b[lt_b]
    k_ltb = pack(lt_b)
    b_rest = [(pack(e), c) for e, c in b.items() if e != lt_b]
    r = {pack(e): c for e, c in a.items()}
    q: Dict[ExpVec, int] = {}
    heap = [-k for k in r]
    heapq.heapify(heap)
    heappop, heappush = heapq.heappop, heapq.heappush
    while r:
        while True:
            lt = -heappop(heap)
            if lt in r:
                break
        c = r.pop(lt)
        m = unpack(lt - k_ltb) if lt >= k_ltb else None
        if m is None or any(x < 0 or x > y for x, y in zip(m, room)) or sum(m) != (lt - k_ltb) // base ** n:
            return None
        qc, rem = divmod(c, lc_b)
        if rem:
            return None
        q[m] = qc
        km = lt - k_ltb
        for kb, cb in b_rest:
            k = kb + km
            v = r.get(k)
            if v is None:
                r[k] = -qc * cb
                heappush(heap, -k)
            else:
                s = v - qc * cb
                if s:
                    r[k] = s
                else:
                    del r[k]
    return q


def exact_div(p: LaurentPoly, q: LaurentPoly) -> Optional[LaurentPoly]:
    """``p / q`` in the Laurent ring if it exists, else None."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    n = p.nvars
    if q.is_monomial():
        (eq, cq), = q.terms.items()
        out = {}
        for e, c in p.terms.items():
            v, rem = divmod(c, cq)
            if rem:
                return None
            out[_sub_exp(e, eq)] = v
        return LaurentPoly(out, n, _clean=True)
    mp, mq = p.min_exponents(), q.min_exponents()
    a = {_sub_exp(e, mp): c for e, c in p.terms.items()}
    b = {_sub_exp(e, mq): c for e, c in q.terms.items()}
    if len(a) * len(b) >= KRONECKER_THRESHOLD:
        res = _kron_div(a, b, n)
        if res is not None and _kron_mul(res, b, n) == a:
            return LaurentPoly(res, n, _clean=True).shift(_sub_exp(mp, mq))
    res = _poly_divide(a, b)
    if res is None:
        return None
    return LaurentPoly(res, n, _clean=True).shift(_sub_exp(mp, mq))


def divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division; raises ArithmeticError when ``q`` does not divide ``p``."""
    res = exact_div(p, q)
    if res is None:
        raise ArithmeticError(f"{q} does not divide {p}")
    return res


def reduce_mod(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Multivariate remainder of ``p`` by ``q`` under grlex, Laurent-aware.

    Both are first shifted to honest polynomials; the remainder of the
    shifted numerator is shifted back.  Terms whose leading monomial is not a
    multiple of the leading monomial of ``q`` (or whose coefficient is not a
    multiple of its leading coefficient) are moved to the remainder.
    """
    if q.is_zero():
        raise ZeroDivisionError("reduction modulo zero")
    if p.is_zero():
        return p
    mp, mq = p.min_exponents(), q.min_exponents()
    lo = tuple(min(x, y) for x, y in zip(mp, mq))
    a = {_sub_exp(e, lo): c for e, c in p.terms.items()}
    b = {_sub_exp(e, mq): c for e, c in q.terms.items()}
    lt_b = max(b, key=grlex_key)
    lc_b = b[lt_b]
    r = dict(a)
    rem: Dict[ExpVec, int] = {}
    while r:
        lt = max(r, key=grlex_key)
        c = r[lt]
        m = _sub_exp(lt, lt_b)
        qc = c // lc_b
        if min(m) < 0 or qc == 0:
            rem[lt] = r.pop(lt)
            continue
        for e, cb in b.items():
            k = _add_exp(e, m)
            s = r.get(k, 0) - qc * cb
            if s:
                r[k] = s
            else:
                r.pop(k, None)
        if lt in r:
            rem[lt] = r.pop(lt)
    return LaurentPoly(rem, p.nvars, _clean=True).shift(lo)


# ---------------------------------------------------------------------------
# Units of the localized ring


@dataclass(frozen=True)
class LSUnit:
    """``sign * t^monomial * prod_i (1 - t_i)^clasp_exponents[i]``."""

    sign: int
    monomial: ExpVec
    clasp_exponents: Tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be ±1")
        if len(self.monomial) != len(self.clasp_exponents):
            raise ValueError("monomial and clasp exponents must have the same length")

    @property
    def nvars(self) -> int:
        return len(self.monomial)

    @classmethod
    def one(cls, nvars: int) -> "LSUnit":
        return cls(1, (0,) * nvars, (0,) * nvars)

    def is_one(self) -> bool:
        return self.sign == 1 and not any(self.monomial) and not any(self.clasp_exponents)

    def parts(self) -> Tuple[LaurentPoly, LaurentPoly]:
        """(numerator, denominator) as Laurent polynomials."""
        n = self.nvars
        num = LaurentPoly.monomial(self.monomial, n, self.sign)
        den = LaurentPoly.one(n)
        for i, k in enumerate(self.clasp_exponents):
            if k > 0:
                num = num * LaurentPoly.one_minus_var(i, n, k)
            elif k < 0:
                den = den * LaurentPoly.one_minus_var(i, n, -k)
        return num, den

    def to_poly(self) -> LaurentPoly:
        num, den = self.parts()
        if not den.is_one():
            raise ValueError("unit has (1 - t_i) in its denominator")
        return num

    def __mul__(self, other: "LSUnit") -> "LSUnit":
        return LSUnit(self.sign * other.sign,
                      _add_exp(self.monomial, other.monomial),
                      _add_exp(self.clasp_exponents, other.clasp_exponents))

    def inverse(self) -> "LSUnit":
        return LSUnit(self.sign, tuple(-x for x in self.monomial),
                      tuple(-x for x in self.clasp_exponents))

    def conj(self) -> "LSUnit":
        # conj(1 - t) = -t^{-1} (1 - t)
        k = self.clasp_exponents
        sign = self.sign * (-1) ** (sum(k) % 2)
        mono = tuple(-m - x for m, x in zip(self.monomial, k))
        return LSUnit(sign, mono, k)

    def __str__(self) -> str:
        n = self.nvars
        pieces = []
        if any(self.monomial):
            pieces.append(to_text(LaurentPoly.monomial(self.monomial, n)))
        for i, k in enumerate(self.clasp_exponents):
            if k:
                base = f"(1 - {_var_name(i, n)})"
                pieces.append(base if k == 1 else f"{base}^{k}")
        body = "*".join(pieces) if pieces else "1"
        if self.sign < 0:
            return "-" + body if pieces else "-1"
        return body


def _strip_clasp(p: LaurentPoly, i: int) -> Tuple[LaurentPoly, int]:
    one_minus = LaurentPoly.one_minus_var(i, p.nvars)
    k = 0
    while p.degree_in(i) > p.min_exponents()[i] and p.substitute_one(i).is_zero():
        p = divide(p, one_minus)
        k += 1
    return p, k


def strip_units(p: LaurentPoly) -> Tuple[LaurentPoly, LSUnit]:
    """Split ``p = unit * core``.

    The core has no ``(1 - t_i)`` factor, componentwise minimal exponent 0
    and positive grlex leading coefficient.
    """
    if p.is_zero():
        raise ValueError("strip_units: zero has no unit decomposition")
    n = p.nvars
    mono = p.min_exponents()
    core = p.shift(tuple(-x for x in mono))
    clasp = []
    for i in range(n):
        core, k = _strip_clasp(core, i)
        clasp.append(k)
    sign = 1
    if core.leading_coeff() < 0:
        core = -core
        sign = -1
    return core, LSUnit(sign, mono, tuple(clasp))


def is_unit_ls(p: LaurentPoly) -> bool:
    if p.is_zero():
        return False
    return strip_units(p)[0].is_one()


def normalize_lambda(p: LaurentPoly) -> LaurentPoly:
    """Associate of ``p`` under ``±t^a``: minimal exponents 0, positive leading coefficient."""
    if p.is_zero():
        return p
    q = p.shift(tuple(-x for x in p.min_exponents()))
    return -q if q.leading_coeff() < 0 else q


# ---------------------------------------------------------------------------
# GCD: primitive PRS, recursive on variables


def _coeffs_in(p: LaurentPoly, x: int) -> Dict[int, LaurentPoly]:
    """Coefficients of ``p`` viewed as a polynomial in variable ``x``."""
    buckets: Dict[int, Dict[ExpVec, int]] = {}
    for e, c in p.terms.items():
        d = e[x]
        buckets.setdefault(d, {})[e[:x] + (0,) + e[x + 1:]] = c
    return {d: LaurentPoly(t, p.nvars, _clean=True) for d, t in buckets.items()}


def _int_gcd_poly(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.const(math.gcd(a.content(), b.content()), a.nvars)


def _content_in(p: LaurentPoly, x: int) -> LaurentPoly:
    coeffs = sorted(_coeffs_in(p, x).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
        g = _pgcd(g, c)
    return g


def _prem(a: LaurentPoly, b: LaurentPoly, x: int) -> LaurentPoly:
    db = b.degree_in(x)
    lcb = _coeffs_in(b, x)[db]
    n = a.nvars
    r = a
    while r and r.degree_in(x) >= db:
        d = r.degree_in(x)
        lcr = _coeffs_in(r, x)[d]
        e = [0] * n
        e[x] = d - db
        r = lcb * r - (lcr * b).shift(e)
    return r


def _pgcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of honest polynomials (nonnegative exponents), positive leading coefficient.

    Monomial factors are genuine here; Laurent callers remove them first.
    """
    if a.is_zero():
        return b if (b.is_zero() or b.leading_coeff() > 0) else -b
    if b.is_zero():
        return a if a.leading_coeff() > 0 else -a
    if a.is_monomial() or b.is_monomial():
        ma, mb = a.min_exponents(), b.min_exponents()
        lo = tuple(min(x, y) for x, y in zip(ma, mb))
        return _int_gcd_poly(a, b).shift(lo)
    if a == b or a == -b:
        return a if a.leading_coeff() > 0 else -a
    va, vb = set(a.variables()), set(b.variables())
    common = va | vb
    x = max(common)
    if x not in va or x not in vb:
        # one side is constant in x: gcd divides the content of the other
        if x not in va:
            return _pgcd(a, _content_in(b, x))
        return _pgcd(_content_in(a, x), b)
    ca, cb = _content_in(a, x), _content_in(b, x)
    pa, pb = divide(a, ca), divide(b, cb)
    c = _pgcd(ca, cb)
    if pa.degree_in(x) < pb.degree_in(x):
        pa, pb = pb, pa
    while pb:
        if pb.degree_in(x) == 0:
            pa = LaurentPoly.one(a.nvars)
            break
        r = _prem(pa, pb, x)
        pa = pb
        if r.is_zero():
            break
        pb = divide(r, _content_in(r, x))
    g = pa
    if g.degree_in(x) == 0:
        g = LaurentPoly.one(a.nvars)
    elif g.leading_coeff() < 0:
        g = -g
    out = c * g
    return out if out.leading_coeff() > 0 else -out


def _max_norm(p: LaurentPoly) -> int:
    return max(abs(c) for c in p.terms.values())


def _eval_var(p: LaurentPoly, x: int, value: int) -> LaurentPoly:
    out: Dict[ExpVec, int] = {}
    for e, c in p.terms.items():
        k = e[:x] + (0,) + e[x + 1:]
        out[k] = out.get(k, 0) + c * value ** e[x]
    return LaurentPoly({e: c for e, c in out.items() if c}, p.nvars, _clean=True)


def _lift(h: LaurentPoly, x: int, xi: int) -> LaurentPoly:
    """Undo ``x = xi`` by symmetric base-``xi`` expansion of every coefficient."""
    half = xi // 2
    out: Dict[ExpVec, int] = {}
    for e, c in h.terms.items():
        i = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            if d:
                k = e[:x] + (i,) + e[x + 1:]
                out[k] = d
            c = (c - d) // xi
            i += 1
    return LaurentPoly(out, h.nvars, _clean=True)


def _primitive_int(p: LaurentPoly) -> LaurentPoly:
    c = p.content()
    if p.leading_coeff() < 0:
        c = -c
    if c == 1:
        return p
    return LaurentPoly({e: v // c for e, v in p.terms.items()}, p.nvars, _clean=True)


def _heu_gcd(a: LaurentPoly, b: LaurentPoly, depth: int = 0) -> Optional[LaurentPoly]:
    """Heuristic gcd by evaluation at a large integer and base-xi lifting.

    Works on integer-primitive honest polynomials.  Any returned candidate
    has been confirmed to divide both inputs, so a non-None answer is exact;
    None means "give up", not "coprime".
    """
    vars_ = set(a.variables()) | set(b.variables())
    if not vars_:
        return LaurentPoly.const(math.gcd(a.constant_value(), b.constant_value()), a.nvars)
    x = max(vars_)
    xi = 2 * min(_max_norm(a), _max_norm(b)) + 29
    for _ in range(6):
        ae, be = _eval_var(a, x, xi), _eval_var(b, x, xi)
        if ae and be:
            if ae.variables() or be.variables():
                he = _heu_gcd(_primitive_int(ae), _primitive_int(be), depth + 1)
                if he is not None:
                    he = he.scale(math.gcd(ae.content(), be.content()))
            else:
                he = LaurentPoly.const(math.gcd(ae.constant_value(), be.constant_value()), a.nvars)
            if he is not None:
                cand = _primitive_int(_lift(he, x, xi))
                if cand and exact_div(a, cand) is not None and exact_div(b, cand) is not None:
                    return cand
        xi = xi * 73794 // 27011
    return None


def _gcd_poly(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of honest polynomials: heuristic first, primitive PRS as the fallback."""
    ca, cb = a.content(), b.content()
    pa, pb = _primitive_int(a), _primitive_int(b)
    c = math.gcd(ca, cb)
    g = _heu_gcd(pa, pb)
    if g is None:
        g = _primitive_int(_pgcd(pa, pb))
    return g.scale(c) if c != 1 else g


@lru_cache(maxsize=65536)
def gcd_lambda(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Gcd in the Laurent ring, normalized up to ``±t^a`` (see ``normalize_lambda``)."""
    p._check(q)
    if p.is_zero():
        return normalize_lambda(q)
    if q.is_zero():
        return normalize_lambda(p)
    a, b = normalize_lambda(p), normalize_lambda(q)
    if a.is_one() or b.is_one():
        return LaurentPoly.one(p.nvars)
    if len(a) > len(b):
        a, b = b, a
    if a.is_monomial():
        return LaurentPoly.const(math.gcd(a.content(), b.content()), p.nvars)
    return normalize_lambda(_gcd_poly(a, b))


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Gcd with all units of the localized ring removed (``strip_units`` core)."""
    if p.is_zero() and q.is_zero():
        return LaurentPoly.zero(p.nvars)
    if p.is_zero():
        return strip_units(q)[0]
    if q.is_zero():
        return strip_units(p)[0]
    a, b = strip_units(p)[0], strip_units(q)[0]
    if a.is_one() or b.is_one():
        return a if a.is_one() else b
    return strip_units(gcd_lambda(a, b))[0]


def gcd_many(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    g = LaurentPoly.zero(nvars)
    for p in polys:
        g = gcd(g, p)
        if g.is_one():
            break
    return g


# ---------------------------------------------------------------------------
# Text form


def _var_name(i: int, nvars: int) -> str:
    return "t" if nvars == 1 else f"t{i + 1}"


def _monomial_text(e: ExpVec, nvars: int) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        name = _var_name(i, nvars)
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def to_text(p: LaurentPoly) -> str:
    """Terms in descending grlex order, e.g. ``t1^2 - t1 + 1`` or ``3 - 2*t1*t2^-1``."""
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[e]
        mono = _monomial_text(e, p.nvars)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(t\d*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser for ``+ - * / ^ ( )`` over integers and t-variables.

    Values are (numerator, denominator) pairs of Laurent polynomials so that
    the same grammar serves polynomials and fractions.
    """

    def __init__(self, text: str, nvars: int):
        self.nvars = nvars
        self.tokens = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text: str) -> list:
        tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at position {pos}")
            num, var, op = m.groups()
            if num is not None:
                tokens.append(("num", int(num)))
            elif var is not None:
                tokens.append(("var", var))
            else:
                tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError("empty expression")
        val = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self):
        kind, tok = self.peek()
        sign = 1
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        num, den = self.term()
        if sign < 0:
            num = -num
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                n2, d2 = self.term()
                if tok == "-":
                    n2 = -n2
                if d2 == den:
                    num = num + n2
                else:
                    num, den = num * d2 + n2 * den, den * d2
            else:
                return num, den

    def term(self):
        num, den = self.factor()
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok in "*/":
                self.take()
                n2, d2 = self.factor()
                if tok == "*":
                    num, den = num * n2, den * d2
                else:
                    if n2.is_zero():
                        raise ZeroDivisionError("division by zero in expression")
                    num, den = num * d2, den * n2
            else:
                return num, den

    def factor(self):
        num, den = self.atom()
        kind, tok = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            sign = 1
            kind, tok = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                sign = -1 if tok == "-" else 1
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            k *= sign
            if k >= 0:
                num, den = num ** k, den ** k
            else:
                num, den = den ** (-k), num ** (-k)
        return num, den

    def atom(self):
        kind, tok = self.take()
        one = LaurentPoly.one(self.nvars)
        if kind == "num":
            return LaurentPoly.const(tok, self.nvars), one
        if kind == "var":
            idx = 1 if tok == "t" else int(tok[1:])
            if tok == "t" and self.nvars != 1:
                raise ValueError("bare 't' is only allowed with one variable")
            if not 1 <= idx <= self.nvars:
                raise ValueError(f"variable {tok} out of range for {self.nvars} variables")
            return LaurentPoly.var(idx - 1, self.nvars), one
        if kind == "op" and tok == "(":
            val = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return val
        if kind == "op" and tok == "-":
            num, den = self.factor()
            return -num, den
        raise ValueError(f"unexpected token {tok!r}")


def parse_fraction(text: str, nvars: int) -> Tuple[LaurentPoly, LaurentPoly]:
    num, den = _Parser(text, nvars).parse()
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    return num, den


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the polynomial text form; accepts any whitespace and parentheses."""
    num, den = parse_fraction(text, nvars)
    return divide(num, den)
