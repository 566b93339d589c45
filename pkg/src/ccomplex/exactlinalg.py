"""Exact dense linear algebra over Q(t1, ..., tmu).

Every routine clears denominators row by row and runs a fraction-free
(Bareiss) Gauss-Jordan elimination over the Laurent ring, so intermediate
entries are minors of the scaled matrix and the only gcds are taken when the
final answers are turned back into reduced fractions.  Pivots are chosen as
the entry with the fewest terms, ties broken in row-major order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, divide, gcd, gcd_lambda, strip_units
from .ratfield import RatFunc, in_lambda_s

MAX_MINOR_SIZE = 10


class SingularMatrixError(ArithmeticError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class RfMatrix:
    """Immutable rows x cols matrix of ``RatFunc`` entries."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries: Sequence[Sequence], nvars: int, cols: Optional[int] = None):
        data = tuple(tuple(RatFunc.coerce(x, nvars) for x in row) for row in entries)
        self.rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.cols = cols
        self.nvars = nvars
        self.entries = data

    @classmethod
    def zeros(cls, rows: int, cols: int, nvars: int) -> "RfMatrix":
        z = RatFunc.zero(nvars)
        return cls([[z] * cols for _ in range(rows)], nvars, cols)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "RfMatrix":
        z, o = RatFunc.zero(nvars), RatFunc.one(nvars)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], nvars, n)

    @classmethod
    def diag(cls, values: Sequence, nvars: int) -> "RfMatrix":
        n = len(values)
        z = RatFunc.zero(nvars)
        return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)], nvars, n)

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], nvars: int) -> "RfMatrix":
        return cls([[RatFunc.const(int(x), nvars) for x in row] for row in rows], nvars)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> RatFunc:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[RatFunc, ...]:
        return self.entries[i]

    def column(self, j: int) -> List[RatFunc]:
        return [row[j] for row in self.entries]

    def transpose(self) -> "RfMatrix":
        return RfMatrix([list(col) for col in zip(*self.entries)] if self.rows else [],
                        self.nvars, self.rows)

    @property
    def T(self) -> "RfMatrix":
        return self.transpose()

    def conj(self) -> "RfMatrix":
        return RfMatrix([[x.conj() for x in row] for row in self.entries], self.nvars, self.cols)

    def conj_transpose(self) -> "RfMatrix":
        return self.conj().transpose()

    def map(self, f) -> "RfMatrix":
        return RfMatrix([[f(x) for x in row] for row in self.entries], self.nvars, self.cols)

    def scale(self, c) -> "RfMatrix":
        c = RatFunc.coerce(c, self.nvars)
        return self.map(lambda x: x * c)

    def __add__(self, other: "RfMatrix") -> "RfMatrix":
        self._same_shape(other)
        return RfMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                        self.nvars, self.cols)

    def __sub__(self, other: "RfMatrix") -> "RfMatrix":
        self._same_shape(other)
        return RfMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                        self.nvars, self.cols)

    def __neg__(self) -> "RfMatrix":
        return self.map(lambda x: -x)

    def __matmul__(self, other: "RfMatrix") -> "RfMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.column_list()
        out = [[_dot(row, col, self.nvars) for col in cols] for row in self.entries]
        return RfMatrix(out, self.nvars, other.cols)

    def column_list(self) -> List[List[RatFunc]]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence[RatFunc]) -> List[RatFunc]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [_dot(row, v, self.nvars) for row in self.entries]

    def _same_shape(self, other: "RfMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RfMatrix":
        return RfMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars, len(cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.first_nonhermitian() is None

    def first_nonhermitian(self) -> Optional[Tuple[int, int]]:
        """First (i, j), i <= j, with ``H[i][j] != conj(H[j][i])``."""
        if not self.is_square():
            return (0, 0)
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self.entries[i][j] != self.entries[j][i].conj():
                    return (i, j)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RfMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def tolist(self) -> List[List[RatFunc]]:
        return [list(r) for r in self.entries]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"RfMatrix[{self.rows}x{self.cols}]({body})"


def _dot(a: Sequence[RatFunc], b: Sequence[RatFunc], nvars: int) -> RatFunc:
    # group by denominator so polynomial parts are summed without gcds
    buckets = {}
    for x, y in zip(a, b):
        if x.is_zero() or y.is_zero():
            continue
        p = x * y
        buckets[p.den] = buckets.get(p.den, LaurentPoly.zero(nvars)) + p.num
    total = RatFunc.zero(nvars)
    for den, num in buckets.items():
        total = total + RatFunc(num, den)
    return total


def block_diag(mats: Sequence[RfMatrix], nvars: int) -> RfMatrix:
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    z = RatFunc.zero(nvars)
    out = [[z] * c for _ in range(n)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return RfMatrix(out, nvars, c)


# ---------------------------------------------------------------------------
# fraction-free elimination


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == b or b.is_one():
        return a
    if a.is_one():
        return b
    return divide(a * b, gcd_lambda(a, b))


def _scaled_rows(rows: Sequence[Sequence[RatFunc]]) -> Tuple[List[List[LaurentPoly]], List[LaurentPoly]]:
    """Multiply each row by the lcm of its denominators; return rows and the factors."""
    out, factors = [], []
    for row in rows:
        den = None
        for x in row:
            if not x.is_zero():
                den = x.den if den is None else _lcm(den, x.den)
        if den is None or den.is_one():
            out.append([x.num for x in row])
            factors.append(den if den is not None else None)
            continue
        out.append([divide(den, x.den) * x.num if not x.is_zero() else x.num for x in row])
        factors.append(den)
    nvars = rows[0][0].nvars if rows and rows[0] else 1
    return out, [f if f is not None else LaurentPoly.one(nvars) for f in factors]


@dataclass
class _Elimination:
    rows: List[List[LaurentPoly]]
    pivots: List[Tuple[int, int]]  # (row, column) after row swaps
    den: LaurentPoly  # last pivot; every pivot entry equals it after Gauss-Jordan
    sign: int  # parity of row/column swaps, for determinants


def _fraction_free(rows: List[List[LaurentPoly]], pivot_cols: int, nvars: int,
                   jordan: bool) -> _Elimination:
    """Bareiss elimination on ``rows`` using only the first ``pivot_cols`` columns as pivots.

    With ``jordan`` the rows above each pivot are cleared as well; divisions
    stay exact because the update is the standard fraction-free Gauss-Jordan
    recurrence.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    prev = LaurentPoly.one(nvars)
    pivots: List[Tuple[int, int]] = []
    used_cols = set()
    sign = 1
    r = 0
    while r < m:
        best = None
        for i in range(r, m):
            row = a[i]
            for j in range(pivot_cols):
                if j in used_cols:
                    continue
                x = row[j]
                if x.is_zero():
                    continue
                size = len(x)
                if best is None or size < best[0]:
                    best = (size, i, j)
                    if size == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            a[r], a[pi] = a[pi], a[r]
            sign = -sign
        # a column "swap" happens whenever pivot columns are taken out of order
        sign *= (-1) ** sum(1 for c in used_cols if c > pj)
        piv = a[r][pj]
        prow = a[r]
        targets = range(m) if jordan else range(r + 1, m)
        for k in targets:
            if k == r:
                continue
            row = a[k]
            f = row[pj]
            if f.is_zero():
                if prev.is_one():
                    a[k] = [piv * x for x in row]
                else:
                    a[k] = [divide(piv * x, prev) if x else x for x in row]
                continue
            new = []
            for c in range(ncols):
                x = row[c]
                y = prow[c]
                if c == pj:
                    new.append(LaurentPoly.zero(nvars))
                    continue
                v = piv * x if x else x
                if y:
                    v = v - f * y
                if not prev.is_one() and v:
                    v = divide(v, prev)
                new.append(v)
            a[k] = new
        pivots.append((r, pj))
        used_cols.add(pj)
        prev = piv
        r += 1
    return _Elimination(a, pivots, prev, sign)


def rank_q(M: RfMatrix) -> int:
    """Rank over the fraction field."""
    if M.rows == 0 or M.cols == 0:
        return 0
    rows, _ = _scaled_rows(M.entries)
    return len(_fraction_free(rows, M.cols, M.nvars, jordan=False).pivots)


def det_q(M: RfMatrix) -> RatFunc:
    """Determinant by fraction-free elimination."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return RatFunc.one(M.nvars)
    rows, factors = _scaled_rows(M.entries)
    el = _fraction_free(rows, n, M.nvars, jordan=False)
    if len(el.pivots) < n:
        return RatFunc.zero(M.nvars)
    scale = LaurentPoly.one(M.nvars)
    for f in factors:
        scale = scale * f
    val = el.den if el.sign > 0 else -el.den
    return RatFunc(val, scale)


def _poly_det(rows: List[List[LaurentPoly]], nvars: int) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(nvars)
    el = _fraction_free(rows, n, nvars, jordan=False)
    if len(el.pivots) < n:
        return LaurentPoly.zero(nvars)
    return el.den if el.sign > 0 else -el.den


def _solve_many(M: RfMatrix, rhs: List[List[RatFunc]]):
    """Solve ``M X = B`` for the columns of B (given as a list of columns).

    Returns (solutions, rank) where each solution is a list or None when
    inconsistent.  Free variables are set to zero.
    """
    k = len(rhs)
    aug = [list(M.entries[i]) + [col[i] for col in rhs] for i in range(M.rows)]
    rows, _ = _scaled_rows(aug)
    el = _fraction_free(rows, M.cols, M.nvars, jordan=True)
    rank = len(el.pivots)
    sols = []
    for c in range(k):
        cc = M.cols + c
        if any(not el.rows[i][cc].is_zero() for i in range(rank, M.rows)):
            sols.append(None)
            continue
        x = [RatFunc.zero(M.nvars)] * M.cols
        for (r, pc) in el.pivots:
            x[pc] = RatFunc(el.rows[r][cc], el.den)
        sols.append(x)
    return sols, rank, el, rows


def _verify_solution(M: RfMatrix, x: Sequence[RatFunc], b: Sequence[RatFunc]) -> bool:
    return all(v == w for v, w in zip(M.apply(x), b))


def solve_q(M: RfMatrix, b: Sequence) -> Optional[List[RatFunc]]:
    """A particular solution of ``M x = b`` over Q, or None if inconsistent.

    The returned solution is re-checked exactly.
    """
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.rows}")
    b = [RatFunc.coerce(x, M.nvars) for x in b]
    if M.cols == 0:
        return [] if all(x.is_zero() for x in b) else None
    (x,), _, _, _ = _solve_many(M, [b])
    if x is not None and not _verify_solution(M, x, b):
        raise AssertionError("solve_q: back-substitution check failed")
    return x


def inverse_q(M: RfMatrix) -> RfMatrix:
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    if n == 0:
        return M
    eye = RfMatrix.identity(n, M.nvars)
    sols, rank, _, _ = _solve_many(M, eye.column_list())
    if rank < n:
        raise SingularMatrixError(rank, n)
    inv = RfMatrix([list(r) for r in zip(*sols)], M.nvars, n)
    if M @ inv != eye:
        raise AssertionError("inverse_q: M @ M^-1 != I")
    return inv


def nullspace_q(M: RfMatrix) -> List[List[RatFunc]]:
    """Basis of the right kernel over Q; vectors have Laurent polynomial entries."""
    if M.cols == 0:
        return []
    if M.rows == 0:
        return RfMatrix.identity(M.cols, M.nvars).column_list()
    rows, _ = _scaled_rows(M.entries)
    el = _fraction_free(rows, M.cols, M.nvars, jordan=True)
    pivot_cols = {pc: r for r, pc in el.pivots}
    basis = []
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        v = [LaurentPoly.zero(M.nvars)] * M.cols
        v[f] = el.den
        for r, pc in el.pivots:
            v[pc] = -el.rows[r][f]
        basis.append(_primitive(v))
    return basis


def _primitive(v: List[LaurentPoly]) -> List[RatFunc]:
    """Divide a polynomial vector by the gcd of its entries."""
    nvars = v[0].nvars
    g = LaurentPoly.zero(nvars)
    for x in v:
        if not x.is_zero():
            g = gcd_lambda(g, x)
            if g.is_one():
                break
    if g.is_zero() or g.is_one():
        return [RatFunc.from_poly(x) for x in v]
    return [RatFunc.from_poly(divide(x, g)) for x in v]


def minors(M: RfMatrix, k: int):
    """Yield (row indices, column indices, minor) for all k x k minors, as RatFunc."""
    rows, factors = _scaled_rows(M.entries)
    for ri in itertools.combinations(range(M.rows), k):
        scale = LaurentPoly.one(M.nvars)
        for i in ri:
            scale = scale * factors[i]
        for ci in itertools.combinations(range(M.cols), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            yield ri, ci, RatFunc(_poly_det(sub, M.nvars), scale)


def minors_gcd(M: RfMatrix, k: int) -> LaurentPoly:
    """Gcd of all k x k minors, normalized up to units of the localized ring.

    Entries must lie in the localized ring.  ``k = 0`` gives 1.
    """
    nv = M.nvars
    if not 0 <= k <= min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    for row in M.entries:
        for x in row:
            if not in_lambda_s(x):
                raise ValueError(f"entry {x} is not in the localized ring")
    if k == 0:
        return LaurentPoly.one(nv)
    if max(M.rows, M.cols) > MAX_MINOR_SIZE:
        raise ValueError(f"minor enumeration limited to matrices of size <= {MAX_MINOR_SIZE}")
    # unit denominators only change minors by units, so clearing them is harmless
    rows, _ = _scaled_rows(M.entries)
    g = LaurentPoly.zero(nv)
    for ri in itertools.combinations(range(M.rows), k):
        for ci in itertools.combinations(range(M.cols), k):
            d = _poly_det([[rows[i][j] for j in ci] for i in ri], nv)
            if d.is_zero():
                continue
            g = gcd(g, d)
            if g.is_one():
                return g
    return g if not g.is_zero() else LaurentPoly.zero(nv)


def cofactor_det(M: RfMatrix) -> RatFunc:
    """Laplace expansion along the first row.  Exponential; for cross-checks only."""
    n = M.rows
    if n == 0:
        return RatFunc.one(M.nvars)
    if n == 1:
        return M.entries[0][0]
    total = RatFunc.zero(M.nvars)
    for j in range(n):
        a = M.entries[0][j]
        if a.is_zero():
            continue
        sub = M.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = a * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


__all__ = [
    "RfMatrix",
    "SingularMatrixError",
    "block_diag",
    "rank_q",
    "det_q",
    "solve_q",
    "inverse_q",
    "nullspace_q",
    "minors",
    "minors_gcd",
    "cofactor_det",
]
