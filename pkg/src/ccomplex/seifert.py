"""Generalized Seifert matrices and the hermitian matrices built from them.

A family holds one integer matrix per sign vector in {+1,-1}^mu.  The
assembled matrix is

    H = sum over eps of prod_i (1 - t_i^eps_i) * A^eps,

which is hermitian for families coming from C-complexes.  Only the
hermitian property of ``H`` is enforced; the family itself is not checked
for any further relations.

Boundary links get their own input type: one square matrix ``A`` whose
blocks are indexed by components, and the matrix

    H = u*conj(u) * (I - tau)^-1 * (A - tau A^T),   u = prod_j (1 - t_j).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from .errors import BlockSymmetryError, NonHermitianError, ValidationError
from .exactlinalg import RfMatrix, SingularMatrixError, inverse_q
from .laurent import LaurentPoly
from .ratfield import QmodLS, RatFunc, in_lambda_s

IntMatrix = Tuple[Tuple[int, ...], ...]


def _int_matrix(rows, what: str) -> IntMatrix:
    out = []
    for r, row in enumerate(rows):
        vals = []
        for c, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError(f"{what}: entry ({r + 1},{c + 1}) is not an integer: {x!r}")
            vals.append(x)
        out.append(tuple(vals))
    return tuple(out)


def _check_square(m: IntMatrix, n: int, what: str) -> None:
    if len(m) != n or any(len(row) != n for row in m):
        shape = f"{len(m)}x{len(m[0]) if m else 0}"
        raise ValidationError(f"{what}: expected a {n}x{n} matrix, got {shape}")


def transpose_int(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


# ---------------------------------------------------------------------------
# Sign vectors


@dataclass(frozen=True, order=True)
class SignVec:
    signs: Tuple[int, ...]

    def __post_init__(self):
        if not all(s in (1, -1) for s in self.signs):
            raise ValidationError(f"sign vector entries must be ±1: {self.signs}")

    @classmethod
    def parse(cls, text: str) -> "SignVec":
        """``"+-"`` style key; the unicode minus is accepted too."""
        table = {"+": 1, "-": -1, "−": -1}
        try:
            return cls(tuple(table[ch] for ch in text))
        except KeyError:
            raise ValidationError(f"bad sign key {text!r}: use only '+' and '-'") from None

    def __len__(self) -> int:
        return len(self.signs)

    def __neg__(self) -> "SignVec":
        return SignVec(tuple(-s for s in self.signs))

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def all_signs(mu: int) -> List[SignVec]:
    return [SignVec(s) for s in itertools.product((1, -1), repeat=mu)]


def sign_factor(eps: SignVec) -> LaurentPoly:
    """``prod_i (1 - t_i^eps_i)``."""
    mu = len(eps)
    out = LaurentPoly.one(mu)
    for i, s in enumerate(eps.signs):
        e = [0] * mu
        e[i] = s
        out = out * (LaurentPoly.one(mu) - LaurentPoly.monomial(e, mu))
    return out


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class SeifertFamily:
    mu: int
    n: int
    mats: Mapping[SignVec, IntMatrix]
    label: str = ""

    def __post_init__(self):
        if self.mu < 1:
            raise ValidationError("a family needs at least one color")
        if self.n < 0:
            raise ValidationError("matrix size must be nonnegative")
        mats = {}
        for key, m in self.mats.items():
            eps = key if isinstance(key, SignVec) else (
                SignVec.parse(key) if isinstance(key, str) else SignVec(tuple(key)))
            if len(eps) != self.mu:
                raise ValidationError(f"sign key {eps} has length {len(eps)}, expected {self.mu}")
            if eps in mats:
                raise ValidationError(f"duplicate sign key {eps}")
            m = _int_matrix(m, f"matrix {eps}")
            _check_square(m, self.n, f"matrix {eps}")
            mats[eps] = m
        missing = [str(e) for e in all_signs(self.mu) if e not in mats]
        if missing:
            raise ValidationError(f"missing sign keys: {', '.join(missing)}")
        object.__setattr__(self, "mats", dict(sorted(mats.items(), reverse=True)))

    @classmethod
    def from_knot(cls, A: Sequence[Sequence[int]], label: str = "") -> "SeifertFamily":
        """Classical Seifert matrix ``A``: ``A^- = A`` and ``A^+ = A^T``."""
        A = _int_matrix(A, "Seifert matrix")
        _check_square(A, len(A), "Seifert matrix")
        return cls(1, len(A), {SignVec((-1,)): A, SignVec((1,)): transpose_int(A)}, label)


@dataclass(frozen=True)
class CMatrix:
    """A hermitian square matrix over the localized ring in ``mu`` variables."""

    mu: int
    n: int
    entries: RfMatrix

    def __post_init__(self):
        M = self.entries
        if M.shape != (self.n, self.n):
            raise ValidationError(f"expected a {self.n}x{self.n} matrix, got {M.shape[0]}x{M.shape[1]}")
        if M.nvars != self.mu:
            raise ValidationError(f"matrix has {M.nvars} variables, expected {self.mu}")
        for i in range(self.n):
            for j in range(self.n):
                if not in_lambda_s(M[i, j]):
                    raise ValidationError(f"entry ({i + 1},{j + 1}) = {M[i, j]} is not in the localized ring")
        bad = M.first_nonhermitian()
        if bad is not None:
            raise NonHermitianError(*bad)

    @classmethod
    def of(cls, entries: RfMatrix) -> "CMatrix":
        return cls(entries.nvars, entries.rows, entries)

    @classmethod
    def empty(cls, mu: int) -> "CMatrix":
        return cls(mu, 0, RfMatrix.zeros(0, 0, mu))

    def __getitem__(self, ij) -> RatFunc:
        return self.entries[ij]


def assemble(f: SeifertFamily) -> CMatrix:
    H = [[LaurentPoly.zero(f.mu) for _ in range(f.n)] for _ in range(f.n)]
    for eps, A in f.mats.items():
        c = sign_factor(eps)
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x:
                    H[i][j] = H[i][j] + c.scale(x)
    M = RfMatrix([[RatFunc.from_poly(p) for p in row] for row in H], f.mu, cols=f.n)
    return CMatrix(f.mu, f.n, M)


def knot_c_matrix(A: Sequence[Sequence[int]]) -> CMatrix:
    """``(1 - t) A^T + (1 - t^-1) A``."""
    return assemble(SeifertFamily.from_knot(A))


# ---------------------------------------------------------------------------
# Boundary links


def _blocks(genera: Sequence[int]) -> List[range]:
    out, start = [], 0
    for g in genera:
        out.append(range(start, start + 2 * g))
        start += 2 * g
    return out


@dataclass(frozen=True)
class BoundarySeifert:
    n_components: int
    genera: Tuple[int, ...]
    A: IntMatrix
    label: str = ""

    def __post_init__(self):
        genera = tuple(self.genera)
        if len(genera) != self.n_components or self.n_components < 1:
            raise ValidationError(f"need one genus per component ({self.n_components} components, "
                                  f"{len(genera)} genera)")
        if any(isinstance(g, bool) or not isinstance(g, int) or g < 0 for g in genera):
            raise ValidationError(f"genera must be nonnegative integers: {genera}")
        A = _int_matrix(self.A, "boundary Seifert matrix")
        _check_square(A, 2 * sum(genera), "boundary Seifert matrix")
        blocks = _blocks(genera)
        for i, j in itertools.combinations(range(len(blocks)), 2):
            for r in blocks[i]:
                for c in blocks[j]:
                    if A[r][c] != A[c][r]:
                        raise BlockSymmetryError(i, j)
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "A", A)

    @property
    def size(self) -> int:
        return 2 * sum(self.genera)

    def block_ranges(self) -> List[range]:
        return _blocks(self.genera)


def tau(genera: Sequence[int], nvars: int = None) -> RfMatrix:
    """Block diagonal matrix with blocks ``t_i * I`` of size ``2 g_i``."""
    nv = nvars or max(len(genera), 1)
    diag = []
    for i, g in enumerate(genera):
        diag += [RatFunc.from_poly(LaurentPoly.var(i, nv))] * (2 * g)
    return RfMatrix.diag(diag, nv) if diag else RfMatrix.zeros(0, 0, nv)


def u_factor(nvars: int, indices: Iterable[int] = None) -> LaurentPoly:
    """``prod (1 - t_i)`` over the given variable indices (all by default)."""
    out = LaurentPoly.one(nvars)
    for i in (range(nvars) if indices is None else indices):
        out = out * LaurentPoly.one_minus_var(i, nvars)
    return out


def boundary_matrix(b: BoundarySeifert) -> CMatrix:
    nv = b.n_components
    m = b.size
    A = RfMatrix.from_ints(b.A, nv) if m else RfMatrix.zeros(0, 0, nv)
    T = tau(b.genera, nv)
    u = RatFunc.from_poly(u_factor(nv))
    uu = u * u.conj()
    # I - tau is diagonal, so its inverse is entrywise
    inv = RfMatrix.diag([(RatFunc.one(nv) - T[k, k]).inverse() for k in range(m)], nv) if m else T
    H = (inv @ (A - T @ A.T)).scale(uu)
    return CMatrix(nv, m, H)


def closed_form_matrix(b: BoundarySeifert) -> RfMatrix:
    """``(A - tau A^T)^-1 (tau - I)``; raises SingularMatrixError when not invertible."""
    nv = b.n_components
    A = RfMatrix.from_ints(b.A, nv)
    T = tau(b.genera, nv)
    return inverse_q(A - T @ A.T) @ (T - RfMatrix.identity(b.size, nv))


def boundary_pairing_value(b: BoundarySeifert, a: Sequence, c: Sequence, closed: RfMatrix = None) -> QmodLS:
    """Class of ``a^T (A - tau A^T)^-1 (tau - I) conj(c)`` in Q / Lambda_S.

    ``closed`` may carry a precomputed ``closed_form_matrix(b)``.
    """
    nv = b.n_components
    a = [RatFunc.coerce(x, nv) for x in a]
    c = [RatFunc.coerce(x, nv) for x in c]
    if len(a) != b.size or len(c) != b.size:
        raise ValidationError(f"vectors must have length {b.size}")
    for x in a + c:
        if not in_lambda_s(x):
            raise ValidationError(f"vector entry {x} is not in the localized ring")
    if closed is None:
        closed = closed_form_matrix(b)
    Mc = closed.apply([x.conj() for x in c])
    total = RatFunc.zero(nv)
    for x, y in zip(a, Mc):
        total = total + x * y
    return QmodLS(total)


__all__ = [
    "SignVec",
    "all_signs",
    "sign_factor",
    "SeifertFamily",
    "CMatrix",
    "assemble",
    "knot_c_matrix",
    "BoundarySeifert",
    "tau",
    "u_factor",
    "boundary_matrix",
    "closed_form_matrix",
    "boundary_pairing_value",
    "SingularMatrixError",
]
