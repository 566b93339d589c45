"""Torsion order and the linking form presented by a hermitian matrix.

For a hermitian ``H`` over the localized ring, ``conj(H)`` presents a module
``M``.  A vector ``v`` is torsion in ``M`` exactly when it lies in the column
space of ``conj(H)`` over the fraction field.  With ``delta`` the torsion
order and ``conj(H) v0 = delta v``, ``conj(H) w0 = delta w``, the form is

    lam(v, w) = v0^T H conj(w0) / delta^2   in Q / Lambda_S.

The solutions ``v0``, ``w0`` are taken over the fraction field: two of them
differ by a kernel vector ``k`` of ``conj(H)``, and ``k^T H = (conj(H) k)^T = 0``,
so the value does not depend on the choice.  The Blanchfield sign
convention is ``-lam``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, NotTorsionError, SymmetrizationError, ValidationError
from .exactlinalg import RfMatrix, SingularMatrixError, _solve_many, det_q, inverse_q, minors_gcd, nullspace_q, rank_q
from .laurent import LaurentPoly, LSUnit, conj, strip_units
from .ratfield import QmodLS, RatFunc, in_lambda_s
from .seifert import CMatrix

SIGNS = ("lambda", "bl")


@dataclass(frozen=True)
class TorsionData:
    H: CMatrix
    rho: int
    delta: LaurentPoly
    free_rank: int
    # delta = delta_unit * delta_core with the core free of (1 - t_i) factors
    delta_core: LaurentPoly = field(compare=False)
    delta_unit: LSUnit = field(compare=False)

    @property
    def nvars(self) -> int:
        return self.H.mu

    @property
    def n(self) -> int:
        return self.H.n


def symmetrize(core: LaurentPoly) -> Tuple[LaurentPoly, LSUnit]:
    """Multiply ``core`` by a unit so that the result is conjugation invariant.

    ``core`` must satisfy ``conj(core) = s * t^a * core`` for a sign ``s``.
    Each factor ``(1 - t_i)`` flips ``s`` and lowers ``a_i`` by one, so one is
    used for each odd ``a_i``; a monomial then balances the exponents.  If the
    sign is still negative no unit works and SymmetrizationError is raised.
    """
    n = core.nvars
    cc = conj(core)
    # lowest exponents of conj(core) are minus the highest of core
    a = tuple(-hi - lo for hi, lo in zip(core.max_exponents(), core.min_exponents()))
    shifted = cc.shift(tuple(-x for x in a))
    if shifted == core:
        sign = 1
    elif shifted == -core:
        sign = -1
    else:
        raise SymmetrizationError(f"{core} is not conjugation symmetric up to a unit")
    clasp = [0] * n
    a = list(a)
    for i in range(n):
        if a[i] % 2:
            clasp[i] = 1
            sign = -sign
            a[i] -= 1
    if sign < 0:
        raise SymmetrizationError(
            f"cannot symmetrize {core}: conj(core) = -t^a core with a = {tuple(a)} after clasp factors")
    unit = LSUnit(1, tuple(x // 2 for x in a), tuple(clasp))
    return unit.to_poly() * core, unit


def torsion_order(H: CMatrix) -> TorsionData:
    nv, n = H.mu, H.n
    rho = rank_q(H.entries) if n else 0
    if rho == 0:
        one = LaurentPoly.one(nv)
        return TorsionData(H, 0, one, n, one, LSUnit.one(nv))
    if rho == n:
        d = det_q(H.entries)
        core, _ = strip_units(d.num)
        # the denominator of det is a unit for entries in the localized ring
    else:
        core = minors_gcd(H.entries, rho)
    if core.is_zero():
        raise AssertionError("torsion order vanished although rank is positive")
    delta, unit = symmetrize(core)
    return TorsionData(H, rho, delta, n - rho, core, unit)


def alexander_tor(H: CMatrix) -> LaurentPoly:
    return torsion_order(H).delta


# ---------------------------------------------------------------------------
# Torsion membership


def _vector(x: Sequence, nvars: int, n: int, what: str = "vector") -> List[RatFunc]:
    if len(x) != n:
        raise ValidationError(f"{what} has length {len(x)}, expected {n}")
    out = [RatFunc.coerce(e, nvars) for e in x]
    for k, e in enumerate(out):
        if not in_lambda_s(e):
            raise ValidationError(f"{what} entry {k + 1} = {e} is not in the localized ring")
    return out


def torsion_certificate(H: CMatrix, v: Sequence) -> Tuple[int, int]:
    """(rank of conj(H), rank of conj(H) with v appended as a column)."""
    C = H.entries.conj()
    aug = RfMatrix([list(C.row(i)) + [RatFunc.coerce(v[i], H.mu)] for i in range(H.n)], H.mu, H.n + 1)
    return rank_q(C), rank_q(aug)


def is_torsion(H: CMatrix, v: Sequence) -> bool:
    v = _vector(v, H.mu, H.n)
    if all(x.is_zero() for x in v):
        return True
    if H.n == 0:
        return True
    (sol,), _, _, _ = _solve_many(H.entries.conj(), [v])
    return sol is not None


def _not_torsion(H: CMatrix, v: Sequence, name: str) -> NotTorsionError:
    r, ra = torsion_certificate(H, v)
    return NotTorsionError(
        f"{name} is not torsion: rank conj(H) = {r} but rank [conj(H) | {name}] = {ra}", r, ra)


def solve_presentation(td: TorsionData, vectors: Sequence[Sequence]) -> List[List[RatFunc]]:
    """Q-solutions ``x0`` of ``conj(H) x0 = delta x`` for each vector ``x``.

    Raises NotTorsionError naming the first offending vector.
    """
    H = td.H
    nv = H.mu
    d = RatFunc.from_poly(td.delta)
    rhs = [[d * e for e in _vector(x, nv, H.n)] for x in vectors]
    if H.n == 0:
        return [[] for _ in vectors]
    C = H.entries.conj()
    sols, _, _, _ = _solve_many(C, rhs)
    for k, (s, b) in enumerate(zip(sols, rhs)):
        if s is None:
            raise _not_torsion(H, vectors[k], ["v", "w"][k] if len(vectors) == 2 else f"vector {k + 1}")
        if C.apply(s) != b:
            raise AssertionError("presentation solve failed its exact check")
    return sols


def raw_value(td: TorsionData, v0: Sequence[RatFunc], w0: Sequence[RatFunc]) -> RatFunc:
    """``v0^T H conj(w0) / delta^2`` as an element of Q (no reduction)."""
    nv = td.nvars
    Hw = td.H.entries.apply([x.conj() for x in w0])
    total = RatFunc.zero(nv)
    for x, y in zip(v0, Hw):
        if not x.is_zero() and not y.is_zero():
            total = total + x * y
    d = RatFunc.from_poly(td.delta)
    return total / (d * d)


def _signed(value: RatFunc, sign: str) -> RatFunc:
    if sign not in SIGNS:
        raise ValueError(f"sign must be one of {SIGNS}, got {sign!r}")
    return -value if sign == "bl" else value


def pair(td: TorsionData, v: Sequence, w: Sequence, sign: str = "lambda") -> QmodLS:
    """The class of ``lam(v, w)``; ``sign='bl'`` returns ``-lam``."""
    nv = td.nvars
    vv = _vector(v, nv, td.n, "v")
    ww = _vector(w, nv, td.n, "w")
    if all(x.is_zero() for x in vv) or all(x.is_zero() for x in ww):
        # still insist on torsion for the other argument
        for name, x in (("v", vv), ("w", ww)):
            if not is_torsion(td.H, x):
                raise _not_torsion(td.H, x, name)
        return QmodLS.zero(nv)
    v0, w0 = solve_presentation(td, [vv, ww])
    return QmodLS(_signed(raw_value(td, v0, w0), sign))


def fast_pair(H: CMatrix, v: Sequence, w: Sequence, inverse: RfMatrix = None) -> QmodLS:
    """``v^T H^-1 conj(w)`` for nonsingular ``H``."""
    inv = inverse if inverse is not None else inverse_q(H.entries)
    vv = _vector(v, H.mu, H.n, "v")
    ww = _vector(w, H.mu, H.n, "w")
    cw = inv.apply([x.conj() for x in ww])
    total = RatFunc.zero(H.mu)
    for x, y in zip(vv, cw):
        total = total + x * y
    return QmodLS(total)


# ---------------------------------------------------------------------------
# Whole forms


@dataclass(frozen=True)
class BlForm:
    source: TorsionData
    kind: str
    values: tuple
    sign: str = "bl"

    def __post_init__(self):
        if self.kind not in ("full-matrix", "sampled"):
            raise ValueError(f"unknown form kind {self.kind!r}")
        d = RatFunc.from_poly(self.source.delta)
        for f in self._classes():
            if not in_lambda_s(d * f.rep):
                raise DomainError(f"value {f} is not killed by delta = {self.source.delta}")

    def _classes(self):
        if self.kind == "full-matrix":
            for row in self.values:
                yield from row
        else:
            for _, _, f in self.values:
                yield f


def blanchfield_matrix(td: TorsionData, sign: str = "bl") -> BlForm:
    """Matrix of ``-lam(e_i, e_j) = -(H^-1)_ij`` (or ``+`` with sign='lambda')."""
    if td.rho < td.n:
        raise SingularMatrixError(td.rho, td.n)
    inv = inverse_q(td.H.entries) if td.n else td.H.entries
    vals = tuple(tuple(QmodLS(_signed(inv[i, j], sign)) for j in range(td.n)) for i in range(td.n))
    return BlForm(td, "full-matrix", vals, sign)


def sampled_form(td: TorsionData, samples: Sequence[Sequence], sign: str = "bl") -> BlForm:
    vals = []
    for v in samples:
        for w in samples:
            vals.append((tuple(v), tuple(w), pair(td, v, w, sign)))
    return BlForm(td, "sampled", tuple(vals), sign)


# ---------------------------------------------------------------------------
# Sample generation


def torsion_basis(H: CMatrix) -> List[List[RatFunc]]:
    """Polynomial vectors spanning the torsion part over Q.

    The column space of conj(H) is the common kernel of the transposes of
    the kernel vectors of H (for hermitian H, conj(H)^T = H).
    """
    n, nv = H.n, H.mu
    if n == 0:
        return []
    ker = nullspace_q(H.entries)
    if not ker:
        return RfMatrix.identity(n, nv).column_list()
    K = RfMatrix([list(k) for k in ker], nv, n)
    return nullspace_q(K)


def random_torsion_vectors(H: CMatrix, count: int, rng: random.Random, basis=None,
                           max_coeff: int = 2) -> List[List[RatFunc]]:
    """Random small Laurent combinations of ``torsion_basis(H)``."""
    nv = H.mu
    basis = torsion_basis(H) if basis is None else basis
    out = []
    for _ in range(count):
        vec = [RatFunc.zero(nv)] * H.n
        for b in basis:
            e = [rng.randint(-1, 1) for _ in range(nv)]
            c = LaurentPoly.monomial(e, nv, rng.randint(-max_coeff, max_coeff))
            if rng.random() < 0.3:
                e2 = [rng.randint(-1, 1) for _ in range(nv)]
                c = c + LaurentPoly.monomial(e2, nv, rng.randint(-max_coeff, max_coeff))
            if c.is_zero():
                continue
            cf = RatFunc.from_poly(c)
            vec = [x + cf * y for x, y in zip(vec, b)]
        out.append(vec)
    return out


__all__ = [
    "TorsionData",
    "BlForm",
    "symmetrize",
    "torsion_order",
    "alexander_tor",
    "is_torsion",
    "torsion_certificate",
    "solve_presentation",
    "raw_value",
    "pair",
    "fast_pair",
    "blanchfield_matrix",
    "sampled_form",
    "torsion_basis",
    "random_torsion_vectors",
]
