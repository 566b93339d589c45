"""Random inputs for experiments and property tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .exactlinalg import RfMatrix, rank_q
from .laurent import LaurentPoly, LSUnit
from .ratfield import RatFunc
from .seifert import BoundarySeifert, SeifertFamily, all_signs, tau, transpose_int


@dataclass(frozen=True)
class FamilyConfig:
    mu: int = 1
    n: int = 2
    lo: int = -2
    hi: int = 2
    # rank of the integer core when the family is built as P^T B P
    rank: Optional[int] = None


def _int_block(rng: random.Random, rows: int, cols: int, lo: int, hi: int):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(cols)) for _ in range(rows))


def random_family(rng: random.Random, cfg: FamilyConfig) -> SeifertFamily:
    """Family with ``A^-eps = (A^eps)^T``, which makes the assembled matrix hermitian.

    With ``cfg.rank = r`` every matrix has the form ``P^T B P`` for one fixed
    integer ``r x n`` matrix ``P``, so the assembled matrix has rank at most r.
    """
    mu, n = cfg.mu, cfg.n
    P = None
    if cfg.rank is not None:
        P = _int_block(rng, cfg.rank, n, -1, 1)
    mats = {}
    for eps in all_signs(mu):
        if -eps in mats:
            mats[eps] = transpose_int(mats[-eps])
            continue
        if P is None:
            mats[eps] = _int_block(rng, n, n, cfg.lo, cfg.hi)
        else:
            r = cfg.rank
            B = _int_block(rng, r, r, cfg.lo, cfg.hi)
            mats[eps] = tuple(tuple(sum(P[a][i] * B[a][b] * P[b][j] for a in range(r) for b in range(r))
                                    for j in range(n)) for i in range(n))
    return SeifertFamily(mu, n, mats)


def random_poly(rng: random.Random, nvars: int, terms: int = 3, span: int = 2, coeff: int = 3) -> LaurentPoly:
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(-span, span) for _ in range(nvars))
        out[e] = out.get(e, 0) + rng.randint(-coeff, coeff)
    return LaurentPoly(out, nvars)


def random_unit(rng: random.Random, nvars: int, max_power: int = 2) -> LSUnit:
    return LSUnit(rng.choice((1, -1)),
                  tuple(rng.randint(-2, 2) for _ in range(nvars)),
                  tuple(rng.randint(-max_power, max_power) for _ in range(nvars)))


def random_lambda_s(rng: random.Random, nvars: int, terms: int = 3) -> RatFunc:
    """Laurent polynomial times a random unit of the localized ring."""
    p = RatFunc.from_poly(random_poly(rng, nvars, terms))
    if rng.random() < 0.5:
        p = p * RatFunc.from_unit(random_unit(rng, nvars, 1))
    return p


def random_self_conjugate(rng: random.Random, nvars: int) -> RatFunc:
    p = random_lambda_s(rng, nvars, 2)
    return p + p.conj()


def random_vector(rng: random.Random, nvars: int, n: int, terms: int = 2) -> List[RatFunc]:
    return [RatFunc.from_poly(random_poly(rng, nvars, terms, 1, 2)) for _ in range(n)]


def random_boundary(rng: random.Random, genera: Sequence[int], lo: int = -2, hi: int = 2) -> BoundarySeifert:
    """Random boundary Seifert matrix with symmetric off-diagonal blocks."""
    g = 2 * sum(genera)
    A = [[rng.randint(lo, hi) for _ in range(g)] for _ in range(g)]
    start, bounds = 0, []
    for gi in genera:
        bounds.append(range(start, start + 2 * gi))
        start += 2 * gi
    for i in range(len(bounds)):
        for j in range(i + 1, len(bounds)):
            for r in bounds[i]:
                for c in bounds[j]:
                    A[c][r] = A[r][c]
    return BoundarySeifert(len(genera), tuple(genera), tuple(tuple(r) for r in A))


def closed_form_invertible(b: BoundarySeifert) -> bool:
    nv = b.n_components
    A = RfMatrix.from_ints(b.A, nv)
    M = A - tau(b.genera, nv) @ A.T
    return rank_q(M) == b.size


__all__ = [
    "FamilyConfig",
    "random_family",
    "random_poly",
    "random_unit",
    "random_lambda_s",
    "random_self_conjugate",
    "random_vector",
    "random_boundary",
    "closed_form_invertible",
]
