"""Operations on hermitian matrices that preserve the linking form.

Each move returns the new matrix together with a ``FormIsometry`` whose map
carries class representatives of the source to the target.  Congruences
``H2 = C H C*`` are the basic tool: ``x -> conj(C) x`` is an isometry from the
form of ``H`` to the form of ``H2``.

``check_isometry`` verifies a witness on sample torsion vectors.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .blanchfield import TorsionData, is_torsion, random_torsion_vectors, raw_value, solve_presentation, torsion_order
from .errors import NotTorsionError, ValidationError
from .exactlinalg import RfMatrix, block_diag, inverse_q
from .laurent import LaurentPoly, LSUnit, is_unit_ls
from .ratfield import QmodLS, RatFunc, in_lambda_s, qls_equal, to_text_rf
from .seifert import CMatrix, u_factor


@dataclass(frozen=True)
class FormIsometry:
    """``lam_target(M x, M y) = sign * lam_source(x, y)``.

    With ``conjugate=True`` the map is antilinear:
    ``lam_target(M conj(x), M conj(y)) = sign * conj(lam_source(x, y))``.
    """

    source: CMatrix
    target: CMatrix
    map: RfMatrix
    sign: int = 1
    conjugate: bool = False

    def __post_init__(self):
        if self.map.shape != (self.target.n, self.source.n):
            raise ValidationError(f"map has shape {self.map.shape}, expected {(self.target.n, self.source.n)}")
        if self.source.mu != self.target.mu:
            raise ValidationError("source and target have different variable counts")

    def image(self, x: Sequence[RatFunc]) -> List[RatFunc]:
        if self.conjugate:
            x = [e.conj() for e in x]
        return self.map.apply(list(x))

    def compose(self, other: "FormIsometry") -> "FormIsometry":
        """``other`` after ``self``; both must be linear."""
        if self.conjugate or other.conjugate:
            raise ValueError("composition of antilinear witnesses is not supported")
        return FormIsometry(self.source, other.target, other.map @ self.map, self.sign * other.sign)


def identity_isometry(H: CMatrix) -> FormIsometry:
    return FormIsometry(H, H, RfMatrix.identity(H.n, H.mu))


def congruence(H: RfMatrix, C: RfMatrix) -> RfMatrix:
    """``C H C*``."""
    return C @ H @ C.conj_transpose()


def _rf(x, nvars: int) -> RatFunc:
    if isinstance(x, LSUnit):
        return RatFunc.from_unit(x)
    return RatFunc.coerce(x, nvars)


def _inclusion(n: int, m: int, nvars: int, offset: int = 0) -> RfMatrix:
    """``m x n`` matrix sending ``e_j`` to ``e_{offset + j}``."""
    rows = [[RatFunc.zero(nvars)] * n for _ in range(m)]
    for j in range(n):
        rows[offset + j][j] = RatFunc.one(nvars)
    return RfMatrix(rows, nvars, n)


# ---------------------------------------------------------------------------
# Stabilizations


def stabilize0(H: CMatrix) -> Tuple[CMatrix, FormIsometry]:
    nv = H.mu
    out = CMatrix.of(block_diag([H.entries, RfMatrix.zeros(1, 1, nv)], nv))
    return out, FormIsometry(H, out, _inclusion(H.n, H.n + 1, nv))


def stabilize2(H: CMatrix, xi: Sequence, lam, alpha) -> Tuple[CMatrix, FormIsometry]:
    """Enlarge ``H`` to

        [ H    xi  0     ]
        [ xi*  lam alpha ]
        [ 0    ab  0     ]     (ab = conj(alpha)).

    The witness is the inclusion of ``H`` into ``H + [[0,1],[1,0]]`` followed by
    the inverse of an explicit congruence taking the enlarged matrix there.
    """
    nv, n = H.mu, H.n
    if len(xi) != n:
        raise ValidationError(f"xi has length {len(xi)}, expected {n}")
    xi = [_rf(x, nv) for x in xi]
    lam = _rf(lam, nv)
    a = _rf(alpha, nv)
    for x in xi + [lam]:
        if not in_lambda_s(x):
            raise ValidationError(f"{to_text_rf(x)} is not in the localized ring")
    if lam.conj() != lam:
        raise ValidationError(f"lam = {to_text_rf(lam)} is not conjugation invariant")
    if a.is_zero() or not (in_lambda_s(a) and in_lambda_s(a.inverse())):
        raise ValidationError(f"alpha = {to_text_rf(a)} is not a unit of the localized ring")
    zero, one = RatFunc.zero(nv), RatFunc.one(nv)
    ab = a.conj()
    m = n + 2
    rows = [list(H.entries.row(i)) + [xi[i], zero] for i in range(n)]
    rows.append([x.conj() for x in xi] + [lam, a])
    rows.append([zero] * n + [ab, zero])
    big = CMatrix.of(RfMatrix(rows, nv, m))

    def elementary(i, j, c):
        e = [[one if r == s else zero for s in range(m)] for r in range(m)]
        e[i][j] = c
        return RfMatrix(e, nv, m)

    p, q = n, n + 1
    # clear xi against the last row, which only meets column p
    C1 = RfMatrix.identity(m, nv)
    for i in range(n):
        if not xi[i].is_zero():
            C1 = elementary(i, q, -xi[i] / ab) @ C1
    # s + conj(s) = lam for s = lam / (1 - t1), since lam is self-conjugate
    s = lam / RatFunc.from_poly(LaurentPoly.one_minus_var(0, nv))
    C2 = elementary(p, q, -s / ab)
    C3 = RfMatrix.diag([one] * (m - 1) + [ab.inverse()], nv)
    C = C3 @ C2 @ C1
    hyper = RfMatrix([[zero, one], [one, zero]], nv, 2)
    reduced = block_diag([H.entries, hyper], nv)
    if congruence(big.entries, C) != reduced:
        raise AssertionError("stabilize2: congruence did not reach H + hyperbolic block")
    witness = inverse_q(C.conj()) @ _inclusion(n, m, nv)
    return big, FormIsometry(H, big, witness)


# ---------------------------------------------------------------------------
# Sums and scalings


def block_sum(*Hs: CMatrix) -> CMatrix:
    if not Hs:
        raise ValueError("block_sum needs at least one matrix")
    mu = Hs[0].mu
    for k, H in enumerate(Hs):
        if H.mu != mu:
            raise ValidationError(f"summand {k + 1} has {H.mu} variables, expected {mu}")
    return CMatrix.of(block_diag([H.entries for H in Hs], mu))


def unit_scale(H: CMatrix, u) -> Tuple[CMatrix, FormIsometry]:
    """``u conj(u) H`` with the isometry ``x -> u^-1 x`` back to ``H``."""
    nv = H.mu
    uu = _rf(u, nv)
    if uu.is_zero() or not (in_lambda_s(uu) and in_lambda_s(uu.inverse())):
        raise ValidationError(f"{to_text_rf(uu)} is not a unit of the localized ring")
    scaled = CMatrix.of(H.entries.scale(uu * uu.conj()))
    inv = uu.inverse()
    return scaled, FormIsometry(scaled, H, RfMatrix.identity(H.n, nv).scale(inv))


def mirror(H: CMatrix) -> CMatrix:
    return CMatrix.of(-H.entries)


def mirror_isometry(H: CMatrix) -> FormIsometry:
    """``lam_{-H}(-x, -y) = -lam_H(x, y)``."""
    M = mirror(H)
    return FormIsometry(H, M, -RfMatrix.identity(H.n, H.mu), sign=-1)


def reverse(H: CMatrix) -> CMatrix:
    return CMatrix.of(H.entries.conj())


def reverse_isometry(H: CMatrix) -> FormIsometry:
    """``lam_{conj H}(conj x, conj y) = conj(lam_H(x, y))``."""
    return FormIsometry(H, reverse(H), RfMatrix.identity(H.n, H.mu), conjugate=True)


# ---------------------------------------------------------------------------
# Gluing


def _rename_matrix(M: RfMatrix, mapping: Sequence[int], nvars: int) -> RfMatrix:
    return RfMatrix([[RatFunc(x.num.rename(mapping, nvars), x.den.rename(mapping, nvars)) for x in row]
                     for row in M.entries], nvars, M.cols)


def _glue_layout(mu1: int, mu2: int, shared: bool):
    mu = mu1 + mu2 - (1 if shared else 0)
    first = list(range(mu1))
    start = mu1 - 1 if shared else mu1
    second = list(range(start, start + mu2))
    return mu, first, second


def connected_sum(H1: CMatrix, H2: CMatrix, shared: bool = True) -> CMatrix:
    """``u1 H1 + u2 H2`` (block sum) in the ambient ring.

    With ``shared=True`` the last variable of ``H1`` and the first of ``H2`` are
    identified.  ``u1`` (``u2``) is the product of ``(1 - t_i)(1 - t_i^-1)`` over
    the ambient variables that do not occur in ``H1`` (``H2``).  ``shared=False``
    gives the disjoint union and the trivial band clasp.
    """
    return _glue(H1, H2, shared)[0]


def connected_sum_isometry(H1: CMatrix, H2: CMatrix, shared: bool = True) -> FormIsometry:
    """Witness from the block sum of the re-indexed summands to ``connected_sum``."""
    out, plain, (a, b) = _glue(H1, H2, shared)
    nv = out.mu
    diag = [a] * H1.n + [b] * H2.n
    return FormIsometry(plain, out, RfMatrix.diag(diag, nv) if diag else RfMatrix.zeros(0, 0, nv))


def _glue(H1: CMatrix, H2: CMatrix, shared: bool):
    if shared and (H1.mu < 1 or H2.mu < 1):
        raise ValidationError("a shared variable needs at least one variable on each side")
    mu, first, second = _glue_layout(H1.mu, H2.mu, shared)
    E1 = _rename_matrix(H1.entries, first, mu)
    E2 = _rename_matrix(H2.entries, second, mu)
    a = RatFunc.from_poly(u_factor(mu, [i for i in range(mu) if i not in first]))
    b = RatFunc.from_poly(u_factor(mu, [i for i in range(mu) if i not in second]))
    scaled = block_diag([E1.scale(a * a.conj()), E2.scale(b * b.conj())], mu)
    plain = block_diag([E1, E2], mu)
    return CMatrix.of(scaled), CMatrix.of(plain), (a, b)


def embed(H: CMatrix, mapping: Sequence[int], nvars: int) -> CMatrix:
    """Re-index the variables of ``H`` into a ring with ``nvars`` variables."""
    return CMatrix.of(_rename_matrix(H.entries, mapping, nvars))


# ---------------------------------------------------------------------------
# Verification


@dataclass
class IsometryReport:
    pairs_checked: int = 0
    vectors_checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        head = "PASS" if self.ok else f"FAIL ({len(self.violations)} violations)"
        lines = [f"{head}: {self.vectors_checked} vectors, {self.pairs_checked} pairs"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


DEFAULT_SAMPLES = 16


def check_isometry(iso: FormIsometry, samples: Optional[Sequence[Sequence]] = None,
                   rng: Optional[random.Random] = None, count: int = DEFAULT_SAMPLES,
                   source_td: TorsionData = None, target_td: TorsionData = None) -> IsometryReport:
    """Compare pairing values on sample pairs through the witness map.

    Without explicit ``samples``, ``count`` random torsion vectors of the
    source are drawn.  Up to four samples, every ordered pair is checked;
    beyond that the diagonal pairs and the cyclically consecutive pairs.
    """
    rng = rng or random.Random(0)
    src = source_td or torsion_order(iso.source)
    tgt = target_td or torsion_order(iso.target)
    if samples is None:
        samples = random_torsion_vectors(iso.source, count, rng)
    nv = iso.source.mu
    samples = [[RatFunc.coerce(x, nv) for x in v] for v in samples]
    report = IsometryReport()
    if not samples:
        return report
    good_src, good_img = [], []
    for k, v in enumerate(samples):
        report.vectors_checked += 1
        if not is_torsion(iso.source, v):
            report.violations.append(f"sample {k + 1} is not torsion in the source")
            continue
        img = iso.image(v)
        if not is_torsion(iso.target, img):
            report.violations.append(f"image of sample {k + 1} is not torsion in the target")
            continue
        good_src.append(v)
        good_img.append(img)
    if not good_src:
        return report
    sol_src = solve_presentation(src, good_src)
    sol_tgt = solve_presentation(tgt, good_img)
    m = len(good_src)
    if len(samples) <= 4:
        pairs = [(i, j) for i in range(m) for j in range(m)]
    else:
        pairs = [(i, i) for i in range(m)] + [(i, (i + 1) % m) for i in range(m)]
    for i, j in pairs:
        report.pairs_checked += 1
        before = raw_value(src, sol_src[i], sol_src[j])
        after = raw_value(tgt, sol_tgt[i], sol_tgt[j])
        if iso.conjugate:
            before = before.conj()
        if iso.sign < 0:
            before = -before
        if not in_lambda_s(after - before):
            report.violations.append(
                f"pair ({i + 1},{j + 1}): source gives {to_text_rf(before)}, target gives {to_text_rf(after)}")
    return report


__all__ = [
    "FormIsometry",
    "identity_isometry",
    "congruence",
    "stabilize0",
    "stabilize2",
    "block_sum",
    "unit_scale",
    "mirror",
    "mirror_isometry",
    "reverse",
    "reverse_isometry",
    "connected_sum",
    "connected_sum_isometry",
    "embed",
    "IsometryReport",
    "check_isometry",
]
