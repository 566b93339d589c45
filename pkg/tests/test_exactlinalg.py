import random

import pytest
import sympy as sp

import oracles
from ccomplex.exactlinalg import (
    RfMatrix,
    SingularMatrixError,
    block_diag,
    cofactor_det,
    det_q,
    inverse_q,
    minors_gcd,
    nullspace_q,
    rank_q,
    solve_q,
)
from ccomplex.laurent import LaurentPoly
from ccomplex.ratfield import RatFunc
from ccomplex.sampling import random_poly


def rand_matrix(rng, rows, cols, nvars, rational=True):
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            num = random_poly(rng, nvars, rng.randint(0, 3), 1, 3)
            if rational and rng.random() < 0.3:
                den = random_poly(rng, nvars, 2, 1, 2)
                if den.is_zero():
                    den = LaurentPoly.one(nvars)
                row.append(RatFunc(num, den))
            else:
                row.append(RatFunc.from_poly(num))
        out.append(row)
    return RfMatrix(out, nvars, cols)


def trefoil_H():
    t = RatFunc.from_poly(LaurentPoly.var(0, 1))
    d = -(2 - t - t.inverse())
    return RfMatrix([[d, 1 - t.inverse()], [1 - t, d]], 1)


def test_trefoil_determinant_and_minors():
    H = trefoil_H()
    t = RatFunc.from_poly(LaurentPoly.var(0, 1))
    ti = t.inverse()
    assert det_q(H) == t * t - 3 * t + 4 - 3 * ti + ti * ti
    assert det_q(H) == cofactor_det(H)
    assert rank_q(H) == 2
    x = LaurentPoly.var(0, 1)
    assert minors_gcd(H, 2) == x * x - x + 1
    assert minors_gcd(H, 1) == 1
    assert minors_gcd(H, 0) == 1


def test_determinant_matches_cofactor_and_sympy():
    rng = random.Random(11)
    for n, nvars in [(2, 1), (3, 2), (4, 1), (4, 2)]:
        M = rand_matrix(rng, n, n, nvars)
        d = det_q(M)
        assert d == cofactor_det(M)
        xs = oracles.symbols(nvars)
        assert oracles.equal(oracles.rf_expr(d, xs), oracles.det(M, xs))


def test_solve_inconsistent_and_particular():
    M = RfMatrix.from_ints([[1, 1], [1, 1]], 1)
    assert solve_q(M, [1, 1]) is not None
    x = solve_q(M, [1, 1])
    assert M.apply(x) == [RatFunc.one(1)] * 2
    assert solve_q(M, [1, 0]) is None
    ker = nullspace_q(M)
    assert len(ker) == 1 and M.apply(ker[0]) == [RatFunc.zero(1)] * 2


def test_inverse_and_singular():
    rng = random.Random(5)
    M = rand_matrix(rng, 3, 3, 2)
    if rank_q(M) == 3:
        inv = inverse_q(M)
        assert M @ inv == RfMatrix.identity(3, 2)
        assert inv @ M == RfMatrix.identity(3, 2)
    S = RfMatrix.from_ints([[1, 2], [2, 4]], 1)
    with pytest.raises(SingularMatrixError) as e:
        inverse_q(S)
    assert e.value.rank == 1


def test_rank_nullity():
    rng = random.Random(3)
    for _ in range(10):
        nvars = rng.randint(1, 2)
        A = rand_matrix(rng, 4, 2, nvars, rational=False)
        B = rand_matrix(rng, 2, 4, nvars, rational=False)
        M = A @ B
        r = rank_q(M)
        assert r <= 2
        ker = nullspace_q(M)
        assert len(ker) == 4 - r
        for k in ker:
            assert all(x.is_zero() for x in M.apply(k))
            assert all(x.is_poly() for x in k)


def test_block_diag_and_transpose():
    A = RfMatrix.from_ints([[1, 2], [3, 4]], 1)
    B = RfMatrix.from_ints([[5]], 1)
    D = block_diag([A, B, RfMatrix.zeros(0, 0, 1)], 1)
    assert D.shape == (3, 3)
    assert det_q(D) == det_q(A) * det_q(B)
    assert D.T.T == D


def test_hermitian_detection():
    H = trefoil_H()
    assert H.is_hermitian()
    t = RatFunc.from_poly(LaurentPoly.var(0, 1))
    bad = RfMatrix([[t, 0], [0, 1]], 1)
    assert bad.first_nonhermitian() == (0, 0)


def test_minors_gcd_rejects_non_lambda_s():
    t = RatFunc.from_poly(LaurentPoly.var(0, 1))
    M = RfMatrix([[RatFunc.one(1) / (1 + t)]], 1)
    with pytest.raises(ValueError):
        minors_gcd(M, 1)


def test_empty_matrix_conventions():
    E = RfMatrix.zeros(0, 0, 1)
    assert det_q(E) == RatFunc.one(1)
    assert rank_q(E) == 0
    assert minors_gcd(E, 0) == 1
