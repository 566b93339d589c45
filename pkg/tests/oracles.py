"""Independent reference computations in sympy.

Nothing here touches the package's own arithmetic beyond reading exponents
and coefficients out of the data structures.
"""
import sympy as sp


def symbols(nvars):
    return sp.symbols(" ".join(f"x{i}" for i in range(nvars)) + " _pad")[:nvars]


def poly_expr(p, xs):
    return sp.Add(*[c * sp.Mul(*[x ** e for x, e in zip(xs, exps)]) for exps, c in p.terms.items()])


def rf_expr(f, xs):
    return poly_expr(f.num, xs) / poly_expr(f.den, xs)


def matrix_expr(M, xs):
    return sp.Matrix([[rf_expr(x, xs) for x in row] for row in M.entries])


def equal(a, b):
    return sp.simplify(sp.cancel(sp.together(a - b))) == 0


def det(M, xs):
    return sp.cancel(matrix_expr(M, xs).det(method="berkowitz"))


def from_expr(e, xs, nvars):
    """Sympy Laurent expression -> dict of exponent tuples (for comparisons)."""
    num, den = sp.fraction(sp.together(sp.expand(e)))
    pd = sp.Poly(den, *xs)
    if len(pd.terms()) != 1:
        raise ValueError("not a Laurent polynomial")
    (dexp, dc), = pd.terms()
    out = {}
    for exps, c in sp.Poly(sp.expand(num), *xs).terms():
        q = sp.Rational(c, dc)
        assert q.q == 1
        if q == 0:
            continue
        out[tuple(a - b for a, b in zip(exps, dexp))] = int(q)
    return out


def in_lambda_s(e, xs):
    """Reduced denominator of a sympy rational function is ±monomial*prod(1 - x_i)^k."""
    num, den = sp.fraction(sp.cancel(sp.together(e)))
    d = sp.Poly(den, *xs)
    for x in xs:
        while True:
            q, r = sp.div(d, sp.Poly(1 - x, *xs))
            if r.is_zero and not d.is_zero:
                d = q
            else:
                break
    return len(d.terms()) == 1 and abs(d.LC()) == 1
