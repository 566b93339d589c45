from hypothesis import strategies as st

from ccomplex.laurent import LaurentPoly, LSUnit


def exps(nvars, span=3):
    return st.tuples(*[st.integers(-span, span) for _ in range(nvars)])


def laurent(nvars, max_terms=6, span=3, coeff=20):
    return st.dictionaries(exps(nvars, span), st.integers(-coeff, coeff), max_size=max_terms).map(
        lambda d: LaurentPoly(d, nvars))


def nonzero_laurent(nvars, **kw):
    return laurent(nvars, **kw).filter(lambda p: not p.is_zero())


def units(nvars, max_power=2):
    return st.builds(
        LSUnit,
        st.sampled_from([1, -1]),
        st.tuples(*[st.integers(-2, 2) for _ in range(nvars)]),
        st.tuples(*[st.integers(-max_power, max_power) for _ in range(nvars)]))


nvars_st = st.integers(1, 3)
