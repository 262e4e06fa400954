from fractions import Fraction

from hypothesis import strategies as st

from napdec.valued_fields import FieldCtx, RatFunc

PADIC = [FieldCtx.padic(2), FieldCtx.padic(3), FieldCtx.padic(5)]
FUNCTION = [FieldCtx.tadic(0), FieldCtx.tadic(5), FieldCtx.degree(0), FieldCtx.degree(3)]
ALL_CTX = PADIC + FUNCTION

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=4)


def fractions(max_abs=10 ** 6):
    return st.builds(Fraction, st.integers(-max_abs, max_abs), st.integers(1, max_abs))


@st.composite
def elements(draw, ctx, nonzero=False):
    if ctx.is_function_field:
        num = draw(coeff_lists)
        den = draw(st.lists(st.integers(-9, 9), max_size=3)) + [1]
        x = RatFunc(num, den, ctx.p)
    else:
        x = draw(fractions())
    if nonzero and not x:
        x = ctx.one
    return x


def vectors(ctx, n):
    return st.tuples(*[elements(ctx) for _ in range(n)])
