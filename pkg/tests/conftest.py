from fractions import Fraction

import hypothesis.strategies as st

from eulab.exactalg import Poly


def coefficients() -> st.SearchStrategy:
    ints = st.integers(min_value=-6, max_value=6)
    fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    return st.one_of(ints, fracs)


@st.composite
def polys(draw, variables=("x", "y", "s"), max_terms=4, max_exp=3):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    total = Poly.zero()
    for _ in range(n_terms):
        exps = {v: draw(st.integers(0, max_exp)) for v in variables}
        total = total + Poly.monomial(exps, draw(coefficients()))
    return total
