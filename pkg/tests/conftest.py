import random
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from lefschetz_lab.polycore import Poly, VariableSet, mono_basis

hypothesis.settings.register_profile(
    "default", max_examples=30, deadline=None
)
hypothesis.settings.register_profile(
    "thorough", max_examples=200, deadline=None
)
hypothesis.settings.load_profile("default")


@st.composite
def homogeneous_polys(
    draw,
    min_vars=2,
    max_vars=4,
    min_degree=1,
    max_degree=5,
    max_terms=6,
):
    nvars = draw(st.integers(min_vars, max_vars))
    degree = draw(st.integers(min_degree, max_degree))
    vs = VariableSet(tuple(f"x{i}" for i in range(nvars)))
    monos = mono_basis(vs, degree)
    count = draw(st.integers(1, min(max_terms, len(monos))))
    chosen = draw(
        st.lists(st.sampled_from(monos), min_size=count, max_size=count, unique=True)
    )
    coeffs = draw(
        st.lists(
            st.integers(-4, 4).filter(lambda c: c != 0),
            min_size=count,
            max_size=count,
        )
    )
    return Poly(vs, dict(zip(chosen, coeffs)))


@st.composite
def rational_matrices(draw, max_rows=5, max_cols=5):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(
        st.lists(
            st.lists(
                st.fractions(
                    min_value=-5, max_value=5, max_denominator=4
                ),
                min_size=cols,
                max_size=cols,
            ),
            min_size=rows,
            max_size=rows,
        )
    )
    return entries


@pytest.fixture
def rng():
    return random.Random(12345)
