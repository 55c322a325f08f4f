import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from jacobigeom.symring import PatchVars

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

XYT = PatchVars(["x", "y", "t"])


@st.composite
def exp_polys(draw, patch=XYT, max_terms=4, degree=2, exps=True):
    """Random exp-polynomial with small rational coefficients."""
    n = len(patch)
    acc = patch.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        mono = tuple(draw(st.integers(0, degree)) for _ in range(n))
        ev = tuple(draw(st.sampled_from([-1, 0, 0, 1])) if exps else 0 for _ in range(n))
        f = patch.const(c)
        for name, a in zip(patch.names, mono):
            f = f * patch.var(name) ** a if a else f
        if any(ev):
            f = f * patch.exp(dict(zip(patch.names, ev)))
        acc = acc + f
    return acc


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@pytest.fixture
def rng():
    return random.Random(0)
