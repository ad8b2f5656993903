from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(bound=6, denominators=(1, 2, 3, 4)):
    return st.builds(Fraction, st.integers(-bound, bound), st.sampled_from(denominators))
