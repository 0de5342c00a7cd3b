import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gkdv.spectral import SpectralField

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def coeff_arrays(draw, min_N=1, max_N=8):
    N = draw(st.integers(min_N, max_N))
    re = draw(arrays(float, N, elements=finite))
    im = draw(arrays(float, N, elements=finite))
    return re + 1j * im


def fields(min_N=1, max_N=8):
    return coeff_arrays(min_N, max_N).map(SpectralField)
