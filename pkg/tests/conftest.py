import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from lattice_slopes import exact_linalg as xl  # noqa: E402
from lattice_slopes.lattice import Lattice  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example, HealthCheck.filter_too_much]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def int_bases(draw, min_rank=1, max_rank=4, bound=3):
    n = draw(st.integers(min_rank, max_rank))
    while True:
        B = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n))
        if xl.det(B) != 0:
            return B


@st.composite
def lattices(draw, min_rank=1, max_rank=4, bound=3):
    B = draw(int_bases(min_rank, max_rank, bound))
    return Lattice(xl.rat_matrix(xl.matmul(B, xl.transpose(B))), "h")


@st.composite
def lattice_and_rows(draw, min_rank=2, max_rank=4, k_min=1, proper=True):
    L = draw(lattices(min_rank, max_rank))
    n = L.rank
    k = draw(st.integers(k_min, n - 1 if proper else n))
    while True:
        rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k, max_size=k))
        if xl.rank(rows, n) == k:
            return L, rows
