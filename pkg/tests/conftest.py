import pytest
from hypothesis import strategies as st

from scaffold_assign.model.core import make_instance


EXAMPLE_S = [0, 3, 4, 6, 13, 14, 15, 16]
EXAMPLE_T = [1, 2, 8, 10, 11, 12]
EXAMPLE_TEXT = "S 0 3 4 6 13 14 15 16\nT 1 2 8 10 11 12\n"


@pytest.fixture
def example():
    # delta = 2, optimal cost 19
    return make_instance(EXAMPLE_S, EXAMPLE_T)


@pytest.fixture
def balanced():
    # equal sizes, sorted matching cost 15
    return make_instance([0, 4, 6, 13, 14, 16], [1, 2, 8, 10, 11, 12])


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_text(EXAMPLE_TEXT)
    return path


@st.composite
def instances(draw, low=-20, high=20, max_t=6, max_extra=6):
    """
    Small instances with plenty of coincident coordinates.
    """
    coord = st.integers(min_value=low, max_value=high)
    t = draw(st.lists(coord, min_size=1, max_size=max_t))
    s = draw(st.lists(coord, min_size=len(t), max_size=len(t) + max_extra))
    return make_instance(s, t)
