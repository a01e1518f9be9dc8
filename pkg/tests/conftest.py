import pytest

from quivercoha import Quiver

# The four suite quivers: symmetric, used by most cross-checks.
S1 = Quiver.loop_quiver(0)                 # one vertex, no arrows
S2 = Quiver.loop_quiver(2)                 # one vertex, two loops (doubled loop)
S3 = Quiver.from_lists([[0, 1], [1, 0]])   # double of A2
S4 = Quiver.from_lists([[0, 2], [2, 0]])   # double of the 2-Kronecker

# Their half quivers (double(half) == suite quiver).
S1_HALF = Quiver.loop_quiver(0)
S2_HALF = Quiver.loop_quiver(1)
S3_HALF = Quiver.from_lists([[0, 1], [0, 0]])
S4_HALF = Quiver.from_lists([[0, 2], [0, 0]])

SUITE = [("S1", S1), ("S2", S2), ("S3", S3), ("S4", S4)]
SUITE_HALVES = [("S1", S1_HALF), ("S2", S2_HALF), ("S3", S3_HALF), ("S4", S4_HALF)]


@pytest.fixture(params=SUITE, ids=[name for name, _ in SUITE])
def suite_quiver(request):
    return request.param[1]


def gammas_up_to(quiver, total):
    """All nonzero gamma with |gamma| <= total, ordered (|gamma|, lex)."""
    from quivercoha import enumerate_dim_vectors
    n = quiver.vertex_count
    return enumerate_dim_vectors((total,) * n, abs_max=total)
