import pytest
from hypothesis import given, strategies as st

from quivercoha import (DimensionMismatchError, DomainError, Quiver,
                        QuiverFormatError, double, euler_form,
                        moduli_dimensions, quiver_from_spec, sign_form)
from quivercoha.quiver import unit_dim

from conftest import S1, S2, S3


def small_quivers():
    return st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n),
                           min_size=n, max_size=n).map(Quiver.from_lists))


def symmetric_quivers():
    def symmetrize(q):
        return double(q) if not q.is_symmetric() else q
    return small_quivers().map(symmetrize)


def dim_vectors(n, bound=5):
    return st.tuples(*[st.integers(0, bound) for _ in range(n)])


# -- euler_form ---------------------------------------------------------------

def test_euler_form_examples():
    assert euler_form(S2, (1,), (1,)) == -1
    assert euler_form(S1, (4,), (3,)) == 12
    assert euler_form(S3, (1, 0), (0, 1)) == -1


def test_euler_form_rejects_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        euler_form(S3, (1,), (1, 0))


@given(small_quivers(), st.data())
def test_euler_form_bilinear(q, data):
    n = q.vertex_count
    g1 = data.draw(dim_vectors(n))
    g2 = data.draw(dim_vectors(n))
    g3 = data.draw(dim_vectors(n))
    lhs = euler_form(q, tuple(a + b for a, b in zip(g1, g2)), g3)
    assert lhs == euler_form(q, g1, g3) + euler_form(q, g2, g3)
    rhs = euler_form(q, g1, tuple(a + b for a, b in zip(g2, g3)))
    assert rhs == euler_form(q, g1, g2) + euler_form(q, g1, g3)


@given(symmetric_quivers(), st.data())
def test_euler_form_symmetric_for_symmetric_quivers(q, data):
    n = q.vertex_count
    g1 = data.draw(dim_vectors(n))
    g2 = data.draw(dim_vectors(n))
    assert euler_form(q, g1, g2) == euler_form(q, g2, g1)


# -- double -------------------------------------------------------------------

def test_double_examples():
    assert double(Quiver.loop_quiver(1)) == Quiver.loop_quiver(2)
    one_arrow = Quiver.from_lists([[0, 1], [0, 0]])
    assert double(one_arrow) == S3
    empty = Quiver.from_lists([[0, 0], [0, 0]])
    assert double(empty) == empty


@given(small_quivers())
def test_double_is_symmetric(q):
    assert double(q).is_symmetric()


# -- sign_form ----------------------------------------------------------------

def _rhs_mod2(q, g1, g2):
    return (euler_form(q, g1, g2)
            + euler_form(q, g1, g1) * euler_form(q, g2, g2)) % 2


@pytest.mark.parametrize("loops", [0, 1, 2, 3, 5])
def test_sign_form_single_vertex_any_loops_is_zero(loops):
    q = Quiver.loop_quiver(loops)
    psi = sign_form(q)
    assert psi.psi == ((0,),)
    # oracle: the congruence must then say rhs == 0 for all pairs
    for g1 in range(6):
        for g2 in range(6):
            assert _rhs_mod2(q, (g1,), (g2,)) == 0


def test_sign_form_double_a2_is_zero():
    psi = sign_form(S3)
    assert psi.psi == ((0, 0), (0, 0))
    for i in range(2):
        for j in range(2):
            assert _rhs_mod2(S3, unit_dim(2, i), unit_dim(2, j)) == 0


def test_sign_form_upper_triangular_convention():
    # loops at vertex 0 flip the diagonal term: rhs(e0, e1) = 1 here
    q = Quiver.from_lists([[1, 1], [1, 0]])
    assert _rhs_mod2(q, (1, 0), (0, 1)) == 1
    psi = sign_form(q)
    assert psi.psi[0][1] == 1
    assert psi.psi[1][0] == 0


def test_sign_form_rejects_non_symmetric():
    with pytest.raises(DomainError):
        sign_form(Quiver.from_lists([[0, 1], [0, 0]]))


@given(symmetric_quivers(), st.data())
def test_sign_form_congruence_on_random_pairs(q, data):
    psi = sign_form(q)
    n = q.vertex_count
    g1 = data.draw(dim_vectors(n))
    g2 = data.draw(dim_vectors(n))
    lhs = (psi.value(g1, g2) + psi.value(g2, g1)) % 2
    assert lhs == _rhs_mod2(q, g1, g2)


def test_sign_form_congruence_sampled_100_pairs():
    import random
    rng = random.Random(7)
    for q in (S1, S2, S3):
        psi = sign_form(q)
        n = q.vertex_count
        for _ in range(100):
            g1 = tuple(rng.randint(0, 5) for _ in range(n))
            g2 = tuple(rng.randint(0, 5) for _ in range(n))
            assert (psi.value(g1, g2) + psi.value(g2, g1)) % 2 == _rhs_mod2(q, g1, g2)


# -- moduli_dimensions ---------------------------------------------------------

def test_moduli_dimensions_examples():
    assert moduli_dimensions(S1, (2,)) == (0, 4, -3)
    assert moduli_dimensions(S2, (1,)) == (2, 1, 2)
    assert moduli_dimensions(S3, (1, 1)) == (2, 2, 1)


# -- spec parsing ---------------------------------------------------------------

def test_quiver_from_spec_sums_duplicates():
    q = quiver_from_spec({"vertices": 2, "arrows": [[0, 1, 1], [0, 1, 2], [1, 0, 3]]})
    assert q.arrows == ((0, 3), (3, 0))


def test_quiver_from_spec_errors_carry_location():
    with pytest.raises(QuiverFormatError) as exc:
        quiver_from_spec({"vertices": 2, "arrows": [[0, 5, 1]]})
    assert exc.value.location == "arrows[0]"
    with pytest.raises(QuiverFormatError):
        quiver_from_spec({"arrows": []})
    with pytest.raises(QuiverFormatError):
        quiver_from_spec({"vertices": 2, "arrows": [[0, 1]]})
