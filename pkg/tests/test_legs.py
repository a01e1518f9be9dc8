from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quivercoha import (DomainError, EigenData, LimitExceededError, Quiver,
                        attach_legs, double, is_generic,
                        lambda_from_eigenvalues, sample_generic)

from conftest import S1, S2, S3, SUITE_HALVES


def test_attach_legs_two_loops_gamma_three():
    q0 = Quiver.loop_quiver(1)
    legs = attach_legs(S2, q0, (3,))
    assert legs.vertex_labels == ((0, 0), (0, 1), (0, 2))
    assert legs.tilde_gamma == (3, 2, 1)
    # two loops at the base vertex plus doubled leg edges
    assert legs.tilde_quiver.arrows == ((2, 1, 0), (1, 0, 1), (0, 1, 0))
    assert legs.half_quiver.arrows == ((1, 1, 0), (0, 0, 1), (0, 0, 0))


def test_attach_legs_length_zero_is_identity():
    legs = attach_legs(S3, Quiver.from_lists([[0, 1], [0, 0]]), (1, 1))
    assert legs.tilde_quiver == S3
    assert legs.tilde_gamma == (1, 1)


def test_attach_legs_double_a2_mixed_gamma():
    legs = attach_legs(S3, Quiver.from_lists([[0, 1], [0, 0]]), (2, 1))
    assert legs.vertex_labels == ((0, 0), (1, 0), (0, 1))
    assert legs.tilde_gamma == (2, 1, 1)
    assert legs.tilde_quiver == double(legs.half_quiver)


def test_attach_legs_rejects_wrong_half():
    with pytest.raises(DomainError):
        attach_legs(S2, Quiver.loop_quiver(0), (2,))


@pytest.mark.parametrize("name,q0", SUITE_HALVES)
def test_attach_legs_structural_invariants(name, q0):
    q = double(q0)
    for gamma in [(1,) * q0.vertex_count, (3,) + (1,) * (q0.vertex_count - 1)]:
        legs = attach_legs(q, q0, gamma)
        assert legs.tilde_quiver == double(legs.half_quiver)
        for v, (i, j) in enumerate(legs.vertex_labels):
            assert legs.tilde_gamma[v] == gamma[i] - j


# -- lambda ---------------------------------------------------------------------

def test_lambda_example():
    legs = attach_legs(S1, S1, (2,))
    t = EigenData(((Fraction(1), Fraction(-1)),))
    lam = lambda_from_eigenvalues(t, legs)
    assert lam == (Fraction(-1), Fraction(2))
    assert sum(g * l for g, l in zip(legs.tilde_gamma, lam)) == 0


def test_lambda_equal_eigenvalues_allowed():
    legs = attach_legs(S1, S1, (2,))
    lam = lambda_from_eigenvalues(EigenData(((0, 0),)), legs)
    assert lam == (0, 0)


def test_lambda_two_vertices():
    half = Quiver.from_lists([[0, 1], [0, 0]])
    legs = attach_legs(S3, half, (1, 1))
    a = Fraction(5, 3)
    lam = lambda_from_eigenvalues(EigenData(((a,), (-a,))), legs)
    assert lam == (-a, a)


def test_eigendata_requires_zero_trace():
    with pytest.raises(DomainError):
        EigenData(((Fraction(1),),))


# -- genericity --------------------------------------------------------------------

def test_is_generic_examples():
    ok, cert = is_generic(EigenData(((1, -1),)), S1, (2,))
    assert ok and cert.generic
    ok, cert = is_generic(EigenData(((0, 0),)), S1, (2,))
    assert not ok and cert.colliding_pair == (0, 0, 1)
    ok, cert = is_generic(EigenData(((Fraction(1, 2),), (Fraction(-1, 2),))), S3, (1, 1))
    assert ok
    ok, cert = is_generic(EigenData(((0,), (0,))), S3, (1, 1))
    assert not ok and cert.violating_subset is not None


def test_single_vertex_gamma_one_always_generic():
    ok, _ = is_generic(EigenData(((0,),)), S1, (1,))
    assert ok


def test_generic_size_limit():
    t = EigenData(((1, 2, 3, 4, 5, 6, 7, 8, -36),))
    with pytest.raises(LimitExceededError):
        is_generic(t, Quiver.loop_quiver(0), (9,))


@given(st.permutations(list(range(4))))
def test_is_generic_invariant_under_reordering(perm):
    base = [Fraction(3), Fraction(-1), Fraction(5, 2), Fraction(-9, 2)]
    t1 = EigenData((tuple(base),))
    t2 = EigenData((tuple(base[i] for i in perm),))
    q = Quiver.loop_quiver(0)
    assert is_generic(t1, q, (4,))[0] == is_generic(t2, q, (4,))[0]


def test_violating_subset_certificate_replays():
    # 1 + 2 - 3 = 0 hidden inside a trace-zero tuple
    t = EigenData(((1, 2, -3, 5, -5),))
    ok, cert = is_generic(t, Quiver.loop_quiver(0), (5,))
    assert not ok
    subset = cert.violating_subset
    total = sum(t.values[i][r] for i, p in enumerate(subset) for r in p)
    assert total == 0
    chosen = sum(len(p) for p in subset)
    assert 0 < chosen < 5


# -- sampling ----------------------------------------------------------------------

def test_sample_generic_deterministic_and_verified(suite_quiver):
    n = suite_quiver.vertex_count
    gamma = (2,) + (1,) * (n - 1)
    t1 = sample_generic(suite_quiver, gamma, 1)
    t2 = sample_generic(suite_quiver, gamma, 1)
    assert t1 == t2
    assert is_generic(t1, suite_quiver, gamma)[0]
    t3 = sample_generic(suite_quiver, gamma, 2)
    assert is_generic(t3, suite_quiver, gamma)[0]


def test_sample_generic_nonzero_entries_for_unit_pairs():
    t = sample_generic(S3, (1, 1), 3)
    assert all(vs[0] != 0 for vs in t.values)
    assert sum(vs[0] for vs in t.values) == 0


def test_sampled_lambda_pairing_vanishes():
    for name, q0 in SUITE_HALVES:
        q = double(q0)
        n = q0.vertex_count
        for seed in range(10):
            gamma = ((seed % 3) + 1,) + (1,) * (n - 1)
            t = sample_generic(q, gamma, seed)
            legs = attach_legs(q, q0, gamma)
            lam = lambda_from_eigenvalues(t, legs)
            assert sum(g * l for g, l in zip(legs.tilde_gamma, lam)) == 0
