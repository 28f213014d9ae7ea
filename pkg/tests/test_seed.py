import random

import pytest

from qcluster.errors import IncompatiblePair, NoGVector, NotSkewSymmetric
from qcluster.qlaurent import QLaurent
from qcluster.seed import (check_compatible, cluster_monomial,
                           expand_f_decomposition, f_polynomial,
                           frame_monomial, g_vector, initial_seed, mutate,
                           mutate_sequence, verify_commutation)
from qcluster.torus import SkewForm, TorusElement

from .corpus import CORPUS_NAMES, corpus_seed

L2 = SkewForm([[0, 1], [-1, 0]])
B2 = [[0, 1], [-1, 0]]


def a2_seed():
    return initial_seed(L2, B2, 2)


def test_initial_seed_validation():
    s = a2_seed()
    assert [v.render() for v in s.vars] == ["X[1,0]", "X[0,1]"]
    with pytest.raises(NotSkewSymmetric):
        initial_seed(L2, [[0, 1], [1, 0]], 2)
    with pytest.raises(IncompatiblePair):
        initial_seed(SkewForm([[0, 0], [0, 0]]), B2, 2)


def test_frame_monomial_examples():
    s = a2_seed()
    assert frame_monomial(s, (0, 0)) == TorusElement.one(L2)
    # initial frame is c -> X^c on the nose
    for c in [(2, 3), (-1, 4), (0, -2), (5, 0)]:
        assert frame_monomial(s, c) == TorusElement.monomial(L2, c)
    s1 = mutate(s, 1)
    got = frame_monomial(s1, (2, 0))
    assert got.terms == {(-2, 0): QLaurent({0: 1}),
                         (-2, 1): QLaurent({1: 1, -1: 1}),
                         (-2, 2): QLaurent({0: 1})}


def test_frame_monomial_not_divisible_propagates():
    from qcluster.errors import NotDivisible
    s1 = mutate(a2_seed(), 1)
    # X_1 is now a two-term element; its inverse is not in the torus
    with pytest.raises(NotDivisible):
        frame_monomial(s1, (-1, 0))


def test_mutate_a2():
    s1 = mutate(a2_seed(), 1)
    assert s1.vars[0].render() == "X[-1,0] + X[-1,1]"
    assert [list(r) for r in s1.btilde] == [[0, -1], [1, 0]]
    assert [list(r) for r in s1.lam.entries] == [[0, -1], [1, 0]]


def test_mutate_involution_corpus():
    for name in CORPUS_NAMES:
        s = corpus_seed(name)
        for k in range(1, s.n + 1):
            assert mutate(mutate(s, k), k) == s


def test_coefficients_invariant():
    for name in ("a2_principal", "a3_principal"):
        s = corpus_seed(name)
        cur = mutate_sequence(s, (1, 2, 1))
        for i in range(s.n, s.m):
            assert cur.vars[i] == s.vars[i]


def test_compatibility_and_commutation_preserved():
    rng = random.Random(2)
    for name in CORPUS_NAMES:
        s = corpus_seed(name)
        ks = []
        for _ in range(4):
            k = rng.randrange(1, s.n + 1)
            while ks and ks[-1] == k:
                k = rng.randrange(1, s.n + 1)
            ks.append(k)
        # mutate() itself verifies compatibility + full commutation when check=True
        cur = mutate_sequence(s, ks, check=True)
        check_compatible(cur.btilde, cur.lam, cur.n)
        verify_commutation(cur)


def test_cluster_monomial_examples():
    s = a2_seed()
    r = cluster_monomial(s, (), (1, 0))
    assert r.element == TorusElement.basis(L2, 1)
    assert r.g_vector == (1, 0)
    assert r.f_coefficients == {(0, 0): QLaurent.one()}

    r = cluster_monomial(s, (1,), (1, 0))
    assert r.element.render() == "X[-1,0] + X[-1,1]"
    assert r.g_vector == (-1, 1)
    assert set(r.f_coefficients) == {(0, 0), (1, 0)}
    assert r.f_coefficients[(0, 0)].is_one()
    assert expand_f_decomposition(r, s) == r.element


def test_rank2_periodicity():
    s = a2_seed()
    s5 = mutate_sequence(s, (1, 2, 1, 2, 1))
    assert s5.vars[0] == s.vars[1]
    assert s5.vars[1] == s.vars[0]


def test_g_vector_examples():
    s = a2_seed()
    assert g_vector(TorusElement.basis(L2, 1), s) == (1, 0)
    el = TorusElement(L2, {(-1, 0): QLaurent.one(), (-1, 1): QLaurent.one()})
    assert g_vector(el, s) == (-1, 1)
    # neither exponent can dominate when their difference leaves the cone
    # in both directions
    junk = TorusElement(L2, {(1, 1): QLaurent.one(), (0, 0): QLaurent.one()})
    with pytest.raises(NoGVector):
        g_vector(junk, s)


def test_f_polynomial_monomial():
    s = a2_seed()
    el = TorusElement.monomial(L2, (2, -1))
    assert f_polynomial(el, (2, -1), s) == {(0, 0): QLaurent.one()}


def test_f_polynomial_lam_2e1():
    s = a2_seed()
    r = cluster_monomial(s, (1,), (2, 0))
    assert set(r.f_coefficients) == {(0, 0), (1, 0), (2, 0)}
    mid = r.f_coefficients[(1, 0)]
    # (v + v^{-1}) times the normalization power v^s
    vals = sorted(mid.terms.values())
    assert vals == [1, 1] and max(mid.terms) - min(mid.terms) == 2
    assert expand_f_decomposition(r, s) == r.element


def test_f_roundtrip_corpus():
    for name in ("a2", "kronecker_principal"):
        s = corpus_seed(name)
        r = cluster_monomial(s, (1, 2), tuple(1 for _ in range(s.m)))
        assert expand_f_decomposition(r, s) == r.element
