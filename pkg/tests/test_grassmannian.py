import itertools

import pytest

from qcluster.decorated import DecRep, h1_aggregate
from qcluster.errors import BudgetExceeded, NotPolynomialCount
from qcluster.grassmannian import (GF, CountTable, coefficient_crosscheck,
                                   gaussian_binomial, gr_count, purity_pattern,
                                   serre_interpolate, subspaces, to_fq)
from qcluster.linalg import Mat
from qcluster.qlaurent import QLaurent
from qcluster.quiver import Arrow, Potential, QPData, Quiver

from .oracles import count_submodules_by_closure


def test_gf_axioms():
    for q in (2, 3, 4, 5, 7, 8, 9):
        f = GF(q)
        for a in range(q):
            assert f.add(a, 0) == a and f.mul(a, 1) == a
            for b in range(q):
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                assert f.add(a, f.neg(a)) == 0
                for c in range(q):
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        for a in range(1, q):
            assert f.mul(a, f.inv(a)) == 1


def test_subspace_enumeration_counts():
    for q in (2, 3, 4):
        f = GF(q)
        for d in range(4):
            for k in range(d + 1):
                assert len(list(subspaces(f, d, k))) == gaussian_binomial(d, k, q)


def a2_indec():
    q = Quiver(2, [Arrow("a", 2, 1)])
    qp = QPData(q, Potential(12))
    return DecRep(qp, (1, 1), {"a": Mat(1, 1, [[1]])}, (0, 0))


def test_gr_count_examples():
    rep = a2_indec()
    for q in (2, 3, 5, 7):
        fq = to_fq(rep, q)
        assert gr_count(fq, (0, 0)) == 1            # whole module
        assert gr_count(fq, (1, 1)) == 1            # zero submodule
        assert gr_count(fq, (1, 0)) == 1            # unique invariant (0,1)
        assert gr_count(fq, (0, 1)) == 0
        assert gr_count(fq, (2, 0)) == 0            # out of range


def test_gr_count_budget():
    q = Quiver(1, [])
    rep = DecRep(QPData(q, Potential(12)), (6,), {}, (0,))
    with pytest.raises(BudgetExceeded):
        gr_count(to_fq(rep, 5), (3,), budget=10)


def test_gr_count_label_permutation_invariance():
    rep = a2_indec()
    # relabel vertices 1 <-> 2: arrow becomes 1 -> 2 with the same matrix
    q2 = Quiver(2, [Arrow("a", 1, 2)])
    rep2 = DecRep(QPData(q2, Potential(12)), (1, 1),
                  {"a": Mat(1, 1, [[1]])}, (0, 0))
    for q in (2, 3):
        for gamma in [(0, 0), (1, 0), (0, 1), (1, 1)]:
            swapped = (gamma[1], gamma[0])
            assert gr_count(to_fq(rep, q), gamma) == gr_count(to_fq(rep2, q), swapped)


def test_gr_count_opposite_duality():
    # counting codim gamma submodules = counting dim gamma quotients; for the
    # transposed action on the opposite quiver these swap
    rep = a2_indec()
    opp = Quiver(2, [Arrow("a", 1, 2)])
    rep_op = DecRep(QPData(opp, Potential(12)), (1, 1),
                    {"a": Mat(1, 1, [[1]])}, (0, 0))
    for q in (2, 3):
        for gamma in [(0, 0), (1, 0), (0, 1), (1, 1)]:
            co = tuple(d - g for d, g in zip(rep.dims, gamma))
            assert gr_count(to_fq(rep, q), gamma) == gr_count(to_fq(rep_op, q), co)


def test_total_submodule_count_matches_closure_oracle():
    cases = []
    q3 = Quiver(3, [Arrow("a", 1, 2), Arrow("b", 2, 3), Arrow("c", 3, 1)])
    qp3 = QPData(q3, Potential(12, {("c", "b", "a"): 1}))
    cases.append(DecRep(qp3, (1, 2, 1),
                        {"a": Mat(1, 2, [[1, 0]]), "b": Mat(2, 1, [[0], [1]]),
                         "c": Mat(1, 1, [[0]])}, (0, 0, 0)))
    cases.append(a2_indec())
    q1 = Quiver(2, [Arrow("a", 2, 1), Arrow("b", 2, 1)])
    cases.append(DecRep(QPData(q1, Potential(12)), (2, 2),
                        {"a": Mat(2, 2, [[1, 0], [0, 0]]),
                         "b": Mat(2, 2, [[0, 0], [1, 0]])}, (0, 0)))
    for rep in cases:
        for q in (2, 3):
            fq = to_fq(rep, q)
            total = 0
            for gamma in itertools.product(*[range(d + 1) for d in rep.dims]):
                total += gr_count(fq, gamma)
            arrows = [(a.source, a.target) for a in rep.qp.quiver.arrows.values()]
            mats = [fq.mats[a.id] for a in rep.qp.quiver.arrows.values()]
            oracle = count_submodules_by_closure(fq.field, rep.dims, arrows, mats)
            assert total == oracle


def test_serre_interpolate_examples():
    tbl = CountTable((0,), {2: 1, 3: 1, 5: 1})
    assert serre_interpolate(tbl, 0) == QLaurent({0: 1})
    tbl = CountTable((1,), {2: 3, 3: 4, 5: 6, 7: 8})
    assert serre_interpolate(tbl, 1) == QLaurent({0: 1, 1: 1})
    assert tbl.interpolated == QLaurent({0: 1, 1: 1})
    # three lines through a point: 3q + 1
    tbl = CountTable((1, 1, 1), {2: 7, 3: 10, 5: 16})
    assert serre_interpolate(tbl, 1) == QLaurent({0: 1, 1: 3})
    assert serre_interpolate(tbl, 1).eval_at_one() == 4


def test_serre_interpolate_failures():
    with pytest.raises(NotPolynomialCount):
        serre_interpolate(CountTable((0,), {2: 1, 3: 1}), 1)
    # held-out mismatch: 2^q is not a polynomial of degree <= 2
    tbl = CountTable((0,), {2: 4, 3: 8, 5: 32, 7: 128, 8: 256})
    with pytest.raises(NotPolynomialCount):
        serre_interpolate(tbl, 2)


def test_purity_pattern():
    assert purity_pattern(QLaurent({-2: 2, 0: 2}))
    assert purity_pattern(QLaurent({-1: 1, 1: 1}))
    assert not purity_pattern(QLaurent({-1: 1, 0: 1}))
    assert not purity_pattern(QLaurent({0: -1, 2: 1}))


def test_counts_independent_of_splitting_choices():
    from .corpus import corpus_qp
    qp = corpus_qp("triangle_principal")
    lam = (1, 1, 1, 0, 0, 0)
    a = h1_aggregate(qp, (1, 2, 3, 1), lam)
    b = h1_aggregate(qp, (1, 2, 3, 1), lam, reverse_pivots=True)
    for gamma in [(0, 0, 0, 0, 0, 0), (1, 1, 1, 0, 0, 0), (1, 0, 1, 0, 0, 0),
                  (2, 1, 1, 0, 0, 0), (2, 2, 2, 0, 0, 0)]:
        for q in (2, 3):
            assert gr_count(to_fq(a, q), gamma) == gr_count(to_fq(b, q), gamma)


def test_crosscheck_a2_hard_mode():
    from qcluster.dtseries import initial_class_map
    from qcluster.quiver import mutate_qp
    from qcluster.seed import cluster_monomial
    from .corpus import corpus_qp, corpus_seed

    s0 = corpus_seed("a2")
    qp0 = corpus_qp("a2")
    ks, lam = (1, 2), (1, 1)
    r = cluster_monomial(s0, ks, lam)
    h1 = h1_aggregate(qp0, ks, lam)
    qp_r = qp0
    for k in ks:
        qp_r, _ = mutate_qp(qp_r, k)
    rep = coefficient_crosscheck(r.f_coefficients, h1, qp_r, primes=(2, 3, 4, 5),
                                 gamma_map=initial_class_map([[0, 1], [-1, 0]], ks))
    assert rep.mode == "hard"
    assert rep.ok
    assert all(row.match for row in rep.rows)
    # gamma = 0 stratum is the single point
    row0 = next(row for row in rep.rows if row.gamma == (0, 0))
    assert row0.serre == QLaurent({0: 1}) and row0.f_coeff.is_one()
