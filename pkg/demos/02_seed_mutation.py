#!/usr/bin/env python3
# Quantum seed mutation on the A2 data: the Laurent phenomenon in action,
# g-vectors and quantum F-polynomial coefficients read off exactly.

from qcluster import (SkewForm, cluster_monomial, frame_monomial, initial_seed,
                      mutate)

L = SkewForm([[0, 1], [-1, 0]])
B = [[0, 1], [-1, 0]]
seed = initial_seed(L, B, 2)

print("## one mutation: the exchange relation divides exactly")
s1 = mutate(seed, 1)
print("mu_1(X_1) =", s1.vars[0].render())
print("B~' =", [list(r) for r in s1.btilde])
print("Lambda' =", [list(r) for r in s1.lam.entries])

print()
print("## every variable along a length-5 walk is a Laurent polynomial")
cur = seed
for i, k in enumerate((1, 2, 1, 2, 1), start=1):
    cur = mutate(cur, k)
    print(f"after {i} steps: X_1 = {cur.vars[0].render():28} X_2 = {cur.vars[1].render()}")
print("rank-2 periodicity: the final cluster is the initial one swapped")

print()
print("## frame monomials: normalized ordered products")
print("M(2e_1) in the mutated seed:", frame_monomial(s1, (2, 0)).render())

print()
print("## g-vectors and F-coefficients, extracted from the element")
for ks, lam in [((1,), (1, 0)), ((1, 2), (0, 1)), ((1, 2, 1), (1, 0))]:
    res = cluster_monomial(seed, ks, lam)
    print(f"ks={ks} lam={lam}")
    print("  element:", res.element.render())
    print("  g =", list(res.g_vector))
    for gamma in sorted(res.f_coefficients):
        print(f"  F[{gamma}] = {res.f_coefficients[gamma].render()}")
