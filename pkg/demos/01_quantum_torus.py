#!/usr/bin/env python3
# Exact arithmetic in the based quantum torus: X^e X^f = q^{L(e,f)/2} X^{e+f}.
# Everything runs over integer Laurent polynomials in v = q^(1/2).

from qcluster import (QLaurent, SkewForm, TorusElement, exact_right_divide,
                      is_positive, lefschetz_decompose)

L = SkewForm([[0, 1], [-1, 0]])     # rank 2, L(e1, e2) = 1
x1 = TorusElement.basis(L, 1)       # X^{e1}
x2 = TorusElement.basis(L, 2)       # X^{e2}

print("## products pick up half-integer q powers")
print("X^{e1} X^{e2} =", (x1 * x2).render())        # v X^{e1+e2}
print("X^{e2} X^{e1} =", (x2 * x1).render())        # v^{-1} X^{e1+e2}

# the commutation law X^e X^f = q^{L(e,f)} X^f X^e, checked exactly
lhs = x1 * x2
rhs = (x2 * x1).scale(QLaurent.monomial(2))         # times q = v^2
print("q-commutation holds:", lhs == rhs)

print()
print("## binomials square with a balanced middle coefficient")
s = x1 + x2
print("(X^{e1}+X^{e2})^2 =", (s * s).render())      # middle term (v + v^{-1})

print()
print("## division is exact or it loudly is not")
q = exact_right_divide(s * s, s)
print("(s^2) / s =", q.render())
try:
    exact_right_divide(x1, s)
except Exception as exc:
    print("X^{e1} / s ->", type(exc).__name__)

print()
print("## Lefschetz strings: symmetric positive coefficients decompose")
for poly in [QLaurent({-1: 1, 1: 1}),              # v^{-1} + v       = P(0,1)
             QLaurent({0: 1, 2: 1}),               # 1 + q            = P(1,1)
             QLaurent({-2: 1, 0: 2, 2: 1}),        # P(0,2) + P(0,0)
             QLaurent({-1: 1, 0: 1})]:             # mixed parity: fails
    dec = lefschetz_decompose(poly)
    if dec.ok:
        print(f"{poly.render():24} -> N={dec.center}, mult={dec.multiplicities}")
    else:
        print(f"{poly.render():24} -> no decomposition ({dec.reason})")

print()
print("## positivity is a statement about every coefficient")
print("positive:", is_positive(s * s), "/", is_positive(x1 - x2))
