"""Quantum seeds: compatible pairs, frame monomials, mutation, g-vectors.

A seed carries the ambient (initial) skew form, the current form Lambda_M,
the m x n exchange matrix, and the current cluster expressed inside the
initial torus.  Mutation follows the matrix rule and the exchange relation;
the new variable is produced by one exact right division of the two-monomial
numerator by the old variable (only the sum is guaranteed Laurent).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DimensionMismatch, IncompatiblePair, InconsistentLattice,
                     NoGVector, NotSkewSymmetric)
from .qlaurent import QLaurent
from .torus import SkewForm, TorusElement, exact_right_divide


def _check_btilde(btilde, m, n):
    if len(btilde) != m or any(len(row) != n for row in btilde):
        raise DimensionMismatch("btilde must be m x n")
    for i in range(n):
        for j in range(n):
            if btilde[i][j] != -btilde[j][i]:
                raise NotSkewSymmetric("upper n x n block of btilde must be skew-symmetric")


def _compatibility_product(btilde, lam: SkewForm, n: int):
    """B~^t Lambda_M as an n x m matrix."""
    m = lam.dim
    return [[sum(btilde[i][k] * lam.entries[i][j] for i in range(m))
             for j in range(m)] for k in range(n)]


def check_compatible(btilde, lam: SkewForm, n: int) -> None:
    """Require B~^t Lambda_M = (I_n | 0)."""
    prod = _compatibility_product(btilde, lam, n)
    m = lam.dim
    for k in range(n):
        for j in range(m):
            want = 1 if j == k else 0
            if prod[k][j] != want:
                raise IncompatiblePair(
                    f"(B~^t Lambda)[{k + 1}][{j + 1}] = {prod[k][j]}, expected {want}")


class QuantumSeed:
    """Immutable seed (Lambda_M, B~, cluster) living inside the initial torus."""

    __slots__ = ("m", "n", "lam", "btilde", "vars", "initial_form")

    def __init__(self, m, n, lam: SkewForm, btilde, vars, initial_form: SkewForm):
        self.m = m
        self.n = n
        self.lam = lam
        self.btilde = tuple(tuple(r) for r in btilde)
        self.vars = tuple(vars)
        self.initial_form = initial_form

    def btilde_column(self, k: int):
        """Column k (1-based) of B~ as a length-m tuple."""
        return tuple(self.btilde[i][k - 1] for i in range(self.m))

    def var(self, i: int) -> TorusElement:
        """Cluster variable / coefficient X_i = M(e_i), 1-based."""
        return self.vars[i - 1]

    def __eq__(self, other):
        return (isinstance(other, QuantumSeed) and self.m == other.m and self.n == other.n
                and self.lam == other.lam and self.btilde == other.btilde
                and self.vars == other.vars and self.initial_form == other.initial_form)

    def __repr__(self):
        return f"QuantumSeed(m={self.m}, n={self.n}, btilde={[list(r) for r in self.btilde]})"


def initial_seed(lam: SkewForm, btilde, n: int) -> QuantumSeed:
    """The seed with M(c) = X^c: vars[i] = X^{e_i}, Lambda_M = ambient form."""
    m = lam.dim
    _check_btilde(btilde, m, n)
    check_compatible(btilde, lam, n)
    vars = [TorusElement.basis(lam, i) for i in range(1, m + 1)]
    return QuantumSeed(m, n, lam, btilde, vars, lam)


def _positive_product(s: QuantumSeed, c) -> TorusElement:
    """M(c) for entrywise non-negative c: normalized ordered product."""
    lam = s.lam
    twist = 0
    for i in range(s.m):
        if c[i]:
            for j in range(i + 1, s.m):
                if c[j]:
                    twist += lam.entries[i][j] * c[i] * c[j]
    acc = TorusElement.one(s.initial_form)
    for i in range(s.m):
        for _ in range(c[i]):
            acc = acc * s.vars[i]
    return acc.scale(QLaurent.monomial(-twist))


def frame_monomial(s: QuantumSeed, c) -> TorusElement:
    """The toric-frame value M(c) inside the initial torus.

    For mixed-sign c this is v^{Lambda_M(c+, c-)} M(c+) M(c-)^{-1} with a
    single exact right division; it exists iff M(c) is Laurent, and the
    division error propagates otherwise.
    """
    if len(c) != s.m:
        raise DimensionMismatch("monomial vector has wrong length")
    cp = tuple(x if x > 0 else 0 for x in c)
    cm = tuple(-x if x < 0 else 0 for x in c)
    pos = _positive_product(s, cp)
    if not any(cm):
        return pos
    neg = _positive_product(s, cm)
    twist = s.lam.pair(cp, cm)
    return exact_right_divide(pos.scale(QLaurent.monomial(twist)), neg)


def _matrix_mutation(btilde, m, n, k):
    """Fomin-Zelevinsky rule on an m x n matrix at column/row k (1-based)."""
    k -= 1
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -btilde[i][j]
            else:
                b_ik = btilde[i][k]
                b_kj = btilde[k][j]
                out[i][j] = btilde[i][j] + (abs(b_ik) * b_kj + b_ik * abs(b_kj)) // 2
    return out


def mutate(s: QuantumSeed, k: int, check: bool = True) -> QuantumSeed:
    """Seed mutation at direction k (1-based, k <= n)."""
    if not 1 <= k <= s.n:
        raise DimensionMismatch(f"mutation direction {k} out of range 1..{s.n}")
    btilde_new = _matrix_mutation([list(r) for r in s.btilde], s.m, s.n, k)

    col = s.btilde_column(k)
    p1 = tuple(col[i] if col[i] > 0 else 0 for i in range(s.m))
    p2 = tuple(-col[i] if col[i] < 0 else 0 for i in range(s.m))
    ek = tuple(1 if i == k - 1 else 0 for i in range(s.m))
    numerator = (_positive_product(s, p1).scale(QLaurent.monomial(s.lam.pair(p1, ek)))
                 + _positive_product(s, p2).scale(QLaurent.monomial(s.lam.pair(p2, ek))))
    new_var = exact_right_divide(numerator, s.vars[k - 1])

    # Lambda' read off from commutation: both exchange monomials q-commute
    # with X_j with the common exponent Lambda_M(p1 - e_k, e_j) for j != k.
    c1 = tuple(a - b for a, b in zip(p1, ek))
    lam_new = [list(r) for r in s.lam.entries]
    for j in range(s.m):
        if j != k - 1:
            ej = tuple(1 if t == j else 0 for t in range(s.m))
            val = s.lam.pair(c1, ej)
            lam_new[k - 1][j] = val
            lam_new[j][k - 1] = -val
    lam_new = SkewForm(lam_new)

    vars_new = list(s.vars)
    vars_new[k - 1] = new_var
    out = QuantumSeed(s.m, s.n, lam_new, btilde_new, vars_new, s.initial_form)
    if check:
        check_compatible(out.btilde, out.lam, out.n)
        verify_commutation(out)
    return out


def verify_commutation(s: QuantumSeed) -> None:
    """Assert vars[i] vars[j] = v^{2 Lambda_M(i,j)} vars[j] vars[i] exactly."""
    for i in range(s.m):
        for j in range(i + 1, s.m):
            lhs = s.vars[i] * s.vars[j]
            rhs = (s.vars[j] * s.vars[i]).scale(QLaurent.monomial(2 * s.lam.entries[i][j]))
            if lhs != rhs:
                raise InconsistentLattice(
                    f"commutation of vars[{i + 1}], vars[{j + 1}] does not match Lambda_M")


@dataclass
class ClusterMonomialResult:
    element: TorusElement
    g_vector: tuple[int, ...]
    f_coefficients: dict[tuple[int, ...], QLaurent]


def mutate_sequence(s: QuantumSeed, ks, check: bool = True) -> QuantumSeed:
    prev = None
    for k in ks:
        if prev == k:
            raise DimensionMismatch("consecutive mutation directions must differ")
        s = mutate(s, k, check=check)
        prev = k
    return s


def g_vector(r: TorusElement, s0: QuantumSeed) -> tuple[int, ...]:
    """The unique exponent g of r with every exponent in g + B~ Z^n_{>=0}."""
    if r.is_zero():
        raise NoGVector("zero element has no g-vector")
    found = None
    for g in r.terms:
        if all(_gamma_for(s0, u, g) is not None for u in r.terms):
            if found is not None:
                raise NoGVector("two dominating exponents; input is not a cluster monomial")
            found = g
    if found is None:
        raise NoGVector("no dominating exponent")
    return found


def _gamma_for(s0: QuantumSeed, u, g):
    """gamma in Z^n_{>=0} with B~ gamma = u - g, via gamma_j = -Lambda(e_j, u-g)."""
    diff = tuple(a - b for a, b in zip(u, g))
    row = s0.initial_form.apply(diff)  # row_j = Lambda(diff, e_j) = -Lambda(e_j, diff)
    gamma = tuple(row[j] for j in range(s0.n))
    if any(x < 0 for x in gamma):
        return None
    for i in range(s0.m):
        if sum(s0.btilde[i][j] * gamma[j] for j in range(s0.n)) != diff[i]:
            return None
    return gamma


def f_polynomial(r: TorusElement, g, s0: QuantumSeed):
    """Coefficients c_gamma with r = sum_gamma c_gamma * X^g X^{B~ gamma}.

    The raw coefficient at exponent u is rescaled by v^{-Lambda(g, B~ gamma)}
    so the product decomposition holds exactly.
    """
    out: dict[tuple[int, ...], QLaurent] = {}
    for u, c in r.terms.items():
        gamma = _gamma_for(s0, u, g)
        if gamma is None:
            raise InconsistentLattice(f"exponent {u} not of the form g + B~ gamma")
        bg = tuple(a - b for a, b in zip(u, g))
        out[gamma] = c.shift(-s0.initial_form.pair(g, bg))
    return out


def cluster_monomial(s0: QuantumSeed, ks, lam, check: bool = True) -> ClusterMonomialResult:
    """Mutate along ks, evaluate the frame at lam >= 0, extract g and F-data."""
    if any(x < 0 for x in lam):
        raise DimensionMismatch("cluster monomials need lam >= 0")
    s = mutate_sequence(s0, ks, check=check)
    element = frame_monomial(s, lam)
    g = g_vector(element, s0)
    coeffs = f_polynomial(element, g, s0)
    return ClusterMonomialResult(element, g, coeffs)


def expand_f_decomposition(result: ClusterMonomialResult, s0: QuantumSeed) -> TorusElement:
    """Rebuild sum_gamma c_gamma X^g X^{B~ gamma}; must reproduce the element."""
    form = s0.initial_form
    total = TorusElement.zero(form)
    xg = TorusElement.monomial(form, result.g_vector)
    for gamma, c in result.f_coefficients.items():
        bg = tuple(sum(s0.btilde[i][j] * gamma[j] for j in range(s0.n)) for i in range(s0.m))
        total = total + (xg * TorusElement.monomial(form, bg)).scale(c)
    return total
