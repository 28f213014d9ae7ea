"""Quiver Grassmannian point counts over small finite fields.

Subspaces are enumerated through reduced row echelon representatives, arrow
invariance is checked by row reduction, and Serre polynomials are recovered
by exact Lagrange interpolation with a held-out consistency point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .decorated import DecRep
from .errors import BudgetExceeded, NotPolynomialCount, QClusterError
from .qlaurent import QLaurent
from .quiver import QPData

# irreducible polynomials (coefficients low -> high) for the default fields
_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (5, 2): (2, 1, 1),        # x^2 + x + 2
    (7, 2): (1, 1, 1),        # x^2 + x + 1
}


def _factor_prime_power(q: int):
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            t = q
            while t % p == 0:
                t //= p
                k += 1
            if t != 1:
                raise QClusterError(f"{q} is not a prime power")
            return p, k
        p += 1
    return q, 1


class GF:
    """The field with q = p^k elements; elements are ints 0..q-1.

    Extension-field elements encode coefficient vectors base p; add/mul/inv
    tables are precomputed (fields here are tiny).
    """

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self._mul = None
            self._inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]
        else:
            if (p, k) not in _IRREDUCIBLE:
                raise QClusterError(f"no irreducible polynomial stored for GF({q})")
            modulus = _IRREDUCIBLE[(p, k)]
            self._mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(q):
                    self._mul[a][b] = self._poly_mul(a, b, modulus)
            self._inv = [0] * q
            for a in range(1, q):
                for b in range(1, q):
                    if self._mul[a][b] == 1:
                        self._inv[a] = b
                        break

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        val = 0
        for d in reversed(ds):
            val = val * self.p + d
        return val

    def _poly_mul(self, a, b, modulus):
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for j in range(k):
                    prod[top - k + j] = (prod[top - k + j] - c * modulus[j]) % p
        return self._undigits(prod[:k])

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def from_fraction(self, fr: Fraction) -> int:
        den = fr.denominator % self.p
        if den == 0:
            raise QClusterError(f"denominator divisible by {self.p}")
        num = fr.numerator % self.p
        return self.mul(num, self.inv(den))


def _rref_gf(field: GF, rows):
    """Reduced row echelon form over GF; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _reduce_against(field: GF, basis_rows, pivots, vec):
    """Residue of vec modulo the RREF row space."""
    v = list(vec)
    for row, p in zip(basis_rows, pivots):
        if v[p]:
            f = v[p]
            v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
    return v


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def subspaces(field: GF, d: int, k: int):
    """All k-dimensional subspaces of F_q^d as RREF row tuples."""
    if k == 0:
        yield ()
        return
    q = field.q
    for pivots in itertools.combinations(range(d), k):
        free = []
        for i, p in enumerate(pivots):
            for c in range(p + 1, d):
                if c not in pivots:
                    free.append((i, c))
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), val in zip(free, values):
                rows[i][c] = val
            yield tuple(tuple(r) for r in rows)


@dataclass
class FqRep:
    """A DecRep's matrices reduced into GF(q)."""

    field: GF
    dims: tuple[int, ...]
    mats: dict[str, tuple]         # arrow id -> row tuples, shape dims[src] x dims[tgt]
    arrows: tuple                  # (id, source, target) triples


def to_fq(rep: DecRep, q: int) -> FqRep:
    field = GF(q)
    mats = {}
    arrows = []
    for a in rep.qp.quiver.arrows.values():
        m = rep.mats[a.id]
        mats[a.id] = tuple(tuple(field.from_fraction(x) for x in row) for row in m.a)
        arrows.append((a.id, a.source, a.target))
    return FqRep(field, rep.dims, mats, tuple(arrows))


def gr_count(rep: FqRep, gamma, budget: int = 500000) -> int:
    """Points of Gr(rep, gamma): subspace tuples with quotient dims gamma.

    A tuple (U_v) is a submodule when the arrow a: i -> j (acting
    M_j -> M_i) satisfies  a(U_j) <= U_i.
    """
    m = len(rep.dims)
    if any(g < 0 or g > d for g, d in zip(gamma, rep.dims)):
        return 0
    sub_dims = [d - g for d, g in zip(rep.dims, gamma)]
    total = 1
    for d, k in zip(rep.dims, sub_dims):
        total *= gaussian_binomial(d, k, rep.field.q)
        if total > budget:
            raise BudgetExceeded(f"enumeration size {total} exceeds budget {budget}")
    field = rep.field
    per_vertex = [list(subspaces(field, d, k)) for d, k in zip(rep.dims, sub_dims)]
    rref_cache = [[(_rref_gf(field, rows)) for rows in vert] for vert in per_vertex]
    count = 0
    for choice in itertools.product(*[range(len(v)) for v in per_vertex]):
        ok = True
        for aid, src, tgt in rep.arrows:
            mat = rep.mats[aid]
            rows_tgt = per_vertex[tgt - 1][choice[tgt - 1]]
            basis_src, piv_src = rref_cache[src - 1][choice[src - 1]]
            for u in rows_tgt:
                img = tuple(_dot_row(field, mat_row, u) for mat_row in mat)
                if any(_reduce_against(field, basis_src, piv_src, img)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def _dot_row(field: GF, row, vec):
    total = 0
    for x, y in zip(row, vec):
        if x and y:
            total = field.add(total, field.mul(x, y))
    return total


@dataclass
class CountTable:
    gamma: tuple[int, ...]
    counts: dict[int, int] = field(default_factory=dict)
    interpolated: QLaurent | None = None


def serre_interpolate(tbl: CountTable, degree_bound: int) -> QLaurent:
    """The integer polynomial in T through the counts, held-out verified.

    Fits degree <= degree_bound through the smallest degree_bound + 1
    points, then checks every remaining point (the largest acts as the
    held-out consistency point) and integrality of all coefficients.
    """
    points = sorted(tbl.counts.items())
    if len(points) < degree_bound + 2:
        raise NotPolynomialCount(
            f"need at least {degree_bound + 2} prime powers, have {len(points)}")
    fit = points[:degree_bound + 1]
    rest = points[degree_bound + 1:]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, (xi, yi) in enumerate(fit):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(fit):
            if j == i:
                continue
            denom *= xi - xj
            basis = _poly_mul_linear(basis, -xj)
        scale = Fraction(yi) / denom
        for d_, c in enumerate(basis):
            coeffs[d_] += scale * c
    for x, y in rest:
        if sum(c * x ** d_ for d_, c in enumerate(coeffs)) != y:
            raise NotPolynomialCount(f"held-out point T={x} mismatches the fit")
    if any(c.denominator != 1 for c in coeffs):
        raise NotPolynomialCount("interpolated coefficients are not integers")
    poly = QLaurent({d_: int(c) for d_, c in enumerate(coeffs) if c})
    tbl.interpolated = poly
    return poly


def _poly_mul_linear(coeffs, const):
    """coeffs(T) * (T + const)."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] += c
        out[i] += c * const
    return out


@dataclass
class CrosscheckRow:
    gamma: tuple[int, ...]
    qr_class: tuple[int, ...] | None
    counts: dict[int, int]
    serre: QLaurent | None
    f_coeff: QLaurent
    match: bool | None
    euler_match: bool | None
    purity_ok: bool
    note: str = ""


@dataclass
class CrosscheckReport:
    mode: str                      # "hard" or "report"
    rows: list[CrosscheckRow]

    @property
    def ok(self) -> bool:
        for row in self.rows:
            if not row.purity_ok:
                return False
            if self.mode == "hard" and row.match is not True:
                return False
            if row.euler_match is False:
                return False
        return True


def purity_pattern(p: QLaurent) -> bool:
    """Uniform exponent parity and non-negative coefficients."""
    if p.is_zero():
        return True
    degs = sorted(p.terms)
    return (all((d - degs[0]) % 2 == 0 for d in degs)
            and all(c >= 0 for c in p.terms.values()))


def coefficient_crosscheck(f_coefficients, h1: DecRep, qp_r: QPData,
                           primes=(2, 3, 4, 5, 7, 8, 9), budget: int = 500000,
                           gamma_map=None, jobs: int = 1) -> CrosscheckReport:
    """Compare F-polynomial coefficients with Grassmannian Serre polynomials.

    `f_coefficients` maps the initial-label stratum delta to its QLaurent
    coefficient; Gr(h1, delta) is counted over the given prime powers and
    interpolated.  In hard mode (acyclic mutable part at the h1 end or the
    qp_r end) the exact identity

        F_delta(v) = Serre_delta(v^{-2}) * v^{-chi_{Q_r}(gamma, gamma)}

    is asserted, with gamma = gamma_map(delta) when available (falling back
    to degree alignment otherwise); in report mode only Euler
    characteristics at T = 1 and the purity pattern are compared.
    """
    n = len(next(iter(f_coefficients)))
    mutable = range(1, n + 1)
    hard = (h1.qp.quiver.subquiver_is_acyclic(mutable)
            or qp_r.quiver.subquiver_is_acyclic(mutable))
    from .quiver import euler_form
    rows = []
    tasks = []
    for delta in sorted(f_coefficients):
        full = tuple(delta) + (0,) * (len(h1.dims) - n)
        for q in primes:
            tasks.append((delta, full, q))
    results = {}
    if jobs > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = {pool.submit(_count_task, h1, full, q, budget): (delta, q)
                    for delta, full, q in tasks}
            for fut in concurrent.futures.as_completed(futs):
                results[futs[fut]] = fut.result()
    else:
        for delta, full, q in tasks:
            results[(delta, q)] = _count_task(h1, full, q, budget)

    for delta in sorted(f_coefficients):
        f_coeff = f_coefficients[delta]
        counts = {}
        note = ""
        budget_hit = False
        for q in primes:
            res = results[(tuple(delta), q)]
            if res is None:
                budget_hit = True
            else:
                counts[q] = res
        if budget_hit:
            rows.append(CrosscheckRow(tuple(delta), None, counts, None, f_coeff,
                                      None, None, purity_pattern(f_coeff),
                                      "SKIPPED: budget exceeded"))
            continue
        dims_mut = h1.dims[:n]
        max_dim = sum(d_ * (dd - d_) for d_, dd in zip(delta, dims_mut) if dd >= d_)
        degree_bound = min(max_dim, len(primes) - 2)
        tbl = CountTable(tuple(delta), counts)
        serre = None
        try:
            serre = serre_interpolate(tbl, degree_bound)
        except NotPolynomialCount as exc:
            note = f"interpolation failed: {exc}"
        qr_class = tuple(gamma_map(delta)) if gamma_map else None
        euler_match = None
        match = None
        if serre is not None:
            euler_match = (f_coeff.eval_at_one() == serre.eval_at_one())
            dual = QLaurent({-2 * k: c for k, c in serre.terms.items()})
            if qr_class is not None:
                chi = euler_form(qp_r.quiver, qr_class + (0,) * (len(h1.dims) - n),
                                 qr_class + (0,) * (len(h1.dims) - n))
                match = (f_coeff == dual.shift(-chi))
            else:
                aligned = dual.shift(f_coeff.max_deg() - dual.max_deg())
                match = (f_coeff == aligned)
        rows.append(CrosscheckRow(tuple(delta), qr_class, counts, serre, f_coeff,
                                  match, euler_match, purity_pattern(f_coeff), note))
    return CrosscheckReport("hard" if hard else "report", rows)


def _count_task(h1: DecRep, gamma_full, q: int, budget: int):
    try:
        return gr_count(to_fq(h1, q), gamma_full, budget)
    except BudgetExceeded:
        return None
