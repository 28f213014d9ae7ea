"""Decorated representations of a QP and their mutation.

Right-module convention throughout: the arrow a: i -> j acts as a linear
map M_j -> M_i, stored as a Mat of shape dims[i] x dims[j], and the word
(s_1, ..., s_r) acts by mats[s_r] * ... * mats[s_1].  The in/out assignment
for the mutation triangle lives in one place, `_triangle_maps`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LoopAtVertex, RelationViolation
from .linalg import (Mat, column_space_basis, extend_basis, hstack, invert,
                     kernel_basis, solve_matrix, vstack)
from .quiver import (Potential, QPData, Quiver, cyclic_derivative,
                     premutate_with_maps, reduce_with_trail)


@dataclass
class DecRep:
    """A pair (M, V): Jacobi module matrices plus a decoration vector."""

    qp: QPData
    dims: tuple[int, ...]
    mats: dict[str, Mat]
    vdims: tuple[int, ...]

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def total_dim(self) -> int:
        return sum(self.dims)

    def dump(self) -> str:
        """Canonical text: dims, vdims, matrices row-major by arrow id."""
        lines = [f"dims {list(self.dims)}", f"vdims {list(self.vdims)}"]
        for aid in sorted(self.mats):
            m = self.mats[aid]
            rows = "; ".join(" ".join(str(x) for x in r) for r in m.a)
            lines.append(f"{aid} ({m.rows}x{m.cols}) [{rows}]")
        return "\n".join(lines)


def negative_simple(qp: QPData, j: int) -> DecRep:
    """The trivial decorated representation (0, e_j)."""
    m = qp.quiver.m
    dims = (0,) * m
    mats = {a.id: Mat.zero(0, 0) for a in qp.quiver.arrows.values()}
    vdims = tuple(1 if v == j else 0 for v in range(1, m + 1))
    return DecRep(qp, dims, mats, vdims)


def simple(qp: QPData, j: int) -> DecRep:
    """(S_j, 0)."""
    m = qp.quiver.m
    dims = tuple(1 if v == j else 0 for v in range(1, m + 1))
    mats = {a.id: Mat.zero(dims[a.source - 1], dims[a.target - 1])
            for a in qp.quiver.arrows.values()}
    return DecRep(qp, dims, mats, (0,) * m)


def word_action(rep: DecRep, word) -> Mat:
    """Action of a path word: M_{target} -> M_{source}, first letter first."""
    q = rep.qp.quiver
    _, tgt = q.word_endpoints(word)
    mat = Mat.identity(rep.dim_at(tgt))
    for letter in word:
        mat = rep.mats[letter] * mat
    return mat


def combination_action(rep: DecRep, comb: dict) -> Mat | None:
    """Action of a {path: Fraction} combination (parallel paths)."""
    if not comb:
        return None
    first = next(iter(comb))
    total = word_action(rep, first).scale(comb[first])
    for w, c in list(comb.items())[1:]:
        total = total + word_action(rep, w).scale(c)
    return total


def check_jacobi(rep: DecRep) -> None:
    """Raise RelationViolation unless all dW act by zero and M is nilpotent."""
    q = rep.qp.quiver
    for aid in q.arrows:
        der = cyclic_derivative(rep.qp.potential, q, aid)
        act = combination_action(rep, der)
        if act is not None and not act.is_zero():
            raise RelationViolation(f"cyclic derivative at {aid} acts nonzero")
    total = rep.total_dim()
    if total == 0:
        return
    offs = [0]
    for d in rep.dims:
        offs.append(offs[-1] + d)
    big = [[Fraction(0)] * total for _ in range(total)]
    for a in q.arrows.values():
        m = rep.mats[a.id]
        r0, c0 = offs[a.source - 1], offs[a.target - 1]
        for i in range(m.rows):
            for j in range(m.cols):
                big[r0 + i][c0 + j] += m.a[i][j]
    big = Mat(total, total, big)
    power = Mat.identity(total)
    for _ in range(total):
        power = power * big
    if not power.is_zero():
        raise RelationViolation("module is not nilpotent")


def _triangle_maps(rep: DecRep, k: int):
    """Assemble (alpha, beta, gamma) and the summand layout at vertex k.

    M_in = sum over arrows b: k->j of M_j, M_out = sum over arrows a: i->k
    of M_i.  alpha: M_in -> M_k collects the actions of the b's, beta:
    M_k -> M_out the actions of the a's (right-module convention); gamma's
    (a, b) block is the action of d_{[ba]} W_2 with composites expanded.
    """
    q = rep.qp.quiver
    outgoing = sorted(q.arrows_from(k), key=lambda a: a.id)
    incoming = sorted(q.arrows_into(k), key=lambda a: a.id)
    dk = rep.dim_at(k)
    in_dims = [rep.dim_at(b.target) for b in outgoing]
    out_dims = [rep.dim_at(a.source) for a in incoming]
    d_in, d_out = sum(in_dims), sum(out_dims)

    alpha = hstack([rep.mats[b.id] for b in outgoing]) if outgoing else Mat.zero(dk, 0)
    beta = vstack([rep.mats[a.id] for a in incoming]) if incoming else Mat.zero(0, dk)

    pre, rev, comp = premutate_with_maps(rep.qp, k)
    w2 = Potential(rep.qp.potential.degree_cap,
                   {w: c for w, c in pre.potential.terms.items()
                    if not any(letter in rev.values() for letter in w)})
    comp_ids = set(comp.values())
    expand = {cid: pair for pair, cid in comp.items()}

    blocks = []
    for b in outgoing:
        row = []
        for a in incoming:
            cid = comp[(b.id, a.id)]
            der = cyclic_derivative(w2, pre.quiver, cid)
            der_md = {}
            for w, c in der.items():
                flat = []
                for letter in w:
                    if letter in comp_ids:
                        flat.extend(expand[letter])
                    else:
                        flat.append(letter)
                flat = tuple(flat)
                der_md[flat] = der_md.get(flat, Fraction(0)) + c
            act = combination_action(rep, der_md)
            if act is None:
                act = Mat.zero(rep.dim_at(b.target), rep.dim_at(a.source))
            row.append(act)
        blocks.append(row)
    if outgoing and incoming:
        gamma = vstack([hstack(r) for r in blocks])
    else:
        gamma = Mat.zero(d_in, d_out)
    return (pre, rev, comp, outgoing, incoming, alpha, beta, gamma,
            in_dims, out_dims)


def mutate_rep(rep: DecRep, k: int, reverse_pivots: bool = False) -> DecRep:
    """DWZ mutation of a decorated representation at vertex k."""
    q = rep.qp.quiver
    if q.has_loop_at(k):
        raise LoopAtVertex(f"loop at vertex {k}")
    (pre, rev, comp, outgoing, incoming, alpha, beta, gamma,
     in_dims, out_dims) = _triangle_maps(rep, k)
    d_in, d_out, dk = alpha.cols, beta.rows, rep.dim_at(k)
    vk = rep.vdims[k - 1]

    if not (alpha * gamma).is_zero():
        raise RelationViolation("alpha . gamma != 0: not a Jacobi module")
    if not (gamma * beta).is_zero():
        raise RelationViolation("gamma . beta != 0: not a Jacobi module")

    ker_gamma = kernel_basis(gamma)
    im_beta = column_space_basis(beta, reverse=reverse_pivots)
    c1 = extend_basis(im_beta, ker_gamma, d_out, reverse=reverse_pivots)
    units_out = [tuple(Fraction(1 if t == i else 0) for t in range(d_out))
                 for i in range(d_out)]
    rest = extend_basis(im_beta + c1, units_out, d_out, reverse=reverse_pivots)
    full_out = im_beta + c1 + rest
    im_gamma = column_space_basis(gamma, reverse=reverse_pivots)
    ker_alpha = kernel_basis(alpha)
    c3 = extend_basis(im_gamma, ker_alpha, d_in, reverse=reverse_pivots)

    n1, n2, n3 = len(c1), len(im_gamma), len(c3)
    dk_new = n1 + n2 + n3 + vk

    # alpha-bar: M_out -> M_k-bar, rows [ker g/im b | im g | 0 | 0]
    if d_out:
        inv_full = invert(Mat.from_columns(full_out, d_out))
        rows_c1 = Mat(n1, d_out, [inv_full.a[len(im_beta) + i] for i in range(n1)])
        coords_gamma = solve_matrix(im_gamma, gamma, d_in) if n2 else Mat.zero(0, d_out)
    else:
        rows_c1 = Mat(n1, 0)
        coords_gamma = Mat.zero(n2, 0)
    alpha_bar = vstack([rows_c1, coords_gamma, Mat.zero(n3, d_out), Mat.zero(vk, d_out)])

    # beta-bar: M_k-bar -> M_in, columns [0 | incl(im g) | incl(c3) | 0]
    beta_bar = hstack([Mat.zero(d_in, n1),
                       Mat.from_columns(im_gamma, d_in) if n2 else Mat.zero(d_in, 0),
                       Mat.from_columns(c3, d_in) if n3 else Mat.zero(d_in, 0),
                       Mat.zero(d_in, vk)])

    # ker beta / (ker beta  n  im alpha)
    ker_beta = kernel_basis(beta)
    im_alpha = column_space_basis(alpha)
    inter = _intersection_dim(ker_beta, im_alpha, dk)
    vk_new = len(ker_beta) - inter

    dims_new = list(rep.dims)
    dims_new[k - 1] = dk_new
    vdims_new = list(rep.vdims)
    vdims_new[k - 1] = vk_new

    mats_new: dict[str, Mat] = {}
    for a in q.arrows.values():
        if a.source != k and a.target != k:
            mats_new[a.id] = rep.mats[a.id]
    for (bid, aid), cid in comp.items():
        mats_new[cid] = rep.mats[aid] * rep.mats[bid]
    off = 0
    for a, d in zip(incoming, out_dims):
        cols = [alpha_bar.column(off + j) for j in range(d)]
        mats_new[rev[a.id]] = Mat.from_columns(cols, dk_new) if d else Mat.zero(dk_new, 0)
        off += d
    off = 0
    for b, d in zip(outgoing, in_dims):
        mats_new[rev[b.id]] = Mat(d, dk_new, [beta_bar.a[off + i] for i in range(d)])
        off += d

    out = DecRep(pre, tuple(dims_new), mats_new, tuple(vdims_new))
    reduced_qp, trail = reduce_with_trail(pre)
    out = _apply_trail(out, reduced_qp, trail)
    check_jacobi(out)
    return out


def _intersection_dim(basis1: list[tuple], basis2: list[tuple], dim: int) -> int:
    if not basis1 or not basis2:
        return 0
    m1 = Mat.from_columns(basis1, dim)
    m2 = Mat.from_columns(basis2, dim)
    from .linalg import rank
    return rank(m1) + rank(m2) - rank(hstack([m1, m2]))


def _apply_trail(rep: DecRep, reduced_qp: QPData, trail) -> DecRep:
    """Transport the module along the reduction's right-equivalence.

    For a potential substitution x -> x + corr the module action becomes
    rho(x) - rho(corr) (pullback along the inverse automorphism); deleted
    arrow pairs are dropped.
    """
    mats = dict(rep.mats)
    quiver = rep.qp.quiver
    for kind, payload in trail:
        if kind == "subst":
            updated = dict(mats)
            for x, corr in payload.items():
                new_x = mats[x]
                for _ in range(rep.total_dim() + 2):
                    trial = dict(updated)
                    trial[x] = new_x
                    delta = _eval_combination(quiver, trial, corr, rep.dims)
                    candidate = mats[x] - delta
                    if candidate == new_x:
                        break
                    new_x = candidate
                updated[x] = new_x
            mats = updated
        else:
            x, y = payload
            mats.pop(x, None)
            mats.pop(y, None)
    keep = set(reduced_qp.quiver.arrows)
    mats = {aid: m for aid, m in mats.items() if aid in keep}
    return DecRep(reduced_qp, rep.dims, mats, rep.vdims)


def _eval_combination(quiver: Quiver, mats: dict, comb: dict, dims) -> Mat:
    first = next(iter(comb))
    src, tgt = quiver.word_endpoints(first)

    def act(word):
        m = Mat.identity(dims[tgt - 1])
        for letter in word:
            m = mats[letter] * m
        return m

    total = act(first).scale(comb[first])
    for w, c in list(comb.items())[1:]:
        total = total + act(w).scale(c)
    return total


def h1_gamma(qp0: QPData, ks, j: int, reverse_pivots: bool = False) -> DecRep:
    """H^1 of the twisted projective: inverse mutations of (0, e_j).

    Mutate the QP forward along ks, start from the negative simple at j of
    the final QP, then mutate the representation back along reversed ks.
    The result's M-part is a module over (a QP right-equivalent to) qp0.
    """
    from .quiver import mutate_qp
    qp = qp0
    for k in ks:
        qp, _ = mutate_qp(qp, k)
    rep = negative_simple(qp, j)
    for k in reversed(list(ks)):
        rep = mutate_rep(rep, k, reverse_pivots=reverse_pivots)
    return rep


def h1_aggregate(qp0: QPData, ks, lam, reverse_pivots: bool = False) -> DecRep:
    """Direct sum of lam_j copies of h1_gamma over all vertices j."""
    reps = []
    for j, mult in enumerate(lam, start=1):
        if mult:
            rep = h1_gamma(qp0, ks, j, reverse_pivots=reverse_pivots)
            reps.extend([rep] * mult)
    if not reps:
        m = qp0.quiver.m
        return DecRep(qp0, (0,) * m, {a: Mat.zero(0, 0) for a in qp0.quiver.arrows},
                      (0,) * m)
    return direct_sum(reps)


def direct_sum(reps: list[DecRep]) -> DecRep:
    """Direct sum of decorated representations over the same QP."""
    base = reps[0]
    qp = base.qp
    for r in reps[1:]:
        if set(r.mats) != set(base.mats):
            raise RelationViolation("direct sum needs representations of one QP")
    m = qp.quiver.m
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(m))
    vdims = tuple(sum(r.vdims[v] for r in reps) for v in range(m))
    mats = {}
    for a in qp.quiver.arrows.values():
        rows, cols = dims[a.source - 1], dims[a.target - 1]
        entries = [[Fraction(0)] * cols for _ in range(rows)]
        roff = coff = 0
        for r in reps:
            blk = r.mats[a.id]
            for i in range(blk.rows):
                for jj in range(blk.cols):
                    entries[roff + i][coff + jj] = blk.a[i][jj]
            roff += blk.rows
            coff += blk.cols
        mats[a.id] = Mat(rows, cols, entries)
    return DecRep(qp, dims, mats, vdims)
