"""Quivers, truncated formal potentials, cyclic derivatives, DWZ mutation.

Words are tuples of arrow ids; a word (s_1, ..., s_r) is a path when
source(s_l) = target(s_{l+1}), i.e. the rightmost letter is traversed first
(function-composition order, matching the right-module action).  Cyclic
words are stored in their lexicographically minimal rotation.  Potentials
carry rational coefficients and are truncated at a configurable degree cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeCapExceeded, LoopAtVertex, NotSkewSymmetric, QClusterError


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


class Quiver:
    """Vertices 1..m plus a deterministic, id-keyed arrow list."""

    __slots__ = ("m", "arrows")

    def __init__(self, m: int, arrows):
        self.m = m
        amap = {}
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if not (1 <= a.source <= m and 1 <= a.target <= m):
                raise QClusterError(f"arrow {a.id} endpoints out of range")
            if a.id in amap:
                raise QClusterError(f"duplicate arrow id {a.id}")
            amap[a.id] = a
        self.arrows = dict(sorted(amap.items()))

    def arrow(self, aid: str) -> Arrow:
        return self.arrows[aid]

    def arrows_from(self, v: int):
        return [a for a in self.arrows.values() if a.source == v]

    def arrows_into(self, v: int):
        return [a for a in self.arrows.values() if a.target == v]

    def arrow_count(self):
        """{(source, target): multiplicity}."""
        out: dict[tuple[int, int], int] = {}
        for a in self.arrows.values():
            out[(a.source, a.target)] = out.get((a.source, a.target), 0) + 1
        return out

    def has_loop_at(self, v: int) -> bool:
        return any(a.source == a.target == v for a in self.arrows.values())

    def word_endpoints(self, word):
        """(source, target) of a path word; raises if not composable."""
        arrows = self.arrows
        for l in range(len(word) - 1):
            if arrows[word[l]].source != arrows[word[l + 1]].target:
                raise QClusterError(f"word {word} is not a path")
        return arrows[word[-1]].source, arrows[word[0]].target

    def is_cyclic_word(self, word) -> bool:
        src, tgt = self.word_endpoints(word)
        return src == tgt

    def subquiver_is_acyclic(self, vertices) -> bool:
        """No oriented cycle inside the given vertex subset."""
        verts = set(vertices)
        adj = {v: set() for v in verts}
        for a in self.arrows.values():
            if a.source in verts and a.target in verts and a.source != a.target:
                adj[a.source].add(a.target)
            elif a.source in verts and a.source == a.target:
                return False
        state = {v: 0 for v in verts}

        def visit(v):
            state[v] = 1
            for w in adj[v]:
                if state[w] == 1 or (state[w] == 0 and visit(w)):
                    return True
            state[v] = 2
            return False

        return not any(state[v] == 0 and visit(v) for v in verts)

    def __eq__(self, other):
        """Equality up to arrow renaming: same vertex count and multiplicities."""
        return (isinstance(other, Quiver) and self.m == other.m
                and self.arrow_count() == other.arrow_count())

    def __repr__(self):
        arrows = ", ".join(f"{a.id}:{a.source}->{a.target}" for a in self.arrows.values())
        return f"Quiver(m={self.m}, {arrows})"


def canonical_rotation(word):
    """Lexicographically minimal rotation of a tuple of arrow ids."""
    n = len(word)
    doubled = word + word
    return min(tuple(doubled[i:i + n]) for i in range(n))


class Potential:
    """A finite sum of cyclic words with Fraction coefficients, capped at D."""

    __slots__ = ("degree_cap", "terms")

    def __init__(self, degree_cap: int = 12, terms=None):
        if degree_cap < 2:
            raise QClusterError("degree cap must be >= 2")
        self.degree_cap = degree_cap
        out = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0 or len(w) > degree_cap:
                continue
            if len(w) == 0:
                raise QClusterError("length-0 potential terms are not allowed")
            w = canonical_rotation(tuple(w))
            out[w] = out.get(w, Fraction(0)) + c
        self.terms = {w: c for w, c in out.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __add__(self, other: "Potential") -> "Potential":
        cap = min(self.degree_cap, other.degree_cap)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return Potential(cap, out)

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Potential(0)"
        body = " + ".join(f"{c}*{''.join(w)}" if c != 1 else "".join(w)
                          for w, c in sorted(self.terms.items()))
        return f"Potential({body})"


@dataclass
class QPData:
    quiver: Quiver
    potential: Potential

    def validate(self):
        for w in self.potential.terms:
            if not self.quiver.is_cyclic_word(w):
                raise QClusterError(f"potential word {w} is not a closed path")


def from_btilde(btilde, n: int, extra=None) -> Quiver:
    """The canonical 2-acyclic quiver with a_{ji} - a_{ij} = b_{ij}.

    `extra` optionally supplies {(i, j): multiplicity} arrows among the
    frozen vertices n+1..m (the block the exchange matrix does not see).
    """
    m = len(btilde)
    for i in range(n):
        for j in range(n):
            if btilde[i][j] != -btilde[j][i]:
                raise NotSkewSymmetric("upper block of btilde must be skew-symmetric")
    counts: dict[tuple[int, int], int] = {}
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            b = btilde[i - 1][j - 1]
            if b > 0:
                counts[(j, i)] = counts.get((j, i), 0) + b
            elif b < 0 and i > n:
                counts[(i, j)] = counts.get((i, j), 0) - b
    for (i, j), mult in (extra or {}).items():
        if not (n < i <= m and n < j <= m):
            raise QClusterError("extra arrows must join frozen vertices")
        counts[(i, j)] = counts.get((i, j), 0) + mult
    arrows = []
    idx = 0
    for (src, tgt) in sorted(counts):
        for _ in range(counts[(src, tgt)]):
            idx += 1
            arrows.append(Arrow(f"a{idx}", src, tgt))
    return Quiver(m, arrows)


def quiver_mutate(q: Quiver, k: int) -> Quiver:
    """Reverse at k, add composites i->k->j, cancel 2-cycles maximally."""
    if q.has_loop_at(k):
        raise LoopAtVertex(f"loop at vertex {k}")
    counts = {}
    for a in q.arrows.values():
        if a.source == k:
            key = (a.target, k)
        elif a.target == k:
            key = (k, a.source)
        else:
            key = (a.source, a.target)
        counts[key] = counts.get(key, 0) + 1
    for a in q.arrows.values():
        if a.target == k:
            for b in q.arrows.values():
                if b.source == k:
                    key = (a.source, b.target)
                    counts[key] = counts.get(key, 0) + 1
    for (i, j) in sorted(counts):
        if i < j and (j, i) in counts:
            cancel = min(counts[(i, j)], counts[(j, i)])
            counts[(i, j)] -= cancel
            counts[(j, i)] -= cancel
    counts = {(i, j): c for (i, j), c in counts.items() if c > 0 and i != j}
    arrows = []
    idx = 0
    for (src, tgt) in sorted(counts):
        for _ in range(counts[(src, tgt)]):
            idx += 1
            arrows.append(Arrow(f"a{idx}", src, tgt))
    return Quiver(q.m, arrows)


def cyclic_derivative(p: Potential, q: Quiver, aid: str):
    """d/d(aid) of the potential: {path word: Fraction}.

    For each cyclic word and each occurrence of the arrow, contribute the
    word with that occurrence deleted, rotated to start just after it.
    """
    out: dict[tuple, Fraction] = {}
    for w, c in p.terms.items():
        L = len(w)
        for pos in range(L):
            if w[pos] == aid:
                rest = tuple(w[(pos + i) % L] for i in range(1, L))
                if rest:
                    out[rest] = out.get(rest, Fraction(0)) + c
                else:
                    raise QClusterError("derivative of a loop word is a lazy path")
    return {w: c for w, c in out.items() if c != 0}


def _fresh_id(base: str, taken) -> str:
    cand = base
    while cand in taken:
        cand += "'"
    return cand


def premutate(qp: QPData, k: int) -> QPData:
    """DWZ premutation: reversed arrows, composite arrows, W_1 + W_2."""
    return premutate_with_maps(qp, k)[0]


def premutate_with_maps(qp: QPData, k: int):
    """Premutation plus its bookkeeping.

    Returns (QPData, rev, comp) where rev maps each arrow at k to its
    reversal's id and comp maps (out_id, in_id) to the composite arrow id.
    """
    q = qp.quiver
    if q.has_loop_at(k):
        raise LoopAtVertex(f"loop at vertex {k}")
    incoming = q.arrows_into(k)
    outgoing = q.arrows_from(k)
    taken = set(q.arrows)
    arrows = [a for a in q.arrows.values() if a.source != k and a.target != k]
    rev = {}
    for a in incoming + outgoing:
        rid = _fresh_id(a.id + "*", taken)
        taken.add(rid)
        rev[a.id] = rid
        arrows.append(Arrow(rid, a.target, a.source))
    comp = {}
    for b in outgoing:
        for a in incoming:
            cid = _fresh_id(f"[{b.id}.{a.id}]", taken)
            taken.add(cid)
            comp[(b.id, a.id)] = cid
            arrows.append(Arrow(cid, a.source, b.target))
    quiver_new = Quiver(q.m, arrows)

    out_ids = {a.id for a in outgoing}
    in_ids = {a.id for a in incoming}
    cap = qp.potential.degree_cap
    w1 = {}
    for b in outgoing:
        for a in incoming:
            word = (comp[(b.id, a.id)], rev[a.id], rev[b.id])
            w1[canonical_rotation(word)] = w1.get(canonical_rotation(word), Fraction(0)) + 1

    w2 = {}
    for w, c in qp.potential.terms.items():
        w2_word = _replace_passages(w, out_ids, in_ids, comp)
        w2[w2_word] = w2.get(w2_word, Fraction(0)) + c
    pot = Potential(cap, w1) + Potential(cap, w2)
    return QPData(quiver_new, pot), rev, comp


def _replace_passages(word, out_ids, in_ids, comp):
    """Replace each adjacent (out-of-k, into-k) pair by the composite arrow."""
    L = len(word)
    start = None
    for p in range(L):
        prev = word[(p - 1) % L]
        if not (word[p] in in_ids and prev in out_ids):
            start = p
            break
    if start is None:
        raise QClusterError("cyclic word alternates through k in a way that "
                            "cannot be rotated to a safe start")
    rotated = tuple(word[(start + i) % L] for i in range(L))
    out = []
    i = 0
    while i < L:
        if (rotated[i] in out_ids and i + 1 < L and rotated[i + 1] in in_ids):
            out.append(comp[(rotated[i], rotated[i + 1])])
            i += 2
        else:
            out.append(rotated[i])
            i += 1
    return tuple(out)


def _substitute(pot: Potential, subs) -> Potential:
    """Apply arrow -> arrow + correction (a {path: Fraction} map) to W."""
    cap = pot.degree_cap
    out: dict[tuple, Fraction] = {}
    for w, c in pot.terms.items():
        acc = {(): c}
        for letter in w:
            options = {(letter,): Fraction(1)}
            if letter in subs:
                for path, coeff in subs[letter].items():
                    options[path] = options.get(path, Fraction(0)) + coeff
            nxt: dict[tuple, Fraction] = {}
            for pref, pc in acc.items():
                for path, oc in options.items():
                    joined = pref + path
                    if len(joined) > cap:
                        continue
                    nxt[joined] = nxt.get(joined, Fraction(0)) + pc * oc
            acc = nxt
        for word, coeff in acc.items():
            if not word:
                continue
            key = canonical_rotation(word)
            out[key] = out.get(key, Fraction(0)) + coeff
    return Potential(cap, out)


def reduce_with_trail(qp: QPData, max_rounds: int | None = None):
    """Split off the trivial part: returns (reduced QPData, trail).

    The trail records, in order, every substitution {arrow: correction} that
    was applied to the potential and every deleted arrow pair, so module
    structures can be transported along the same right-equivalence.
    """
    q, pot = qp.quiver, qp.potential
    trail: list[tuple] = []
    if max_rounds is None:
        max_rounds = 4 * pot.degree_cap + len(q.arrows) ** 2 + 8
    rounds = 0
    while True:
        quad = sorted(w for w in pot.terms if len(w) <= 2)
        if not quad:
            break
        w = quad[0]
        if len(w) == 1 or w[0] == w[1]:
            raise QClusterError(f"cannot reduce degenerate short term {w}")
        x, y = w
        c = pot.terms[w]
        while True:
            rounds += 1
            if rounds > max_rounds:
                raise DegreeCapExceeded(
                    "reduction did not stabilize within the degree cap")
            dx = cyclic_derivative(pot, q, x)
            dx.pop((y,), None)
            dy = cyclic_derivative(pot, q, y)
            dy.pop((x,), None)
            if not dx and not dy:
                break
            subs = {}
            if dy:
                subs[x] = {p: -coeff / c for p, coeff in dy.items()}
            if dx:
                subs[y] = {p: -coeff / c for p, coeff in dx.items()}
            trail.append(("subst", subs))
            pot = _substitute(pot, subs)
            c = pot.terms.get(w, Fraction(0))
            if c == 0:
                raise DegreeCapExceeded(
                    "quadratic pivot vanished during reduction")
        trail.append(("delete", (x, y)))
        pot = Potential(pot.degree_cap,
                        {w_: c_ for w_, c_ in pot.terms.items() if w_ != w})
        q = Quiver(q.m, [a for a in q.arrows.values() if a.id not in (x, y)])
    out = QPData(q, pot)
    out.validate()
    return out, trail


def reduce(qp: QPData) -> QPData:
    """reduce_with_trail without the transport data."""
    return reduce_with_trail(qp)[0]


def mutate_qp(qp: QPData, k: int):
    """mu_k = reduce after premutate; returns (QPData, well_mutable flag)."""
    red = reduce(premutate(qp, k))
    counts = red.quiver.arrow_count()
    well = all((j, i) not in counts for (i, j) in counts)
    return red, well


def euler_form(q: Quiver, g1, g2) -> int:
    """chi(g1, g2) = sum_i g1_i g2_i - sum_{arrows s->t} g1_t g2_s.

    Right-module convention: this is the homological Euler form for
    representations where an arrow s->t acts M_t -> M_s.
    """
    total = sum(a * b for a, b in zip(g1, g2))
    for arr in q.arrows.values():
        total -= g1[arr.target - 1] * g2[arr.source - 1]
    return total


def _paths_up_to(q: Quiver, L: int, limit: int = 200000):
    """All path words of length 0..L; length-0 paths are vertex markers."""
    by_len = [[((), v) for v in range(1, q.m + 1)]]
    for length in range(1, L + 1):
        prev = by_len[-1]
        cur = []
        for word, src in prev:
            for a in q.arrows.values():
                if a.target == src:
                    cur.append((word + (a.id,), a.source))
            if len(cur) > limit:
                raise DegreeCapExceeded("path enumeration budget exceeded")
        by_len.append(cur)
    return by_len


def jacobi_dims(qp: QPData, up_to: int):
    """Filtered dimensions of CQ/(dW) by path length, degrees 0..up_to."""
    pot = qp.potential
    if not pot.is_zero() and up_to > pot.degree_cap - pot.max_degree() + 1:
        raise DegreeCapExceeded(
            f"up_to {up_to} exceeds cap {pot.degree_cap} - max degree "
            f"{pot.max_degree()} + 1")
    q = qp.quiver
    by_len = _paths_up_to(q, up_to)
    if pot.is_zero():
        return [len(by_len[d]) for d in range(up_to + 1)]

    # idempotents are never hit by the ideal, so index only words of length >= 1
    all_paths = []
    for d in range(1, up_to + 1):
        all_paths.extend(word for word, _ in by_len[d])
    col = {w: i for i, w in enumerate(sorted(all_paths, key=lambda w: (-len(w), w)))}

    derivs = []
    for aid in q.arrows:
        d = cyclic_derivative(pot, q, aid)
        if d:
            derivs.append(d)
    vectors = []
    for der in derivs:
        lens = {len(p) for p in der}
        src, tgt = q.word_endpoints(next(iter(der)))
        min_len = min(lens)
        for dl in range(up_to + 1):
            for left, lsrc in by_len[dl]:
                if left and q.arrows[left[-1]].source != tgt:
                    continue
                if not left and lsrc != tgt:
                    continue
                for dr in range(up_to + 1 - dl - min_len):
                    for right, rsrc in by_len[dr]:
                        if right and q.arrows[right[0]].target != src:
                            continue
                        if not right and rsrc != src:
                            continue
                        vec = {}
                        for p, coeff in der.items():
                            w = left + p + right
                            if len(w) <= up_to:
                                vec[col[w]] = vec.get(col[w], Fraction(0)) + coeff
                        if vec:
                            vectors.append(vec)
    pivot_cols = _sparse_row_reduce(vectors)
    col_len = {idx: len(w) for w, idx in col.items()}
    total_rank = len(pivot_cols)
    cum_prev = 0
    out = []
    for d in range(up_to + 1):
        n_le = sum(len(by_len[l]) for l in range(d + 1))
        rank_gt = sum(1 for idx in pivot_cols if col_len[idx] > d)
        cum = n_le - (total_rank - rank_gt)
        out.append(cum - cum_prev)
        cum_prev = cum
    return out


def _sparse_row_reduce(vectors):
    """Gaussian elimination on sparse Fraction rows; returns pivot columns."""
    pivots: dict[int, dict] = {}
    for vec in vectors:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            if lead in pivots:
                piv = pivots[lead]
                factor = vec[lead] / piv[lead]
                for c, v in piv.items():
                    s = vec.get(c, Fraction(0)) - factor * v
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
            else:
                pivots[lead] = vec
                break
    return set(pivots)
