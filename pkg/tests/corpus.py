"""The acceptance corpus: five compatible pairs with their QPs.

Principal-coefficient quantization is used wherever B itself is singular:
btilde = [B ; I_n] with Lambda = [[0, -I], [I, -B]], which satisfies
btilde^t Lambda = (I | 0) for any skew-symmetric B.
"""

from qcluster.quiver import Potential, QPData, from_btilde
from qcluster.seed import initial_seed
from qcluster.torus import SkewForm


def principal_pair(B):
    """(lambda_matrix, btilde) for the principal-coefficient seed of B."""
    n = len(B)
    btilde = [list(r) for r in B] + [[1 if i == j else 0 for j in range(n)]
                                     for i in range(n)]
    lam = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        lam[i][n + i] = -1
        lam[n + i][i] = 1
        for j in range(n):
            lam[n + i][n + j] = -B[i][j]
    return lam, btilde


_B_A2 = [[0, 1], [-1, 0]]
_B_KRON = [[0, 2], [-2, 0]]
_B_A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
_B_TRI = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]

_DEFS = {}
_DEFS["a2"] = (_B_A2, _B_A2, 2)
for name, B in (("a2_principal", _B_A2), ("kronecker_principal", _B_KRON),
                ("a3_principal", _B_A3), ("triangle_principal", _B_TRI)):
    lam, bt = principal_pair(B)
    _DEFS[name] = (lam, bt, len(B))

CORPUS_NAMES = tuple(sorted(_DEFS))


def corpus_data(name):
    """(lambda_matrix, btilde, n) for a corpus entry."""
    lam, bt, n = _DEFS[name]
    return [list(r) for r in lam], [list(r) for r in bt], n


def corpus_seed(name):
    lam, bt, n = corpus_data(name)
    return initial_seed(SkewForm(lam), bt, n)


def corpus_qp(name, degree_cap=12):
    """The QP attached to a corpus seed (full-cycle potential on the triangle)."""
    lam, bt, n = corpus_data(name)
    quiver = from_btilde(bt, n)
    terms = {}
    if name == "triangle_principal":
        def arrow_by(src, tgt):
            return next(a.id for a in quiver.arrows.values()
                        if a.source == src and a.target == tgt)
        terms[(arrow_by(3, 1), arrow_by(2, 3), arrow_by(1, 2))] = 1
    qp = QPData(quiver, Potential(degree_cap, terms))
    qp.validate()
    return qp


def all_sequences(n, max_len):
    """Every mutation sequence of length <= max_len, consecutive entries distinct."""
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for seq in frontier:
            for k in range(1, n + 1):
                if seq and seq[-1] == k:
                    continue
                nxt.append(seq + (k,))
        out.extend(nxt)
        frontier = nxt
    return out
