"""Solomon descent algebra: the matrix M, quasi-idempotents and their characters.

Transversals follow the left-descent convention ``X_J = {x : l(sx) > l(x)
for s in J}``, so every element of the descent algebra is constant on the
sets ``{y : D(y) = D}``.  Such elements are stored as a vector of
coefficients indexed by descent masks, which is how all the heavy lifting
below is done; :class:`GroupAlgebraVector` is the sparse element-level view.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .coxgroup import (
    _coordinates,
    _parabolic_cached,
    mask_of,
    _normalizer,
    transversal_positions,
    positions_of,
)


class GroupAlgebraVector:
    """Sparse exact linear combination of group elements (serial numbers)."""

    def __init__(self, box, coeffs=None):
        self.box = box
        self.coeffs = {int(k): Fraction(v) for k, v in (coeffs or {}).items() if v}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraVector(self.box, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GroupAlgebraVector(self.box, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        """Convolution product; quadratic in the supports."""
        if not isinstance(other, GroupAlgebraVector):
            return self.scale(other)
        box = self.box
        keys_b = np.array(list(other.coeffs), dtype=np.int64)
        vals_b = list(other.coeffs.values())
        out = {}
        for x, a in self.coeffs.items():
            prods = box.mul(x, keys_b)
            for y, b in zip(prods.tolist(), vals_b):
                out[y] = out.get(y, 0) + a * b
        return GroupAlgebraVector(box, out)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraVector) and self.coeffs == other.coeffs

    def __getitem__(self, x):
        return self.coeffs.get(int(x), Fraction(0))

    def support(self):
        return sorted(self.coeffs)

    @classmethod
    def identity(cls, box):
        return cls(box, {0: 1})

    @classmethod
    def from_descent_coeffs(cls, box, members, coeffs, lmask):
        """Element of the descent algebra of a parabolic: ``coeffs[D(y) & lmask]`` at ``y``."""
        out = {}
        for y in members.tolist():
            c = coeffs[int(box.desc[y]) & lmask]
            if c:
                out[y] = c
        return cls(box, out)


def subsets_of(pos):
    """Subsets of ``pos`` (as position tuples) in binary-counter order."""
    pos = tuple(pos)
    return [tuple(p for b, p in enumerate(pos) if k >> b & 1) for k in range(1 << len(pos))]


def _lower_triangular_inverse(M):
    n = len(M)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = Fraction(1, M[j][j])
        for i in range(j + 1, n):
            s = sum((M[i][k] * inv[k][j] for k in range(j, i) if M[i][k]), Fraction(0))
            inv[i][j] = -s / M[i][i]
    return inv


@dataclass
class DescentMatrix:
    """``M`` and ``N = M^-1`` for the parabolic ``W_L``; rows/columns are subsets of L."""

    L: tuple  # 0-based positions
    subsets: list
    M: list
    N: list

    def index(self, K):
        K = set(K)
        return sum(1 << b for b, p in enumerate(self.L) if p in K)

    def n(self, K, J):
        return self.N[self.index(K)][self.index(J)]

    def m(self, K, J):
        return self.M[self.index(K)][self.index(J)]


def _local_mask(box, L, members):
    """Descent and simple-conjugation data of ``members`` restricted to L, in local bits."""
    Lpos = list(L)
    simple = np.array(box.datum.simple)
    targets = simple[Lpos]
    desc = np.zeros(len(members), dtype=np.int64)
    tmask = np.zeros(len(members), dtype=np.int64)
    img = box.perms[members][:, targets].astype(np.int64)
    # x^-1 s x is the reflection in alpha_s.x; simple iff that root is simple in W_L
    is_simple = np.isin(img, targets)
    for b, p in enumerate(Lpos):
        desc |= ((box.desc[members] >> p) & 1) << b
        tmask |= is_simple[:, b].astype(np.int64) << b
    return desc, tmask


def descent_matrix(box, L):
    """The matrix ``m_KJ = |{x in X_K^L : J^x in S}|`` for ``K ⊇ J``, and its inverse."""
    return _descent_matrix(box, positions_of(box, L))


def _descent_matrix(box, L):
    cache = box.__dict__.setdefault("_descent_matrix_cache", {})
    if L in cache:
        return cache[L]
    sub = _parabolic_cached(box, L)
    desc, tmask = _local_mask(box, L, sub.members)
    k = len(L)
    size = 1 << k
    counts = np.zeros((size, size), dtype=np.int64)
    np.add.at(counts, (desc, tmask), 1)
    masks = np.arange(size)
    # A[K, D] = [K & D == 0]; B[T, J] = [J subset of T]
    A = ((masks[:, None] & masks[None, :]) == 0).astype(np.int64)
    B = ((masks[None, :] & ~masks[:, None]) == 0).astype(np.int64)
    full = A @ counts @ B
    sup = (masks[None, :] & ~masks[:, None]) == 0  # J subset of K
    full = np.where(sup, full, 0)
    M = [[int(v) for v in row] for row in full]
    N = _lower_triangular_inverse(M)
    out = DescentMatrix(L, subsets_of(L), M, N)
    cache[L] = out
    return out


def idempotent_descent_coeffs(dm, J):
    """Coefficients of ``e_J^L`` as a function of the local descent mask.

    ``e_J^L = sum_K n_JK x_K^L``, and ``y`` lies in ``X_K^L`` iff
    ``D(y) ∩ K`` is empty.
    """
    j = dm.index(J)
    size = len(dm.subsets)
    row = dm.N[j]
    out = []
    for d in range(size):
        out.append(sum((row[k] for k in range(size) if not k & d and row[k]), Fraction(0)))
    return out


def quasi_idempotent(box, L, J):
    """``e_J^L`` as a :class:`GroupAlgebraVector` supported on ``W_L``."""
    Lpos = positions_of(box, L)
    Jpos = positions_of(box, J)
    if not set(Jpos) <= set(Lpos):
        raise ValueError("J is not contained in L")
    dm = _descent_matrix(box, Lpos)
    coeffs = idempotent_descent_coeffs(dm, Jpos)
    sub = _parabolic_cached(box, Lpos)
    desc, _ = _local_mask(box, Lpos, sub.members)
    return GroupAlgebraVector(
        box, {int(y): coeffs[int(d)] for y, d in zip(sub.members, desc) if coeffs[int(d)]}
    )


def quasi_idempotent_by_sums(box, L, J):
    """``e_J^L`` summed literally as ``sum_K n_JK x_K^L`` (no descent shortcut)."""
    return _idempotent_by_sums(box, positions_of(box, L), positions_of(box, J))


def _idempotent_by_sums(box, Lpos, Jpos):
    dm = _descent_matrix(box, Lpos)
    sub = _parabolic_cached(box, Lpos)
    out = {}
    for K in dm.subsets:
        c = dm.n(Jpos, K)
        if not c:
            continue
        for x in transversal_positions(sub, K).tolist():
            out[x] = out.get(x, 0) + c
    return GroupAlgebraVector(box, out)


# -- shapes ------------------------------------------------------------------

@dataclass
class Shape:
    members: list  # subsets as 0-based position tuples
    labels: tuple = ()

    @property
    def rep(self):
        return self.members[0]


def shapes(box):
    """W-conjugacy classes of subsets of S, ordered by size then representative."""
    cache = box.__dict__.get("_shapes")
    if cache is not None:
        return cache
    n = box.rank
    simple = np.array(box.datum.simple)
    N = box.N
    img = box.perms[:, simple].astype(np.int64) % N
    is_simple = np.isin(img, simple)
    pos_of_root = {int(r): i for i, r in enumerate(simple)}
    parent = list(range(1 << n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for J in range(1 << n):
        jpos = [i for i in range(n) if J >> i & 1]
        if not jpos:
            continue
        ok = is_simple[:, jpos].all(axis=1)
        targets = img[ok][:, jpos]
        masks = np.zeros(len(targets), dtype=np.int64)
        for c in range(len(jpos)):
            masks |= np.array([1 << pos_of_root[int(r)] for r in targets[:, c]], dtype=np.int64)
        for K in np.unique(masks).tolist():
            a, b = find(J), find(K)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for J in range(1 << n):
        groups.setdefault(find(J), []).append(tuple(i for i in range(n) if J >> i & 1))
    out = []
    for members in groups.values():
        members.sort(key=lambda t: (len(t), t))
        out.append(Shape(members, tuple(box.datum.labels[i] for i in members[0])))
    out.sort(key=lambda s: (len(s.rep), s.rep))
    box.__dict__["_shapes"] = out
    return out


def shape_of(box, L):
    pos = positions_of(box, L)
    for k, s in enumerate(shapes(box)):
        if pos in s.members:
            return k
    raise ValueError("no shape contains L")


def shape_descent_coeffs(box, shape):
    """``e_lambda`` as a vector indexed by (global) descent masks."""
    dm = _descent_matrix(box, tuple(range(box.rank)))
    size = 1 << box.rank
    total = [Fraction(0)] * size
    for J in shape.members:
        c = idempotent_descent_coeffs(dm, J)
        total = [a + b for a, b in zip(total, c)]
    return total


def shape_idempotent(box, shape):
    coeffs = shape_descent_coeffs(box, shape)
    return GroupAlgebraVector.from_descent_coeffs(
        box, np.arange(box.size), coeffs, (1 << box.rank) - 1
    )


# -- idempotency checks --------------------------------------------------------

def descent_pair_counts(box, targets):
    """``Q[t, D, E] = |{x : D(x) = D, D(x^-1 g_t) = E}|`` for target elements ``g_t``."""
    size = 1 << box.rank
    targets = np.asarray(targets, dtype=np.int64)
    Q = np.zeros((len(targets), size, size), dtype=np.int64)
    xs = np.arange(box.size)
    dx = box.desc[xs]
    inv = box.inv[xs]
    for t, g in enumerate(targets.tolist()):
        y = box.mul(inv, g)
        np.add.at(Q[t], (dx, box.desc[y]), 1)
    return Q


def descent_class_reps(box):
    """One element per occurring descent mask (the first in serial order)."""
    _, first = np.unique(box.desc, return_index=True)
    return np.sort(first)


def check_idempotents(box, targets=None):
    """Check ``e_lambda e_mu = delta e_lambda`` at the given elements (default: all).

    Returns ``(ok, sum_ok, failures)`` where ``sum_ok`` records ``sum e_lambda = 1``.
    """
    shp = shapes(box)
    coeffs = [shape_descent_coeffs(box, s) for s in shp]
    size = 1 << box.rank
    den = lcm(*(v.denominator for c in coeffs for v in c))
    A = np.array([[int(v * den) for v in c] for c in coeffs], dtype=object).T  # (D, shape)
    total = [sum(c[d] for c in coeffs) for d in range(size)]
    occurring = set(np.unique(box.desc).tolist())
    sum_ok = all(total[d] == (1 if d == 0 else 0) for d in occurring)
    if targets is None:
        targets = np.arange(box.size)
    failures = []
    big = int(np.abs(A).max()) ** 2 * box.size
    dtype = np.int64 if big < 2**62 else object
    Ai = A.astype(dtype)
    chunk = 256
    for start in range(0, len(targets), chunk):
        tg = targets[start:start + chunk]
        Q = descent_pair_counts(box, tg).astype(dtype)
        # C[t, lam, mu] = sum_{D,E} A[D,lam] Q[t,D,E] A[E,mu]
        left = np.einsum("dl,tde->tle", Ai, Q) if dtype is np.int64 else _obj_left(Ai, Q)
        C = left @ Ai
        for t, g in enumerate(tg.tolist()):
            d = int(box.desc[g])
            for lam in range(len(shp)):
                for mu in range(len(shp)):
                    want = den * A[d, lam] if lam == mu else 0
                    if C[t, lam, mu] != want:
                        failures.append((int(g), lam, mu))
    return not failures and sum_ok, sum_ok, failures


def _obj_left(A, Q):
    return np.stack([A.T @ Q[t] for t in range(Q.shape[0])])


# -- characters ------------------------------------------------------------------

def rho_lambda_direct(box, shape):
    """``rho_lambda(w) = Tr(v -> e_lambda v w)`` on the group algebra, by brute force.

    Returns the list of values on the classes of ``W``.
    """
    if box.size > 5000:
        raise ValueError("group too large for the dense trace")
    e = shape_idempotent(box, shape)
    W = box.whole()
    out = []
    vs = np.arange(box.size)
    for c in W.classes:
        w = c.rep
        # v -> e v w has diagonal entry e(y) where y v w = v
        ys = box.mul(box.mul(vs, box.inv[w]), box.inv[vs])
        out.append(sum((e[y] for y in ys.tolist()), Fraction(0)))
    return out


def rho_tilde(box, L):
    """Values of the extension of ``rho_L`` to ``N_W(W_L)`` on its classes.

    For ``g = w n`` (``w`` in ``W_L``, ``n`` in ``N_L``) this evaluates
    ``|C_{W_L}(wn)| * sum_J n_LJ |O_n(w^-1) ∩ X_J^L|`` where
    ``O_n(y) = {n z^-1 n^-1 y z : z in W_L}``.
    """
    Lpos = positions_of(box, L)
    G = _normalizer(box, Lpos)
    sub = G.levi
    dm = _descent_matrix(box, Lpos)
    lmask = mask_of(Lpos)
    nLJ = dm.N[dm.index(Lpos)]
    z = sub.members
    zinv = box.inv[z]
    vals = []
    for c in G.classes:
        n, w = _coordinates(box, c.rep, lmask)
        ninv = int(box.inv[n])
        winv = int(box.inv[w])
        orbit = np.unique(box.mul(box.mul(box.mul(n, zinv), ninv), box.mul(winv, z)))
        cent = len(z) // len(orbit)
        odesc, _ = _local_mask(box, Lpos, orbit)
        total = Fraction(0)
        for j, J in enumerate(dm.subsets):
            if nLJ[j]:
                cnt = int(((odesc & j) == 0).sum())
                total += nLJ[j] * cnt
        vals.append(total * cent)
    return vals


def rho_tilde_oracle(box, L, max_size=1200):
    """Dense trace of ``v -> n^-1 e_L^L v w n`` on the group algebra of ``W_L``."""
    Lpos = positions_of(box, L)
    G = _normalizer(box, Lpos)
    sub = G.levi
    if sub.size > max_size:
        raise ValueError("parabolic subgroup too large for the dense oracle")
    e = _idempotent_by_sums(box, Lpos, Lpos)
    ys = np.array(sorted(e.coeffs), dtype=np.int64)
    a = [e.coeffs[int(y)] for y in ys]
    vals = []
    for c in G.classes:
        g = c.rep
        n, _ = _coordinates(box, g, mask_of(Lpos))
        ninv = int(box.inv[n])
        total = Fraction(0)
        for v in sub.members.tolist():
            # diagonal entry at v: n^-1 y v w n == v, with w n = g
            img = box.mul(box.mul(ninv, ys), box.mul(v, g))
            hit = np.flatnonzero(img == v)
            total += sum((a[i] for i in hit.tolist()), Fraction(0))
        vals.append(total)
    return vals


def rho_top_direct(box, L):
    """Character of ``e_L^L CW_L`` on the classes of ``W_L`` (brute force)."""
    Lpos = positions_of(box, L)
    sub = _parabolic_cached(box, Lpos)
    e = _idempotent_by_sums(box, Lpos, Lpos)
    out = []
    vs = sub.members
    for c in sub.classes:
        w = c.rep
        ys = box.mul(box.mul(vs, box.inv[w]), box.inv[vs])
        out.append(sum((e[y] for y in ys.tolist()), Fraction(0)))
    return out
