"""Orlik-Solomon algebras of reflection arrangements via non-broken-circuit bases.

Monomials are strictly increasing tuples of 0-based positive-root indices of
a :class:`~coxchar.rootsys.CoxeterDatum`; the total order on roots is the
datum's root order.  A group element acts on ``A(W)`` by permuting the
reflections, so the image of a root is replaced by its positive
representative without any change of sign.

The rewriting step used throughout: if ``r`` is a root in the span of an
independent set ``C`` and ``C + {r}`` is a circuit, the defining relation
gives ``e_C = sum_c e_{C with c replaced by r}``, each term taken in place.
Inside a longer monomial, moving ``r`` back into sorted position costs the
sign ``(-1)^k`` with ``k`` the number of factors strictly between ``c`` and
``r``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .coxgroup import GroupBox, _normalizer, _parabolic_cached, fixed_space, positions_of


class OSAlgebra:
    """NBC basis and coefficient extraction for the arrangement of one root datum."""

    def __init__(self, datum):
        self.datum = datum
        self.N = datum.N
        self.n = datum.rank
        self.roots = np.array(datum.roots, dtype=np.int64).reshape(self.N, self.n)
        self._flat = {}  # (flat mask, root) -> flat mask
        self._annihilator = {0: np.eye(self.n, dtype=np.int64)}
        self._support = {}
        self._nbc = {}

    # -- flats ------------------------------------------------------------
    def _join(self, flat, r):
        key = (flat, r)
        out = self._flat.get(key)
        if out is not None:
            return out
        A = self._annihilator[flat]
        c = A @ self.roots[r]
        nz = np.flatnonzero(c)
        if len(nz) == 0:
            out = flat
        else:
            p = nz[0]
            rows = []
            for i in range(len(A)):
                if i == p:
                    continue
                v = c[p] * A[i] - c[i] * A[p]
                g = int(np.gcd.reduce(np.abs(v))) if v.any() else 1
                rows.append(v // max(g, 1))
            A2 = np.array(rows, dtype=np.int64).reshape(len(rows), self.n)
            inside = ~(self.roots @ A2.T).any(axis=1) if len(rows) else np.ones(self.N, bool)
            out = sum(1 << int(k) for k in np.flatnonzero(inside))
            self._annihilator.setdefault(out, A2)
        self._flat[key] = out
        return out

    def flats(self, mono):
        """Successive flats spanned by the prefixes of ``mono`` (``None`` once dependent)."""
        out = []
        f = 0
        for r in mono:
            g = self._join(f, r)
            if g == f:
                return out + [None]
            f = g
            out.append(f)
        return out

    def is_independent(self, mono):
        fl = self.flats(mono)
        return not fl or fl[-1] is not None

    def is_nbc(self, mono):
        """No prefix spans a root larger than its last factor."""
        f = 0
        for r in mono:
            g = self._join(f, r)
            if g == f or g >> (r + 1):
                return False
            f = g
        return True

    def _broken(self, mono):
        """``(k, r)``: shortest prefix ``mono[:k+1]`` whose span holds a larger root ``r``.

        Returns ``None`` if ``mono`` is NBC and ``(k, -1)`` if the prefix is dependent.
        """
        f = 0
        for k, x in enumerate(mono):
            g = self._join(f, x)
            if g == f:
                return k, -1
            high = g >> (x + 1)
            if high:
                return k, x + 1 + ((high & -high).bit_length() - 1)
            f = g
        return None

    def _circuit(self, prefix, r):
        """Factors of ``prefix`` in the (unique) expression of root ``r``.

        ``c`` is needed exactly when ``r`` leaves the span once ``c`` is dropped.
        """
        key = (prefix, r)
        out = self._support.get(key)
        if out is None:
            out = []
            bit = 1 << r
            for c in prefix:
                f = 0
                for x in prefix:
                    if x != c:
                        f = self._join(f, x)
                if not f & bit:
                    out.append(c)
            out = tuple(out)
            self._support[key] = out
        return out

    def rewrite(self, mono):
        """One relation step: ``mono`` as a signed sum of lexicographically larger monomials.

        Returns ``None`` if ``mono`` is NBC, ``[]`` if it is zero (dependent).
        """
        hit = self._broken(mono)
        if hit is None:
            return None
        k, r = hit
        if r < 0:
            return []
        C = self._circuit(tuple(mono[: k + 1]), r)
        if r in mono:
            # every term would repeat r
            return []
        terms = []
        for c in C:
            rest = [x for x in mono if x != c]
            between = sum(1 for x in rest if c < x < r)
            new = tuple(sorted(rest + [r]))
            terms.append((-1 if between % 2 else 1, new))
        return terms

    # -- bases --------------------------------------------------------------
    def nbc_basis(self, degree):
        """NBC monomials of the given degree, in lexicographic order."""
        if degree in self._nbc:
            return self._nbc[degree]
        if degree == 0:
            out = [()]
        else:
            out = []
            for m in self.nbc_basis(degree - 1):
                start = m[-1] + 1 if m else 0
                for r in range(start, self.N):
                    cand = m + (r,)
                    if self.is_nbc(cand):
                        out.append(cand)
        self._nbc[degree] = out
        return out

    def dimensions(self):
        return tuple(len(self.nbc_basis(d)) for d in range(self.n + 1))

    # -- coefficients -----------------------------------------------------------
    def coeff(self, a, b, cutoff=True):
        """Coefficient of the NBC monomial ``b`` in the expansion of ``a``.

        With ``cutoff`` the recursion drops every monomial that is
        lexicographically larger than ``b``; without it the full expansion
        of ``a`` is computed instead.
        """
        a, b = tuple(a), tuple(b)
        if len(a) != len(b):
            raise ValueError("degree mismatch")
        if cutoff:
            return self._coeff(a, b, {})
        return self.expand(a).get(b, 0)

    def _coeff(self, a, b, memo):
        # memo holds values for this b only, which keeps memory flat
        if a > b:
            return 0
        val = memo.get(a)
        if val is not None:
            return val
        terms = self.rewrite(a)
        if terms is None:
            val = 1 if a == b else 0
        else:
            val = 0
            for s, m in terms:
                if m <= b:
                    val += s * self._coeff(m, b, memo)
        memo[a] = val
        return val

    def expand(self, a):
        """Full NBC expansion of a monomial, as ``{nbc monomial: integer}``."""
        a = tuple(a)
        out = {}
        stack = [(1, a)]
        while stack:
            s, m = stack.pop()
            terms = self.rewrite(m)
            if terms is None:
                out[m] = out.get(m, 0) + s
                continue
            for t, mm in terms:
                stack.append((s * t, mm))
        return {k: v for k, v in out.items() if v}

    # -- traces ------------------------------------------------------------------
    def trace(self, perm, degree, cutoff=True):
        """Trace of a root permutation (length ``2N``) on the degree-``degree`` piece."""
        N = self.N
        pos = np.asarray(perm, dtype=np.int64)[:N] % N
        total = 0
        for b in self.nbc_basis(degree):
            img = tuple(int(pos[x]) for x in b)
            a = tuple(sorted(img))
            if len(set(a)) < len(a):
                continue
            s = _sort_sign(img)
            total += s * self.coeff(a, b, cutoff=cutoff)
        return total


def _sort_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def os_algebra(datum):
    """The shared :class:`OSAlgebra` of a datum (memo caches persist across calls)."""
    store = datum.__dict__
    if "_os_algebra" not in store:
        store["_os_algebra"] = OSAlgebra(datum)
    return store["_os_algebra"]


def nbc_basis(datum, degree):
    """NBC monomials of ``datum``'s arrangement as 1-based root-index tuples."""
    if not 0 <= degree <= datum.rank:
        raise ValueError("degree out of range")
    return [tuple(x + 1 for x in m) for m in os_algebra(datum).nbc_basis(degree)]


def coeff(datum, a, b, cutoff=True):
    """COEFF on 1-based root-index sequences; ``a`` may be unsorted."""
    a = [int(x) - 1 for x in a]
    b = tuple(int(x) - 1 for x in b)
    alg = os_algebra(datum)
    if len(set(a)) < len(a):
        return 0
    return _sort_sign(a) * alg.coeff(tuple(sorted(a)), b, cutoff=cutoff)


# -- characters ----------------------------------------------------------------

def omega_value(box, w, degree=None, cutoff=True):
    """Trace of ``w`` on ``A(W)`` (all degrees, or one degree)."""
    alg = os_algebra(box.datum)
    perm = box.perms[int(w)]
    degs = range(box.rank + 1) if degree is None else [degree]
    return sum(alg.trace(perm, d, cutoff) for d in degs)


def omega_character(box, top_only=False, classes=None, cutoff=True):
    """``omega`` (or its top-degree part ``omega_S``) on the classes of ``W``.

    ``classes`` restricts the evaluation to the given class numbers; the
    other entries are ``None``.
    """
    W = box.whole()
    degree = box.rank if top_only else None
    out = []
    for k, c in enumerate(W.classes):
        if classes is not None and k not in classes:
            out.append(None)
            continue
        out.append(omega_value(box, c.rep, degree, cutoff))
    return out


def restricted_perm(box, L, g):
    """Permutation of ``W_L``'s roots induced by ``g`` in ``N_W(W_L)``."""
    sub = _parabolic_cached(box, positions_of(box, L))
    return _restricted_perm(box, sub, g)


def _restricted_perm(box, sub, g):
    inc = np.array(sub.inclusion, dtype=np.int64)
    img = box.perms[int(g)].astype(np.int64)[inc]
    out = sub.restriction[img]
    if (out < 0).any():
        raise ValueError("element does not stabilise the root subsystem of W_L")
    Ns = len(inc)
    return np.concatenate([out, (out + Ns) % (2 * Ns)])


def omega_tilde(box, L, cutoff=True, classes=None):
    """Top-degree character of ``A(W_L)`` extended to ``N_W(W_L)``, on its classes.

    ``classes`` restricts the evaluation to the given class numbers; the
    other entries are ``None``.
    """
    pos = positions_of(box, L)
    G = _normalizer(box, pos)
    sub = G.levi
    alg = os_algebra(sub.datum)
    out = []
    for k, c in enumerate(G.classes):
        if classes is not None and k not in classes:
            out.append(None)
            continue
        out.append(alg.trace(_restricted_perm(box, sub, c.rep), len(pos), cutoff))
    return out


def omega_top_native(box, L):
    """Top-degree ``omega_L`` on the classes of ``W_L``, computed in ``W_L``'s own enumeration."""
    pos = positions_of(box, L)
    sub = _parabolic_cached(box, pos)
    small = GroupBox(sub.datum, expected=sub.size)
    alg = os_algebra(small.datum)
    out = []
    for c in sub.classes:
        word = [pos.index(i) for i in box.word(c.rep)]
        x = 0
        for i in word:
            x = int(small.rmul[x, i])
        out.append(alg.trace(small.perms[x], len(pos)))
    return out


# -- determinant characters ---------------------------------------------------------

def _restriction_det(box, basis, g):
    if not basis:
        return 1
    B = Matrix(basis)
    img = B * Matrix(box.matrix(int(g)).tolist())
    d = _solve_rows(B, img).det()
    if d not in (1, -1):
        raise ValueError("element does not preserve the fixed space")
    return int(d)


def _solve_rows(B, img):
    # X with X B = img, B of full row rank
    sol = B.T.gauss_jordan_solve(img.T)[0]
    return sol.T


def alpha(box, L):
    """``alpha_L``: determinant on the fixed space of ``W_L``, on the classes of ``N_W(W_L)``."""
    pos = positions_of(box, L)
    G = _normalizer(box, pos)
    basis = fixed_space(box, G.levi).basis
    return [_restriction_det(box, basis, c.rep) for c in G.classes]


def alpha_w(box, w, z):
    """Determinant of ``z`` on the 1-eigenspace of ``w``; ``z`` must centralise ``w``."""
    w, z = int(w), int(z)
    if box.mul(w, z) != box.mul(z, w):
        raise ValueError("z does not centralise w")
    basis = fixed_space(box, w).basis
    return _restriction_det(box, basis, z)


def alpha_w_character(box, w, H):
    """``alpha_w`` on the classes of a subgroup ``H`` of ``C_W(w)``."""
    basis = fixed_space(box, int(w)).basis
    return [_restriction_det(box, basis, c.rep) for c in H.classes]


def sign_character(G):
    """``(-1)^length`` on the classes of ``G`` (a box or subgroup)."""
    if isinstance(G, GroupBox):
        G = G.whole()
    return [-1 if G.box.length[c.rep] % 2 else 1 for c in G.classes]


# -- exterior-algebra oracle -----------------------------------------------------------

class ExteriorQuotient:
    """Dense model of ``A = E / I``: the exterior algebra modulo the relation ideal.

    Used only as an independent check on small arrangements.
    """

    def __init__(self, datum, max_roots=12):
        if datum.N > max_roots:
            raise ValueError("arrangement too large for the dense oracle")
        self.datum = datum
        self.N = datum.N
        self.n = datum.rank
        self._reduced = {}

    def _dependent(self, S):
        if not S:
            return False
        M = Matrix([list(self.datum.roots[x]) for x in S])
        return M.rank() < len(S)

    def _relations(self, d):
        """Spanning set of ``I_d`` as dicts over degree-``d`` monomials."""
        N = self.N
        rels = []
        for size in range(1, d + 2):
            for S in combinations(range(N), size):
                if not self._dependent(S):
                    continue
                # boundary of e_S
                bd = {}
                for k in range(size):
                    bd[S[:k] + S[k + 1:]] = (-1) ** k
                for T in combinations(range(N), d + 1 - size):
                    rel = {}
                    for m, c in bd.items():
                        prod = T + m
                        if len(set(prod)) < len(prod):
                            continue
                        rel_m = tuple(sorted(prod))
                        rel[rel_m] = rel.get(rel_m, 0) + c * _sort_sign(prod)
                    rel = {k: v for k, v in rel.items() if v}
                    if rel:
                        rels.append(rel)
        return rels

    def _reduce_data(self, d):
        if d in self._reduced:
            return self._reduced[d]
        alg = OSAlgebra(self.datum)
        nbc = set(alg.nbc_basis(d))
        monos = list(combinations(range(self.N), d))
        # non-NBC columns first so that they become pivots
        order = [m for m in monos if m not in nbc] + [m for m in monos if m in nbc]
        col = {m: i for i, m in enumerate(order)}
        rels = self._relations(d)
        if rels:
            rows = [[QQ(0)] * len(order) for _ in rels]
            for i, rel in enumerate(rels):
                for m, c in rel.items():
                    rows[i][col[m]] = QQ(c)
            R, pivots = DomainMatrix(rows, (len(rows), len(order)), QQ).rref()
            R = R.to_Matrix()
        else:
            R, pivots = Matrix.zeros(0, len(order)), ()
        self._reduced[d] = (order, col, R, tuple(pivots))
        return self._reduced[d]

    def dimension(self, d):
        order, _, _, pivots = self._reduce_data(d)
        return len(order) - len(pivots)

    def dimensions(self):
        return tuple(self.dimension(d) for d in range(self.n + 1))

    def express(self, a):
        """Coordinates of the monomial ``a`` (sorted tuple) modulo ``I`` in the NBC basis."""
        a = tuple(a)
        d = len(a)
        order, col, R, pivots = self._reduce_data(d)
        v = [Fraction(0)] * len(order)
        v[col[a]] = Fraction(1)
        for i, p in enumerate(pivots):
            if v[p]:
                c = v[p]
                for j in range(len(order)):
                    e = R[i, j]
                    if e:
                        v[j] -= c * Fraction(int(e.p), int(e.q))
        return {order[j]: v[j] for j in range(len(order)) if v[j]}


def os_dimension_oracle(datum):
    """Graded dimensions of ``A(W)`` by dense row reduction (at most 12 roots)."""
    return ExteriorQuotient(datum).dimensions()
