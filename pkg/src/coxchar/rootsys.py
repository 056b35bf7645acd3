"""Crystallographic root systems and the permutation model of Coxeter groups.

Group elements are permutations of the ``2N`` roots.  Internally roots are
numbered ``0 .. 2N-1`` with root ``i + N`` equal to the negative of root ``i``;
the public helpers that talk about root *indices* use the 1-based numbering
``1 .. 2N`` instead.

Conventions
-----------
* Words multiply left to right and act on the right: for ``w = s_a s_b`` the
  root ``r`` goes to ``(r.s_a).s_b``.  As arrays, ``(x*y)[r] == y[x[r]]``.
* Positive roots are ordered by height, ties broken by reverse lexicographic
  order of the simple-root coordinates, so that the simple roots come first
  in generator order.  ``order="lex"`` selects the plain lexicographic
  tie-break instead (used to check that nothing depends on the order).

Generator numbering (matches the diagrams used throughout the package)::

    A_n   1 - 2 - ... - n
    B_n   1 = 2 - 3 - ... - n          (node 1 is the short simple root)
    D_n   1' and 2 both joined to 3, then 3 - 4 - ... - n
    E_n   1 - 3 - 4 - 5 - 6 (- 7 - 8), node 2 joined to 4
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

FAMILIES = ("A", "B", "D", "E")


def cartan_matrix(family, rank):
    """Cartan matrix ``a[i][j] = <alpha_i^vee, alpha_j>`` in package numbering."""
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j):
        a[i][j] = a[j][i] = -1

    if family == "A":
        if n < 1:
            raise ValueError("type A needs rank >= 1")
        for i in range(n - 1):
            bond(i, i + 1)
    elif family == "B":
        if n < 2:
            raise ValueError("type B needs rank >= 2")
        for i in range(1, n - 1):
            bond(i, i + 1)
        # alpha_1 short: s_1(alpha_2) = alpha_2 + 2 alpha_1
        a[0][1], a[1][0] = -2, -1
    elif family == "D":
        if n < 4:
            raise ValueError("type D needs rank >= 4")
        bond(0, 2)
        for i in range(1, n - 1):
            bond(i, i + 1)
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    else:
        raise ValueError(f"unsupported family {family!r}")
    return tuple(tuple(row) for row in a)


def generator_labels(family, rank):
    if family == "D":
        return ("1'",) + tuple(str(i) for i in range(2, rank + 1))
    return tuple(str(i) for i in range(1, rank + 1))


def _positive_roots(cartan):
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                c = sum(v[j] * cartan[i][j] for j in range(n))
                if c == 0:
                    continue
                u = list(v)
                u[i] -= c
                u = tuple(u)
                if any(x < 0 for x in u):
                    continue
                if u not in seen:
                    seen.add(u)
                    new.append(u)
        frontier = new
    return seen


@dataclass(frozen=True, eq=False)
class CoxeterDatum:
    """Root datum of a finite crystallographic Coxeter group.

    ``roots[k]`` is the coordinate vector (simple-root basis) of positive
    root ``k`` (0-based); ``simple[i]`` is the root index of the i-th simple
    root, which equals ``i`` under the default order.
    """

    family: str
    rank: int
    cartan: tuple
    labels: tuple
    roots: tuple
    order: str = "height"
    index: dict = field(repr=False, default=None)

    @property
    def N(self):
        return len(self.roots)

    @property
    def name(self):
        return f"{self.family}{self.rank}"

    @cached_property
    def simple(self):
        n = self.rank
        return tuple(self.index[tuple(int(i == j) for j in range(n))] for i in range(n))

    @cached_property
    def root_matrix(self):
        """``(2N, n)`` integer array of all root coordinates, negatives last."""
        pos = np.array(self.roots, dtype=np.int64)
        return np.vstack([pos, -pos])

    def root_index(self, coords):
        """0-based index of the root with the given coordinates (any sign)."""
        coords = tuple(int(c) for c in coords)
        if coords in self.index:
            return self.index[coords]
        neg = tuple(-c for c in coords)
        if neg in self.index:
            return self.index[neg] + self.N
        raise KeyError(f"{coords} is not a root")

    def height(self, k):
        return sum(self.roots[k % self.N]) * (1 if k < self.N else -1)

    @cached_property
    def highest_root(self):
        return max(range(self.N), key=lambda k: (sum(self.roots[k]), self.roots[k]))

    @cached_property
    def simple_perms(self):
        """Permutation arrays (0-based, length 2N) of the simple reflections."""
        N, n = self.N, self.rank
        out = []
        for i in range(n):
            perm = np.empty(2 * N, dtype=np.int64)
            for k, v in enumerate(self.roots):
                c = sum(v[j] * self.cartan[i][j] for j in range(n))
                u = list(v)
                u[i] -= c
                perm[k] = self.root_index(u)
            perm[N:] = (perm[:N] + N) % (2 * N)
            out.append(perm)
        return tuple(out)

    def label_position(self, label):
        """Position (0-based) of a generator label such as ``"3"`` or ``"1'"``."""
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ValueError(f"{label!r} is not a generator of {self.name}") from None

    def reflection_perm(self, k):
        """Permutation array of the reflection in root ``k`` (0-based)."""
        N, n = self.N, self.rank
        r = np.array(self.roots[k % N], dtype=np.int64)
        # s_r(v) = v - <r^vee, v> r, with <r^vee, v> from the symmetrised form
        d = self._symmetriser
        form = np.array(self.cartan, dtype=np.int64) * d[:, None]  # (alpha_i, alpha_j) up to scale
        rr = r @ form @ r
        allroots = self.root_matrix
        pair = allroots @ form @ r
        coeff = 2 * pair
        if np.any(coeff % rr):
            raise ArithmeticError("non-integral reflection coefficient")
        images = allroots - np.outer(coeff // rr, r)
        return np.array([self.root_index(v) for v in images], dtype=np.int64)

    @cached_property
    def _symmetriser(self):
        # d_i with d_i a_ij symmetric: squared lengths up to a common factor
        n = self.rank
        dd = [None] * n
        dd[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and self.cartan[i][j] and dd[j] is None:
                    # d_i a_ij = d_j a_ji
                    dd[j] = dd[i] * self.cartan[i][j] / self.cartan[j][i]
                    stack.append(j)
        den = lcm(*(x.denominator for x in dd))
        return np.array([int(x * den) for x in dd], dtype=np.int64)

    def element(self, perm):
        return Element(tuple(int(x) for x in perm), self.N)

    @cached_property
    def identity(self):
        return Element(tuple(range(2 * self.N)), self.N)


def build_coxeter_datum(family, rank, order="height"):
    """Build the root datum of type ``family``/``rank`` (A, B, D, E)."""
    family = str(family).upper()
    if family not in FAMILIES:
        raise ValueError(f"unsupported family {family!r}")
    rank = int(rank)
    cartan = cartan_matrix(family, rank)
    roots = _positive_roots(cartan)
    if order == "height":
        key = lambda v: (sum(v), tuple(-c for c in v))
    elif order == "lex":
        key = lambda v: (sum(v), v)
    else:
        raise ValueError(f"unknown root order {order!r}")
    roots = tuple(sorted(roots, key=key))
    index = {v: k for k, v in enumerate(roots)}
    return CoxeterDatum(family, rank, cartan, generator_labels(family, rank), roots, order, index)


def sub_datum(datum, positions):
    """Datum of the standard parabolic subgroup on the given generator positions.

    Returns ``(sub, inclusion)`` where ``inclusion[k]`` is the 0-based index in
    ``datum`` of positive root ``k`` of ``sub``.  Generator labels are inherited.
    """
    positions = tuple(positions)
    n = len(positions)
    cartan = tuple(tuple(datum.cartan[i][j] for j in positions) for i in positions)
    roots = _positive_roots(cartan) if n else set()
    key = (lambda v: (sum(v), tuple(-c for c in v))) if datum.order == "height" else (lambda v: (sum(v), v))
    roots = tuple(sorted(roots, key=key))
    index = {v: k for k, v in enumerate(roots)}
    labels = tuple(datum.labels[i] for i in positions)
    sub = CoxeterDatum(datum.family, n, cartan, labels, roots, datum.order, index)
    inclusion = []
    for v in roots:
        full = [0] * datum.rank
        for c, i in zip(v, positions):
            full[i] = c
        inclusion.append(datum.index[tuple(full)])
    return sub, tuple(inclusion)


@dataclass(frozen=True)
class Element:
    """A group element as a permutation of the 2N roots (0-based)."""

    perm: tuple
    N: int

    @property
    def length(self):
        N = self.N
        return sum(1 for i in range(N) if self.perm[i] >= N)

    def __mul__(self, other):
        # apply self first, then other
        p, q = self.perm, other.perm
        return Element(tuple(q[i] for i in p), self.N)

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Element(tuple(inv), self.N)

    def root_image(self, i):
        """Image of root ``i`` in 1-based numbering (``i + N`` is ``-root i``)."""
        return self.perm[i - 1] + 1

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.perm))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Element(tuple(range(len(self.perm))), self.N)
        for _ in range(k):
            out = out * self
        return out

    def order(self):
        seen = [False] * len(self.perm)
        out = 1
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            j, c = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                c += 1
            out = lcm(out, c)
        return out


def simple_reflection(datum, i):
    """The simple reflection ``s_i`` (``i`` is 1-based)."""
    if not 1 <= i <= datum.rank:
        raise IndexError(f"generator {i} out of range for {datum.name}")
    return datum.element(datum.simple_perms[i - 1])


def reflection_for_root(datum, root_index):
    """Reflection in positive root ``root_index`` (1-based)."""
    if not 1 <= root_index <= datum.N:
        raise IndexError(f"root {root_index} out of range for {datum.name}")
    return datum.element(datum.reflection_perm(root_index - 1))


def element_matrix(datum, perm):
    """Integer matrix of the right action: row i is the image of alpha_i."""
    perm = np.asarray(perm)
    return datum.root_matrix[perm[list(datum.simple)]]


def degrees(family, rank):
    """Fundamental degrees of the reflection group."""
    n = rank
    if family == "A":
        return tuple(range(2, n + 2))
    if family == "B":
        return tuple(range(2, 2 * n + 1, 2))
    if family == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    if family == "E":
        return {6: (2, 5, 6, 8, 9, 12), 7: (2, 6, 8, 10, 12, 14, 18),
                8: (2, 8, 12, 14, 18, 20, 24, 30)}[n]
    raise ValueError(family)
