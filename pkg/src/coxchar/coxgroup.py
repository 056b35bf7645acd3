"""Enumerated finite Coxeter groups and their subgroups.

A :class:`GroupBox` holds every element of ``W`` as a row of permutation
images, numbered by a serial index.  Elements are sorted by length and a
hash key (the images of the simple roots), so serial numbers are
deterministic.  Everything else in the package talks about elements by
serial index and works on numpy index arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy import Matrix

from .rootsys import Element, build_coxeter_datum, degrees, element_matrix, sub_datum

MAX_ENUMERATION = 60000


class GroupTooLarge(ValueError):
    pass


def parse_word(datum, word):
    """Turn a word into a tuple of 0-based generator positions.

    ``word`` may be a sequence of labels/1-based integers or a string such as
    ``"1'2321'34"``; in strings every digit is a label and a trailing ``'``
    belongs to the digit before it.
    """
    if isinstance(word, str):
        tokens = []
        for ch in word.replace(" ", ""):
            if ch == "'":
                if not tokens:
                    raise ValueError(f"dangling ' in word {word!r}")
                tokens[-1] += "'"
            elif ch.isdigit():
                tokens.append(ch)
            else:
                raise ValueError(f"bad character {ch!r} in word {word!r}")
        word = tokens
    out = []
    for t in word:
        if isinstance(t, (int, np.integer)):
            if not 1 <= t <= datum.rank:
                raise ValueError(f"generator {t} out of range for {datum.name}")
            out.append(int(t) - 1)
        else:
            out.append(datum.label_position(t))
    return tuple(out)


def element_from_word(datum, word):
    """Product of simple reflections, left to right."""
    perm = np.arange(2 * datum.N)
    for i in parse_word(datum, word):
        perm = datum.simple_perms[i][perm]
    return datum.element(perm)


def length_and_descents(datum, w):
    """``(l(w), D(w))`` with ``D(w) = {i : l(s_i w) < l(w)}`` as 1-based positions."""
    N = datum.N
    desc = frozenset(i + 1 for i, k in enumerate(datum.simple) if w.perm[k] >= N)
    return w.length, desc


class GroupBox:
    """Full enumeration of a Coxeter group with a hash index."""

    def __init__(self, datum, max_size=MAX_ENUMERATION, expected=None):
        # reducible sub-data carry their parent's family, so callers pass the order
        self.datum = datum
        if expected is None:
            expected = prod(degrees(datum.family, datum.rank))
        if expected > max_size:
            raise GroupTooLarge(f"|W({datum.name})| = {expected} exceeds {max_size}")
        self.expected_order = expected
        N, n = datum.N, datum.rank
        self.N, self.rank = N, n
        self._base = 2 * N
        self._simple = np.array(datum.simple)
        gens = np.array(datum.simple_perms, dtype=np.int64)

        layers = [np.arange(2 * N, dtype=np.int64)[None, :]]
        layer_keys = [self._keys(layers[0])]
        seen = layer_keys[0]
        prev = layers[0]
        while True:
            cand = np.concatenate([g[prev] for g in gens])
            keys = self._keys(cand)
            keys, first = np.unique(keys, return_index=True)
            fresh = ~np.isin(keys, seen)
            if not fresh.any():
                break
            prev = cand[first[fresh]]
            layers.append(prev)
            layer_keys.append(keys[fresh])
            seen = np.concatenate([seen, keys[fresh]])
        dtype = np.int16 if 2 * N < 2**15 else np.int32
        self.perms = np.concatenate(layers).astype(dtype)
        self.length = np.concatenate(
            [np.full(len(l), k, dtype=np.int16) for k, l in enumerate(layers)]
        )
        self.keys = np.concatenate(layer_keys)
        self._order = np.argsort(self.keys)
        self._sorted_keys = self.keys[self._order]
        self.size = len(self.perms)
        if self.size != expected:
            raise AssertionError(f"enumerated {self.size} elements, expected {expected}")
        P = self.perms.astype(np.int64)
        simple_img = P[:, self._simple]
        self.desc = ((simple_img >= N).astype(np.int64) << np.arange(n)).sum(axis=1)
        self.rmul = np.stack([self.index(g[P]) for g in gens], axis=1)
        self.lmul = np.stack([self.index(P[:, g]) for g in gens], axis=1)
        inv = np.empty_like(P)
        rows = np.arange(self.size)[:, None]
        inv[rows, P] = np.arange(2 * N)
        self.inv = self.index(inv)
        self.identity = 0
        self.gens = tuple(int(x) for x in self.rmul[0])

    # -- indexing -------------------------------------------------------
    def _keys(self, perms):
        perms = np.asarray(perms, dtype=np.int64)
        img = perms[..., self._simple]
        weights = self._base ** np.arange(self.rank, dtype=np.int64)
        return img @ weights

    def index(self, perms, check=True):
        """Serial numbers of permutation rows (``-1`` if absent and not ``check``)."""
        keys = self._keys(perms)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.size - 1)
        found = self._sorted_keys[pos] == keys
        out = np.where(found, self._order[pos], -1)
        if check and not found.all():
            raise KeyError("permutation is not an element of the group")
        return out

    def mul(self, a, b):
        """Serial numbers of ``a*b`` (broadcasting index arrays)."""
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        Pa = self.perms[a].astype(np.int64)
        Pb = self.perms[b].astype(np.int64)
        prodp = np.take_along_axis(Pb, Pa, axis=1)
        return self.index(prodp).reshape(shape)

    def conj(self, x, g):
        """``g^-1 x g`` (index arrays)."""
        return self.mul(self.mul(self.inv[g], x), g)

    def element(self, i):
        return self.datum.element(self.perms[i])

    def index_of(self, element):
        return int(self.index(np.array(element.perm)[None, :])[0])

    def from_word(self, word):
        x = 0
        for i in parse_word(self.datum, word):
            x = int(self.rmul[x, i])
        return x

    def word(self, x):
        """Lexicographically least reduced word, as 0-based positions."""
        out = []
        x = int(x)
        while x != 0:
            d = int(self.desc[x])
            i = (d & -d).bit_length() - 1
            out.append(i)
            x = int(self.lmul[x, i])
        return tuple(out)

    def word_str(self, x):
        return "".join(self.datum.labels[i] for i in self.word(x)) or "()"

    def order_of(self, x):
        return self.element(x).order()

    def matrix(self, x):
        return element_matrix(self.datum, self.perms[x].astype(np.int64))

    @cached_property
    def longest(self):
        return int(np.argmax(self.length))

    def whole(self):
        return self._whole

    @cached_property
    def _whole(self):
        sub = Subgrp(self, self.gens, np.arange(self.size))
        sub.parabolic = tuple(range(self.rank))
        return sub


def closure(box, gens):
    """Sorted serial numbers of the subgroup generated by ``gens``."""
    gens = np.asarray(list(gens), dtype=np.int64)
    mask = np.zeros(box.size, dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    if len(gens) == 0:
        return frontier
    while len(frontier):
        cand = box.mul(frontier[:, None], gens[None, :]).ravel()
        cand = np.unique(cand)
        cand = cand[~mask[cand]]
        mask[cand] = True
        frontier = cand
    return np.flatnonzero(mask)


def greedy_generators(box, members):
    """A small generating set of the subgroup with the given members."""
    members = np.sort(np.asarray(members))
    cur = np.zeros(box.size, dtype=bool)
    cur[0] = True
    gens = []
    count = 1
    for c in members:
        if count == len(members):
            break
        if not cur[c]:
            gens.append(int(c))
            sub = closure(box, gens)
            cur[:] = False
            cur[sub] = True
            count = len(sub)
    return tuple(gens)


@dataclass
class ConjClass:
    rep: int
    members: np.ndarray
    order: int
    word: tuple
    label: str = ""
    cuspidal: bool | None = None

    @property
    def size(self):
        return len(self.members)


class Subgrp:
    """A subgroup of an enumerated group, given by generators and members."""

    def __init__(self, box, gens, members=None):
        self.box = box
        self.gens = tuple(int(g) for g in gens)
        if members is None:
            members = closure(box, self.gens)
        self.members = np.sort(np.asarray(members, dtype=np.int64))
        self.mask = np.zeros(box.size, dtype=bool)
        self.mask[self.members] = True
        self.parabolic = None  # generator positions for standard parabolics

    @property
    def size(self):
        return len(self.members)

    def __len__(self):
        return self.size

    def __contains__(self, x):
        return bool(self.mask[x])

    def local(self, x):
        return np.searchsorted(self.members, x)

    @cached_property
    def classes(self):
        """Conjugacy classes, sorted by element order, size, representative word."""
        box = self.box
        m = self.size
        loc = np.arange(m)
        rows, cols = [loc], [loc]
        for g in self.gens:
            img = box.conj(self.members, g)
            rows.append(loc)
            cols.append(self.local(img))
        graph = coo_matrix(
            (np.ones(sum(len(r) for r in rows)), (np.concatenate(rows), np.concatenate(cols))),
            shape=(m, m),
        )
        ncomp, labels = connected_components(graph, directed=True, connection="weak")
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
        classes = []
        for c in range(ncomp):
            mem = self.members[order[bounds[c]:bounds[c + 1]]]
            lens = box.length[mem]
            short = mem[lens == lens.min()]
            rep = min(short, key=box.word)
            classes.append(ConjClass(int(rep), np.sort(mem), box.order_of(rep), box.word(rep)))
        classes.sort(key=lambda c: (c.order, c.size, c.word))
        _label_classes(classes)
        return classes

    @cached_property
    def class_of(self):
        """Array over the ambient group: class number, or -1 for non-members."""
        out = np.full(self.box.size, -1, dtype=np.int64)
        for k, c in enumerate(self.classes):
            out[c.members] = k
        return out

    @cached_property
    def class_sizes(self):
        return np.array([c.size for c in self.classes])

    def class_index(self, x):
        k = int(self.class_of[x])
        if k < 0:
            raise ValueError("element is not in the subgroup")
        return k

    @cached_property
    def small_gens(self):
        return greedy_generators(self.box, self.members)


def _label_classes(classes):
    # order plus a distinguishing letter, in class order
    counts = {}
    for c in classes:
        k = counts.get(c.order, 0)
        counts[c.order] = k + 1
        letters = ""
        k2 = k
        while True:
            letters = chr(ord("a") + k2 % 26) + letters
            k2 = k2 // 26 - 1
            if k2 < 0:
                break
        c.label = f"{c.order}{letters}"


# -- parabolic subgroups ------------------------------------------------

def positions_of(box, L):
    """Normalise a subset of generators (labels or 1-based ints) to sorted positions."""
    out = set()
    for t in L:
        if isinstance(t, (int, np.integer)):
            if not 1 <= t <= box.rank:
                raise ValueError(f"generator {t} out of range")
            out.add(int(t) - 1)
        else:
            out.add(box.datum.label_position(t))
    return tuple(sorted(out))


def mask_of(positions):
    return sum(1 << i for i in positions)


def parabolic_subgroup(box, L):
    """The standard parabolic subgroup ``W_L`` with its own root datum."""
    pos = positions_of(box, L)
    return _parabolic_cached(box, pos)


def _parabolic_cached(box, pos):
    cache = box.__dict__.setdefault("_parabolic_cache", {})
    if pos not in cache:
        sub = Subgrp(box, [box.gens[i] for i in pos])
        sub.parabolic = pos
        sub.datum, sub.inclusion = sub_datum(box.datum, pos)
        N = box.N
        restr = np.full(2 * N, -1, dtype=np.int64)
        Ns = sub.datum.N
        for k, g in enumerate(sub.inclusion):
            restr[g] = k
            restr[g + N] = k + Ns
        sub.restriction = restr
        cache[pos] = sub
    return cache[pos]


def parabolic_transversal(sub, J):
    """``X_J^L``: elements ``x`` of the parabolic ``sub`` with ``l(sx) > l(x)`` for ``s`` in ``J``."""
    box = sub.box
    J = positions_of(box, J)
    if not set(J) <= set(sub.parabolic):
        raise ValueError("J is not contained in L")
    m = mask_of(J)
    mem = sub.members
    return mem[(box.desc[mem] & m) == 0]


def transversal_positions(sub, Jpos):
    """As :func:`parabolic_transversal` but with ``J`` given as 0-based positions."""
    box = sub.box
    m = mask_of(Jpos)
    mem = sub.members
    return mem[(box.desc[mem] & m) == 0]


def parabolic_coordinates(box, w, L):
    """Split ``w`` as ``w = u * x`` with ``u`` in ``W_L`` and ``x`` in ``X_L^S``.

    Returns ``(x, u)``.  ``x`` is the unique element of the coset ``W_L w``
    without left descents in ``L``, and ``l(w) = l(u) + l(x)``.
    """
    return _coordinates(box, int(w), mask_of(positions_of(box, L)))


def _coordinates(box, w, lmask):
    u = 0
    x = w
    while box.desc[x] & lmask:
        d = int(box.desc[x] & lmask)
        i = (d & -d).bit_length() - 1
        x = int(box.lmul[x, i])
        u = int(box.rmul[u, i])
    return x, u


def normalizer_complement(box, L):
    """``N_L``: elements of ``X_L^S`` mapping the simple roots of ``L`` onto themselves."""
    return _normalizer_complement(box, positions_of(box, L))


def _normalizer_complement(box, pos):
    lmask = mask_of(pos)
    cand = np.flatnonzero((box.desc & lmask) == 0)
    if not pos:
        return cand
    simple = np.array(box.datum.simple)
    targets = simple[list(pos)]
    img = box.perms[cand][:, targets].astype(np.int64)
    ok = np.isin(img, targets).all(axis=1)
    return cand[ok]


def is_bulky(box, L):
    """True if every element of ``N_L`` centralises ``W_L``."""
    pos = positions_of(box, L)
    nl = normalizer_complement(box, L)
    targets = np.array(box.datum.simple)[list(pos)]
    return bool((box.perms[nl][:, targets] == targets).all())


def normalizer(box, L):
    """``N_W(W_L) = W_L . N_L`` as a subgroup."""
    return _normalizer(box, positions_of(box, L))


def _normalizer(box, pos):
    cache = box.__dict__.setdefault("_normalizer_cache", {})
    if pos in cache:
        return cache[pos]
    wl = _parabolic_cached(box, pos)
    nl = _normalizer_complement(box, pos)
    members = np.unique(box.mul(wl.members[:, None], nl[None, :]).ravel())
    nl_gens = greedy_generators(box, nl)
    sub = Subgrp(box, [box.gens[i] for i in pos] + list(nl_gens), members)
    sub.complement = nl
    sub.complement_gens = nl_gens
    sub.levi = wl
    cache[pos] = sub
    return sub


# -- conjugacy classes and centralisers --------------------------------

def conjugacy_classes(G):
    if isinstance(G, GroupBox):
        G = G.whole()
    return G.classes


def centralizer(G, w):
    """``C_G(w)`` as a subgroup with a greedily extracted generating set."""
    if isinstance(G, GroupBox):
        G = G.whole()
    box = G.box
    w = int(w)
    if not G.mask[w]:
        raise ValueError("element is not in the group")
    mem = G.members
    comm = box.mul(mem, w) == box.mul(w, mem)
    members = mem[comm]
    gens = greedy_generators(box, members)
    return Subgrp(box, gens, members)


def class_fusion(H, G):
    """Map from class numbers of ``H`` to class numbers of ``G``."""
    if isinstance(G, GroupBox):
        G = G.whole()
    if isinstance(H, GroupBox):
        H = H.whole()
    if not G.mask[H.members].all():
        raise ValueError("H is not contained in G")
    return [int(G.class_of[c.rep]) for c in H.classes]


# -- fixed spaces ---------------------------------------------------------

@dataclass
class FixedSpace:
    """Exact rational basis (rows, simple-root coordinates) of a fixed space."""

    basis: list
    ambient_dim: int

    @property
    def dim(self):
        return len(self.basis)


def _fixed_basis(mats, n):
    if not mats:
        return [tuple([1 if i == j else 0 for j in range(n)]) for i in range(n)]
    # row vectors v with v (M - I) = 0 for every M
    big = Matrix.hstack(*[Matrix(m.tolist()) - Matrix.eye(n) for m in mats])
    ns = big.T.nullspace()
    return [tuple(v) for v in ns]


def fixed_space(box, w_or_group):
    """Fixed space in ``V`` of an element (serial number) or a subgroup."""
    n = box.rank
    if isinstance(w_or_group, Subgrp):
        mats = [box.matrix(g) for g in w_or_group.gens]
    else:
        mats = [box.matrix(int(w_or_group))]
    return FixedSpace(_fixed_basis(mats, n), n)


def fixed_dim(box, w):
    M = Matrix(box.matrix(int(w)).tolist()) - Matrix.eye(box.rank)
    return box.rank - M.rank()


def is_cuspidal(box, w, sub):
    """``w`` in the parabolic ``sub`` has no nonzero fixed points in ``sub``'s own representation."""
    return fixed_dim(box, w) == box.rank - len(sub.parabolic)


def cuspidal_classes(sub):
    box = sub.box
    out = []
    for c in sub.classes:
        if c.cuspidal is None:
            c.cuspidal = is_cuspidal(box, c.rep, sub)
        if c.cuspidal:
            out.append(c)
    return out


# -- type B and D constructions ---------------------------------------------

def _check_partition(n, lam):
    lam = tuple(sorted(int(x) for x in lam))
    if sum(lam) != n or any(x <= 0 for x in lam):
        raise ValueError(f"{lam} is not a partition of {n}")
    return lam


def negative_cycle_word(j, part):
    """Word of the negative cycle ``(j+1) j ... 2 1 2 ... (j+part)`` (1-based)."""
    return tuple(range(j + 1, 0, -1)) + tuple(range(2, j + part + 1))


def swap_word(j, part):
    """Word of ``prod_k (j+k)(j+k-1)...(j+k-part+1)`` for ``k = 1..part``."""
    out = []
    for k in range(1, part + 1):
        out.extend(range(j + k, j + k - part, -1))
    return tuple(out)


@dataclass
class CuspidalRep:
    partition: tuple
    rep: int
    word: tuple
    generators: dict  # name -> word (1-based positions in the ambient type)


def bn_cuspidal_rep(box, lam):
    """Representative ``w_lambda = c_1 ... c_k`` of a cuspidal class of ``W(B_n)``.

    Also returns the standard centraliser generators ``c_{m(j)}`` and ``x_i``.
    """
    if box.datum.family != "B":
        raise ValueError("bn_cuspidal_rep needs a group of type B")
    n = box.rank
    lam = _check_partition(n, lam)
    cs, start = [], 0
    for part in lam:
        cs.append(negative_cycle_word(start, part))
        start += part
    w_word = tuple(i for c in cs for i in c)
    gens = {}
    seen = set()
    for i, part in enumerate(lam):
        if part not in seen:
            seen.add(part)
            gens[f"c{i + 1}"] = cs[i]
    for i in range(len(lam) - 1):
        if lam[i] == lam[i + 1]:
            j = sum(lam[: i + 1])
            gens[f"x{i + 1}"] = swap_word(j, lam[i])
    rep = box.from_word(w_word)
    for name, word in gens.items():
        g = box.from_word(word)
        if box.mul(g, rep) != box.mul(rep, g):
            raise AssertionError(f"{name} does not centralise w_{lam}")
    return CuspidalRep(lam, rep, w_word, gens)


def partitions(n, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


class DInB:
    """The embedding ``W(D_n) -> W(B_n)`` with ``1' -> 121`` and ``i -> i``."""

    def __init__(self, box_d, box_b):
        n = box_d.rank
        if box_d.datum.family != "D" or box_b.datum.family != "B" or box_b.rank != n:
            raise ValueError("need W(D_n) and W(B_n) of the same rank")
        self.box_d, self.box_b = box_d, box_b
        # simple roots in the basis e_1..e_n
        eb = [[0] * n for _ in range(n)]
        eb[0][0] = 1
        for i in range(1, n):
            eb[i][i], eb[i][i - 1] = 1, -1
        ed = [[0] * n for _ in range(n)]
        ed[0][0] = ed[0][1] = 1
        for i in range(1, n):
            ed[i][i], ed[i][i - 1] = 1, -1
        self.EB, self.ED = Matrix(eb), Matrix(ed)

    def _convert(self, M, src, dst, box_dst):
        A = src.inv() * M * src
        Mdst = dst * A * dst.inv()
        datum = box_dst.datum
        # the index lookup only reads the images of the simple roots
        perm = np.zeros((1, 2 * datum.N), dtype=np.int64)
        for i, k in enumerate(datum.simple):
            perm[0, k] = datum.root_index([int(x) for x in Mdst.row(i)])
        return int(box_dst.index(perm)[0])

    def to_b(self, x):
        M = Matrix(self.box_d.matrix(x).tolist())
        return self._convert(M, self.ED, self.EB, self.box_b)

    def to_d(self, y):
        """Preimage of ``y``; raises ``KeyError`` if ``y`` is not in ``W(D_n)``."""
        M = Matrix(self.box_b.matrix(y).tolist())
        A = self.EB.inv() * M * self.EB
        Md = self.ED * A * self.ED.inv()
        if any(not x.is_integer for x in Md):
            raise KeyError("element is not in W(D_n)")
        return self._convert(M, self.EB, self.ED, self.box_d)

    def image_mask(self):
        """Boolean mask over ``W(B_n)``: even number of sign changes."""
        b = self.box_b
        # e_k = alpha_1 + ... + alpha_k; count the e_k sent to negative roots
        ek = [b.datum.index[tuple([1] * k + [0] * (b.rank - k))] for k in range(1, b.rank + 1)]
        neg = (b.perms[:, ek] >= b.N).sum(axis=1)
        return neg % 2 == 0


@dataclass
class DCuspidalRep:
    partition: tuple
    rep: int
    word: tuple
    b_rep: int
    hints: dict


def dn_cuspidal_reps(box_d, box_b=None):
    """Cuspidal class representatives of ``W(D_n)`` from partitions with an even number of parts."""
    n = box_d.rank
    if box_b is None:
        box_b = GroupBox(build_coxeter_datum("B", n))
    emb = DInB(box_d, box_b)
    out = []
    for lam in sorted(partitions(n), key=lambda p: (len(p), tuple(sorted(p)))):
        if len(lam) % 2:
            continue
        cr = bn_cuspidal_rep(box_b, lam)
        x = emb.to_d(cr.rep)
        hints = {}
        cwords = []
        start = 0
        for part in cr.partition:
            cwords.append(negative_cycle_word(start, part))
            start += part
        for name, word in cr.generators.items():
            if name.startswith("x"):
                hints[name] = emb.to_d(box_b.from_word(word))
        k = len(cwords)
        for i in range(k):
            for j in range(i + 1, k):
                y = box_b.from_word(cwords[i] + cwords[j])
                hints[f"c{i + 1}c{j + 1}"] = emb.to_d(y)
        out.append(DCuspidalRep(cr.partition, x, box_d.word(x), cr.rep, hints))
    return out


_BOXES = {}


def coxeter_group(name, rank=None):
    """Cached :class:`GroupBox` for a name such as ``"B5"`` (or family and rank)."""
    if rank is None:
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", str(name))
        if not m:
            raise ValueError(f"cannot read a group name from {name!r}")
        family, rank = m.group(1).upper(), int(m.group(2))
    else:
        family, rank = str(name).upper(), int(rank)
    key = (family, rank)
    if key not in _BOXES:
        _BOXES[key] = GroupBox(build_coxeter_datum(family, rank))
    return _BOXES[key]
