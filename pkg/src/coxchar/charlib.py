"""Class functions, linear characters, induction and the assignment solver.

Linear characters are kept in a compact form: a modulus ``m`` and, for
every element of the subgroup, an exponent ``e`` standing for the value
``zeta_m^e``.  Induced characters of linear characters are algebraic
integers, so in the search they are handled as integer coefficient arrays
on the power basis of one common cyclotomic field.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .coxgroup import GroupBox, Subgrp, _normalizer, centralizer, closure, cuspidal_classes, positions_of
from .cyclotomic import Cyclotomic, _phi, _powers, cyc


class InconsistentCharacter(ValueError):
    """Generator values that do not extend to a homomorphism."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotGenerating(ValueError):
    """The listed generators do not generate the stated subgroup."""


def _as_subgroup(G):
    return G.whole() if isinstance(G, GroupBox) else G


# -- class functions -------------------------------------------------------------

class ClassFunction:
    """Cyclotomic values on the classes of a group, in the group's class order."""

    def __init__(self, group, values):
        self.group = _as_subgroup(group)
        vals = tuple(cyc(v) for v in values)
        if len(vals) != len(self.group.classes):
            raise ValueError("one value per conjugacy class is required")
        self.values = vals

    @property
    def labels(self):
        return [c.label for c in self.group.classes]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def _check(self, other):
        if isinstance(other, ClassFunction):
            if other.group is not self.group and not np.array_equal(
                other.group.members, self.group.members
            ):
                raise ValueError("class functions live on different groups")
            return other.values
        return [cyc(other)] * len(self.values)

    def __add__(self, other):
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, self._check(other))])

    __radd__ = __add__

    def __sub__(self, other):
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, self._check(other))])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other):
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, self._check(other))])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return len(other.values) == len(self.values) and all(
            a == b for a, b in zip(self.values, other.values)
        )

    def __hash__(self):
        return hash(self.values)

    @property
    def degree(self):
        return self.values[0]  # class 0 is the identity class

    def differences(self, other):
        """``(label, self value, other value)`` for every class where they differ."""
        return [
            (lab, a, b)
            for lab, a, b in zip(self.labels, self.values, other.values)
            if a != b
        ]

    def inner(self, other):
        """``<self, other>`` with complex conjugation on ``other``."""
        G = self.group
        total = Cyclotomic.rational(0)
        for c, a, b in zip(G.classes, self.values, other.values):
            total = total + a * b.conjugate() * c.size
        return total / G.size

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def trivial_character(G):
    G = _as_subgroup(G)
    return ClassFunction(G, [1] * len(G.classes))


# -- linear characters --------------------------------------------------------------

@dataclass
class LinearChar:
    """``h -> zeta_m^exps[k]`` for ``h = group.members[k]``."""

    group: Subgrp
    modulus: int
    exps: np.ndarray

    def value(self, x):
        k = int(self.group.local(int(x)))
        return Cyclotomic.root_of_unity(self.modulus, int(self.exps[k]))

    @property
    def order(self):
        m = self.modulus
        return m // int(np.gcd.reduce(np.append(self.exps, m)))

    def class_values(self):
        G = self.group
        out = []
        for c in G.classes:
            out.append(Cyclotomic.root_of_unity(self.modulus, int(self.exps[G.local(c.rep)])))
        return ClassFunction(G, out)

    def generator_values(self):
        return [(g, self.value(g)) for g in self.group.gens]

    def times(self, other):
        m = lcm(self.modulus, other.modulus)
        e = (self.exps * (m // self.modulus) + other.exps * (m // other.modulus)) % m
        return _normalised(self.group, m, e)

    def key(self):
        return (self.order, tuple(int(x) for x in self.exps[self.group.local(np.array(self.group.gens))]))


def _normalised(group, m, exps):
    exps = np.asarray(exps, dtype=np.int64) % m
    g = int(np.gcd.reduce(np.append(exps, m)))
    return LinearChar(group, m // g, exps // g)


@dataclass
class LinearCharacterSpec:
    """Values of a linear character on a list of generators of ``group``."""

    group: Subgrp
    gens: list  # (element serial number, Cyclotomic)
    L: tuple = ()
    label: str = ""
    words: list = field(default_factory=list)


def linear_character_from_spec(spec):
    """Validate ``spec`` and return the :class:`LinearChar` it defines.

    Breadth-first closure from the identity; when two products reach the same
    element their values must agree, otherwise :class:`InconsistentCharacter`
    carries the element and the two exponents as witness.
    """
    H = spec.group
    box = H.box
    angles = []
    for k, (g, v) in enumerate(spec.gens):
        ang = cyc(v).root_of_unity_angle()
        if ang is None:
            raise InconsistentCharacter(f"value {v} of generator {k + 1} is not a root of unity")
        if not H.mask[int(g)]:
            raise InconsistentCharacter(f"generator {k + 1} is not in the subgroup")
        angles.append(ang)
    m = lcm(1, *(a.denominator for a in angles))
    steps = [int(a * m) for a in angles]
    gens = np.array([int(g) for g, _ in spec.gens], dtype=np.int64)
    val = np.full(box.size, -1, dtype=np.int64)
    parent = np.full(box.size, -1, dtype=np.int64)
    via = np.full(box.size, -1, dtype=np.int64)
    val[0] = 0
    frontier = np.array([0], dtype=np.int64)
    while len(frontier):
        new = []
        for k, g in enumerate(gens.tolist()):
            img = box.mul(frontier, g)
            v = (val[frontier] + steps[k]) % m
            seen = val[img] >= 0
            bad = seen & (val[img] != v)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                y = int(img[i])
                witness = (y, int(val[y]), int(v[i]), m, _path(parent, via, int(frontier[i])) + [k])
                raise InconsistentCharacter(
                    f"inconsistent values at element {box.word_str(y)}", witness
                )
            fresh = ~seen
            # duplicates inside one batch must agree as well
            order = np.argsort(img[fresh], kind="stable")
            fi, fv = img[fresh][order], v[fresh][order]
            src = frontier[fresh][order]
            if len(fi):
                starts = np.concatenate([[True], fi[1:] != fi[:-1]])
                grp = np.cumsum(starts) - 1
                firstv = fv[starts][grp]
                if (firstv != fv).any():
                    i = int(np.flatnonzero(firstv != fv)[0])
                    y = int(fi[i])
                    raise InconsistentCharacter(
                        f"inconsistent values at element {box.word_str(y)}",
                        (y, int(firstv[i]), int(fv[i]), m, _path(parent, via, int(src[i])) + [k]),
                    )
                u = fi[starts]
                val[u] = fv[starts]
                parent[u] = src[starts]
                via[u] = k
                new.append(u)
        frontier = np.concatenate(new) if new else np.array([], dtype=np.int64)
    reached = np.flatnonzero(val >= 0)
    if len(reached) != H.size or not H.mask[reached].all():
        raise NotGenerating(
            f"the generators reach {len(reached)} of {H.size} elements"
        )
    return _normalised(H, m, val[H.members])


def _path(parent, via, x):
    out = []
    while parent[x] >= 0:
        out.append(int(via[x]))
        x = int(parent[x])
    return out[::-1]


def linear_character(spec):
    """The class function defined by a validated :class:`LinearCharacterSpec`."""
    return linear_character_from_spec(spec).class_values()


def derived_subgroup(H):
    """Normal closure in ``H`` of the commutators of its generators."""
    box = H.box
    gens = list(H.gens)
    comms = set()
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            ab = box.mul(a, b)
            ba = box.mul(b, a)
            c = int(box.mul(box.inv[ba], ab))
            if c != 0:
                comms.add(c)
    kgens = sorted(comms)
    members = closure(box, kgens) if kgens else np.array([0], dtype=np.int64)
    while True:
        mask = np.zeros(box.size, dtype=bool)
        mask[members] = True
        extra = []
        for g in gens:
            if kgens:
                img = box.conj(np.array(kgens), g)
                extra.extend(int(x) for x in img[~mask[img]])
        if not extra:
            break
        kgens = sorted(set(kgens) | set(extra))
        members = closure(box, kgens)
    return Subgrp(box, kgens, members)


def linear_characters(H):
    """All linear characters of ``H`` (trivial first, then by order)."""
    H = _as_subgroup(H)
    cache = H.__dict__.get("_linear_characters")
    if cache is not None:
        return cache
    box = H.box
    K = derived_subgroup(H)
    E = H.size // K.size
    members = K.members
    chars = [np.zeros(len(members), dtype=np.int64)]
    mask = np.zeros(box.size, dtype=bool)
    mask[members] = True
    for g in H.gens:
        # smallest power of g inside the current subgroup
        powers = [0]
        p = 0
        while True:
            p = int(box.mul(p, g))
            if mask[p]:
                break
            powers.append(p)
        m = len(powers)
        if m == 1:
            continue
        loc = np.searchsorted(members, p)
        blocks = [box.mul(members, q) for q in powers]
        new_members = np.concatenate(blocks)
        order = np.argsort(new_members)
        new_chars = []
        for ch in chars:
            v0 = int(ch[loc])
            # zeta_E^e with m*e = v0 (mod E)
            if v0 % m:
                raise ArithmeticError("abelian extension failed")
            for t in range(m):
                e = (v0 // m + t * (E // m)) % E
                vals = np.concatenate([(ch + j * e) % E for j in range(m)])
                new_chars.append(vals[order])
        members = new_members[order]
        mask[members] = True
        chars = new_chars
    if len(members) != H.size:
        raise AssertionError("abelianisation did not exhaust the group")
    out = [_normalised(H, E, ch) for ch in chars]
    out.sort(key=LinearChar.key)
    H.__dict__["_linear_characters"] = out
    return out


# -- induction ----------------------------------------------------------------------

def _check_subgroup(H, G):
    if not G.mask[H.members].all():
        raise ValueError("H is not a subgroup of G")


def induce(phi, G):
    """``Ind_H^G phi`` for a class function on ``H`` (via class fusion)."""
    G = _as_subgroup(G)
    if isinstance(phi, LinearChar):
        return induce_linear(phi, G)
    H = phi.group
    _check_subgroup(H, G)
    sums = [Cyclotomic.rational(0)] * len(G.classes)
    for c, v in zip(H.classes, phi.values):
        k = int(G.class_of[c.rep])
        sums[k] = sums[k] + v * c.size
    out = []
    for C, s in zip(G.classes, sums):
        out.append(s * Fraction(G.size, H.size * C.size))
    return ClassFunction(G, out)


def induced_array(lc, G, M):
    """Integer power-basis coefficients in ``Q(zeta_M)`` of ``Ind lc``, one row per class."""
    H = lc.group
    if M % lc.modulus:
        raise ValueError("modulus must be a multiple of the character's modulus")
    k = lc.exps * (M // lc.modulus)
    cls = G.class_of[H.members]
    if (cls < 0).any():
        raise ValueError("H is not a subgroup of G")
    nc = len(G.classes)
    counts = np.zeros((nc, M), dtype=np.int64)
    np.add.at(counts, (cls, k), 1)
    P = np.array(_powers(M), dtype=np.int64).reshape(M, _phi(M))
    raw = counts @ P * G.size
    den = (H.size * G.class_sizes)[:, None]
    if (raw % den).any():
        raise ArithmeticError("induced value is not integral on the power basis")
    return raw // den


def induce_linear(lc, G):
    G = _as_subgroup(G)
    M = lc.modulus
    arr = induced_array(lc, G, M)
    return ClassFunction(G, [Cyclotomic(M, row) for row in arr.tolist()])


def class_function_array(f, M):
    """Power-basis coefficients of a class function in ``Q(zeta_M)`` (Fractions allowed)."""
    from .cyclotomic import _lift

    rows = []
    for v in f.values:
        if M % v.n:
            raise ValueError("value does not lie in Q(zeta_M)")
        rows.append(_lift(v.n, v.coeffs, M))
    return rows


# -- assignment solver ------------------------------------------------------------------

@dataclass
class Assignment:
    """One linear character per cuspidal class of ``W_L``."""

    L: tuple  # generator labels
    reps: list  # class representatives (serial numbers), cuspidal order
    centralizers: list
    characters: list  # LinearChar per rep

    def induced(self, G):
        total = None
        for lc in self.characters:
            f = induce_linear(lc, G)
            total = f if total is None else total + f
        return total


@dataclass
class SolverStats:
    nodes: int = 0
    candidates: list = field(default_factory=list)


def cuspidal_data(box, L):
    """Cuspidal representatives of ``W_L`` with their centralisers in ``W``."""
    pos = positions_of(box, L)
    G = _normalizer(box, pos)
    W = box.whole()
    out = []
    for c in cuspidal_classes(G.levi):
        C = centralizer(W, c.rep)
        if not G.mask[C.members].all():
            raise AssertionError("centraliser of a cuspidal element escapes N_W(W_L)")
        out.append((c, C))
    return G, out


def solve_assignment(box, L, target=None, stats=None):
    """Search linear characters ``phi_w`` with ``sum_w Ind phi_w = target`` (default ``rho~_L``).

    Returns an :class:`Assignment`, or ``None`` when no choice works.
    """
    from .descent import rho_tilde

    pos = positions_of(box, L)
    G, data = cuspidal_data(box, L)
    if target is None:
        target = ClassFunction(G, rho_tilde(box, L))
    cands = [linear_characters(C) for _, C in data]
    M = lcm(1, *(lc.modulus for cs in cands for lc in cs), *(v.n for v in target.values))
    tgt = class_function_array(target, M)
    if any(x.denominator != 1 for row in tgt for x in row):
        return None
    tgt = np.array([[int(x) for x in row] for row in tgt], dtype=np.int64)
    arrays = []
    for cs in cands:
        seen = {}
        for i, lc in enumerate(cs):
            a = induced_array(lc, G, M)
            seen.setdefault(a.tobytes(), (i, a))
        arrays.append(sorted(seen.values(), key=lambda t: t[0]))
    if stats is not None:
        stats.candidates = [len(a) for a in arrays]
    # the identity value is the same for every choice
    deg = sum(G.size // C.size for _, C in data)
    if tgt[0, 0] != deg or tgt[0, 1:].any():
        return None
    order = sorted(range(len(data)), key=lambda i: (-data[i][1].size, i))
    nlev = len(order)
    support = []
    for i in order:
        C = data[i][1]
        m = np.zeros(len(G.classes), dtype=bool)
        m[np.unique(G.class_of[C.members])] = True
        support.append(m)
    settled = []
    for lev in range(nlev):
        rest = np.zeros(len(G.classes), dtype=bool)
        for m in support[lev + 1:]:
            rest |= m
        settled.append(~rest)
    last = {}
    if nlev:
        for i, a in arrays[order[-1]]:
            last.setdefault(a.tobytes(), i)
    chosen = [None] * nlev

    def dfs(lev, partial):
        if stats is not None:
            stats.nodes += 1
        if lev == nlev - 1:
            need = (tgt - partial).tobytes()
            hit = last.get(need)
            if hit is None:
                return False
            chosen[lev] = hit
            return True
        for i, a in arrays[order[lev]]:
            s = partial + a
            ok = settled[lev]
            if (s[ok] != tgt[ok]).any():
                continue
            chosen[lev] = i
            if dfs(lev + 1, s):
                return True
        return False

    if nlev == 0:
        return None
    if not dfs(0, np.zeros_like(tgt)):
        return None
    picks = [None] * nlev
    for lev, i in enumerate(order):
        picks[i] = cands[i][chosen[lev]]
    return Assignment(
        tuple(box.datum.labels[i] for i in pos),
        [c.rep for c, _ in data],
        [C for _, C in data],
        picks,
    )
