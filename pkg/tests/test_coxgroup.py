from math import prod

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxchar.coxgroup import (
    bn_cuspidal_rep,
    centralizer,
    class_fusion,
    conjugacy_classes,
    coxeter_group,
    cuspidal_classes,
    dn_cuspidal_reps,
    element_from_word,
    fixed_space,
    is_bulky,
    is_cuspidal,
    length_and_descents,
    normalizer,
    normalizer_complement,
    parabolic_coordinates,
    parabolic_subgroup,
    parabolic_transversal,
    partitions,
    positions_of,
)
from coxchar.descent import shapes
from coxchar.rootsys import build_coxeter_datum, degrees, simple_reflection

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4"]


def subsets(n):
    return [tuple(i + 1 for i in range(n) if m >> i & 1) for m in range(1 << n)]


@pytest.mark.parametrize("name", SMALL + ["B5", "D5"])
def test_group_order(name):
    b = coxeter_group(name)
    assert b.size == prod(degrees(b.datum.family, b.rank))


def test_word_examples():
    d = build_coxeter_datum("A", 2)
    assert element_from_word(d, "").is_identity()
    assert element_from_word(d, "121") == element_from_word(d, "212")
    assert element_from_word(build_coxeter_datum("B", 2), "1212").length == 4
    with pytest.raises(ValueError):
        element_from_word(d, "13")


def test_descents():
    d = build_coxeter_datum("A", 3)
    w = element_from_word(d, "12")
    assert length_and_descents(d, w) == (2, frozenset({1}))
    assert length_and_descents(d, d.identity) == (0, frozenset())
    w0 = element_from_word(d, "121321")
    assert length_and_descents(d, w0) == (6, frozenset({1, 2, 3}))


@given(st.sampled_from(SMALL), st.lists(st.integers(1, 4), max_size=10))
def test_descent_definition(name, word):
    b = coxeter_group(name)
    d = b.datum
    w = element_from_word(d, [i for i in word if i <= b.rank])
    length, D = length_and_descents(d, w)
    for i in range(1, b.rank + 1):
        shorter = (simple_reflection(d, i) * w).length < length
        assert (i in D) == shorter


@pytest.mark.parametrize("name", SMALL)
def test_transversal_sizes(name):
    b = coxeter_group(name)
    for L in subsets(b.rank):
        WL = parabolic_subgroup(b, L)
        for J in subsets(b.rank):
            if set(J) <= set(L):
                WJ = parabolic_subgroup(b, J)
                assert len(parabolic_transversal(WL, J)) * WJ.size == WL.size


def test_transversal_examples():
    b = coxeter_group("A2")
    assert len(parabolic_transversal(parabolic_subgroup(b, (1, 2)), ())) == 6
    assert len(parabolic_transversal(parabolic_subgroup(b, (1, 2)), (1,))) == 3
    assert len(parabolic_transversal(parabolic_subgroup(b, (1, 2)), (1, 2))) == 1


@pytest.mark.parametrize("name,L", [("B3", (1, 3)), ("A3", (2,)), ("D4", (2, 3, 4))])
def test_parabolic_coordinates_bijective(name, L):
    b = coxeter_group(name)
    lmask = sum(1 << i for i in positions_of(b, L))
    WL = parabolic_subgroup(b, L)
    seen = set()
    for w in range(b.size):
        x, u = parabolic_coordinates(b, w, L)
        assert b.mul(u, x) == w
        assert WL.mask[u]
        assert b.desc[x] & lmask == 0
        assert b.length[w] == b.length[u] + b.length[x]
        seen.add((x, u))
    assert len(seen) == b.size


@pytest.mark.parametrize("name", SMALL + ["B5"])
def test_normalizer_factorisation(name):
    b = coxeter_group(name)
    for L in subsets(b.rank):
        N = normalizer(b, L)
        assert N.size == parabolic_subgroup(b, L).size * len(normalizer_complement(b, L))


def test_bulky_examples():
    b = coxeter_group("B5")
    assert is_bulky(b, (1, 2, 3, 4, 5))
    assert not is_bulky(b, (1, 2, 4, 5))
    # the pairs still to be treated are not bulky
    assert not is_bulky(coxeter_group("E6"), (2, 3, 4, 5))


def test_classes_partition_group():
    b = coxeter_group("B4")
    cls = conjugacy_classes(b)
    assert len(cls) == 20
    assert sum(c.size for c in cls) == b.size
    for c in cls[:6]:
        g = c.rep
        assert all(int(b.conj(g, h)) in set(c.members.tolist()) for h in b.gens)


def test_centralizer_orders():
    b = coxeter_group("B5")
    W = b.whole()
    for c in W.classes:
        assert centralizer(W, c.rep).size * c.size == b.size


def test_fixed_space_examples():
    b = coxeter_group("B5")
    W = parabolic_subgroup(b, (1, 2, 3, 4, 5))
    assert fixed_space(b, 0).dim == 5
    assert not is_cuspidal(b, 0, W)
    assert fixed_space(b, b.longest).dim == 0
    assert is_cuspidal(b, b.longest, W)
    b2 = coxeter_group("B2")
    for word in ("12", "21"):
        assert fixed_space(b2, b2.from_word(word)).dim == 0


@given(st.lists(st.integers(1, 4), max_size=10))
def test_fixed_space_rank_nullity(word):
    b = coxeter_group("B4")
    x = b.from_word(word)
    fs = fixed_space(b, x)
    M = b.matrix(x)
    for v in fs.basis:
        assert list(np.array(v, dtype=object) @ M) == list(v)
    assert fs.dim + np.linalg.matrix_rank((M - np.eye(4)).astype(float)) == 4


def test_bn_cuspidal_examples():
    b2 = coxeter_group("B2")
    cr = bn_cuspidal_rep(b2, (2,))
    assert cr.generators["c1"] == (1, 2)
    cr = bn_cuspidal_rep(b2, (1, 1))
    assert cr.rep == b2.longest
    assert cr.generators["x1"] == (2,)
    b5 = coxeter_group("B5")
    cr = bn_cuspidal_rep(b5, (5,))
    assert cr.word == (1, 2, 3, 4, 5)
    assert centralizer(b5.whole(), cr.rep).size == 10
    with pytest.raises(ValueError):
        bn_cuspidal_rep(b5, (2, 2))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_bn_cuspidal_reps_cover(n):
    b = coxeter_group(f"B{n}")
    W = parabolic_subgroup(b, range(1, n + 1))
    cusp = {int(W.class_of[c.rep]) for c in cuspidal_classes(W)}
    got = set()
    for lam in partitions(n):
        cr = bn_cuspidal_rep(b, lam)
        assert is_cuspidal(b, cr.rep, W)
        got.add(int(W.class_of[cr.rep]))
    assert got == cusp


def test_dn_cuspidal_examples():
    d5 = coxeter_group("D5")
    reps = {r.partition: r for r in dn_cuspidal_reps(d5)}
    assert set(reps) == {(1, 4), (2, 3), (1, 1, 1, 2)}
    assert d5.word_str(reps[(1, 4)].rep) == "1'2345"
    assert centralizer(d5.whole(), reps[(1, 4)].rep).size == 8
    d6 = coxeter_group("D6")
    reps6 = {r.partition: r for r in dn_cuspidal_reps(d6)}
    assert d6.word_str(reps6[(1, 5)].rep) == "1'23456"
    W = parabolic_subgroup(d6, d6.datum.labels)
    assert {int(W.class_of[r.rep]) for r in reps6.values()} == {
        int(W.class_of[c.rep]) for c in cuspidal_classes(W)
    }


def test_class_fusion_examples():
    b = coxeter_group("B2")
    W = b.whole()
    assert class_fusion(W, W) == list(range(len(W.classes)))
    triv = parabolic_subgroup(b, ())
    assert class_fusion(triv, W) == [0]
    sub = parabolic_subgroup(b, (1,))
    fused = class_fusion(sub, W)
    assert len(fused) == 2 and fused[0] == 0


@pytest.mark.parametrize("name,count", [("A1", 2), ("A2", 3), ("A4", 7), ("B2", 5), ("B3", 10),
                                         ("B4", 20), ("D4", 13), ("B5", 36), ("D5", 18),
                                         ("B6", 65), ("D6", 37), ("E6", 25)])
def test_cuspidal_classes_over_shapes(name, count):
    b = coxeter_group(name)
    total = 0
    for sh in shapes(b):
        sub = parabolic_subgroup(b, [i + 1 for i in sh.rep])
        total += len(cuspidal_classes(sub))
    assert total == len(b.whole().classes) == count
