from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coxchar.coxgroup import coxeter_group, parabolic_subgroup
from coxchar.descent import (
    GroupAlgebraVector,
    check_idempotents,
    descent_matrix,
    quasi_idempotent,
    quasi_idempotent_by_sums,
    rho_lambda_direct,
    rho_tilde,
    rho_tilde_oracle,
    rho_top_direct,
    shape_idempotent,
    shapes,
)
from coxchar.osalg import omega_top_native, sign_character


def test_a1_matrices():
    dm = descent_matrix(coxeter_group("A1"), ("1",))
    # rows/columns: {}, {1}
    assert dm.M == [[2, 0], [1, 1]]
    assert dm.N == [[Fraction(1, 2), 0], [Fraction(-1, 2), 1]]


@pytest.mark.parametrize("name,count", [("A2", 3), ("B2", 4), ("A3", 5), ("B3", 7), ("D4", 11)])
def test_shape_counts(name, count):
    assert len(shapes(coxeter_group(name))) == count


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "D4"])
def test_shapes_partition_subsets(name):
    b = coxeter_group(name)
    seen = [J for s in shapes(b) for J in s.members]
    assert len(seen) == len(set(seen)) == 1 << b.rank


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "D4"])
def test_idempotents_small(name):
    ok, sum_ok, failures = check_idempotents(coxeter_group(name))
    assert ok and sum_ok and not failures


def test_idempotents_by_convolution_a2():
    b = coxeter_group("A2")
    es = [shape_idempotent(b, s) for s in shapes(b)]
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == GroupAlgebraVector.identity(b)
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            prod = e * f
            assert prod == (e if i == j else GroupAlgebraVector(b))


@pytest.mark.parametrize(
    "name,L,J",
    [("A3", ("1", "2", "3"), ("1", "3")), ("B3", ("1", "2"), ("1",)), ("D4", ("1'", "2", "3"), ("2",))],
)
def test_quasi_idempotent_routes_agree(name, L, J):
    b = coxeter_group(name)
    assert quasi_idempotent(b, L, J) == quasi_idempotent_by_sums(b, L, J)


def test_quasi_idempotent_requires_subset():
    b = coxeter_group("A3")
    with pytest.raises(ValueError):
        quasi_idempotent(b, ["1", "2"], ["3"])


@pytest.mark.parametrize("name", ["A2", "A3", "B3"])
def test_rho_lambda_sum_is_regular(name):
    b = coxeter_group(name)
    total = [sum(v) for v in zip(*(rho_lambda_direct(b, s) for s in shapes(b)))]
    assert total == [b.size] + [0] * (len(total) - 1)


@pytest.mark.parametrize(
    "name,L",
    [("A3", ("1", "3")), ("B3", ("1", "2")), ("D4", ("1'", "2", "3")), ("B5", ("1", "2", "4", "5"))],
)
def test_rho_tilde_matches_dense_oracle(name, L):
    b = coxeter_group(name)
    assert rho_tilde(b, L) == rho_tilde_oracle(b, L)


@pytest.mark.parametrize("name,L", [("A3", ("1", "2", "3")), ("B3", ("1", "2", "3")), ("B4", ("1", "2"))])
def test_top_component_is_sign_times_omega(name, L):
    b = coxeter_group(name)
    sub = parabolic_subgroup(b, L)
    eps = sign_character(sub)
    omega = omega_top_native(b, L)
    assert rho_top_direct(b, L) == [e * w for e, w in zip(eps, omega)]


@given(st.sampled_from(["A3", "B3", "D4"]), st.data())
def test_rho_tilde_identity_value(name, data):
    # at the identity both sides are the dimension of e_L CW_L
    b = coxeter_group(name)
    labels = b.datum.labels
    L = tuple(x for x in labels if data.draw(st.booleans()))
    vals = rho_tilde(b, L)
    assert vals[0] == rho_top_direct(b, L)[0]
    assert all(v.denominator == 1 for v in vals)


@given(st.sampled_from(["A3", "B3"]), st.integers(0, 47), st.integers(0, 47))
def test_convolution_associates(name, x, y):
    b = coxeter_group(name)
    x, y = x % b.size, y % b.size
    u = GroupAlgebraVector(b, {x: 1, y: 2})
    v = GroupAlgebraVector(b, {0: 3, x: -1})
    w = shape_idempotent(b, shapes(b)[1])
    assert (u * v) * w == u * (v * w)
