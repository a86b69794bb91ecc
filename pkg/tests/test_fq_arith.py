from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from kummer_genus.errors import (
    DivisionByZero,
    KummerHypothesisViolated,
    MixedFields,
    NotPrime,
    ReducibleModulus,
)
from kummer_genus.fq_arith import (
    frobenius_degree,
    make_field,
    minus_one_is_power,
    oracle_root_degree,
    parse_elem,
    power_class,
    root_tower,
    valuation,
)

GRID = [(5, 2, 2), (13, 2, 2), (13, 3, 1), (17, 2, 4), (7, 3, 1)]


def test_make_field_examples(F5, F2, F9):
    assert (F5.q, F5.generator) == (5, 2)
    assert (F2.q, F2.generator) == (2, 1)
    assert F9.q == 9 and F9.gen.order() == 8


def test_make_field_rejects_bad_input():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(ReducibleModulus):
        make_field(3, 2, (2, 0, 1))  # X^2 - 1


def test_arithmetic_examples(F5):
    assert F5(2) * F5(3) == F5(1)
    assert F5(4).inverse() == F5(4)
    assert F5(2) ** 4 == F5.one
    assert F5(2) + F5(3) == F5.zero


def test_arithmetic_errors(F5, F9):
    with pytest.raises(MixedFields):
        F5(2) * F9.gen
    with pytest.raises(DivisionByZero):
        F5.zero.inverse()


def test_power_class_examples(F5):
    assert [power_class(F5(b), 2, 2) for b in (1, 2, 4)] == [0, 2, 1]
    with pytest.raises(KummerHypothesisViolated):
        power_class(F5(2), 2, 3)


def test_oracle_root_degree_examples(F5):
    assert [oracle_root_degree(F5(b), 2, 2) for b in (1, 2, 4)] == [1, 4, 2]


@pytest.mark.parametrize("q,l,n", GRID)
def test_tower_and_frobenius_agree_with_power_class(q, l, n):
    F = make_field(q)
    for beta in F.elements()[1:]:
        expected = l ** power_class(beta, l, n)
        tower = root_tower(beta, l, n)
        assert oracle_root_degree(beta, l, n) == expected
        assert frobenius_degree(tower, q) == expected


@pytest.mark.parametrize("q,l,top", [(17, 2, 4), (13, 2, 2), (7, 3, 1), (19, 3, 2)])
def test_extra_root_multiplies_degree_exactly_when_log_is_not_too_divisible(q, l, top):
    F = make_field(q)
    for beta in F.elements()[1:]:
        v = valuation(beta.log, l)
        for n in range(1, top + 1):
            for m in range(1, top - n + 1):
                scaled = oracle_root_degree(beta, l, n + m) == l**m * oracle_root_degree(beta, l, n)
                assert scaled == (v is not None and v <= n)


def test_minus_one_power_rule():
    for q in (5, 7, 9, 13, 17):
        F = make_field(3, 2, (1, 0, 1)) if q == 9 else make_field(q)
        for l in (2, 3):
            kappa = 1
            while (q - 1) % l**kappa == 0:
                exceptional = l == 2 and (q - 1) % 2 ** (kappa + 1) != 0
                assert minus_one_is_power(F, l, kappa) == (not exceptional)
                kappa += 1


def test_parse_elem(F5, F9):
    assert parse_elem(F5, "2") == F5(2)
    assert parse_elem(F9, "g^3") == F9.gen**3
    assert parse_elem(F9, "g^3").to_json() == "g^3"


@settings(max_examples=60, deadline=None)
@given(a=st.integers(1, 16), b=st.integers(1, 16), e=st.integers(-40, 40))
def test_field_axioms_f17(a, b, e):
    F = make_field(17)
    x, y = F(a), F(b)
    assert x * y == y * x
    assert (x * y) ** e == x**e * y**e
    assert x * x.inverse() == F.one
    assert (x + y) - y == x


@settings(max_examples=60, deadline=None)
@given(i=st.integers(0, 8), j=st.integers(0, 8), k=st.integers(0, 8))
def test_distributive_f9(i, j, k):
    F = make_field(3, 2, (1, 0, 1))
    x, y, z = F(i), F(j), F(k)
    assert x * (y + z) == x * y + x * z
