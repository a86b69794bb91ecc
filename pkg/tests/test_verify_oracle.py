from __future__ import annotations

import random

import pytest

from kummer_genus.errors import EnumerationBoundExceeded, SharedFactor
from kummer_genus.fq_arith import make_field
from kummer_genus.genus_core import (
    ComponentSpec,
    analyze_component,
    extended_genus_E,
    genus_E,
    genus_K,
    lattice,
    extended_genus_K_component,
)
from kummer_genus.kummer_lattice import KummerSubgroup, RadicalGenerator, lattice_of
from kummer_genus.rt_poly import Poly
from kummer_genus.suites import random_component, regression_specs, run_suite
from kummer_genus.verify_oracle import (
    char_component_order,
    character_extended_genus,
    legendre_symbol,
    oracle_genus,
)

from conftest import irreducible


def const(F, c):
    return Poly.of(F, (c,))


def test_legendre_examples(F5):
    T = irreducible(F5, 0, 1)
    assert legendre_symbol(Poly.of(F5, (2, 1)), T, 2, 2).value == const(F5, 2)
    assert legendre_symbol(const(F5, 1), T, 2, 2).value == const(F5, 1)
    sym = legendre_symbol(Poly.of(F5, (1, 1)), T, 2, 2)
    assert sym.value == const(F5, 1) and sym.order == 1


def test_legendre_shared_factor(F5):
    T = irreducible(F5, 0, 1)
    with pytest.raises(SharedFactor):
        legendre_symbol(Poly.of(F5, (0, 3)), T, 2, 2)


def test_legendre_is_multiplicative(F5):
    rng = random.Random(3)
    P = irreducible(F5, 2, 0, 1)  # T^2 + 2
    for _ in range(40):
        a = Poly.of(F5, tuple(rng.randrange(5) for _ in range(3)))
        b = Poly.of(F5, tuple(rng.randrange(5) for _ in range(3)))
        try:
            sa = legendre_symbol(a, P, 2, 2).value
            sb = legendre_symbol(b, P, 2, 2).value
        except SharedFactor:
            continue
        sab = legendre_symbol(a * b, P, 2, 2).value
        assert sab == (sa * sb) % P.poly


def test_char_component_orders(F5):
    T = irreducible(F5, 0, 1)
    assert [char_component_order(T, a, 2, 2) for a in (1, 2, 4)] == [4, 2, 1]


def _cd(F, gamma, factors, l=2, n=2):
    return analyze_component(F, ComponentSpec(l, n, F(gamma), tuple(factors)))


def test_oracle_examples(F5):
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    cd = _cd(F5, 1, [(T, 1)])
    E = lattice(cd, [cd.E_generator])
    assert oracle_genus(E).equal(E)
    assert oracle_genus(E).equal(lattice(cd, extended_genus_E(cd)))
    cd = _cd(F5, 1, [(T, 1), (T1, 1)])
    E = lattice(cd, [cd.E_generator])
    expected = lattice_of([RadicalGenerator.make(F5.one, {T: 1, T1: 3}, 4),
                           RadicalGenerator.make(F5(4), {T1: 1}, 2)], 2, 2, support=cd.support)
    assert oracle_genus(E).equal(expected)
    assert oracle_genus(E, extended=True).equal(lattice(cd, extended_genus_E(cd)))


@pytest.mark.parametrize("q,l,n", [(5, 2, 2), (13, 3, 1), (7, 3, 1)])
def test_oracle_matches_constructions(q, l, n):
    F = make_field(q)
    rng = random.Random(q * 100 + l)
    for _ in range(8):
        cd = analyze_component(F, random_component(rng, F, l, n, max_r=2, max_deg=2))
        K = lattice(cd, [cd.K_generator])
        E = lattice(cd, [cd.E_generator])
        assert oracle_genus(E).equal(lattice(cd, genus_E(cd)))
        assert oracle_genus(K).equal(lattice(cd, genus_K(cd)))
        assert oracle_genus(E, extended=True).equal(lattice(cd, extended_genus_E(cd)))
        assert oracle_genus(K, extended=True).equal(lattice(cd, extended_genus_K_component(cd)))
        assert character_extended_genus([cd.E_generator], l, n, F, support=cd.support).equal(
            lattice(cd, extended_genus_E(cd)))


def test_oracle_bound():
    F = make_field(17)
    support = tuple(irreducible(F, c, 1) for c in range(5))
    X = KummerSubgroup.trivial(F, 2, 4, support)
    with pytest.raises(EnumerationBoundExceeded):
        oracle_genus(X)


def test_run_suite_empty_and_regression():
    empty = run_suite("empty", 0)
    assert empty.trials == 0 and empty.ok
    assert run_suite("kummer-small", 0, counts={"specs": 0, "pairs": 0, "multi": 0}).ok
    reg = run_suite("regression", 0)
    assert reg.ok and reg.trials >= len(regression_specs())


def test_run_suite_small_counts():
    res = run_suite("kummer-small", 0, counts={"specs": 4, "pairs": 0, "multi": 0})
    assert res.ok
    assert res.stats["oracle"] > 0
    assert set(res.to_json()) == {"suite", "seed", "trials", "failures", "stats"}
