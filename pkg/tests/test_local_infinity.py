from __future__ import annotations

import pytest

from kummer_genus.errors import NotApplicable, WildPrime, ZeroInput
from kummer_genus.genus_core import ComponentSpec, analyze_component, component_report, star_root
from kummer_genus.kummer_lattice import RadicalGenerator, lattice_of
from kummer_genus.local_infinity import (
    hplus_constant_exponent,
    hplus_details,
    infinity_data,
    local_class,
    local_norm_prime,
    minus_one_log,
    pairing_constant_degree,
    sign_phi,
)

from conftest import irreducible


def test_sign_phi(F5):
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    assert sign_phi(F5.one, ((T, 1),)) == F5.one
    assert sign_phi(F5(2), ((T, 1), (T1, 1))) == F5(2)
    assert sign_phi(F5(4)) == F5(4)
    with pytest.raises(ZeroInput):
        sign_phi(F5.zero)


def test_local_class_examples(F5):
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    lc = local_class(RadicalGenerator.make(F5(2), {T: 1}, 4), 2, 2)
    assert (lc.val, lc.const) == (3, F5(2))
    assert lc.vector() == (3, 1)
    lc = local_class(RadicalGenerator.make(F5.one, {T: 1, T1: 3}, 4), 2, 2)
    assert (lc.val, lc.const) == (0, F5.one)
    lc = local_class(RadicalGenerator.make(F5.one, {T1: 1}, 2), 2, 2)
    assert (lc.val, lc.const) == (2, F5.one)


def test_local_class_wild(F2):
    T = irreducible(F2, 0, 1)
    with pytest.raises(WildPrime):
        local_class(RadicalGenerator.make(F2.one, {T: 1}, 2), 2, 1)


def test_infinity_data_examples(F5):
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    d = infinity_data([star_root(T, 4)], 2, 2)
    assert (d.e_inf, d.f_inf) == (4, 1)
    d = infinity_data([RadicalGenerator.make(F5.one, {T: 1, T1: 3}, 4)], 2, 2)
    assert (d.e_inf, d.f_inf) == (1, 1)
    d = infinity_data([RadicalGenerator.make(F5(2), {T: 1}, 4)], 2, 2)
    assert (d.e_inf, d.f_inf) == (4, 1)


def test_inert_infinity(F5):
    # radicand of degree 0 mod 4 with a non-square sign: infinity is inert of degree 4
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    d = infinity_data([RadicalGenerator.make(F5(2), {T: 1, T1: 3}, 4)], 2, 2)
    assert (d.e_inf, d.f_inf) == (1, 4)


def test_minus_one_log(F5):
    assert minus_one_log(F5, 2, 2) == 2


@pytest.fixture
def thread(F5):
    return analyze_component(F5, ComponentSpec(2, 2, F5(2), ((irreducible(F5, 0, 1), 1),)))


def test_local_norm_prime_example(F5, thread):
    norm = local_norm_prime(thread)
    assert norm.sign == F5(4)
    assert norm.theta == F5(3)
    assert norm.pi_power == 1
    assert norm.constant == F5(2)


def test_hplus_examples(F5, thread):
    res = hplus_details(thread)
    assert (res.degree, res.route) == (4, "norm-search")
    assert hplus_constant_exponent(thread) == 4
    # the pairing route agrees on this example
    assert pairing_constant_degree(lattice_of([thread.K_generator], 2, 2)) == 4


def test_hplus_cyclotomic_is_trivial(F5):
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    comp = ComponentSpec(2, 2, F5(4), ((T, 1), (T1, 2)))  # gamma = (-1)^deg D
    rep = component_report(F5, comp)
    assert rep.lattices["K"].equal(rep.lattices["E"])
    assert rep.constants["KH+"] == 1


def test_local_norm_not_applicable(F5):
    # deg D divisible by l^n: no local prime element construction, pairing is used
    T, T1 = irreducible(F5, 0, 1), irreducible(F5, 1, 1)
    cd = analyze_component(F5, ComponentSpec(2, 2, F5(2), ((T, 1), (T1, 3))))
    with pytest.raises(NotApplicable):
        local_norm_prime(cd)
    assert hplus_details(cd).route == "pairing"
    cd1 = analyze_component(F5, ComponentSpec(2, 1, F5(2), ((T, 1),)))
    assert hplus_details(cd1).route == "case-n1"
