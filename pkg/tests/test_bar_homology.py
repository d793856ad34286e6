from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom.bar_homology import (
    BudgetExceeded,
    build_bar_complex,
    build_cochain_complex,
    check_h1_exact_sequence,
    cohomology_HnGamma,
    cyclic_group_cohomology_oracle,
    cyclic_group_homology_oracle,
    h1_via_formula,
    homology_HnGamma,
)
from gammahom.equivariant_modules import group_ring_module, sign_module, trivial_module
from gammahom.exact_linalg import AbelianInvariants as AI
from gammahom.finite_group import GammaGroup, cyclic, direct_product, gamma_group_from_spec, power_action, symmetric

P = AI.parse

# classical integral homology of small groups (textbook tables)
CLASSICAL_HOMOLOGY = {
    "Z2": (cyclic(2), ["Z", "Z/2", "0", "Z/2", "0"]),
    "Z4": (cyclic(4), ["Z", "Z/4", "0", "Z/4", "0"]),
    "Z6": (cyclic(6), ["Z", "Z/6", "0", "Z/6"]),
    "S3": (symmetric(3), ["Z", "Z/2", "0", "Z/6"]),
    "V4": (direct_product(cyclic(2), cyclic(2)), ["Z", "Z/2 + Z/2", "Z/2", "Z/2 + Z/2 + Z/2"]),
}


@pytest.mark.parametrize("name", sorted(CLASSICAL_HOMOLOGY))
def test_trivial_gamma_recovers_classical_homology(name):
    g, expected = CLASSICAL_HOMOLOGY[name]
    gg = GammaGroup(g)
    bar = build_bar_complex(gg, trivial_module(gg, 0), len(expected))
    assert [bar.homology(n) for n in range(len(expected))] == [P(e) for e in expected]


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_bar_matches_periodic_resolution_oracle(m):
    gg = GammaGroup(cyclic(m))
    bar = build_bar_complex(gg, trivial_module(gg, 0), 5)
    assert [bar.homology(n) for n in range(5)] == [cyclic_group_homology_oracle(m, n) for n in range(5)]
    cc = build_cochain_complex(gg, trivial_module(gg, 0), 5)
    assert [cc.cohomology(n) for n in range(5)] == [cyclic_group_cohomology_oracle(m, n) for n in range(5)]


def test_classical_cohomology_of_z3():
    gg = GammaGroup(cyclic(3))
    assert [cohomology_HnGamma(gg, trivial_module(gg, 0), n) for n in range(5)] == [P(x) for x in ["Z", "0", "Z/3", "0", "Z/3"]]


def test_mod_two_coefficients():
    gg = GammaGroup(cyclic(2))
    bar = build_bar_complex(gg, trivial_module(gg, 2), 4)
    assert all(bar.homology(n) == P("Z/2") for n in range(4))


def test_z3_with_inversion_low_degrees():
    gg = gamma_group_from_spec({"cyclic": 3}, None, "inversion")
    bar = build_bar_complex(gg, trivial_module(gg, 0), 2)
    assert bar.homology(0) == P("Z")
    assert bar.homology(1) == P("0")


def test_degree_zero_is_coinvariants_and_invariants():
    gg = GammaGroup(cyclic(2), cyclic(2))
    m = sign_module(gg, [1, 1], [1, -1], 0)
    assert homology_HnGamma(gg, m, 0) == P("Z/2")
    assert cohomology_HnGamma(gg, m, 0) == P("0")


def test_regular_coefficients_are_acyclic_with_trivial_gamma():
    gg = GammaGroup(cyclic(3))
    bar = build_bar_complex(gg, group_ring_module(gg), 3)
    assert bar.homology(0) == P("Z")
    assert bar.homology(1) == P("0") and bar.homology(2) == P("0")


def test_boundaries_square_to_zero():
    gg = gamma_group_from_spec({"symmetric": 3}, None, {"conjugation": 1})
    assert build_bar_complex(gg, trivial_module(gg, 0), 4).d_squared_zero()
    assert build_cochain_complex(gg, trivial_module(gg, 2), 3).complex.check_d_squared()


def test_budget_is_enforced():
    gg = GammaGroup(symmetric(3))
    with pytest.raises(BudgetExceeded):
        build_bar_complex(gg, trivial_module(gg, 0), 6, budget=100)


units = st.integers(2, 9).flatmap(lambda m: st.tuples(st.just(m), st.sampled_from([k for k in range(1, m) if gcd(k, m) == 1]), st.sampled_from([0, 2, 3, 4])))


@settings(max_examples=30, deadline=None)
@given(units)
def test_first_homology_equals_gamma_abelianization(mkn):
    m, k, n = mkn
    gg = power_action(m, k)
    coeff = trivial_module(gg, n)
    assert homology_HnGamma(gg, coeff, 1) == h1_via_formula(gg, coeff)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_low_degree_exact_sequence(m):
    rep = check_h1_exact_sequence(gamma_group_from_spec({"cyclic": m}, None, "inversion"))
    assert rep.exact
