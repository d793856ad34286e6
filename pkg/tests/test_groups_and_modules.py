from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom.equivariant_modules import (
    ModuleValidationError,
    gamma_coinvariants,
    gamma_invariants,
    group_ring_module,
    module_from_spec,
    sign_module,
    trivial_module,
)
from gammahom.exact_linalg import AbelianInvariants
from gammahom.finite_group import (
    FiniteGroup,
    GammaGroup,
    GroupAxiomError,
    automorphisms,
    commutator_subgroup,
    cyclic,
    dihedral,
    direct_product,
    gamma_group_from_spec,
    group_from_spec,
    homomorphisms,
    normal_subgroups,
    power_action,
    quaternion,
    subgroups,
    symmetric,
)

# counts from standard tables of small groups
AUT_ORDERS = [
    (cyclic(8), 4),
    (direct_product(cyclic(2), cyclic(2)), 6),
    (symmetric(3), 6),
    (dihedral(4), 8),
    (quaternion(), 24),
]
SUBGROUP_COUNTS = [(symmetric(3), 6, 3), (dihedral(4), 10, 6), (quaternion(), 6, 6), (cyclic(12), 6, 6)]


@pytest.mark.parametrize("g,count", AUT_ORDERS)
def test_automorphism_group_orders(g, count):
    assert len(automorphisms(g)) == count


@pytest.mark.parametrize("g,total,normal", SUBGROUP_COUNTS)
def test_subgroup_and_normal_subgroup_counts(g, total, normal):
    assert len(subgroups(g)) == total
    assert len(normal_subgroups(g)) == normal


def test_commutator_subgroups():
    assert len(commutator_subgroup(symmetric(3))) == 3
    assert len(commutator_subgroup(quaternion())) == 2
    assert len(commutator_subgroup(cyclic(6))) == 1


def test_homomorphism_count_z4_to_z6():
    assert len(homomorphisms(cyclic(4), cyclic(6))) == 2


def test_non_associative_table_rejected():
    with pytest.raises(GroupAxiomError):
        FiniteGroup([[0, 1, 2], [1, 0, 0], [2, 2, 1]])


def test_group_spec_forms():
    assert group_from_spec({"cyclic": 5}).order == 5
    assert group_from_spec({"product": [{"cyclic": 2}, {"symmetric": 3}]}).order == 12
    assert group_from_spec({"table": [[0, 1], [1, 0]]}).order == 2
    with pytest.raises(ValueError):
        group_from_spec({"mystery": 3})


def test_gamma_action_must_be_by_automorphisms():
    with pytest.raises(GroupAxiomError):
        GammaGroup(cyclic(3), cyclic(2), [[0, 1, 2], [0, 1, 1]])
    with pytest.raises(GroupAxiomError):
        # x -> x+1 is a permutation but not a homomorphism
        GammaGroup(cyclic(3), cyclic(3), [[0, 1, 2], [1, 2, 0], [2, 0, 1]])


def test_inversion_needs_abelian_group():
    with pytest.raises(ValueError):
        gamma_group_from_spec({"symmetric": 3}, None, "inversion")


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12).flatmap(lambda m: st.tuples(st.just(m), st.sampled_from([k for k in range(1, m) if gcd(k, m) == 1]))))
def test_power_action_is_a_valid_gamma_group(mk):
    m, k = mk
    gg = power_action(m, k)
    assert gg.group.order == m
    assert all(gg.act(s, 1) == pow(k, s, m) for s in range(gg.gamma.order))


def test_semidirect_product_order():
    gg = gamma_group_from_spec({"cyclic": 3}, None, "inversion")
    assert gg.semidirect_product().order == 6
    assert not gg.semidirect_product().is_abelian()


def test_module_validation_rejects_incompatible_actions():
    gg = gamma_group_from_spec({"symmetric": 3}, None, {"conjugation": 1})
    with pytest.raises(ModuleValidationError):
        sign_module(gg, [1, -1, -1, 1, 1, 1], [1, 1], 0)


def test_module_spec_requires_one_matrix_per_element():
    gg = GammaGroup(cyclic(2))
    with pytest.raises(ModuleValidationError):
        module_from_spec(gg, {"rank": 1, "g_action": [[[1]]]})


def test_coinvariants_and_invariants_of_sign_module():
    gg = GammaGroup(cyclic(2), cyclic(2))
    m = sign_module(gg, [1, 1], [1, -1], 0)
    assert gamma_coinvariants(m).invariants() == AbelianInvariants(0, (2,))
    inv, _ = gamma_invariants(m)
    assert inv.invariants() == AbelianInvariants(0)


def test_regular_module_rank():
    gg = GammaGroup(cyclic(4))
    assert group_ring_module(gg).rank == 4
    assert trivial_module(gg, 3).base.invariants() == AbelianInvariants(0, (3,))
