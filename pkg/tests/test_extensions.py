import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom import extensions as ex
from gammahom.equivariant_modules import sign_module, trivial_module
from gammahom.finite_group import GammaGroup, cyclic, dihedral, direct_product, gamma_group_from_spec, quaternion, symmetric


def _inv(m):
    return gamma_group_from_spec({"cyclic": m}, None, "inversion")


# expected |H^2_Gamma|; for Gamma of order prime to |A| this is the Gamma-fixed part of the classical group
E1_CASES = [
    ("Z2 Z/2", lambda: (GammaGroup(cyclic(2)), None, 2), 2),
    ("Z3 Z/3", lambda: (GammaGroup(cyclic(3)), None, 3), 3),
    ("Z3 inverted, Z/3 negated", lambda: (_inv(3), ([1, 1, 1], [1, -1]), 3), 3),
    ("Z3 inverted, Z/3 fixed", lambda: (_inv(3), None, 3), 1),
    ("Z3 fixed, Z/3 negated", lambda: (GammaGroup(cyclic(3), cyclic(2)), ([1, 1, 1], [1, -1]), 3), 1),
    ("Z2 Z/4", lambda: (GammaGroup(cyclic(2)), None, 4), 2),
    ("Z2 acting by -1 on Z/4", lambda: (GammaGroup(cyclic(2)), ([1, -1], [1]), 4), 2),
]


@pytest.mark.parametrize("name,build,count", E1_CASES, ids=[c[0] for c in E1_CASES])
def test_extension_classes_match_second_cohomology(name, build, count):
    gg, signs, n = build()
    module = trivial_module(gg, n) if signs is None else sign_module(gg, signs[0], signs[1], n)
    rep, reps = ex.enumerate_E1Gamma(gg, module)
    assert rep.match
    assert rep.classes_by_equivalence == count
    assert len(reps) == count


def test_factor_set_round_trip():
    gg = GammaGroup(cyclic(2))
    coeff = ex.FiniteCoefficients.from_module(trivial_module(gg, 4))
    for fs in ex.enumerate_factor_sets(gg, coeff):
        assert fs.is_valid()
        e = ex.extension_from_factor_set(fs)
        assert not e.violations()
        assert e.total.group.order == 8
        assert ex.are_equivalent(e, ex.extension_from_factor_set(ex.factor_set_from_extension(e, coeff)))


def test_extension_by_z2_of_z2_gives_z4_and_v4():
    gg = GammaGroup(cyclic(2))
    _, reps = ex.enumerate_E1Gamma(gg, trivial_module(gg, 2))
    totals = sorted(ex.extension_from_factor_set(fs).total.group.is_abelian() for fs in reps)
    orders = sorted(max(ex.extension_from_factor_set(fs).total.group.element_order(x) for x in range(4)) for fs in reps)
    assert totals == [True, True]
    assert orders == [2, 4]


def test_quaternion_rotation_separates_the_two_tests():
    rep = ex.gamma_property_check(ex.quaternion_rotation_extension())
    assert rep.section_exists and rep.gamma_trivial_on_kernel
    assert rep.characterization
    assert not rep.direct
    assert rep.identity_fiber


GROUPS = [cyclic(4), cyclic(6), direct_product(cyclic(2), cyclic(2)), symmetric(3), dihedral(4), quaternion(), cyclic(8)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_kernel_form_matches_section_criterion(seed):
    e = ex.random_gamma_extension(random.Random(seed), GROUPS)
    assert not e.violations()
    rep = ex.gamma_property_check(e)
    assert rep.identity_fiber == rep.characterization
    if rep.direct:
        assert rep.characterization


def test_obstruction_vanishes_for_realizable_kernel():
    for ak in ex.abstract_kernels(GammaGroup(cyclic(2)), cyclic(4)):
        obs = ex.obstruction(ak)
        assert obs.cocycle and obs.in_center and obs.gamma_map
        verdict = ex.obstruction_vanishes_iff_extension_exists(ak)
        assert verdict.class_is_zero and verdict.extension_exists


@pytest.mark.parametrize("seed", range(5))
def test_obstruction_class_independent_of_lifts(seed):
    rng = random.Random(seed)
    for ak in ex.abstract_kernels(_inv(3), cyclic(4)) + ex.abstract_kernels(GammaGroup(cyclic(2)), dihedral(4)):
        assert ex.obstruction_classes_agree(ak, ex.obstruction(ak), ex.obstruction(ak, rng))


def test_abstract_kernel_count_for_z2_on_z4():
    # Out(Z/4) = Z/2, so there are two homomorphisms Z/2 -> Out(Z/4)
    assert len(ex.abstract_kernels(GammaGroup(cyclic(2)), cyclic(4))) == 2


def test_bad_abstract_kernel_is_reported():
    ak = ex.AbstractKernel(GammaGroup(cyclic(3)), cyclic(3), [[0, 1, 2], [0, 2, 1], [0, 2, 1]])
    assert ak.violations()
