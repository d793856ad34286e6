import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom import crossed as cx
from gammahom.exact_linalg import IntMatrix
from gammahom.finite_group import GammaGroup, cyclic, dihedral, normal_subgroups, quaternion, symmetric


def test_inclusion_of_normal_subgroup_is_crossed():
    s3 = symmetric(3)
    a3 = [x for x in range(6) if s3.element_order(x) != 2]
    cm = cx.make_inclusion(s3, a3)
    assert not cm.violations()
    assert cm.image_of_mu() == frozenset(a3)


def test_non_normal_inclusion_rejected():
    with pytest.raises(cx.CrossedModuleError):
        cx.make_inclusion(symmetric(3), [0, 1])


def test_peiffer_identity_fails_for_nonabelian_group_with_trivial_mu():
    cm = cx.CrossedGammaModule(GammaGroup(symmetric(3)), [0] * 6)
    assert any("Peiffer" in v for v in cm.violations())
    with pytest.raises(cx.CrossedModuleError):
        cx.make_trivial(GammaGroup(symmetric(3)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([symmetric(3), dihedral(4), quaternion(), cyclic(6)]), st.integers(0, 100))
def test_every_normal_subgroup_gives_a_crossed_module(gamma, pick):
    normals = normal_subgroups(gamma)
    n = sorted(normals[pick % len(normals)])
    assert not cx.make_inclusion(gamma, n).violations()


def test_gamma_action_must_be_trivial_on_image_of_mu():
    s3 = symmetric(3)
    a3 = [x for x in range(6) if s3.element_order(x) != 2]
    cm = cx.make_inclusion(s3, a3)
    sign = [IntMatrix.from_rows([[1 if s3.element_order(x) != 2 else -1]]) for x in range(6)]
    assert cx.is_crossed_equivariant_module(cm, sign)
    # sign action is nontrivial on the transpositions, so it fails once mu hits them
    assert not cx.is_crossed_equivariant_module(cx.make_inclusion(s3, range(6)), sign)
    trivial = [IntMatrix.identity(1) for _ in range(6)]
    assert cx.is_crossed_equivariant_module(cx.make_inclusion(s3, range(6)), trivial)


def test_central_extension_is_valid():
    ext = cx.cyclic_central_extension(4)
    assert not ext.violations()
    assert cx.extensions_equivalent(ext, ext)


@pytest.mark.parametrize("m", [4, 8])
def test_pullback_and_pushforward_along_identities(m):
    ext = cx.cyclic_central_extension(m)
    pb = cx.pullback_extension(ext, ext.base, cx.identity_morphism(ext.base))
    pf = cx.pushforward_extension(ext, ext.kernel, cx.identity_morphism(ext.kernel))
    assert cx.extensions_equivalent(pb, ext)
    assert cx.extensions_equivalent(pf, ext)


def test_pushforward_along_reduction_keeps_the_extension_nonsplit():
    ext = cx.cyclic_central_extension(8)  # Z/4 -> Z/8 -> Z/2
    z2 = cx.make_trivial(GammaGroup(cyclic(2), ext.kernel.gamma))
    pf = cx.pushforward_extension(ext, z2, [i % 2 for i in range(4)])
    g = pf.middle.group
    assert g.order == 4
    assert max(g.element_order(x) for x in range(4)) == 4


def test_pushforward_along_zero_splits():
    ext = cx.cyclic_central_extension(4)
    z2 = cx.make_trivial(GammaGroup(cyclic(2), ext.kernel.gamma))
    pf = cx.pushforward_extension(ext, z2, [0, 0])
    g = pf.middle.group
    assert g.order == 4
    assert max(g.element_order(x) for x in range(4)) == 2


def test_pullback_rejects_non_morphisms():
    ext = cx.cyclic_central_extension(4)
    with pytest.raises(cx.CrossedModuleError):
        cx.pullback_extension(ext, ext.base, [1, 0])


def test_problem_file_round_trip():
    cm = cx.crossed_module_from_spec({"inclusion": {"gamma": {"symmetric": 3}, "subgroup": [0, 3, 4]}})
    assert cm.group.order == 3
    ext = cx.extension_from_spec(
        {
            "kernel": {"group": {"cyclic": 2}, "gamma": {"cyclic": 2}},
            "middle": {"group": {"cyclic": 4}, "gamma": {"cyclic": 2}, "mu": [0, 1, 0, 1]},
            "base": {"inclusion": {"gamma": {"cyclic": 2}, "subgroup": [0, 1]}},
            "sigma": [0, 2],
            "tau": [0, 1, 0, 1],
            "section": [0, 1],
        }
    )
    assert not ext.violations()
    assert cx.extensions_equivalent(ext, cx.cyclic_central_extension(4))


def test_gamma_perfect_predicate():
    s3 = symmetric(3)
    a3 = [x for x in range(6) if s3.element_order(x) != 2]
    # a transposition inverts A3, so x * gamma(x)^-1 = x^2 already generates
    assert cx.is_gamma_perfect_crossed(cx.make_inclusion(s3, a3))
    assert not cx.is_gamma_perfect_crossed(cx.make_inclusion(cyclic(2), [0, 1]))
