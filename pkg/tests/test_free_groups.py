import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom import free_groups as fg
from gammahom.finite_group import cyclic, direct_product, symmetric


def test_word_reduction_and_parsing():
    assert fg.FreeWord.parse("x y Y x^-1").is_identity()
    w = fg.FreeWord.parse("xyX")
    assert w.to_str() == "x y x^-1"
    assert (w * w.inverse()).is_identity()
    assert fg.FreeWord.parse("x^-1") == fg.FreeWord.parse("X")
    with pytest.raises(ValueError):
        fg.FreeWord.parse("q")


@pytest.mark.parametrize(
    "rank,target,images,index,kernel_rank",
    [
        (2, cyclic(2), [1, 1], 2, 3),
        (2, cyclic(3), [1, 0], 3, 4),
        (2, symmetric(3), None, 6, 7),
        (3, cyclic(1), [0, 0, 0], 1, 3),
        (3, direct_product(cyclic(2), cyclic(2)), [1, 2, 3], 4, 9),
    ],
)
def test_schreier_rank_formula(rank, target, images, index, kernel_rank):
    if images is None:
        gens = [x for x in range(target.order) if target.element_order(x) == 2][:1] + [
            x for x in range(target.order) if target.element_order(x) == 3
        ][:1]
        images = gens
    data = fg.schreier_kernel(rank, target, images)
    assert data.index == index
    assert data.rank == kernel_rank == data.schreier_formula()
    assert all(data.in_kernel(w) for w in data.generators)


def test_folding_confirms_schreier_generators_generate_the_kernel():
    data = fg.schreier_kernel(2, symmetric(3), [1, 3])
    graph = fg.FoldedGraph(2, data.generators)
    assert graph.is_complete()
    assert graph.vertices == data.index
    assert graph.rank_of_subgroup == data.rank


def test_folding_of_a_proper_subgroup():
    g = fg.FoldedGraph(2, [fg.FreeWord.parse("xx"), fg.FreeWord.parse("y")])
    assert g.vertices == 2
    assert not g.is_complete()
    assert g.contains(fg.FreeWord.parse("x x y x^-1 x^-1"))
    assert not g.contains(fg.FreeWord.parse("x y x^-1"))
    assert not g.contains(fg.FreeWord.parse("x"))


words = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=10).map(lambda ls: fg.FreeWord(tuple(ls)))


@settings(max_examples=200, deadline=None)
@given(words, st.sampled_from([(cyclic(2), [1, 1]), (cyclic(3), [1, 2]), (symmetric(3), [1, 3]), (cyclic(4), [1, 2])]))
def test_kernel_membership_two_ways(w, problem):
    target, images = problem
    data = fg.schreier_kernel(2, target, images)
    graph = fg.FoldedGraph(2, data.generators)
    assert data.in_kernel(w) == graph.contains(w)


def test_basis_action_validation():
    assert fg.BasisAction(2, cyclic(2), [[0, 1], [0, 0]]).violations()
    assert not fg.swap_action().violations()


def test_swap_example_has_no_stable_basis():
    ex = fg.swap_counterexample(8)
    assert ex.schreier.rank == 3
    assert ex.all_transversals_unstable
    assert ex.fixed_words.only_identity
    assert ex.verdict


def test_swap_example_search_finds_no_stable_generating_set():
    data = fg.schreier_kernel(2, cyclic(2), [1, 1])
    assert fg.find_stable_generating_set(fg.swap_action(), data) is None


def test_rotation_fixes_only_the_identity():
    assert fg.fixed_word_search(fg.rotation_action(3), 6).only_identity


def test_klein_example_admits_a_stable_basis():
    act, data, basis = fg.klein_example()
    assert data.index == 4 and data.rank == 9
    assert basis is not None
    verdict = fg.gamma_stable_basis_check(basis, act, data)
    assert verdict.stable_basis and verdict.size == 9


def test_stable_basis_check_rejects_non_members():
    act, data, _ = fg.klein_example()
    with pytest.raises(fg.NotInSubgroup):
        fg.gamma_stable_basis_check([fg.FreeWord.parse("x")], act, data, strict=True)


def test_word_length_cap():
    with pytest.raises(ValueError):
        fg.fixed_word_search(fg.swap_action(), 65)
