from fractions import Fraction
from itertools import combinations
from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st

from gammahom.exact_linalg import (
    AbelianInvariants,
    AbelianMap,
    ChainComplexQ,
    ChainComplexZ,
    FPAbelianGroup,
    IntMatrix,
    Lattice,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integer,
)

small_matrix = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-7, 7), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return int(det)


def _determinantal_factors(rows):
    """Invariant factors from gcds of k x k minors."""
    m, n = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def test_snf_textbook_example():
    s = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert s.diagonal == [2, 6, 12]


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_snf_transforms_are_unimodular_and_diagonalize(rows):
    s = smith_normal_form(rows)
    assert _matmul(_matmul(s.u, rows), s.v) == s.d
    assert abs(_det(s.u)) == 1 and abs(_det(s.v)) == 1
    diag = s.diagonal
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert nz == _determinantal_factors(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_sparse_invariant_factors_agree_with_minors(rows):
    mat = IntMatrix.from_rows(rows)
    assert [d for d in invariant_factors(mat) if d] == _determinantal_factors(rows)
    assert rank(mat) == len(_determinantal_factors(rows))


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_kernel_basis_is_a_kernel_of_full_rank(rows):
    mat = IntMatrix.from_rows(rows)
    ker = kernel_basis(mat)
    assert all(not mat.apply(v) for v in ker)
    assert len(ker) == mat.ncols - rank(mat)


@settings(max_examples=100, deadline=None)
@given(small_matrix, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integer_finds_preimages_of_images(rows, coeffs):
    mat = IntMatrix.from_rows(rows)
    x = {i: c for i, c in enumerate(coeffs[: mat.ncols]) if c}
    target = mat.apply(x)
    sol = solve_integer(mat, target)
    assert sol is not None and mat.apply(sol) == target


def test_solve_integer_detects_non_integral_solution():
    assert solve_integer(IntMatrix.from_rows([[2]]), {0: 1}) is None


def test_lattice_membership():
    lat = Lattice(2, [{0: 2}, {0: 1, 1: 3}])
    assert {1: 6} in lat
    assert {0: 1} not in lat
    assert lat.rank == 2


def test_invariants_parse_and_print_round_trip():
    for text in ("0", "Z", "Z/2", "Z^2 + Z/2 + Z/6"):
        assert str(AbelianInvariants.parse(text)) == text
    assert AbelianInvariants.parse("Z/2 + Z/3") == AbelianInvariants(0, (6,))


def test_presented_group_invariants():
    g = FPAbelianGroup(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert g.invariants() == AbelianInvariants(0, (6,))
    assert g.order() == 6
    assert len(g.elements()) == 6


def _two_term(m: int) -> ChainComplexZ:
    z = FPAbelianGroup.free(1)
    d = AbelianMap(z, z, IntMatrix.from_rows([[m]]))
    return ChainComplexZ({0: z, 1: z}, {1: d})


def test_two_term_complexes():
    assert _two_term(0).homology_at(0) == AbelianInvariants(1)
    assert _two_term(0).homology_at(1) == AbelianInvariants(1)
    assert _two_term(5).homology_at(0) == AbelianInvariants(0, (5,))
    assert _two_term(5).homology_at(1) == AbelianInvariants(0)


def test_rational_two_term_complexes():
    assert ChainComplexQ({0: 1, 1: 1}, {1: IntMatrix.from_rows([[0]])}).homology_dim(0) == 1
    assert ChainComplexQ({0: 1, 1: 1}, {1: IntMatrix.from_rows([[1]])}).homology_dim(0) == 0


def test_abelian_map_kernel_and_cokernel():
    z = FPAbelianGroup.free(1)
    z4 = FPAbelianGroup.cyclic(4)
    f = AbelianMap(z, z4, IntMatrix.from_rows([[2]]))
    ker, _ = f.kernel()
    coker, _ = f.cokernel()
    assert ker.invariants() == AbelianInvariants(1)
    assert coker.invariants() == AbelianInvariants(0, (2,))
