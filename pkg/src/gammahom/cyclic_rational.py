"""Rational equivariant (co)homology of cyclic groups via the periodic resolution.

The resolution of Q over Q(Z/m) is

    ... -> Q(Z/m) -N-> Q(Z/m) -D-> Q(Z/m) -eps-> Q -> 0

with N = 1 + t + ... + t^(m-1) and D = t + ... + t^(m-1) - (m-1) = N - m.
Gamma acts on Z/m by t -> t^k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .bar_homology import build_bar_complex, build_cochain_complex
from .equivariant_modules import EquivariantModule, group_ring_module, trivial_module
from .exact_linalg import IntMatrix, block_diagonal, kernel_basis, rank, rational_subquotient_dim
from .finite_group import GammaGroup, power_action


@dataclass
class CyclicResolution:
    m: int
    d_matrix: IntMatrix
    n_matrix: IntMatrix
    augmentation: IntMatrix  # 1 x m

    def checks(self) -> dict[str, bool]:
        d, n, e = self.d_matrix, self.n_matrix, self.augmentation
        m = self.m
        rd, rn = rank(d), rank(n)
        return {
            "DN=0": (d @ n).is_zero(),
            "ND=0": (n @ d).is_zero(),
            "epsD=0": (e @ d).is_zero(),
            "rank D + rank N = m": rd + rn == m,
            "ker eps = im D": rd == m - 1,
            "ker D = im N": m - rd == rn,
            "ker N = im D": m - rn == rd,
        }


def _multiplication_matrix(m: int, coeffs: dict[int, int]) -> IntMatrix:
    """Matrix of multiplication by sum coeffs[i] t^i on the basis 1, t, ..., t^(m-1)."""
    cols = []
    for j in range(m):
        c: dict[int, int] = {}
        for i, a in coeffs.items():
            r = (i + j) % m
            c[r] = c.get(r, 0) + a
        cols.append({r: a for r, a in c.items() if a})
    return IntMatrix(m, m, cols)


def build_resolution(m: int) -> CyclicResolution:
    if m < 2:
        raise ValueError("the cyclic resolution needs m >= 2")
    d_coeffs = {i: 1 for i in range(1, m)}
    d_coeffs[0] = -(m - 1)
    d = _multiplication_matrix(m, d_coeffs)
    n = _multiplication_matrix(m, {i: 1 for i in range(m)})
    eps = IntMatrix(1, m, [{0: 1} for _ in range(m)])
    res = CyclicResolution(m, d, n, eps)
    bad = [k for k, ok in res.checks().items() if not ok]
    if bad:
        raise AssertionError(f"resolution invariants failed: {bad}")
    return res


def power_permutation(m: int, k: int) -> IntMatrix:
    """t^i -> t^(ik)."""
    return IntMatrix(m, m, [{(i * k) % m: 1} for i in range(m)])


def verify_gamma_compatibility(res: CyclicResolution, exponents: list[int]) -> dict:
    """P D = D P and P N = N P for each t -> t^k."""
    out = {}
    for k in exponents:
        if gcd(k, res.m) != 1:
            raise ValueError(f"exponent {k} is not a unit mod {res.m}")
        p = power_permutation(res.m, k)
        out[k] = {
            "D": p @ res.d_matrix == res.d_matrix @ p,
            "N": p @ res.n_matrix == res.n_matrix @ p,
            "eps": res.augmentation @ p == res.augmentation,
        }
    return out


def section_identity_holds(res: CyclicResolution) -> bool:
    """For f in Im D (coefficient sum zero), D(-f/m) = f, i.e. D f = -m f."""
    m = res.m
    basis = IntMatrix(m, m - 1, [{0: -1, i: 1} for i in range(1, m)])
    return res.d_matrix @ basis == basis.scale(-m)


# ---------------------------------------------------------------- rational (co)homology


def _induced(coeff: EquivariantModule) -> tuple[IntMatrix, IntMatrix]:
    """D_* and N_* on the module, as integer matrices on its generators."""
    g = coeff.gg.group
    m = g.order
    k = coeff.rank
    n_star = IntMatrix.zeros(k, k)
    for i in range(m):
        n_star = n_star + coeff.g_action[i]
    d_star = n_star - IntMatrix.identity(k).scale(m)
    return d_star, n_star


def _coinvariant_relations(coeff: EquivariantModule) -> IntMatrix:
    ident = IntMatrix.identity(coeff.rank)
    return coeff.base.relations.hstack(*[mat - ident for mat in coeff.gamma_action[1:]])


def _check_cyclic(coeff: EquivariantModule) -> None:
    g = coeff.gg.group
    m = g.order
    if any(g.mul(1 % m, i) != (i + 1) % m for i in range(m)):
        raise ValueError("coefficient module must be over the cyclic group with generator 1")


def rational_homology(coeff: EquivariantModule, n: int) -> int:
    """dim of degree-n homology of  Q(x)A_Gamma <-D*- Q(x)A_Gamma <-N*- ..."""
    _check_cyclic(coeff)
    d_star, n_star = _induced(coeff)
    s = _coinvariant_relations(coeff)
    k = coeff.rank

    def boundary(deg: int) -> IntMatrix | None:
        if deg <= 0:
            return None
        return d_star if deg % 2 == 1 else n_star

    out = boundary(n)
    return rational_subquotient_dim(s, out, s if out is not None else None, boundary(n + 1), k)


def _invariant_preimage(coeff: EquivariantModule) -> IntMatrix:
    """Spanning set of the rational preimage of (A/R)^Gamma in Q^k."""
    k = coeff.rank
    mats = coeff.gamma_action[1:]
    if not mats:
        return IntMatrix.identity(k)
    ident = IntMatrix.identity(k)
    stacked = (mats[0] - ident).vstack(*[x - ident for x in mats[1:]])
    rel = block_diagonal([coeff.base.relations] * len(mats))
    big = stacked.hstack(rel)
    cols = []
    for v in kernel_basis(big):
        w = {i: x for i, x in v.items() if i < k}
        if w:
            cols.append(w)
    return IntMatrix.from_columns(k, cols)


def rational_cohomology(coeff: EquivariantModule, n: int) -> int:
    """dim of degree-n cohomology of  (Q(x)A)^Gamma -D*-> (Q(x)A)^Gamma -N*-> ..."""
    _check_cyclic(coeff)
    d_star, n_star = _induced(coeff)
    r = coeff.base.relations
    pb = _invariant_preimage(coeff)
    k = coeff.rank
    rk_r = rank(r) if r.ncols else 0
    dim_here = rank(pb.hstack(r)) - rk_r

    def cob(deg: int) -> IntMatrix | None:
        if deg < 0:
            return None
        return d_star if deg % 2 == 0 else n_star

    def image_dim(t: IntMatrix | None) -> int:
        if t is None:
            return 0
        return rank((t @ pb).hstack(r)) - rk_r

    return dim_here - image_dim(cob(n)) - image_dim(cob(n - 1))


def h0_formula_dimension(coeff: EquivariantModule) -> int:
    """dim Q (x) A_Gamma."""
    s = _coinvariant_relations(coeff)
    return coeff.rank - (rank(s) if s.ncols else 0)


def cohomology_h0_formula_dimension(coeff: EquivariantModule) -> int:
    """dim Hom(Q, A^Gamma) = dim of the rational Gamma-invariants."""
    r = coeff.base.relations
    rk_r = rank(r) if r.ncols else 0
    return rank(_invariant_preimage(coeff).hstack(r)) - rk_r


@dataclass
class CrossCheckReport:
    m: int
    k: int
    max_degree: int
    resolution_homology: list[int]
    bar_homology: list[int]
    resolution_cohomology: list[int] = field(default_factory=list)
    bar_cohomology: list[int] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.resolution_homology == self.bar_homology and self.resolution_cohomology == self.bar_cohomology

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "degrees": list(range(self.max_degree + 1)),
            "resolution_homology": self.resolution_homology,
            "bar_homology": self.bar_homology,
            "resolution_cohomology": self.resolution_cohomology,
            "bar_cohomology": self.bar_cohomology,
            "match": self.match,
        }


def crosscheck_vs_rational_bar(coeff: EquivariantModule, max_degree: int, k: int | None = None, cohomology_degree: int | None = None) -> CrossCheckReport:
    """Compare dimensions from the periodic resolution with the rational bar complex."""
    bar = build_bar_complex(coeff.gg, coeff, max_degree + 1)
    res_h = [rational_homology(coeff, n) for n in range(max_degree + 1)]
    bar_h = [bar.rational_homology(n) for n in range(max_degree + 1)]
    res_c: list[int] = []
    bar_c: list[int] = []
    if cohomology_degree is not None:
        cc = build_cochain_complex(coeff.gg, coeff, cohomology_degree + 1)
        res_c = [rational_cohomology(coeff, n) for n in range(cohomology_degree + 1)]
        bar_c = [cc.complex.rational_cohomology_at(n) for n in range(cohomology_degree + 1)]
    return CrossCheckReport(coeff.gg.group.order, k if k is not None else -1, max_degree, res_h, bar_h, res_c, bar_c)


def cyclic_module(m: int, k: int, kind: str = "trivial") -> EquivariantModule:
    """Q-trivial (as Z) or the regular module Z(Z/m) over Z/m with Gamma = <t -> t^k>."""
    gg = power_action(m, k)
    if kind == "trivial":
        return trivial_module(gg, 0)
    if kind == "regular":
        return group_ring_module(gg)
    raise ValueError(f"unknown module kind {kind!r}")


def periodicity_holds(dims: list[int], start: int = 1) -> bool:
    """dims[n + 2] == dims[n] for every n >= start with both in range."""
    return all(dims[n] == dims[n + 2] for n in range(start, len(dims) - 2))
