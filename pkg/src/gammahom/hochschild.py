"""Equivariant Hochschild and cyclic homology of finite-dimensional algebras.

Algebras are given by integer structure constants on a basis. With base "Q" the
homology is computed rationally (a Z-form of a Q-algebra), with base "Z" the
invariant factors are reported.

The complex is C_n(A, M) = M (x) A^(x)n with basis codes
m + dM * (a1 + dA * (a2 + ...)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bar_homology import DEFAULT_COLUMN_BUDGET, BudgetExceeded
from .exact_linalg import (
    AbelianInvariants,
    AbelianMap,
    ChainComplexZ,
    FPAbelianGroup,
    IntMatrix,
    add_vec,
    kernel_basis,
    rank,
    solve_integer,
)
from .finite_group import FiniteGroup, GammaGroup, small_generating_set, trivial_group

Vec = dict[int, int]


class AlgebraError(ValueError):
    pass


class WeakConditionViolation(ValueError):
    def __init__(self, degree: int, generator: int, basis_index: int):
        super().__init__(
            f"degree {degree}: b(g.e - e) is not in the span of (g' - 1)C_{degree - 1} "
            f"for action generator {generator} and basis element {basis_index}"
        )
        self.degree = degree
        self.generator = generator
        self.basis_index = basis_index


def _clean(v: Vec) -> Vec:
    return {k: x for k, x in v.items() if x}


# ---------------------------------------------------------------- algebras


class FinDimAlgebra:
    """Unital algebra with basis e_0..e_{d-1} and e_i e_j = sum_k c[i][j][k] e_k."""

    def __init__(self, structure: Sequence[Sequence[Vec]], unit: Vec, base: str = "Q",
                 commutative: bool | None = None, name: str = "A", check: bool = True):
        if base not in ("Z", "Q"):
            raise AlgebraError(f"base ring must be 'Z' or 'Q', got {base!r}")
        self.dim = len(structure)
        self.table = [[_clean(dict(structure[i][j])) for j in range(self.dim)] for i in range(self.dim)]
        self.unit = _clean(dict(unit))
        self.base = base
        self.commutative_flag = commutative
        self.name = name
        if check:
            bad = self.violations()
            if bad:
                raise AlgebraError(f"{name}: " + "; ".join(bad[:3]))

    @classmethod
    def from_dense(cls, constants, unit, **kw) -> "FinDimAlgebra":
        """constants[i][j][k] as nested lists."""
        d = len(constants)
        structure = [[{k: int(constants[i][j][k]) for k in range(d) if constants[i][j][k]} for j in range(d)] for i in range(d)]
        return cls(structure, {k: int(x) for k, x in enumerate(unit) if x}, **kw)

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.table[i][j]

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.table[i][j].items():
                    out[k] = out.get(k, 0) + a * b * c
        return _clean(out)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def violations(self) -> list[str]:
        d = self.dim
        out = []
        for i in range(d):
            for j in range(d):
                if any(k < 0 or k >= d for k in self.table[i][j]):
                    out.append(f"product e{i}e{j} leaves the basis range")
        if out:
            return out
        for i in range(d):
            e = {i: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                out.append(f"unit law fails on e{i}")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if self.mul(self.table[i][j], {k: 1}) != self.mul({i: 1}, self.table[j][k]):
                        out.append(f"associativity fails on (e{i}, e{j}, e{k})")
                        return out
        if self.commutative_flag and not self.is_commutative():
            out.append("flagged commutative but e_i e_j != e_j e_i for some pair")
        return out

    def commutator_span(self) -> list[Vec]:
        cols = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = add_vec(self.table[i][j], self.table[j][i], -1)
                if v:
                    cols.append(v)
        return cols

    def __repr__(self) -> str:
        return f"FinDimAlgebra({self.name}, dim={self.dim}, base={self.base})"


@dataclass
class AlgebraGammaAction:
    """Gamma acting on an algebra by unital automorphisms, one matrix per element."""

    gamma: FiniteGroup
    matrices: list[IntMatrix]

    def violations(self, alg: FinDimAlgebra) -> list[str]:
        out = []
        d = alg.dim
        if len(self.matrices) != self.gamma.order:
            return [f"expected {self.gamma.order} matrices, got {len(self.matrices)}"]
        if self.matrices[0] != IntMatrix.identity(d):
            out.append("identity of Gamma does not act as the identity")
        for s, m in enumerate(self.matrices):
            if m.shape != (d, d):
                return [f"matrix {s} has shape {m.shape}, expected {(d, d)}"]
            if m.apply(alg.unit) != alg.unit:
                out.append(f"element {s} does not fix the unit")
            for i in range(d):
                for j in range(d):
                    lhs = m.apply(alg.table[i][j])
                    rhs = alg.mul(m.cols[i], m.cols[j])
                    if lhs != rhs:
                        out.append(f"element {s} is not multiplicative on (e{i}, e{j})")
                        break
                else:
                    continue
                break
        for s in range(self.gamma.order):
            for t in range(self.gamma.order):
                if self.matrices[s] @ self.matrices[t] != self.matrices[self.gamma.mul(s, t)]:
                    out.append(f"representation law fails for ({s}, {t})")
                    return out
        return out

    def generator_matrices(self) -> list[IntMatrix]:
        return [self.matrices[s] for s in small_generating_set(self.gamma)]


def trivial_algebra_action(alg: FinDimAlgebra, gamma: FiniteGroup | None = None) -> AlgebraGammaAction:
    gamma = gamma or trivial_group()
    return AlgebraGammaAction(gamma, [IntMatrix.identity(alg.dim) for _ in range(gamma.order)])


def cyclic_algebra_action(alg: FinDimAlgebra, matrix: IntMatrix) -> AlgebraGammaAction:
    """The cyclic group generated by one automorphism."""
    d = alg.dim
    powers = [IntMatrix.identity(d)]
    while True:
        nxt = matrix @ powers[-1]
        if nxt == powers[0]:
            break
        powers.append(nxt)
        if len(powers) > 10_000:
            raise AlgebraError("automorphism has no finite order within 10000")
    from .finite_group import cyclic

    return AlgebraGammaAction(cyclic(len(powers)), powers)


def _monomial(d: int, images: Sequence[tuple[int, int]]) -> IntMatrix:
    return IntMatrix(d, d, [{i: s} for i, s in images])


# ---------------------------------------------------------------- example algebras


def rationals() -> FinDimAlgebra:
    return FinDimAlgebra([[{0: 1}]], {0: 1}, commutative=True, name="Q")


def truncated_polynomial(n: int, base: str = "Q") -> FinDimAlgebra:
    """Q[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    table = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    return FinDimAlgebra(table, {0: 1}, base=base, commutative=True, name=f"Q[x]/(x^{n})")


def negate_x(n: int) -> IntMatrix:
    """x -> -x on Q[x]/(x^n)."""
    return _monomial(n, [(i, (-1) ** i) for i in range(n)])


def matrix_algebra(alg: FinDimAlgebra, r: int) -> FinDimAlgebra:
    """M_r(A) with basis index (p*r + q)*d + i for e_pq (x) a_i."""
    d = alg.dim
    dim = r * r * d
    table: list[list[Vec]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for p in range(r):
        for q in range(r):
            for i in range(d):
                x = (p * r + q) * d + i
                for s in range(r):
                    for j in range(d):
                        y = (q * r + s) * d + j
                        table[x][y] = {(p * r + s) * d + k: c for k, c in alg.table[i][j].items()}
    unit: Vec = {}
    for p in range(r):
        for k, c in alg.unit.items():
            unit[(p * r + p) * d + k] = c
    return FinDimAlgebra(table, unit, base=alg.base, name=f"M_{r}({alg.name})", check=False)


def matrix_action(action: AlgebraGammaAction, r: int) -> AlgebraGammaAction:
    """Entrywise action on M_r(A)."""
    return AlgebraGammaAction(action.gamma, [_entrywise(m, r) for m in action.matrices])


def _entrywise(m: IntMatrix, r: int) -> IntMatrix:
    d = m.nrows
    cols = []
    for pq in range(r * r):
        for i in range(d):
            cols.append({pq * d + k: c for k, c in m.cols[i].items()})
    return IntMatrix(r * r * d, r * r * d, cols)


def group_algebra_of(g: FiniteGroup, base: str = "Z") -> FinDimAlgebra:
    table = [[{g.mul(a, b): 1} for b in range(g.order)] for a in range(g.order)]
    return FinDimAlgebra(table, {0: 1}, base=base, commutative=g.is_abelian(), name="Z(G)" if base == "Z" else "Q(G)", check=False)


def group_algebra(gg: GammaGroup, base: str = "Z") -> tuple[FinDimAlgebra, AlgebraGammaAction]:
    """Z(G) with the Gamma-action induced from the action on G."""
    alg = group_algebra_of(gg.group, base)
    n = gg.group.order
    mats = [IntMatrix(n, n, [{gg.act(s, x): 1} for x in range(n)]) for s in range(gg.gamma.order)]
    return alg, AlgebraGammaAction(gg.gamma, mats)


# ---------------------------------------------------------------- bimodules


@dataclass
class EquivariantBimodule:
    """left[i][j] = e_i m_j and right[j][i] = m_j e_i; gamma matrices per element."""

    algebra: FinDimAlgebra
    dim: int
    left: list[list[Vec]]
    right: list[list[Vec]]
    gamma_matrices: list[IntMatrix]
    name: str = "M"

    def act_left(self, a: Vec, m: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            for j, y in m.items():
                for k, c in self.left[i][j].items():
                    out[k] = out.get(k, 0) + x * y * c
        return _clean(out)

    def act_right(self, m: Vec, a: Vec) -> Vec:
        out: Vec = {}
        for j, y in m.items():
            for i, x in a.items():
                for k, c in self.right[j][i].items():
                    out[k] = out.get(k, 0) + x * y * c
        return _clean(out)

    def violations(self, action: AlgebraGammaAction) -> list[str]:
        alg = self.algebra
        d, dm = alg.dim, self.dim
        out = []
        for j in range(dm):
            e = {j: 1}
            if self.act_left(alg.unit, e) != e or self.act_right(e, alg.unit) != e:
                out.append(f"unit does not act as identity on m{j}")
        for i in range(d):
            for k in range(d):
                for j in range(dm):
                    m = {j: 1}
                    if self.act_left(alg.table[i][k], m) != self.act_left({i: 1}, self.act_left({k: 1}, m)):
                        out.append(f"left action not associative on (e{i}, e{k}, m{j})")
                    if self.act_right(m, alg.table[i][k]) != self.act_right(self.act_right(m, {i: 1}), {k: 1}):
                        out.append(f"right action not associative on (m{j}, e{i}, e{k})")
                    if self.act_right(self.act_left({i: 1}, m), {k: 1}) != self.act_left({i: 1}, self.act_right(m, {k: 1})):
                        out.append(f"left and right actions do not commute on (e{i}, m{j}, e{k})")
                    if out:
                        return out
        if len(self.gamma_matrices) != action.gamma.order:
            return [f"expected {action.gamma.order} gamma matrices"]
        for s, g in enumerate(self.gamma_matrices):
            ga = action.matrices[s]
            for i in range(d):
                for k in range(d):
                    for j in range(dm):
                        lhs = g.apply(self.act_right(self.act_left({i: 1}, {j: 1}), {k: 1}))
                        rhs = self.act_right(self.act_left(ga.cols[i], g.cols[j]), ga.cols[k])
                        if lhs != rhs:
                            return [f"element {s} incompatible on (e{i}, m{j}, e{k})"]
        return out


def regular_bimodule(alg: FinDimAlgebra, action: AlgebraGammaAction) -> EquivariantBimodule:
    d = alg.dim
    return EquivariantBimodule(alg, d, alg.table, alg.table, list(action.matrices), name=alg.name)


def augmentation_bimodule(alg: FinDimAlgebra, gamma: FiniteGroup, augmentation: Sequence[int]) -> EquivariantBimodule:
    """The rank-one bimodule where e_i acts by augmentation[i] on both sides, Gamma trivially."""
    d = alg.dim
    left = [[{0: augmentation[i]} if augmentation[i] else {} for _ in range(1)] for i in range(d)]
    right = [[{0: augmentation[i]} if augmentation[i] else {} for i in range(d)]]
    return EquivariantBimodule(alg, 1, left, right, [IntMatrix.identity(1) for _ in range(gamma.order)], name="Z_eps")


def matrix_bimodule(mod: EquivariantBimodule, r: int, alg_r: FinDimAlgebra | None = None) -> EquivariantBimodule:
    """M_r(M) over M_r(A), Gamma entrywise."""
    alg = mod.algebra
    d, dm = alg.dim, mod.dim
    alg_r = alg_r or matrix_algebra(alg, r)
    left: list[list[Vec]] = [[{} for _ in range(r * r * dm)] for _ in range(r * r * d)]
    right: list[list[Vec]] = [[{} for _ in range(r * r * d)] for _ in range(r * r * dm)]
    for p in range(r):
        for q in range(r):
            for s in range(r):
                for i in range(d):
                    for j in range(dm):
                        a = (p * r + q) * d + i
                        m = (q * r + s) * dm + j
                        left[a][m] = {(p * r + s) * dm + k: c for k, c in mod.left[i][j].items()}
                        m2 = (p * r + q) * dm + j
                        a2 = (q * r + s) * d + i
                        right[m2][a2] = {(p * r + s) * dm + k: c for k, c in mod.right[j][i].items()}
    return EquivariantBimodule(alg_r, r * r * dm, left, right, [_entrywise(g, r) for g in mod.gamma_matrices], name=f"M_{r}({mod.name})")


# ---------------------------------------------------------------- tensor bookkeeping


class TensorBasis:
    """Basis of M (x) A^(x)n for n = 0..max."""

    def __init__(self, dm: int, da: int):
        self.dm = dm
        self.da = da

    def size(self, n: int) -> int:
        return self.dm * self.da ** n

    def encode(self, m: int, a: Sequence[int]) -> int:
        code = 0
        for x in reversed(a):
            code = code * self.da + x
        return m + self.dm * code

    def decode(self, code: int, n: int) -> tuple[int, list[int]]:
        m, rest = code % self.dm, code // self.dm
        a = []
        for _ in range(n):
            a.append(rest % self.da)
            rest //= self.da
        return m, a


def _tensor_columns(first: IntMatrix, rest: IntMatrix, n: int, tb: TensorBasis) -> IntMatrix:
    """first (x) rest^(x)n on M (x) A^(x)n."""
    size = tb.size(n)
    cols = []
    for code in range(size):
        m, a = tb.decode(code, n)
        terms: dict[tuple, int] = {(k,): c for k, c in first.cols[m].items()}
        for x in a:
            nxt: dict[tuple, int] = {}
            for key, c in terms.items():
                for k, c2 in rest.cols[x].items():
                    nxt[key + (k,)] = nxt.get(key + (k,), 0) + c * c2
            terms = nxt
        cols.append(_clean({tb.encode(key[0], key[1:]): c for key, c in terms.items()}))
    return IntMatrix(size, size, cols)


# ---------------------------------------------------------------- complexes with actions


def signed_permutation(m: IntMatrix) -> tuple[list[int], list[int]] | None:
    perm, sign = [], []
    for c in m.cols:
        if len(c) != 1:
            return None
        (i, v), = c.items()
        if v not in (1, -1):
            return None
        perm.append(i)
        sign.append(v)
    if len(set(perm)) != m.nrows:
        return None
    return perm, sign


@dataclass
class CoinvariantDegree:
    """L_n / span{(g - 1)x} presented on orbit generators, or on the full basis."""

    ngens: int
    relations: IntMatrix
    project: Callable[[Vec], Vec]
    lift: Callable[[int], Vec]
    monomial: bool


def _coinvariant_degree(dim: int, gens: list[IntMatrix]) -> CoinvariantDegree:
    perms = [signed_permutation(g) for g in gens]
    if all(p is not None for p in perms):
        orbit = [-1] * dim
        sign = [0] * dim
        reps: list[int] = []
        torsion: list[int] = []
        for start in range(dim):
            if orbit[start] >= 0:
                continue
            o = len(reps)
            reps.append(start)
            orbit[start], sign[start] = o, 1
            stack = [start]
            conflict = False
            while stack:
                j = stack.pop()
                for perm, sg in perms:
                    k, s = perm[j], sg[j] * sign[j]
                    if orbit[k] < 0:
                        orbit[k], sign[k] = o, s
                        stack.append(k)
                    elif sign[k] != s:
                        conflict = True
            if conflict:
                torsion.append(o)
        n_orb = len(reps)
        rel = IntMatrix(n_orb, len(torsion), [{o: 2} for o in torsion])
        tset = set(torsion)

        def project(v: Vec) -> Vec:
            out: Vec = {}
            for j, x in v.items():
                o = orbit[j]
                out[o] = out.get(o, 0) + sign[j] * x
            return {o: (x % 2 if o in tset else x) for o, x in out.items() if (x % 2 if o in tset else x)}

        return CoinvariantDegree(n_orb, rel, project, lambda o: {reps[o]: 1}, True)
    ident = IntMatrix.identity(dim)
    rel = IntMatrix.from_columns(dim, [c for g in gens for c in (g - ident).cols if c])
    return CoinvariantDegree(dim, rel, lambda v: dict(v), lambda j: {j: 1}, False)


@dataclass
class CoinvariantComplex:
    base: str
    degrees: dict[int, CoinvariantDegree]
    boundaries: dict[int, IntMatrix]

    def as_chain_complex(self) -> ChainComplexZ:
        groups = {n: FPAbelianGroup(d.ngens, d.relations) for n, d in self.degrees.items()}
        maps = {n: AbelianMap(groups[n], groups[n - 1], b, check=False) for n, b in self.boundaries.items()}
        return ChainComplexZ(groups, maps)

    def homology(self, n: int) -> AbelianInvariants | int:
        """Invariant factors over Z, dimension over Q."""
        top = max(self.degrees)
        if n >= top:
            raise ValueError(f"degree {n} needs the complex built through degree {n + 1}")
        cc = self.as_chain_complex()
        if self.base == "Q":
            return cc.rational_homology_at(n)
        return cc.homology_at(n)

    def induced_chain_map(self, n: int, target: "CoinvariantComplex", f: IntMatrix) -> IntMatrix:
        src, tgt = self.degrees[n], target.degrees[n]
        return IntMatrix.from_columns(tgt.ngens, [tgt.project(f.apply(src.lift(o))) for o in range(src.ngens)])

    def rational_cycles(self, n: int) -> list[Vec]:
        d = self.degrees[n]
        if n not in self.boundaries:
            return [{i: 1} for i in range(d.ngens)]
        b = self.boundaries[n]
        big = b.hstack(self.degrees[n - 1].relations)
        out = []
        for v in kernel_basis(big):
            w = {i: x for i, x in v.items() if i < d.ngens}
            if w:
                out.append(w)
        return out

    def rational_boundaries(self, n: int) -> IntMatrix:
        d = self.degrees[n]
        w = d.relations
        if n + 1 in self.boundaries:
            w = self.boundaries[n + 1].hstack(w)
        return w

    def rational_in_boundaries(self, n: int, vecs: list[Vec]) -> bool:
        w = self.rational_boundaries(n)
        vs = [v for v in vecs if v]
        if not vs:
            return True
        big = w.hstack(IntMatrix.from_columns(w.nrows, vs))
        return rank(big) == (rank(w) if w.ncols else 0)


@dataclass
class ComplexGroupAction:
    """Chain complex with a group acting degreewise through generator matrices."""

    base: str
    dims: dict[int, int]
    boundaries: dict[int, IntMatrix]
    generators: dict[int, list[IntMatrix]]
    strict: bool = True

    def d_squared_zero(self) -> bool:
        return all((self.boundaries[n - 1] @ self.boundaries[n]).is_zero() for n in self.boundaries if n - 1 in self.boundaries)

    def strictly_equivariant(self) -> bool:
        for n, b in self.boundaries.items():
            for g_hi, g_lo in zip(self.generators[n], self.generators[n - 1]):
                if b @ g_hi != g_lo @ b:
                    return False
        return True

    def weak_condition_witness(self, method: str = "project") -> tuple[int, int, int] | None:
        """First (degree, generator, basis) where b(g e - e) leaves (G - 1)L_{n-1}, else None.

        method "project" maps to the presented coinvariants, "solve" solves the
        linear system against the relation columns directly.
        """
        for n, b in sorted(self.boundaries.items()):
            lower = _coinvariant_degree(self.dims[n - 1], self.generators[n - 1])
            ident = IntMatrix.identity(self.dims[n - 1])
            rel = IntMatrix.zeros(self.dims[n - 1], 0).hstack(*[g - ident for g in self.generators[n - 1]])
            rk = rank(rel) if self.base == "Q" and rel.ncols else 0
            for gi, g in enumerate(self.generators[n]):
                for j in range(self.dims[n]):
                    v = b.apply(add_vec(g.cols[j], {j: 1}, -1))
                    if not v:
                        continue
                    if method == "project":
                        ok = self._zero_in_quotient(lower, lower.project(v))
                    elif self.base == "Z":
                        ok = solve_integer(rel, v) is not None
                    else:
                        ok = rank(rel.hstack(IntMatrix(rel.nrows, 1, [v]))) == rk
                    if not ok:
                        return n, gi, j
        return None

    def _zero_in_quotient(self, deg: CoinvariantDegree, v: Vec) -> bool:
        if self.base == "Z":
            return FPAbelianGroup(deg.ngens, deg.relations).is_zero_element(v)
        if deg.monomial:
            torsion = {next(iter(c)) for c in deg.relations.cols}
            return all(o in torsion for o in v)
        return rank(deg.relations.hstack(IntMatrix(deg.ngens, 1, [v]))) == (rank(deg.relations) if deg.relations.ncols else 0)

    def validate(self) -> None:
        if not self.d_squared_zero():
            raise AlgebraError("boundary squares to a nonzero map")
        if self.strict:
            if not self.strictly_equivariant():
                raise AlgebraError("boundary does not commute with the action")
            return
        w = self.weak_condition_witness()
        if w is not None:
            raise WeakConditionViolation(*w)

    def combine(self, other: "ComplexGroupAction") -> "ComplexGroupAction":
        """Action of the product group, both actions on the same complex."""
        gens = {n: self.generators[n] + other.generators[n] for n in self.dims}
        return ComplexGroupAction(self.base, self.dims, self.boundaries, gens, self.strict and other.strict)

    def coinvariants(self, validate: bool = True) -> CoinvariantComplex:
        if validate:
            self.validate()
        degs = {n: _coinvariant_degree(self.dims[n], self.generators[n]) for n in self.dims}
        bds = {}
        for n, b in self.boundaries.items():
            src, tgt = degs[n], degs[n - 1]
            bds[n] = IntMatrix.from_columns(tgt.ngens, [tgt.project(b.apply(src.lift(o))) for o in range(src.ngens)])
        return CoinvariantComplex(self.base, degs, bds)

    def homology(self, n: int) -> AbelianInvariants | int:
        return self.coinvariants().homology(n)


# ---------------------------------------------------------------- Hochschild complex


@dataclass
class HochschildComplex:
    algebra: FinDimAlgebra
    bimodule: EquivariantBimodule
    action: AlgebraGammaAction
    max_degree: int
    basis: TensorBasis
    boundaries: dict[int, IntMatrix] = field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.basis.size(n)

    def gamma_matrix(self, s: int, n: int) -> IntMatrix:
        return _tensor_columns(self.bimodule.gamma_matrices[s], self.action.matrices[s], n, self.basis)

    def with_gamma(self) -> ComplexGroupAction:
        gens = small_generating_set(self.action.gamma)
        return ComplexGroupAction(
            self.algebra.base,
            {n: self.dim(n) for n in range(self.max_degree + 1)},
            self.boundaries,
            {n: [self.gamma_matrix(s, n) for s in gens] for n in range(self.max_degree + 1)},
            strict=True,
        )

    def with_cyclic(self) -> ComplexGroupAction:
        """Signed cyclic operator in every degree; requires M = A."""
        if self.bimodule.left != self.algebra.table or self.bimodule.right != self.algebra.table:
            raise AlgebraError("the cyclic operator needs coefficients in the algebra itself")
        return ComplexGroupAction(
            self.algebra.base,
            {n: self.dim(n) for n in range(self.max_degree + 1)},
            self.boundaries,
            {n: [cyclic_operator(self.algebra.dim, n)] for n in range(self.max_degree + 1)},
            strict=False,
        )

    def d_squared_zero(self) -> bool:
        return all((self.boundaries[n - 1] @ self.boundaries[n]).is_zero() for n in self.boundaries if n - 1 in self.boundaries)


def build_hochschild_complex(alg: FinDimAlgebra, bimodule: EquivariantBimodule, action: AlgebraGammaAction,
                             max_degree: int, budget: int = DEFAULT_COLUMN_BUDGET) -> HochschildComplex:
    """C_n = M (x) A^(x)n for n <= max_degree with the Hochschild boundary."""
    tb = TensorBasis(bimodule.dim, alg.dim)
    for n in range(max_degree + 1):
        if tb.size(n) > budget:
            raise BudgetExceeded(f"degree {n}: {tb.size(n)} generators exceed the budget of {budget}")
    hc = HochschildComplex(alg, bimodule, action, max_degree, tb)
    for n in range(1, max_degree + 1):
        cols = []
        for code in range(tb.size(n)):
            m, a = tb.decode(code, n)
            out: Vec = {}
            for k, c in bimodule.right[m][a[0]].items():
                key = tb.encode(k, a[1:])
                out[key] = out.get(key, 0) + c
            for i in range(n - 1):
                sgn = -1 if i % 2 == 0 else 1
                for k, c in alg.table[a[i]][a[i + 1]].items():
                    key = tb.encode(m, a[:i] + [k] + a[i + 2:])
                    out[key] = out.get(key, 0) + sgn * c
            sgn = -1 if n % 2 else 1
            for k, c in bimodule.left[a[-1]][m].items():
                key = tb.encode(k, a[:-1])
                out[key] = out.get(key, 0) + sgn * c
            cols.append(_clean(out))
        hc.boundaries[n] = IntMatrix(tb.size(n - 1), tb.size(n), cols)
    return hc


def cyclic_operator(d: int, n: int) -> IntMatrix:
    """t(a0, ..., an) = (-1)^n (an, a0, ..., a_{n-1}) on A^(x)(n+1)."""
    tb = TensorBasis(d, d)
    sgn = -1 if n % 2 else 1
    cols = []
    for code in range(tb.size(n)):
        m, a = tb.decode(code, n)
        full = [m] + a
        rot = [full[-1]] + full[:-1]
        cols.append({tb.encode(rot[0], rot[1:]): sgn})
    return IntMatrix(tb.size(n), tb.size(n), cols)


def hochschild_homology(alg: FinDimAlgebra, action: AlgebraGammaAction, n: int,
                        bimodule: EquivariantBimodule | None = None, budget: int = DEFAULT_COLUMN_BUDGET):
    bimodule = bimodule or regular_bimodule(alg, action)
    hc = build_hochschild_complex(alg, bimodule, action, n + 1, budget)
    return hc.with_gamma().homology(n)


def hochschild_homology_range(alg: FinDimAlgebra, action: AlgebraGammaAction, max_n: int,
                              bimodule: EquivariantBimodule | None = None, budget: int = DEFAULT_COLUMN_BUDGET) -> list:
    bimodule = bimodule or regular_bimodule(alg, action)
    hc = build_hochschild_complex(alg, bimodule, action, max_n + 1, budget)
    cx = hc.with_gamma().coinvariants()
    return [cx.homology(n) for n in range(max_n + 1)]


def connes_homology(alg: FinDimAlgebra, max_n: int, action: AlgebraGammaAction | None = None,
                    budget: int = DEFAULT_COLUMN_BUDGET) -> list[int]:
    """Homology of the Hochschild complex modulo the cyclic operator (and Gamma if given)."""
    if alg.base != "Q":
        raise AlgebraError("cyclic homology is computed over Q only")
    action = action or trivial_algebra_action(alg)
    hc = build_hochschild_complex(alg, regular_bimodule(alg, action), action, max_n + 1, budget)
    act = hc.with_cyclic()
    if action.gamma.order > 1:
        act = act.combine(hc.with_gamma())
    cx = act.coinvariants()
    return [cx.homology(n) for n in range(max_n + 1)]


# ---------------------------------------------------------------- closed forms


def hh0_formula(alg: FinDimAlgebra, action: AlgebraGammaAction) -> tuple[int, IntMatrix]:
    """dim A/[A,A]_Gamma and the spanning set of [A,A]_Gamma as columns."""
    d = alg.dim
    cols = alg.commutator_span()
    ident = IntMatrix.identity(d)
    for g in action.generator_matrices():
        cols.extend(c for c in (g - ident).cols if c)
    span = IntMatrix.from_columns(d, cols)
    return d - (rank(span) if cols else 0), span


def hh0_formula_invariants(alg: FinDimAlgebra, action: AlgebraGammaAction) -> AbelianInvariants:
    _, span = hh0_formula(alg, action)
    return FPAbelianGroup(alg.dim, span).invariants()


def kahler_omega1_gamma(alg: FinDimAlgebra, action: AlgebraGammaAction) -> tuple[int, IntMatrix]:
    """dim of Gamma-coinvariants of Kahler differentials, with the relation columns.

    Generators e_i db_j are indexed i + d*j.
    """
    if not alg.is_commutative():
        raise AlgebraError("Kahler differentials are built for commutative algebras only")
    d = alg.dim

    def xdy(x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                out[i + d * j] = out.get(i + d * j, 0) + a * b
        return out

    cols = []
    for i in range(d):
        for j in range(d):
            for k in range(j, d):
                v = xdy({i: 1}, alg.table[j][k])
                v = add_vec(v, xdy(alg.table[i][j], {k: 1}), -1)
                v = add_vec(v, xdy(alg.table[i][k], {j: 1}), -1)
                if v:
                    cols.append(v)
    for g in action.generator_matrices():
        for i in range(d):
            for j in range(d):
                v = add_vec(xdy(g.cols[i], g.cols[j]), {i + d * j: 1}, -1)
                if v:
                    cols.append(v)
    rel = IntMatrix.from_columns(d * d, cols)
    return d * d - (rank(rel) if cols else 0), rel


# ---------------------------------------------------------------- bar complex fixture


def bar_prime(alg: FinDimAlgebra, n: int) -> IntMatrix:
    """b' on A^(x)(n+1) -> A^(x)n (faces d_0..d_{n-1})."""
    d = alg.dim
    tb = TensorBasis(d, d)
    cols = []
    for code in range(tb.size(n)):
        m, a = tb.decode(code, n)
        full = [m] + a
        out: Vec = {}
        for i in range(n):
            sgn = -1 if i % 2 else 1
            for k, c in alg.table[full[i]][full[i + 1]].items():
                t = full[:i] + [k] + full[i + 2:]
                key = tb.encode(t[0], t[1:])
                out[key] = out.get(key, 0) + sgn * c
        cols.append(_clean(out))
    return IntMatrix(tb.size(n - 1) if n else 0, tb.size(n), cols)


def bar_contraction(alg: FinDimAlgebra, n: int) -> IntMatrix:
    """s(a0, ..., an) = (1, a0, ..., an)."""
    d = alg.dim
    tb = TensorBasis(d, d)
    cols = []
    for code in range(tb.size(n)):
        m, a = tb.decode(code, n)
        out: Vec = {}
        for u, c in alg.unit.items():
            out[tb.encode(u, [m] + a)] = c
        cols.append(out)
    return IntMatrix(tb.size(n + 1), tb.size(n), cols)


def bar_homotopy_holds(alg: FinDimAlgebra, max_n: int) -> bool:
    """b's + sb' = id on A^(x)(n+1) for n = 0..max_n."""
    for n in range(max_n + 1):
        lhs = bar_prime(alg, n + 1) @ bar_contraction(alg, n)
        if n > 0:
            lhs = lhs + bar_contraction(alg, n - 1) @ bar_prime(alg, n)
        if lhs != IntMatrix.identity(alg.dim ** (n + 1)):
            return False
    return True


# ---------------------------------------------------------------- Morita maps


def trace_map(r: int, alg: FinDimAlgebra, mod: EquivariantBimodule, n: int) -> IntMatrix:
    """tr(v0 m (x) v1 a1 (x) ... ) = tr(v0 v1 ... vn) m (x) a1 (x) ... on elementary v_i."""
    d, dm = alg.dim, mod.dim
    big = TensorBasis(r * r * dm, r * r * d)
    small = TensorBasis(dm, d)
    cols = []
    for code in range(big.size(n)):
        m, a = big.decode(code, n)
        pq = [m // dm] + [x // d for x in a]
        entries = [(x // r, x % r) for x in pq]
        ok = all(entries[i][1] == entries[(i + 1) % len(entries)][0] for i in range(len(entries)))
        if ok:
            cols.append({small.encode(m % dm, [x % d for x in a]): 1})
        else:
            cols.append({})
    return IntMatrix(small.size(n), big.size(n), cols)


def inclusion_map(r: int, alg: FinDimAlgebra, mod: EquivariantBimodule, n: int) -> IntMatrix:
    """(m, a1, ..., an) -> (e11 m, e11 a1, ..., e11 an)."""
    d, dm = alg.dim, mod.dim
    big = TensorBasis(r * r * dm, r * r * d)
    small = TensorBasis(dm, d)
    cols = []
    for code in range(small.size(n)):
        m, a = small.decode(code, n)
        cols.append({big.encode(m, list(a)): 1})
    return IntMatrix(big.size(n), small.size(n), cols)


@dataclass
class MoritaReport:
    r: int
    max_degree: int
    chain_maps: bool = True
    equivariant: bool = True
    trace_after_inclusion_identity: dict[int, bool] = field(default_factory=dict)
    dims_small: list = field(default_factory=list)
    dims_big: list = field(default_factory=list)
    inclusion_then_trace_on_homology: dict[int, bool] = field(default_factory=dict)
    trace_then_inclusion_on_homology: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.chain_maps
            and self.equivariant
            and all(self.trace_after_inclusion_identity.values())
            and self.dims_small == self.dims_big
            and all(self.inclusion_then_trace_on_homology.values())
            and all(self.trace_then_inclusion_on_homology.values())
        )

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "max_degree": self.max_degree,
            "chain_maps": self.chain_maps,
            "equivariant": self.equivariant,
            "tr_inc_identity": {str(k): v for k, v in self.trace_after_inclusion_identity.items()},
            "dims_A": self.dims_small,
            "dims_MrA": self.dims_big,
            "tr_inc_on_homology": {str(k): v for k, v in self.inclusion_then_trace_on_homology.items()},
            "inc_tr_on_homology": {str(k): v for k, v in self.trace_then_inclusion_on_homology.items()},
            "ok": self.ok,
        }


def morita_check(alg: FinDimAlgebra, action: AlgebraGammaAction, r: int, max_degree: int,
                 mod: EquivariantBimodule | None = None, budget: int = DEFAULT_COLUMN_BUDGET) -> MoritaReport:
    """Trace and inclusion between C(A, M) and C(M_r A, M_r M), checked on chains and on HH^Gamma."""
    if alg.base != "Q":
        raise AlgebraError("the Morita check is run over Q")
    mod = mod or regular_bimodule(alg, action)
    alg_r = matrix_algebra(alg, r)
    act_r = matrix_action(action, r)
    mod_r = matrix_bimodule(mod, r, alg_r)
    small = build_hochschild_complex(alg, mod, action, max_degree + 1, budget)
    big = build_hochschild_complex(alg_r, mod_r, act_r, max_degree + 1, budget)
    rep = MoritaReport(r, max_degree)
    tr = {n: trace_map(r, alg, mod, n) for n in range(max_degree + 2)}
    inc = {n: inclusion_map(r, alg, mod, n) for n in range(max_degree + 2)}
    for n in range(1, max_degree + 2):
        if small.boundaries[n] @ tr[n] != tr[n - 1] @ big.boundaries[n]:
            rep.chain_maps = False
        if big.boundaries[n] @ inc[n] != inc[n - 1] @ small.boundaries[n]:
            rep.chain_maps = False
    for s in range(action.gamma.order):
        for n in range(max_degree + 2):
            gs, gb = small.gamma_matrix(s, n), big.gamma_matrix(s, n)
            if gs @ tr[n] != tr[n] @ gb or gb @ inc[n] != inc[n] @ gs:
                rep.equivariant = False
    for n in range(max_degree + 2):
        rep.trace_after_inclusion_identity[n] = tr[n] @ inc[n] == IntMatrix.identity(small.dim(n))
    cs = small.with_gamma().coinvariants()
    cb = big.with_gamma().coinvariants()
    for n in range(max_degree + 1):
        rep.dims_small.append(cs.homology(n))
        rep.dims_big.append(cb.homology(n))
        tr_q = cb.induced_chain_map(n, cs, tr[n])
        inc_q = cs.induced_chain_map(n, cb, inc[n])
        zs = cs.rational_cycles(n)
        comp = tr_q @ inc_q
        rep.inclusion_then_trace_on_homology[n] = cs.rational_in_boundaries(n, [add_vec(comp.apply(z), z, -1) for z in zs])
        zb = cb.rational_cycles(n)
        comp2 = inc_q @ tr_q
        rep.trace_then_inclusion_on_homology[n] = cb.rational_in_boundaries(n, [add_vec(comp2.apply(z), z, -1) for z in zb])
    return rep


# ---------------------------------------------------------------- group algebra cross-check


@dataclass
class Case2Report:
    max_degree: int
    hochschild: list[AbelianInvariants]
    bar: list[AbelianInvariants]
    full_hochschild: list[AbelianInvariants] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.hochschild == self.bar

    def as_dict(self) -> dict:
        return {
            "degrees": list(range(self.max_degree + 1)),
            "hochschild_augmentation": [str(x) for x in self.hochschild],
            "bar": [str(x) for x in self.bar],
            "hochschild_regular": [str(x) for x in self.full_hochschild],
            "match": self.match,
        }


def case2_crosscheck(gg: GammaGroup, max_degree: int, include_regular: bool = False,
                     budget: int = DEFAULT_COLUMN_BUDGET) -> Case2Report:
    """Hochschild of Z(G) with coefficients Z (augmentation on both sides) versus the bar complex of G."""
    from .bar_homology import build_bar_complex
    from .equivariant_modules import trivial_module

    alg, action = group_algebra(gg)
    aug = augmentation_bimodule(alg, gg.gamma, [1] * alg.dim)
    hc = build_hochschild_complex(alg, aug, action, max_degree + 1, budget)
    cx = hc.with_gamma().coinvariants()
    hh = [cx.homology(n) for n in range(max_degree + 1)]
    bar = build_bar_complex(gg, trivial_module(gg, 0), max_degree + 1, budget)
    bh = [bar.homology(n) for n in range(max_degree + 1)]
    full = []
    if include_regular:
        hcr = build_hochschild_complex(alg, regular_bimodule(alg, action), action, max_degree + 1, budget)
        cr = hcr.with_gamma().coinvariants()
        full = [cr.homology(n) for n in range(max_degree + 1)]
    return Case2Report(max_degree, hh, bh, full)


# ---------------------------------------------------------------- problem-file input


def algebra_from_spec(spec: dict) -> tuple[FinDimAlgebra, AlgebraGammaAction]:
    """{"dim", "structure_constants" (d x d x d), "unit", "base", "gamma": matrices} or {"kind": ...}."""
    from .finite_group import cyclic

    kind = spec.get("kind")
    if kind is not None:
        if kind == "rationals":
            alg = rationals()
        elif kind == "truncated":
            alg = truncated_polynomial(int(spec["n"]))
        elif kind == "matrix":
            inner, inner_act = algebra_from_spec(spec["of"])
            alg = matrix_algebra(inner, int(spec["r"]))
            if "gamma" not in spec:
                return alg, matrix_action(inner_act, int(spec["r"]))
        elif kind == "group_algebra":
            from .finite_group import gamma_group_from_spec

            gg = gamma_group_from_spec(spec["group"], spec.get("gamma_group"), spec.get("action"))
            return group_algebra(gg, spec.get("base", "Q"))
        else:
            raise AlgebraError(f"unknown algebra kind {kind!r}")
    else:
        d = int(spec["dim"])
        sc = spec["structure_constants"]
        if len(sc) != d:
            raise AlgebraError(f"structure_constants must be {d} x {d} x {d}")
        alg = FinDimAlgebra.from_dense(sc, spec["unit"], base=spec.get("base", "Q"), commutative=spec.get("commutative"))
    gamma = spec.get("gamma")
    if gamma is None:
        return alg, trivial_algebra_action(alg)
    mats = [IntMatrix.from_rows(rows) for rows in gamma]
    if len(mats) == 1:
        act = cyclic_algebra_action(alg, mats[0])
    else:
        act = AlgebraGammaAction(cyclic(len(mats)), mats)
    bad = act.violations(alg)
    if bad:
        raise AlgebraError("gamma action: " + "; ".join(bad[:3]))
    return alg, act
