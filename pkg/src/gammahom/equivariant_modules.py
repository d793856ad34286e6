"""Modules over a group with operators.

An :class:`EquivariantModule` is a presented abelian group A with a left
G-action and a Gamma-action satisfying s(g.a) = s(g).(s.a).  Actions are
integer matrices on the generators; they only need to respect the relations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    AbelianMap,
    FPAbelianGroup,
    IntMatrix,
    Lattice,
    add_vec,
    block_diagonal,
)
from .finite_group import FiniteGroup, GammaGroup, generated_subgroup, small_generating_set


class ModuleValidationError(ValueError):
    pass


class EquivariantModule:
    def __init__(
        self,
        gg: GammaGroup,
        base: FPAbelianGroup,
        g_action: Sequence[IntMatrix],
        gamma_action: Sequence[IntMatrix] | None = None,
        name: str = "A",
        check: bool = True,
    ):
        self.gg = gg
        self.base = base
        self.rank = base.ngens
        self.g_action = list(g_action)
        if gamma_action is None:
            gamma_action = [IntMatrix.identity(self.rank) for _ in range(gg.gamma.order)]
        self.gamma_action = list(gamma_action)
        self.name = name
        if check:
            errs = self.validate()
            if errs:
                raise ModuleValidationError("; ".join(errs))

    # --- basic queries ----------------------------------------------------
    def equal_maps(self, a: IntMatrix, b: IntMatrix) -> bool:
        lat = self.base.relation_lattice
        return all(add_vec(x, y, -1) in lat for x, y in zip(a.cols, b.cols))

    def validate(self) -> list[str]:
        errs: list[str] = []
        g, gam = self.gg.group, self.gg.gamma
        k = self.rank
        if len(self.g_action) != g.order or len(self.gamma_action) != gam.order:
            return ["one action matrix is needed per group element"]
        for mats in (self.g_action, self.gamma_action):
            for m in mats:
                if m.shape != (k, k):
                    return ["action matrices must be square of the module rank"]
                if not AbelianMap(self.base, self.base, m, check=False).is_well_defined():
                    errs.append("an action matrix does not preserve the relations")
                    return errs
        ident = IntMatrix.identity(k)
        if not self.equal_maps(self.g_action[0], ident):
            errs.append("G identity does not act trivially")
        if not self.equal_maps(self.gamma_action[0], ident):
            errs.append("Gamma identity does not act trivially")
        for a in range(g.order):
            for b in range(g.order):
                if not self.equal_maps(self.g_action[a] @ self.g_action[b], self.g_action[g.mul(a, b)]):
                    errs.append(f"G action law fails at ({a},{b})")
                    return errs
        for s in range(gam.order):
            for t in range(gam.order):
                if not self.equal_maps(self.gamma_action[s] @ self.gamma_action[t], self.gamma_action[gam.mul(s, t)]):
                    errs.append(f"Gamma action law fails at ({s},{t})")
                    return errs
        for s in range(gam.order):
            for a in range(g.order):
                lhs = self.gamma_action[s] @ self.g_action[a]
                rhs = self.g_action[self.gg.act(s, a)] @ self.gamma_action[s]
                if not self.equal_maps(lhs, rhs):
                    errs.append(f"compatibility s(g.a) = s(g).s(a) fails at s={s}, g={a}")
                    return errs
        return errs

    def semidirect_action(self, x: int) -> IntMatrix:
        """Matrix of the element x = (g, s) of G x| Gamma, acting as g after s."""
        g, s = self.gg.sd_split(x)
        return self.g_action[g] @ self.gamma_action[s]

    def is_free(self) -> bool:
        return self.base.relations.ncols == 0 or self.base.relations.is_zero()

    def signed_permutation(self, m: IntMatrix) -> tuple[list[int], list[int]] | None:
        """(perm, sign) if m is a signed permutation matrix."""
        perm, sign = [], []
        for c in m.cols:
            if len(c) != 1:
                return None
            (i, v), = c.items()
            if v not in (1, -1):
                return None
            perm.append(i)
            sign.append(v)
        if sorted(perm) != list(range(m.nrows)):
            return None
        return perm, sign

    def is_monomial(self) -> bool:
        return self.is_free() and all(self.signed_permutation(m) is not None for m in self.g_action + self.gamma_action)

    def __repr__(self) -> str:
        return f"EquivariantModule({self.name}: {self.base.invariants()} over {self.gg})"


# ---------------------------------------------------------------- constructors


def trivial_module(gg: GammaGroup, n: int = 0, name: str | None = None) -> EquivariantModule:
    """Z/n (n = 0 gives Z) with trivial actions."""
    base = FPAbelianGroup.cyclic(n)
    ident = IntMatrix.identity(1)
    return EquivariantModule(
        gg, base, [ident] * gg.group.order, [ident] * gg.gamma.order, name or ("Z" if n == 0 else f"Z/{n}"), check=False
    )


def trivial_module_on(gg: GammaGroup, base: FPAbelianGroup, name: str = "A") -> EquivariantModule:
    ident = IntMatrix.identity(base.ngens)
    return EquivariantModule(gg, base, [ident] * gg.group.order, [ident] * gg.gamma.order, name, check=False)


def _perm_matrix(perm: Sequence[int], sign: Sequence[int] | None = None) -> IntMatrix:
    n = len(perm)
    return IntMatrix(n, n, [{perm[i]: (sign[i] if sign else 1)} for i in range(n)])


def group_ring_module(gg: GammaGroup, modulus: int = 0) -> EquivariantModule:
    """Z(G) (or (Z/n)(G)) with left translation and Gamma permuting the basis."""
    g = gg.group
    n = g.order
    if modulus:
        base = FPAbelianGroup(n, IntMatrix(n, n, [{i: modulus} for i in range(n)]))
    else:
        base = FPAbelianGroup(n)
    gact = [_perm_matrix(g.table[a]) for a in range(n)]
    sact = [_perm_matrix(gg.action[s]) for s in range(gg.gamma.order)]
    return EquivariantModule(gg, base, gact, sact, "Z(G)" if not modulus else f"Z/{modulus}(G)", check=False)


def augmentation_ideal(gg: GammaGroup) -> EquivariantModule:
    """Kernel of Z(G) -> Z with basis g - e for g != e."""
    g = gg.group
    n = g.order - 1

    def vec(x: int) -> dict[int, int]:
        return {} if x == 0 else {x - 1: 1}

    gact = []
    for a in range(g.order):
        cols = []
        for x in range(1, g.order):
            # a(x - e) = (ax - e) - (a - e)
            cols.append(add_vec(vec(g.mul(a, x)), vec(a), -1))
        gact.append(IntMatrix(n, n, cols))
    sact = [_perm_matrix([gg.act(s, x) - 1 for x in range(1, g.order)]) for s in range(gg.gamma.order)]
    return EquivariantModule(gg, FPAbelianGroup(n), gact, sact, "I(G)", check=False)


def sign_module(gg: GammaGroup, g_signs: Sequence[int], gamma_signs: Sequence[int], n: int = 0) -> EquivariantModule:
    """Z or Z/n where elements act by the given signs."""
    base = FPAbelianGroup.cyclic(n)
    return EquivariantModule(
        gg, base, [IntMatrix(1, 1, [{0: e}]) for e in g_signs], [IntMatrix(1, 1, [{0: e}]) for e in gamma_signs], "Z(sign)"
    )


def module_from_spec(gg: GammaGroup, spec) -> EquivariantModule:
    """Module from a JSON-like description.

    Accepted forms: ``{"trivial": n}`` (n = 0 for Z), ``"regular"``, ``"augmentation"``
    or ``{"rank": k, "relations": [[...] columns], "g_action": [...], "gamma_action": [...]}``
    where each action entry is a k x k row-major matrix, listed per group element.
    """
    if spec in (None, "Z"):
        return trivial_module(gg, 0)
    if isinstance(spec, int):
        return trivial_module(gg, spec)
    if spec == "regular":
        return group_ring_module(gg)
    if spec == "augmentation":
        return augmentation_ideal(gg)
    if isinstance(spec, dict) and "trivial" in spec:
        return trivial_module(gg, int(spec["trivial"]))
    if isinstance(spec, dict) and "rank" in spec:
        k = int(spec["rank"])
        rel_cols = [dict((i, int(v)) for i, v in enumerate(col) if v) for col in spec.get("relations", [])]
        base = FPAbelianGroup(k, IntMatrix(k, len(rel_cols), rel_cols))
        gact = _matrices(spec.get("g_action"), gg.group.order, k)
        sact = _matrices(spec.get("gamma_action"), gg.gamma.order, k)
        return EquivariantModule(gg, base, gact, sact, spec.get("name", "A"))
    raise ModuleValidationError(f"bad module spec {spec!r}")


def _matrices(entries, count: int, k: int) -> list[IntMatrix]:
    if entries in (None, "trivial"):
        return [IntMatrix.identity(k) for _ in range(count)]
    if len(entries) != count:
        raise ModuleValidationError(f"expected {count} action matrices, got {len(entries)}")
    return [IntMatrix.from_rows(m, k) for m in entries]


# ---------------------------------------------------------------- coinvariants etc.


def gamma_coinvariants(m: EquivariantModule) -> FPAbelianGroup:
    """A / <s.a - a : s in Gamma>."""
    ident = IntMatrix.identity(m.rank)
    extra = [mat - ident for mat in m.gamma_action[1:]]
    return FPAbelianGroup(m.rank, m.base.relations.hstack(*extra))


def full_coinvariants(m: EquivariantModule) -> FPAbelianGroup:
    """Coinvariants for the semidirect product G x| Gamma."""
    ident = IntMatrix.identity(m.rank)
    extra = [mat - ident for mat in m.g_action[1:] + m.gamma_action[1:]]
    return FPAbelianGroup(m.rank, m.base.relations.hstack(*extra))


def fixed_submodule(base: FPAbelianGroup, mats: Sequence[IntMatrix]) -> tuple[FPAbelianGroup, AbelianMap]:
    """Elements fixed by every matrix in ``mats``, with the inclusion."""
    mats = [x for x in mats]
    if not mats:
        k = base.ngens
        return base, AbelianMap(base, base, IntMatrix.identity(k), check=False)
    ident = IntMatrix.identity(base.ngens)
    stacked = (mats[0] - ident).vstack(*[x - ident for x in mats[1:]])
    target = FPAbelianGroup(stacked.nrows, block_diagonal([base.relations] * len(mats)))
    f = AbelianMap(base, target, stacked, check=False)
    return f.kernel()


def gamma_invariants(m: EquivariantModule) -> tuple[FPAbelianGroup, AbelianMap]:
    return fixed_submodule(m.base, m.gamma_action[1:])


def full_invariants(m: EquivariantModule) -> tuple[FPAbelianGroup, AbelianMap]:
    return fixed_submodule(m.base, m.g_action[1:] + m.gamma_action[1:])


def tensor_over_semidirect(m1: EquivariantModule, m2: EquivariantModule) -> FPAbelianGroup:
    """M1 tensor M2 over Z, modulo the diagonal action of G x| Gamma."""
    k1, k2 = m1.rank, m2.rank
    n = k1 * k2

    def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
        cols = []
        for i in range(a.ncols):
            for j in range(b.ncols):
                c = {}
                for r1, v1 in a.cols[i].items():
                    for r2, v2 in b.cols[j].items():
                        c[r1 * b.nrows + r2] = v1 * v2
                cols.append(c)
        return IntMatrix(a.nrows * b.nrows, len(cols), cols)

    rels = [kron(m1.base.relations, IntMatrix.identity(k2)), kron(IntMatrix.identity(k1), m2.base.relations)]
    ident = IntMatrix.identity(n)
    sd = m1.gg.semidirect_product()
    for x in range(1, sd.order):
        rels.append(kron(m1.semidirect_action(x), m2.semidirect_action(x)) - ident)
    return FPAbelianGroup(n, IntMatrix.zeros(n, 0).hstack(*rels))


# ---------------------------------------------------------------- finite abelian groups as modules


@dataclass
class FiniteAbelianPresentation:
    """Presentation of a finite abelian group given as a subset of a table group."""

    group: FiniteGroup
    members: list[int]
    generators: list[int]
    base: FPAbelianGroup
    _to_vec: dict[int, tuple[int, ...]]

    def to_vec(self, x: int) -> dict[int, int]:
        return {i: v for i, v in enumerate(self._to_vec[x]) if v}

    def from_vec(self, vec: dict[int, int]) -> int:
        r = 0
        for i, c in vec.items():
            g = self.generators[i]
            r = self.group.mul(r, self.group.power(g, c))
        return r

    def matrix_of(self, perm: Sequence[int]) -> IntMatrix:
        """Matrix of an automorphism of the subgroup given on parent elements."""
        k = len(self.generators)
        return IntMatrix(k, k, [self.to_vec(perm[g]) for g in self.generators])


def present_finite_abelian(group: FiniteGroup, members: Sequence[int] | None = None) -> FiniteAbelianPresentation:
    """Generators and relations for an abelian subgroup of a finite group."""
    if members is None:
        members = list(range(group.order))
    members = sorted(set(members))
    mset = set(members)
    gens: list[int] = []
    cur = frozenset([0])
    for a in sorted(members, key=lambda x: (-group.element_order(x), x)):
        if a not in cur:
            gens.append(a)
            cur = generated_subgroup(group, gens)
    if cur != mset:
        raise ValueError("members do not form a subgroup")
    orders = [group.element_order(g) for g in gens]
    k = len(gens)
    to_vec: dict[int, tuple[int, ...]] = {}
    rel_cols: list[dict[int, int]] = [{i: orders[i]} for i in range(k)]
    for coeffs in itertools.product(*[range(o) for o in orders]):
        x = 0
        for g, c in zip(gens, coeffs):
            x = group.mul(x, group.power(g, c))
        if x in to_vec:
            prev = to_vec[x]
            rel_cols.append({i: a - b for i, (a, b) in enumerate(zip(coeffs, prev)) if a != b})
        else:
            to_vec[x] = coeffs
    lat = Lattice(k, rel_cols)
    base = FPAbelianGroup(k, IntMatrix(k, lat.rank, lat.basis()))
    return FiniteAbelianPresentation(group, members, gens, base, to_vec)


def module_from_abelian_subgroup(
    gg: GammaGroup,
    pres: FiniteAbelianPresentation,
    g_perms: Sequence[Sequence[int]],
    gamma_perms: Sequence[Sequence[int]] | None = None,
    name: str = "C",
) -> EquivariantModule:
    gact = [pres.matrix_of(p) for p in g_perms]
    if gamma_perms is None:
        sact = [IntMatrix.identity(len(pres.generators)) for _ in range(gg.gamma.order)]
    else:
        sact = [pres.matrix_of(p) for p in gamma_perms]
    return EquivariantModule(gg, pres.base, gact, sact, name)


class FiniteModuleView:
    """Element-level view of a finite module: elements are indices."""

    def __init__(self, m: EquivariantModule):
        self.module = m
        base = m.base
        self.elements = base.elements()
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.vecs = [base.from_normal_form(e) for e in self.elements]
        self.zero = self.index[base.normal_form({})]
        n = len(self.elements)
        self.size = n
        self.add = [[self.index[base.normal_form(add_vec(self.vecs[a], self.vecs[b]))] for b in range(n)] for a in range(n)]
        self.neg = [self.index[base.normal_form({i: -x for i, x in self.vecs[a].items()})] for a in range(n)]
        self.g_perm = [[self.index[base.normal_form(mat.apply(v))] for v in self.vecs] for mat in m.g_action]
        self.gamma_perm = [[self.index[base.normal_form(mat.apply(v))] for v in self.vecs] for mat in m.gamma_action]

    def element_of(self, vec: dict[int, int]) -> int:
        return self.index[self.module.base.normal_form(vec)]

    def fixed_by(self, gamma_elems: Sequence[int]) -> list[int]:
        return [a for a in range(self.size) if all(self.gamma_perm[s][a] == a for s in gamma_elems)]

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]


def invariant_generators(gg: GammaGroup) -> list[int]:
    return small_generating_set(gg.gamma)
