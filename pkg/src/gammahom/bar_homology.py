"""Equivariant bar complex and equivariant cochain complex.

Chains in degree n are (A tensor Z[G^n]) modulo the diagonal Gamma-action;
each Gamma-orbit of tuples contributes A modulo its stabilizer.  Cochains in
degree n are Gamma-maps G^n -> A; each orbit contributes A fixed by its
stabilizer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .equivariant_modules import (
    EquivariantModule,
    FiniteAbelianPresentation,
    fixed_submodule,
    present_finite_abelian,
    trivial_module,
)
from .exact_linalg import (
    AbelianInvariants,
    AbelianMap,
    ChainComplexZ,
    CochainComplexZ,
    FPAbelianGroup,
    HomologyPresentation,
    IntMatrix,
    Lattice,
    add_vec,
    homology_presentation,
    induced_map,
)
from .finite_group import FiniteGroup, GammaGroup, TupleOrbits, generated_subgroup, commutator_subgroup, quotient

DEFAULT_COLUMN_BUDGET = 50_000


class BudgetExceeded(RuntimeError):
    pass


class DegreeNotBuilt(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _scaled(mat: IntMatrix, vec: dict[int, int]) -> dict[int, int]:
    return mat.apply(vec)


@dataclass
class BarComplexGamma:
    gg: GammaGroup
    coeff: EquivariantModule
    max_degree: int
    complex: ChainComplexZ
    orbits: dict[int, TupleOrbits]
    # generator index -> (orbit index, module generator)
    layout: str = "orbit-stabilizer"

    def homology(self, n: int) -> AbelianInvariants:
        if n < 0 or n > self.max_degree - 1:
            raise DegreeNotBuilt(f"degree {n} needs the complex built to degree {n + 1}")
        return self.complex.homology_at(n)

    def rational_homology(self, n: int) -> int:
        if n < 0 or n > self.max_degree - 1:
            raise DegreeNotBuilt(f"degree {n} needs the complex built to degree {n + 1}")
        return self.complex.rational_homology_at(n)

    def presentation(self, n: int) -> HomologyPresentation:
        c = self.complex
        return homology_presentation(c.group(n), c.boundaries.get(n), c.boundaries.get(n + 1))

    def chain_of(self, n: int, tuple_: Sequence[int], vec: dict[int, int]) -> dict[int, int]:
        """Coordinates of vec (tensor) [tuple] in C_n."""
        orb = self.orbits[n]
        code = orb.encode(tuple_)
        o = orb.orbit_of[code]
        s = orb.transporter[code]
        sinv = self.gg.gamma.inv[s]
        v = self.coeff.gamma_action[sinv].apply(vec)
        k = self.coeff.rank
        return {o * k + i: x for i, x in v.items()}

    def d_squared_zero(self) -> bool:
        return self.complex.check_d_squared()


def build_bar_complex(gg: GammaGroup, coeff: EquivariantModule, max_degree: int, budget: int = DEFAULT_COLUMN_BUDGET) -> BarComplexGamma:
    """Coinvariant bar complex in degrees 0..max_degree."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if coeff.gg is not gg and (coeff.gg.group.order != gg.group.order or coeff.gg.gamma.order != gg.gamma.order):
        raise ValueError("coefficient module is over a different group")
    g = gg.group
    k = coeff.rank
    orbits: dict[int, TupleOrbits] = {}
    groups: dict[int, FPAbelianGroup] = {}
    ident = IntMatrix.identity(k)
    for n in range(max_degree + 1):
        size = g.order ** n
        if size * k > budget * max(1, gg.gamma.order):
            raise BudgetExceeded(f"degree {n}: {size * k} tensor generators exceed the budget of {budget} columns")
        orb = gg.tuple_orbits(n)
        if len(orb) * k > budget:
            raise BudgetExceeded(f"degree {n}: {len(orb) * k} generators exceed the budget of {budget} columns")
        orbits[n] = orb
        rels: list[dict[int, int]] = []
        for o, stab in enumerate(orb.stabilizers):
            off = o * k
            for c in coeff.base.relations.cols:
                rels.append({off + i: x for i, x in c.items()})
            for s in stab:
                if s == 0:
                    continue
                diff = coeff.gamma_action[s] - ident
                for c in diff.cols:
                    if c:
                        rels.append({off + i: x for i, x in c.items()})
        ng = len(orb) * k
        groups[n] = FPAbelianGroup(ng, IntMatrix.from_columns(ng, rels))
    ginv_mats = [coeff.g_action[g.inv[a]] for a in range(g.order)]
    boundaries: dict[int, AbelianMap] = {}
    for n in range(1, max_degree + 1):
        src, tgt = orbits[n], orbits[n - 1]
        cols = []
        for o, code in enumerate(src.reps):
            t = src.decode(code)
            terms: list[tuple[int, list[int], IntMatrix | None]] = []
            terms.append((1, t[1:], ginv_mats[t[0]]))
            for i in range(1, n):
                merged = t[: i - 1] + [g.mul(t[i - 1], t[i])] + t[i + 1 :]
                terms.append(((-1) ** i, merged, None))
            terms.append(((-1) ** n, t[:-1], None))
            for i in range(k):
                col: dict[int, int] = {}
                for sign, tt, mat in terms:
                    vec = mat.cols[i] if mat is not None else {i: 1}
                    c2 = tgt.encode(tt)
                    o2 = tgt.orbit_of[c2]
                    s = tgt.transporter[c2]
                    if s:
                        vec = coeff.gamma_action[gg.gamma.inv[s]].apply(vec)
                    off = o2 * k
                    for r, x in vec.items():
                        key = off + r
                        val = col.get(key, 0) + sign * x
                        if val:
                            col[key] = val
                        else:
                            col.pop(key, None)
                cols.append(col)
        mat = IntMatrix(groups[n - 1].ngens, groups[n].ngens, cols)
        boundaries[n] = AbelianMap(groups[n], groups[n - 1], mat, check=False)
    cx = ChainComplexZ(groups, boundaries)
    return BarComplexGamma(gg, coeff, max_degree, cx, orbits)


def homology_HnGamma(gg: GammaGroup, coeff: EquivariantModule, n: int, budget: int = DEFAULT_COLUMN_BUDGET) -> AbelianInvariants:
    return build_bar_complex(gg, coeff, n + 1, budget).homology(n)


# ---------------------------------------------------------------- cochains


@dataclass
class _FixedPart:
    group: FPAbelianGroup
    basis: IntMatrix  # k x p, columns span the preimage lattice
    lattice: Lattice


def _fixed_part(coeff: EquivariantModule, stab: tuple[int, ...]) -> _FixedPart:
    mats = [coeff.gamma_action[s] for s in stab if s != 0]
    k = coeff.rank
    if not mats:
        lat = Lattice(k, [{i: 1} for i in range(k)])
    else:
        _, inc = fixed_submodule(coeff.base, mats)
        lat = Lattice(k, inc.matrix.cols)
    for c in coeff.base.relations.cols:
        lat.add(c)
    basis = lat.basis()
    rels = [lat.coordinates(c) for c in coeff.base.relations.cols]
    p = len(basis)
    return _FixedPart(FPAbelianGroup(p, IntMatrix.from_columns(p, rels)), IntMatrix.from_columns(k, basis), lat)


@dataclass
class CochainComplexGamma:
    gg: GammaGroup
    coeff: EquivariantModule
    max_degree: int
    complex: CochainComplexZ
    orbits: dict[int, TupleOrbits]
    offsets: dict[int, list[int]]
    parts: dict[int, list[_FixedPart]]

    def cohomology(self, n: int) -> AbelianInvariants:
        if n < 0 or n > self.max_degree - 1:
            raise DegreeNotBuilt(f"degree {n} needs cochains built to degree {n + 1}")
        return self.complex.cohomology_at(n)

    def presentation(self, n: int) -> HomologyPresentation:
        c = self.complex
        return homology_presentation(c.group(n), c.coboundaries.get(n), c.coboundaries.get(n - 1))

    def generator_counts(self, n: int) -> list[int]:
        return [p.group.ngens for p in self.parts[n]]

    def cochain_from_function(self, n: int, values) -> dict[int, int]:
        """Coordinates of the Gamma-map with f(rep) = values(rep_tuple) (a module vector)."""
        out: dict[int, int] = {}
        orb = self.orbits[n]
        for o, code in enumerate(orb.reps):
            v = values(tuple(orb.decode(code)))
            coords = self.parts[n][o].lattice.coordinates(v)
            off = self.offsets[n][o]
            for i, x in coords.items():
                if x:
                    out[off + i] = x
        return out

    def evaluate(self, n: int, cochain: dict[int, int], tuple_: Sequence[int]) -> dict[int, int]:
        """Value in A (generator coordinates) of a cochain at any tuple."""
        orb = self.orbits[n]
        code = orb.encode(tuple_)
        o = orb.orbit_of[code]
        s = orb.transporter[code]
        part = self.parts[n][o]
        off = self.offsets[n][o]
        local = {i - off: x for i, x in cochain.items() if off <= i < off + part.group.ngens}
        v = part.basis.apply(local)
        return self.coeff.gamma_action[s].apply(v)

    def is_coboundary(self, n: int, cochain: dict[int, int]) -> bool:
        """cochain in im(delta^{n-1}) + relations of C^n."""
        grp = self.complex.group(n)
        lat = Lattice(grp.ngens, grp.relations.cols)
        if n - 1 in self.complex.coboundaries:
            for c in self.complex.coboundaries[n - 1].matrix.cols:
                lat.add(c)
        return cochain in lat or not cochain


def build_cochain_complex(gg: GammaGroup, coeff: EquivariantModule, max_degree: int, budget: int = DEFAULT_COLUMN_BUDGET) -> CochainComplexGamma:
    """Cochains of Gamma-maps in degrees 0..max_degree with the inhomogeneous coboundary."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    g = gg.group
    k = coeff.rank
    cache: dict[tuple[int, ...], _FixedPart] = {}
    orbits: dict[int, TupleOrbits] = {}
    parts: dict[int, list[_FixedPart]] = {}
    offsets: dict[int, list[int]] = {}
    groups: dict[int, FPAbelianGroup] = {}
    for n in range(max_degree + 1):
        if g.order ** n * k > budget * max(1, gg.gamma.order):
            raise BudgetExceeded(f"degree {n}: {g.order ** n * k} cochain values exceed the budget of {budget} columns")
        orb = gg.tuple_orbits(n)
        orbits[n] = orb
        plist, offs = [], []
        total = 0
        rel_cols: list[dict[int, int]] = []
        for stab in orb.stabilizers:
            if stab not in cache:
                cache[stab] = _fixed_part(coeff, stab)
            p = cache[stab]
            plist.append(p)
            offs.append(total)
            for c in p.group.relations.cols:
                rel_cols.append({total + i: x for i, x in c.items()})
            total += p.group.ngens
        if total > budget:
            raise BudgetExceeded(f"degree {n}: {total} cochain generators exceed the budget of {budget} columns")
        parts[n], offsets[n] = plist, offs
        groups[n] = FPAbelianGroup(total, IntMatrix.from_columns(total, rel_cols))
    cob: dict[int, AbelianMap] = {}
    for n in range(max_degree):
        src, tgt = orbits[n], orbits[n + 1]
        rows_total = groups[n + 1].ngens
        cols: list[dict[int, int]] = [dict() for _ in range(groups[n].ngens)]
        for u, code in enumerate(tgt.reps):
            t = tgt.decode(code)
            # terms: (sign, tuple of length n, optional left G-element)
            terms: list[tuple[int, list[int], int]] = [(1, t[1:], t[0])]
            for i in range(1, n + 1):
                merged = t[: i - 1] + [g.mul(t[i - 1], t[i])] + t[i + 1 :]
                terms.append(((-1) ** i, merged, 0))
            terms.append(((-1) ** (n + 1), t[:-1], 0))
            target_part = parts[n + 1][u]
            toff = offsets[n + 1][u]
            # accumulate the k x (source cols) block as column dicts in A coordinates
            block: dict[int, dict[int, int]] = {}
            for sign, tt, left in terms:
                c2 = src.encode(tt)
                o2 = src.orbit_of[c2]
                s = src.transporter[c2]
                part = parts[n][o2]
                off = offsets[n][o2]
                for j, bcol in enumerate(part.basis.cols):
                    v = bcol
                    if s:
                        v = coeff.gamma_action[s].apply(v)
                    if left:
                        v = coeff.g_action[left].apply(v)
                    if not v:
                        continue
                    cur = block.get(off + j)
                    block[off + j] = add_vec(cur, v, sign) if cur is not None else {r: sign * x for r, x in v.items()}
            for col_index, v in block.items():
                if not v:
                    continue
                coords = target_part.lattice.coordinates(v)
                dst = cols[col_index]
                for i, x in coords.items():
                    if x:
                        dst[toff + i] = x
        mat = IntMatrix(rows_total, groups[n].ngens, cols)
        cob[n] = AbelianMap(groups[n], groups[n + 1], mat, check=False)
    cx = CochainComplexZ(groups, cob)
    return CochainComplexGamma(gg, coeff, max_degree, cx, orbits, offsets, parts)


def cohomology_HnGamma(gg: GammaGroup, coeff: EquivariantModule, n: int, budget: int = DEFAULT_COLUMN_BUDGET) -> AbelianInvariants:
    return build_cochain_complex(gg, coeff, n + 1, budget).cohomology(n)


def gamma_derivations(gg: GammaGroup, coeff: EquivariantModule) -> FPAbelianGroup:
    """Kernel of the first coboundary inside the Gamma-maps G -> A."""
    cc = build_cochain_complex(gg, coeff, 2)
    k, _ = cc.complex.coboundaries[1].kernel()
    return k


def equivariant_homomorphisms_count(gg: GammaGroup, values: int, add, act_gamma) -> int:
    """Brute-force count of Gamma-equivariant homomorphisms G -> A for a finite trivial-G module.

    ``values`` is |A|, ``add`` the addition table and ``act_gamma[s][a]`` the
    Gamma-action on elements.
    """
    from .finite_group import small_generating_set
    import itertools

    g = gg.group
    gens = small_generating_set(g)
    count = 0
    for imgs in itertools.product(range(values), repeat=len(gens)):
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for s, si in zip(gens, imgs):
                    b = g.mul(a, s)
                    v = add[f[a]][si]
                    if b in f:
                        if f[b] != v:
                            ok = False
                            break
                    else:
                        f[b] = v
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        if any(f[g.mul(a, b)] != add[f[a]][f[b]] for a in range(g.order) for b in range(g.order)):
            continue
        if any(f[gg.act(s, a)] != act_gamma[s][f[a]] for s in range(gg.gamma.order) for a in range(g.order)):
            continue
        count += 1
    return count


# ---------------------------------------------------------------- degree one


def _abelian_quotient_invariants(g: FiniteGroup, normal: frozenset[int]) -> AbelianInvariants:
    q = quotient(g, normal).group
    if not q.is_abelian():
        raise ValueError("quotient is not abelian")
    return present_finite_abelian(q).base.invariants()


def tensor_invariants(a: AbelianInvariants, b: AbelianInvariants) -> AbelianInvariants:
    """Invariants of a tensor b for finitely generated abelian groups."""
    from math import gcd

    free = a.free_rank * b.free_rank
    tors: list[int] = []
    tors += list(b.torsion) * a.free_rank
    tors += list(a.torsion) * b.free_rank
    for x in a.torsion:
        for y in b.torsion:
            d = gcd(x, y)
            if d > 1:
                tors.append(d)
    return AbelianInvariants.from_diagonal(free + len(tors), tors)


def h1_via_formula(gg: GammaGroup, coeff: EquivariantModule) -> AbelianInvariants:
    """(G / [G,G]_Gamma) tensor A, for coefficients with trivial actions."""
    ident = IntMatrix.identity(coeff.rank)
    if not all(coeff.equal_maps(m, ident) for m in coeff.g_action + coeff.gamma_action):
        raise PreconditionError("the degree-one formula needs G and Gamma acting trivially on A")
    quot = _abelian_quotient_invariants(gg.group, gg.gamma_commutant())
    return tensor_invariants(quot, coeff.base.invariants())


@dataclass
class ExactSequenceReport:
    left: AbelianInvariants
    middle: AbelianInvariants
    right: AbelianInvariants
    left_injective: bool
    right_surjective: bool
    composite_zero: bool
    orders_multiply: bool

    @property
    def exact(self) -> bool:
        return self.left_injective and self.right_surjective and self.composite_zero and self.orders_multiply

    def as_dict(self) -> dict:
        return {
            "left": self.left.as_dict(),
            "H1": self.middle.as_dict(),
            "H1_gamma": self.right.as_dict(),
            "left_injective": self.left_injective,
            "right_surjective": self.right_surjective,
            "composite_zero": self.composite_zero,
            "orders_multiply": self.orders_multiply,
            "exact": self.exact,
        }


def check_h1_exact_sequence(gg: GammaGroup) -> ExactSequenceReport:
    """Exactness of 0 -> (Gamma G)/([G,G] n Gamma G) -> H_1(G) -> H_1^Gamma(G) -> 0."""
    g = gg.group
    plain = GammaGroup(g)
    bar_plain = build_bar_complex(plain, trivial_module(plain), 2)
    bar_gamma = build_bar_complex(gg, trivial_module(gg), 2)
    h1 = bar_plain.presentation(1)
    h1g = bar_gamma.presentation(1)
    # left term from subgroup calculus
    gam_sub = gg.gamma_subgroup()
    inter = gam_sub & commutator_subgroup(g)
    sub, emb = gg.restrict(gam_sub)
    local_inter = frozenset(emb.index(x) for x in inter)
    q = quotient(sub.group, local_inter)
    pres = present_finite_abelian(q.group)
    left = pres.base
    # left -> H_1(G): generator (coset of x) maps to the class of [x]
    cols = []
    for gen in pres.generators:
        x = emb[q.coset_reps[gen]]
        z = bar_plain.chain_of(1, [x], {0: 1})
        cols.append(h1.class_of(z))
    f = AbelianMap(left, h1.group, IntMatrix.from_columns(h1.group.ngens, cols))
    # H_1(G) -> H_1^Gamma(G) induced by chains -> coinvariant chains
    proj_cols = []
    for code in range(g.order):
        proj_cols.append(bar_gamma.chain_of(1, [code], {0: 1}))
    proj = IntMatrix.from_columns(bar_gamma.complex.group(1).ngens, proj_cols)
    h = induced_map(proj, h1, h1g)
    composite = h.compose(f)
    lo, mo, ro = left.invariants().order, h1.group.invariants().order, h1g.group.invariants().order
    return ExactSequenceReport(
        left=left.invariants(),
        middle=h1.group.invariants(),
        right=h1g.group.invariants(),
        left_injective=f.is_injective(),
        right_surjective=h.is_surjective(),
        composite_zero=composite.is_zero(),
        orders_multiply=(lo is not None and mo is not None and ro is not None and lo * ro == mo),
    )


# ---------------------------------------------------------------- classical oracle


def cyclic_group_homology_oracle(m: int, n: int, coefficient_order: int = 0) -> AbelianInvariants:
    """Homology of Z/m with trivial Z/c coefficients via the periodic resolution.

    The resolution gives the complex  A <-0- A <-m- A <-0- A <-m- ...
    """
    from .exact_linalg import FPAbelianGroup as FP, AbelianMap as AM

    a = FP.cyclic(coefficient_order)
    if n == 0:
        return a.invariants()

    def mult(k: int) -> AM:
        return AM(a, a, IntMatrix(1, 1, [{0: k} if k else {}]), check=False)

    out = mult(0) if n % 2 == 1 else mult(m)
    inc = mult(m) if n % 2 == 1 else mult(0)
    from .exact_linalg import subquotient

    return subquotient(a, out, inc)


def cyclic_group_cohomology_oracle(m: int, n: int, coefficient_order: int = 0) -> AbelianInvariants:
    """Cohomology of Z/m with trivial coefficients: A -0-> A -m-> A -0-> ..."""
    from .exact_linalg import FPAbelianGroup as FP, AbelianMap as AM, subquotient

    a = FP.cyclic(coefficient_order)

    def mult(k: int) -> AM:
        return AM(a, a, IntMatrix(1, 1, [{0: k} if k else {}]), check=False)

    out = mult(0) if n % 2 == 0 else mult(m)
    inc = None if n == 0 else (mult(0) if n % 2 == 1 else mult(m))
    return subquotient(a, out, inc)
