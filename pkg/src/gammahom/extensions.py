"""Equivariant group extensions, factor sets and the obstruction of abstract kernels."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .bar_homology import BudgetExceeded, build_cochain_complex
from .equivariant_modules import (
    EquivariantModule,
    FiniteModuleView,
    module_from_abelian_subgroup,
    present_finite_abelian,
)
from .exact_linalg import AbelianInvariants
from .finite_group import (
    FiniteGroup,
    GammaGroup,
    GroupHom,
    automorphisms,
    compose_perm,
    cyclic,
    generated_subgroup,
    inner_automorphism,
    invert_perm,
    is_normal,
    normal_subgroups,
    quotient,
    small_generating_set,
    _extend_on_generators,
)


class ExtensionError(ValueError):
    pass


# ---------------------------------------------------------------- coefficients at element level


@dataclass
class FiniteCoefficients:
    """A finite abelian group with G- and Gamma-actions, elements 0..size-1, 0 = zero."""

    size: int
    add: list[list[int]]
    neg: list[int]
    g_perm: list[list[int]]
    gamma_perm: list[list[int]]
    labels: list[str] = field(default_factory=list)

    @classmethod
    def from_module(cls, m: EquivariantModule) -> "FiniteCoefficients":
        v = FiniteModuleView(m)
        # reindex so that zero is 0 (it already is for normal forms)
        if v.zero != 0:
            raise ExtensionError("unexpected zero index")
        labels = [str(e) for e in v.elements]
        return cls(v.size, v.add, v.neg, v.g_perm, v.gamma_perm, labels)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def as_group(self) -> FiniteGroup:
        return FiniteGroup(self.add, self.labels or None, check=False)


@dataclass
class FactorSet:
    gg: GammaGroup
    coeff: FiniteCoefficients
    values: list[list[int]]  # values[g][h]

    def violations(self) -> list[str]:
        g = self.gg.group
        a = self.coeff
        f = self.values
        errs = []
        n = g.order
        if any(f[0][x] != 0 or f[x][0] != 0 for x in range(n)):
            errs.append("not normalized")
        for x in range(n):
            for y in range(n):
                for s in range(self.gg.gamma.order):
                    if f[self.gg.act(s, x)][self.gg.act(s, y)] != a.gamma_perm[s][f[x][y]]:
                        errs.append("not a Gamma-map")
                        return errs
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = a.add[a.g_perm[x][f[y][z]]][f[x][g.mul(y, z)]]
                    rhs = a.add[f[g.mul(x, y)][z]][f[x][y]]
                    if lhs != rhs:
                        errs.append(f"cocycle identity fails at {(x, y, z)}")
                        return errs
        return errs

    def is_valid(self) -> bool:
        return not self.violations()

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.values)


# ---------------------------------------------------------------- extensions


@dataclass
class GammaExtension:
    """1 -> kernel -> total -> base -> 1 with every map Gamma-equivariant."""

    total: GammaGroup
    kernel: GammaGroup
    base: GammaGroup
    inclusion: GroupHom
    projection: GroupHom
    section: list[int] | None = None

    def violations(self) -> list[str]:
        errs = []
        if not self.inclusion.is_homomorphism() or not self.inclusion.is_injective():
            errs.append("inclusion is not an injective homomorphism")
        if not self.projection.is_homomorphism() or not self.projection.is_surjective():
            errs.append("projection is not a surjective homomorphism")
        if set(self.inclusion.images) != set(self.projection.kernel()):
            errs.append("kernel of the projection differs from the image of the inclusion")
        gam = self.total.gamma.order
        for s in range(gam):
            if any(self.inclusion(self.kernel.act(s, a)) != self.total.act(s, self.inclusion(a)) for a in range(self.kernel.group.order)):
                errs.append("inclusion is not Gamma-equivariant")
                break
            if any(self.projection(self.total.act(s, b)) != self.base.act(s, self.projection(b)) for b in range(self.total.group.order)):
                errs.append("projection is not Gamma-equivariant")
                break
        if self.section is not None:
            if any(self.projection(self.section[g]) != g for g in range(self.base.group.order)):
                errs.append("section is not a section")
        return errs

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.base.group.order)]
        for b in range(self.total.group.order):
            out[self.projection(b)].append(b)
        return out


@dataclass
class GammaPropertyReport:
    direct: bool
    section_exists: bool
    gamma_trivial_on_kernel: bool
    witness: tuple | None = None
    section: list[int] | None = None
    identity_fiber: bool = True  # tau(s(b) b^-1) = 1 forces s(b) = b

    @property
    def characterization(self) -> bool:
        return self.section_exists and self.gamma_trivial_on_kernel

    @property
    def agree(self) -> bool:
        return self.direct == self.characterization

    def as_dict(self) -> dict:
        return {
            "injective_on_gamma_differences": self.direct,
            "gamma_section_exists": self.section_exists,
            "gamma_trivial_on_kernel": self.gamma_trivial_on_kernel,
            "criteria_agree": self.agree,
            "identity_fiber_only": self.identity_fiber,
            "witness": list(self.witness) if self.witness else None,
        }


def find_gamma_section(ext: GammaExtension) -> list[int] | None:
    """A Gamma-map G -> B splitting the projection as a map of sets, or None."""
    base = ext.base
    fibers = ext.fibers()
    orbits = base.tuple_orbits(1)
    section = [-1] * base.group.order
    for o, code in enumerate(orbits.reps):
        stab = orbits.stabilizers[o]
        choice = next((b for b in sorted(fibers[code]) if all(ext.total.act(s, b) == b for s in stab)), None)
        if choice is None:
            return None
        for s in range(base.gamma.order):
            section[base.act(s, code)] = ext.total.act(s, choice)
    return section


def gamma_property_check(ext: GammaExtension) -> GammaPropertyReport:
    """Injectivity of the projection on {s(b) b^-1}, compared with its characterization."""
    b = ext.total.group
    seen: dict[int, tuple[int, int, int]] = {}
    direct = True
    witness = None
    for s in range(ext.total.gamma.order):
        for x in range(b.order):
            d = b.mul(ext.total.act(s, x), b.inv[x])
            img = ext.projection(d)
            if img in seen and b.mul(ext.total.act(seen[img][0], seen[img][1]), b.inv[seen[img][1]]) != d:
                direct = False
                witness = (seen[img][0], seen[img][1], s, x)
                break
            seen.setdefault(img, (s, x, d))
        if not direct:
            break
    identity_fiber = all(
        ext.projection(b.mul(ext.total.act(s, x), b.inv[x])) != 0 or ext.total.act(s, x) == x
        for s in range(ext.total.gamma.order)
        for x in range(b.order)
    )
    section = find_gamma_section(ext)
    kernel_trivial = all(
        ext.total.act(s, ext.inclusion(a)) == ext.inclusion(a)
        for s in range(ext.total.gamma.order)
        for a in range(ext.kernel.group.order)
    )
    return GammaPropertyReport(direct, section is not None, kernel_trivial, witness, section, identity_fiber)


def extension_from_factor_set(fs: FactorSet, check: bool = True) -> GammaExtension:
    """B = A x G with (a, g)(b, h) = (a + g.b + f(g, h), gh); element (a, g) is a + |A| g."""
    if check:
        errs = fs.violations()
        if errs:
            raise ExtensionError("; ".join(errs))
    gg, a, f = fs.gg, fs.coeff, fs.values
    g = gg.group
    na, ng = a.size, g.order
    table = [[0] * (na * ng) for _ in range(na * ng)]
    for g1 in range(ng):
        for a1 in range(na):
            row = table[a1 + na * g1]
            act = a.g_perm[g1]
            for g2 in range(ng):
                fv = f[g1][g2]
                gp = g.mul(g1, g2) * na
                for a2 in range(na):
                    row[a2 + na * g2] = a.add[a.add[a1][act[a2]]][fv] + gp
    total = FiniteGroup(table, check=check)
    action = [[a.gamma_perm[s][x % na] + na * gg.act(s, x // na) for x in range(na * ng)] for s in range(gg.gamma.order)]
    total_gg = GammaGroup(total, gg.gamma, action, check=check)
    kernel_gg = GammaGroup(a.as_group(), gg.gamma, a.gamma_perm, check=False)
    inclusion = GroupHom(kernel_gg.group, total, list(range(na)))
    projection = GroupHom(total, g, [x // na for x in range(na * ng)])
    section = [na * x for x in range(ng)]
    return GammaExtension(total_gg, kernel_gg, gg, inclusion, projection, section)


def factor_set_from_extension(ext: GammaExtension, coeff: FiniteCoefficients | None = None) -> FactorSet:
    """Read off f(x, y) = s(x) s(y) s(xy)^-1 for a normalized Gamma-section s.

    Coefficients are the kernel with G acting by conjugation through the
    section and Gamma acting by restriction.
    """
    k = ext.kernel.group
    if not k.is_abelian():
        raise ExtensionError("factor sets need an abelian kernel")
    section = ext.section
    if section is None or section[0] != 0:
        section = find_gamma_section(ext)
        if section is None:
            raise ExtensionError("no Gamma-section exists")
        if section[0] != 0:
            # the fibre over 1 is the kernel, Gamma-fixed elements there include 1
            section = list(section)
            section[0] = 0
    b = ext.total.group
    inc = ext.inclusion.images
    back = {x: i for i, x in enumerate(inc)}
    g = ext.base.group
    if coeff is None:
        g_perm = [[back[b.conj(section[x], inc[a])] for a in range(k.order)] for x in range(g.order)]
        coeff = FiniteCoefficients(k.order, k.table, list(k.inv), g_perm, ext.kernel.action)
    values = [[back[b.prod(section[x], section[y], b.inv[section[g.mul(x, y)]])] for y in range(g.order)] for x in range(g.order)]
    return FactorSet(ext.base, coeff, values)


def are_equivalent(e1: GammaExtension, e2: GammaExtension) -> bool:
    """Search for a Gamma-isomorphism of totals that is the identity on kernel and base."""
    b1, b2 = e1.total.group, e2.total.group
    if b1.order != b2.order or e1.base.group.order != e2.base.group.order:
        return False
    g = e1.base.group
    gens_g = small_generating_set(g) if g.order > 1 else []
    fib1 = e1.fibers()
    fib2 = e2.fibers()
    lifts = [min(fib1[s]) for s in gens_g]
    kernel_gens = small_generating_set(e1.kernel.group) if e1.kernel.group.order > 1 else []
    gens = [e1.inclusion(a) for a in kernel_gens] + lifts
    fixed = [e2.inclusion(a) for a in kernel_gens]
    for choice in itertools.product(*[fib2[s] for s in gens_g]):
        f = _extend_on_generators(b1, b2, gens, fixed + list(choice))
        if f is None or len(set(f)) != b1.order:
            continue
        if any(f[e1.inclusion(a)] != e2.inclusion(a) for a in range(e1.kernel.group.order)):
            continue
        if any(e2.projection(f[x]) != e1.projection(x) for x in range(b1.order)):
            continue
        if any(f[e1.total.act(s, x)] != e2.total.act(s, f[x]) for s in range(e1.total.gamma.order) for x in range(b1.order)):
            continue
        return True
    return False


# ---------------------------------------------------------------- enumeration


def _pair_orbits(gg: GammaGroup) -> tuple[list[tuple[int, int]], list[tuple[int, ...]], list[int], list[int]]:
    orb = gg.tuple_orbits(2)
    reps = [tuple(orb.decode(c)) for c in orb.reps]
    return reps, orb.stabilizers, orb.orbit_of, orb.transporter


def enumerate_factor_sets(gg: GammaGroup, coeff: FiniteCoefficients, budget: int = 2_000_000) -> list[FactorSet]:
    """All normalized Gamma-equivariant factor sets (brute force over orbit values)."""
    g = gg.group
    n = g.order
    reps, stabs, orbit_of, transporter = _pair_orbits(gg)
    free = [i for i, (x, y) in enumerate(reps) if x != 0 and y != 0]
    choices = []
    for i in free:
        choices.append([v for v in range(coeff.size) if all(coeff.gamma_perm[s][v] == v for s in stabs[i])])
    total = 1
    for c in choices:
        total *= len(c)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate factor sets exceed the budget {budget}")
    out = []
    orb = gg.tuple_orbits(2)
    for combo in itertools.product(*choices):
        rep_val = [0] * len(reps)
        for i, v in zip(free, combo):
            rep_val[i] = v
        values = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                code = x * n + y
                values[x][y] = coeff.gamma_perm[transporter[code]][rep_val[orbit_of[code]]]
        fs = FactorSet(gg, coeff, values)
        if _is_cocycle(fs):
            out.append(fs)
    return out


def _is_cocycle(fs: FactorSet) -> bool:
    g = fs.gg.group
    a = fs.coeff
    f = fs.values
    n = g.order
    for x in range(1, n):
        gx = a.g_perm[x]
        fx = f[x]
        for y in range(1, n):
            xy = g.mul(x, y)
            fy = f[y]
            fxy = f[xy]
            for z in range(1, n):
                if a.add[gx[fy[z]]][fx[g.mul(y, z)]] != a.add[fxy[z]][fx[y]]:
                    return False
    return True


def equivariant_coboundaries(gg: GammaGroup, coeff: FiniteCoefficients) -> set[tuple]:
    """Values of delta h for all normalized Gamma-maps h: G -> A."""
    g = gg.group
    n = g.order
    orb = gg.tuple_orbits(1)
    free = [o for o, c in enumerate(orb.reps) if c != 0]
    choices = [[v for v in range(coeff.size) if all(coeff.gamma_perm[s][v] == v for s in orb.stabilizers[o])] for o in free]
    out = set()
    for combo in itertools.product(*choices):
        rep_val = [0] * len(orb.reps)
        for o, v in zip(free, combo):
            rep_val[o] = v
        h = [coeff.gamma_perm[orb.transporter[x]][rep_val[orb.orbit_of[x]]] for x in range(n)]
        vals = tuple(
            tuple(coeff.add[coeff.sub(coeff.g_perm[x][h[y]], h[g.mul(x, y)])][h[x]] for y in range(n)) for x in range(n)
        )
        out.add(vals)
    return out


@dataclass
class E1Report:
    cocycles: int
    coboundaries: int
    classes_by_coboundary: int
    classes_by_equivalence: int | None
    h2: AbelianInvariants

    @property
    def h2_order(self) -> int | None:
        return self.h2.order

    @property
    def match(self) -> bool:
        ok = self.classes_by_coboundary == self.h2_order
        if self.classes_by_equivalence is not None:
            ok = ok and self.classes_by_equivalence == self.h2_order
        return ok

    def as_dict(self) -> dict:
        return {
            "cocycles": self.cocycles,
            "coboundaries": self.coboundaries,
            "classes_by_coboundary": self.classes_by_coboundary,
            "classes_by_equivalence": self.classes_by_equivalence,
            "H2": self.h2.as_dict(),
            "match": self.match,
        }


def enumerate_E1Gamma(gg: GammaGroup, module: EquivariantModule, classify_extensions: bool = True) -> tuple[E1Report, list[FactorSet]]:
    """Count classes of equivariant extensions two ways and compare with |H^2|."""
    coeff = FiniteCoefficients.from_module(module)
    cocycles = enumerate_factor_sets(gg, coeff)
    bounds = equivariant_coboundaries(gg, coeff)
    # classes modulo coboundaries: orbit of translation
    remaining = {fs.key(): fs for fs in cocycles}
    reps: list[FactorSet] = []
    a = coeff
    while remaining:
        key, fs = next(iter(remaining.items()))
        reps.append(fs)
        for b in bounds:
            shifted = tuple(tuple(a.add[fs.values[x][y]][b[x][y]] for y in range(len(b))) for x in range(len(b)))
            remaining.pop(shifted, None)
    by_equiv = None
    if classify_extensions:
        exts: list[GammaExtension] = []
        for fs in cocycles:
            e = extension_from_factor_set(fs, check=False)
            if not any(are_equivalent(e, r) for r in exts):
                exts.append(e)
        by_equiv = len(exts)
    h2 = build_cochain_complex(gg, module, 3).cohomology(2)
    return E1Report(len(cocycles), len(bounds), len(reps), by_equiv, h2), reps


# ---------------------------------------------------------------- abstract kernels and the obstruction


@dataclass
class AbstractKernel:
    """G (with Gamma) acting on J by outer automorphisms; Gamma is trivial on J."""

    gg: GammaGroup
    j: FiniteGroup
    psi: list[list[int]]  # representative automorphism of J for each element of G

    def __post_init__(self):
        self.center = sorted(self.j.center())
        self._inner = {}
        for x in range(self.j.order):
            self._inner.setdefault(tuple(inner_automorphism(self.j, x)), []).append(x)

    def inner_preimages(self, aut: Sequence[int]) -> list[int] | None:
        return self._inner.get(tuple(aut))

    def violations(self) -> list[str]:
        g = self.gg.group
        errs = []
        if len(self.psi) != g.order:
            return ["one automorphism per element of G is required"]
        ident = list(range(self.j.order))
        for p in self.psi:
            if sorted(p) != ident or any(p[self.j.mul(a, b)] != self.j.mul(p[a], p[b]) for a in range(self.j.order) for b in range(self.j.order)):
                return ["psi entries must be automorphisms of J"]
        if self.inner_preimages(self.psi[0]) is None:
            errs.append("psi(1) is not inner")
        for x in range(g.order):
            for y in range(g.order):
                d = compose_perm(compose_perm(self.psi[x], self.psi[y]), invert_perm(self.psi[g.mul(x, y)]))
                if self.inner_preimages(d) is None:
                    errs.append(f"psi is not a homomorphism to Out(J) at {(x, y)}")
                    return errs
        for s in range(self.gg.gamma.order):
            for x in range(g.order):
                d = compose_perm(self.psi[self.gg.act(s, x)], invert_perm(self.psi[x]))
                if self.inner_preimages(d) is None:
                    errs.append("psi is not a Gamma-map into Out(J)")
                    return errs
        return errs

    def center_module(self, phi: list[list[int]]) -> tuple[EquivariantModule, "object"]:
        pres = present_finite_abelian(self.j, self.center)
        idx = {c: i for i, c in enumerate(self.center)}
        g_perms = []
        for x in range(self.gg.group.order):
            perm = list(range(self.j.order))
            for c in self.center:
                perm[c] = phi[x][c]
            g_perms.append(perm)
        gamma_perms = [list(range(self.j.order)) for _ in range(self.gg.gamma.order)]
        return module_from_abelian_subgroup(self.gg, pres, g_perms, gamma_perms, "C"), pres


@dataclass
class ObstructionResult:
    phi: list[list[int]]
    f: list[list[int]]
    k: dict[tuple[int, int, int], int]
    in_center: bool
    gamma_map: bool
    cocycle: bool
    cochain: dict[int, int]
    class_is_zero: bool
    h3: AbelianInvariants | None = None

    def as_dict(self) -> dict:
        return {
            "k_in_center": self.in_center,
            "k_is_gamma_map": self.gamma_map,
            "k_is_cocycle": self.cocycle,
            "class_is_zero": self.class_is_zero,
            "H3": self.h3.as_dict() if self.h3 else None,
            "nontrivial_values": sum(1 for v in self.k.values() if v != 0),
        }


def choose_lifts(ak: AbstractKernel, rng: random.Random | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Gamma-invariant lifts phi(x) of psi(x) and f with inn(f(x,y)) = phi(x)phi(y)phi(xy)^-1."""
    g = ak.gg.group
    j = ak.j
    orb1 = ak.gg.tuple_orbits(1)
    phi: list[list[int]] = [list(range(j.order))] * g.order
    rep_phi = {}
    for o, code in enumerate(orb1.reps):
        if code == 0:
            rep_phi[o] = list(range(j.order))
            continue
        base = ak.psi[code]
        if rng is not None:
            base = compose_perm(inner_automorphism(j, rng.randrange(j.order)), base)
        rep_phi[o] = base
    phi = [rep_phi[orb1.orbit_of[x]] for x in range(g.order)]
    orb2 = ak.gg.tuple_orbits(2)
    rep_f = {}
    for o, code in enumerate(orb2.reps):
        x, y = orb2.decode(code)
        if x == 0 or y == 0:
            rep_f[o] = 0
            continue
        d = compose_perm(compose_perm(phi[x], phi[y]), invert_perm(phi[g.mul(x, y)]))
        cands = ak.inner_preimages(d)
        if cands is None:
            raise ExtensionError("abstract kernel is not a homomorphism into Out(J)")
        rep_f[o] = rng.choice(cands) if rng is not None else cands[0]
    f = [[rep_f[orb2.orbit_of[x * g.order + y]] for y in range(g.order)] for x in range(g.order)]
    return phi, f


def obstruction(ak: AbstractKernel, rng: random.Random | None = None, with_h3: bool = False) -> ObstructionResult:
    """Obstruction 3-cocycle k with phi(x)(f(y,z)) f(x,yz) = k(x,y,z) f(x,y) f(xy,z)."""
    errs = ak.violations()
    if errs:
        raise ExtensionError("; ".join(errs))
    g, j = ak.gg.group, ak.j
    phi, f = choose_lifts(ak, rng)
    n = g.order
    k: dict[tuple[int, int, int], int] = {}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = j.mul(phi[x][f[y][z]], f[x][g.mul(y, z)])
                k[(x, y, z)] = j.prod(lhs, j.inv[f[g.mul(x, y)][z]], j.inv[f[x][y]])
    center = set(ak.center)
    in_center = all(v in center for v in k.values())
    gamma_map = all(
        k[(ak.gg.act(s, x), ak.gg.act(s, y), ak.gg.act(s, z))] == k[(x, y, z)]
        for s in range(ak.gg.gamma.order)
        for (x, y, z) in k
    )
    if not in_center:
        raise AssertionError("obstruction values left the center")
    cocycle = True
    for w in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    # w.k(x,y,z) k(w,xy,z) k(w,x,y) == k(wx,y,z) k(w,x,yz)  (C is abelian)
                    lhs = j.prod(phi[w][k[(x, y, z)]], k[(w, g.mul(x, y), z)], k[(w, x, y)])
                    rhs = j.mul(k[(g.mul(w, x), y, z)], k[(w, x, g.mul(y, z))])
                    if lhs != rhs:
                        cocycle = False
                        break
                if not cocycle:
                    break
            if not cocycle:
                break
        if not cocycle:
            break
    module, pres = ak.center_module(phi)
    cc = build_cochain_complex(ak.gg, module, 4 if with_h3 else 3)
    cochain = cc.cochain_from_function(3, lambda t: pres.to_vec(k[t]))
    zero = cc.is_coboundary(3, cochain)
    h3 = cc.cohomology(3) if with_h3 else None
    return ObstructionResult(phi, f, k, in_center, gamma_map, cocycle, cochain, zero, h3)


def obstruction_classes_agree(ak: AbstractKernel, first: ObstructionResult, second: ObstructionResult) -> bool:
    """Both cochains represent the same class: their difference is a coboundary."""
    module, _ = ak.center_module(first.phi)
    cc = build_cochain_complex(ak.gg, module, 3)
    keys = set(first.cochain) | set(second.cochain)
    diff = {i: first.cochain.get(i, 0) - second.cochain.get(i, 0) for i in keys}
    diff = {i: v for i, v in diff.items() if v}
    return cc.is_coboundary(3, diff)


def crossed_product(ak: AbstractKernel, phi, f) -> FiniteGroup | None:
    """(a, x)(b, y) = (a phi(x)(b) f(x, y), xy) when associative; element (a, x) is a + |J| x."""
    g, j = ak.gg.group, ak.j
    nj, ng = j.order, g.order
    table = [[0] * (nj * ng) for _ in range(nj * ng)]
    for x in range(ng):
        for a in range(nj):
            row = table[a + nj * x]
            for y in range(ng):
                fv = f[x][y]
                xy = g.mul(x, y) * nj
                for b in range(nj):
                    row[b + nj * y] = j.prod(a, phi[x][b], fv) + xy
    try:
        return FiniteGroup(table, check=True)
    except ValueError:
        return None


@dataclass
class ExistenceResult:
    exists: bool | None
    nodes: int
    witness_f: list[list[int]] | None = None
    witness_checked: bool = False


def extension_exists_bruteforce(ak: AbstractKernel, node_budget: int = 2_000_000) -> ExistenceResult:
    """Depth-first search over Gamma-invariant normalized f making the crossed product a group.

    phi is fixed to the canonical lifts; every extension with this abstract
    kernel and a Gamma-section is equivalent to such a crossed product.
    """
    g, j = ak.gg.group, ak.j
    n = g.order
    phi, f0 = choose_lifts(ak)
    orb2 = ak.gg.tuple_orbits(2)
    reps = [tuple(orb2.decode(c)) for c in orb2.reps]
    var_of = [orb2.orbit_of[x * n + y] for x in range(n) for y in range(n)]
    free = [o for o, (x, y) in enumerate(reps) if x != 0 and y != 0]
    center = ak.center
    # candidate values: f0 * c for central c (inner preimages form a coset of the center)
    cands = {o: [j.mul(f0[reps[o][0]][reps[o][1]], c) for c in center] for o in free}
    # triples grouped by the last variable to be assigned
    order = {o: i for i, o in enumerate(free)}
    triples_at: dict[int, list[tuple[int, int, int]]] = {o: [] for o in free}
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                vs = [var_of[y * n + z], var_of[x * n + g.mul(y, z)], var_of[g.mul(x, y) * n + z], var_of[x * n + y]]
                vs = [v for v in vs if v in order]
                last = max(vs, key=lambda v: order[v]) if vs else None
                if last is None:
                    continue
                triples_at[last].append((x, y, z))
    value = {o: 0 for o in range(len(reps))}
    for o, (x, y) in enumerate(reps):
        if x == 0 or y == 0:
            value[o] = 0

    def fval(x: int, y: int) -> int:
        return value[var_of[x * n + y]]

    nodes = 0

    def ok(x: int, y: int, z: int) -> bool:
        lhs = j.mul(phi[x][fval(y, z)], fval(x, g.mul(y, z)))
        rhs = j.mul(fval(x, y), fval(g.mul(x, y), z))
        return lhs == rhs

    def dfs(i: int) -> bool:
        nonlocal nodes
        if i == len(free):
            return True
        o = free[i]
        for v in cands[o]:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("node budget exhausted")
            value[o] = v
            if all(ok(*t) for t in triples_at[o]) and dfs(i + 1):
                return True
        return False

    import sys

    sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))
    try:
        found = dfs(0)
    except BudgetExceeded:
        return ExistenceResult(None, nodes)
    if not found:
        return ExistenceResult(False, nodes)
    f = [[fval(x, y) for y in range(n)] for x in range(n)]
    grp = crossed_product(ak, phi, f)
    checked = False
    if grp is not None:
        action = [[x for x in range(grp.order)] for _ in range(ak.gg.gamma.order)]
        nj = j.order
        action = [[(x % nj) + nj * ak.gg.act(s, x // nj) for x in range(grp.order)] for s in range(ak.gg.gamma.order)]
        total = GammaGroup(grp, ak.gg.gamma, action, check=True)
        kernel = GammaGroup(j, ak.gg.gamma, [list(range(nj))] * ak.gg.gamma.order, check=False)
        ext = GammaExtension(total, kernel, ak.gg, GroupHom(j, grp, list(range(nj))), GroupHom(grp, g, [x // nj for x in range(grp.order)]))
        rep = gamma_property_check(ext)
        checked = not ext.violations() and rep.direct and rep.characterization
    return ExistenceResult(True, nodes, f, checked)


@dataclass
class ObstructionVerdict:
    class_is_zero: bool
    extension_exists: bool | None
    nodes: int

    @property
    def agree(self) -> bool:
        return self.extension_exists is not None and self.class_is_zero == self.extension_exists


def obstruction_vanishes_iff_extension_exists(ak: AbstractKernel, node_budget: int = 2_000_000) -> ObstructionVerdict:
    obs = obstruction(ak)
    ex = extension_exists_bruteforce(ak, node_budget)
    exists = ex.exists
    if exists and not ex.witness_checked:
        exists = None
    return ObstructionVerdict(obs.class_is_zero, exists, ex.nodes)


# ---------------------------------------------------------------- random extensions


def extension_from_normal_subgroup(total: GammaGroup, normal: Sequence[int]) -> GammaExtension:
    normal = sorted(set(normal))
    if not is_normal(total.group, normal) or not total.is_gamma_stable(normal):
        raise ExtensionError("kernel must be a Gamma-stable normal subgroup")
    base, q = total.quotient(normal)
    kernel, emb = total.restrict(normal)
    return GammaExtension(
        total,
        kernel,
        base,
        GroupHom(kernel.group, total.group, list(emb)),
        GroupHom(total.group, base.group, list(q.projection)),
    )


def random_gamma_extension(rng: random.Random, groups: Sequence[FiniteGroup]) -> GammaExtension:
    """Random (B, Gamma = <theta>, N) with theta an automorphism and N Gamma-stable normal."""
    b = rng.choice(list(groups))
    auts = automorphisms(b)
    theta = rng.choice(auts)
    # cyclic Gamma generated by theta
    powers = [list(range(b.order))]
    cur = theta
    while cur != powers[0]:
        powers.append(cur)
        cur = compose_perm(theta, cur)
    gam = cyclic(len(powers))
    total = GammaGroup(b, gam, powers, check=False)
    stable = [n for n in normal_subgroups(b) if total.is_gamma_stable(n)]
    return extension_from_normal_subgroup(total, rng.choice(stable))


def quaternion_rotation_extension() -> GammaExtension:
    """{+-1} -> Q8 -> Z/2 x Z/2 with Z/3 cycling i -> j -> k -> i."""
    from .finite_group import quaternion

    q = quaternion()
    idx = {n: i for i, n in enumerate(q.names)}
    rot = {"1": "1", "-1": "-1", "i": "j", "-i": "-j", "j": "k", "-j": "-k", "k": "i", "-k": "-i"}
    theta = [idx[rot[n]] for n in q.names]
    total = GammaGroup(q, cyclic(3), [list(range(8)), theta, compose_perm(theta, theta)])
    return extension_from_normal_subgroup(total, [idx["1"], idx["-1"]])


def outer_automorphisms(j: FiniteGroup) -> tuple[list[list[int]], "object"]:
    """All automorphisms of J and the quotient Aut(J)/Inn(J) (coset reps index into the list)."""
    auts = automorphisms(j)
    idx = {tuple(a): i for i, a in enumerate(auts)}
    table = [[idx[tuple(compose_perm(a, b))] for b in auts] for a in auts]
    aut_group = FiniteGroup(table, check=False)
    inner = {idx[tuple(inner_automorphism(j, x))] for x in range(j.order)}
    return auts, quotient(aut_group, inner)


def abstract_kernels(gg: GammaGroup, j: FiniteGroup) -> list[AbstractKernel]:
    """Every Gamma-invariant homomorphism G -> Out(J), with one automorphism chosen per element."""
    from .finite_group import homomorphisms

    auts, out = outer_automorphisms(j)
    kernels = []
    for h in homomorphisms(gg.group, out.group):
        if any(h[gg.act(s, x)] != h[x] for s in range(gg.gamma.order) for x in range(gg.group.order)):
            continue
        kernels.append(AbstractKernel(gg, j, [auts[out.coset_reps[h[x]]] for x in range(gg.group.order)]))
    return kernels
