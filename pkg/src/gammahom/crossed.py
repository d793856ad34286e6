"""Finite crossed Gamma-modules and their extensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .equivariant_modules import EquivariantModule, FiniteModuleView
from .exact_linalg import IntMatrix
from .finite_group import (
    FiniteGroup,
    GammaGroup,
    GroupAxiomError,
    direct_product,
    homomorphisms,
    is_normal,
)


class CrossedModuleError(ValueError):
    pass


@dataclass
class CrossedGammaModule:
    """G with a Gamma-action and mu: G -> Gamma."""

    gg: GammaGroup
    mu: list[int]
    name: str = "G"

    @property
    def group(self) -> FiniteGroup:
        return self.gg.group

    @property
    def gamma(self) -> FiniteGroup:
        return self.gg.gamma

    def violations(self) -> list[str]:
        g, c, mu = self.group, self.gamma, self.mu
        if len(mu) != g.order:
            return [f"mu needs {g.order} images"]
        for a in range(g.order):
            for b in range(g.order):
                if mu[g.mul(a, b)] != c.mul(mu[a], mu[b]):
                    return [f"mu is not a homomorphism at ({a}, {b})"]
        for s in range(c.order):
            for a in range(g.order):
                if mu[self.gg.act(s, a)] != c.prod(s, mu[a], c.inv[s]):
                    return [f"mu(s.g) != s mu(g) s^-1 for s={s}, g={a}"]
        for a in range(g.order):
            for b in range(g.order):
                if self.gg.act(mu[a], b) != g.prod(a, b, g.inv[a]):
                    return [f"Peiffer identity fails for (g, g') = ({a}, {b})"]
        return []

    def validate(self) -> "CrossedGammaModule":
        bad = self.violations()
        if bad:
            raise CrossedModuleError(f"{self.name}: {bad[0]}")
        return self

    def image_of_mu(self) -> frozenset[int]:
        return frozenset(self.mu)

    def as_dict(self) -> dict:
        return {"order": self.group.order, "gamma_order": self.gamma.order, "mu": list(self.mu)}


def make_trivial(gg: GammaGroup, name: str = "A") -> CrossedGammaModule:
    """Abelian Gamma-group with mu trivial."""
    if not gg.group.is_abelian():
        raise CrossedModuleError("a trivial crossed module needs an abelian group")
    return CrossedGammaModule(gg, [0] * gg.group.order, name).validate()


def conjugation_gamma_group(gamma: FiniteGroup) -> GammaGroup:
    return GammaGroup(gamma, gamma, [[gamma.conj(s, x) for x in range(gamma.order)] for s in range(gamma.order)], check=False)


def make_inclusion(gamma: FiniteGroup, normal: Sequence[int], name: str = "N") -> CrossedGammaModule:
    """N normal in Gamma with conjugation and mu the inclusion."""
    n = sorted(set(normal))
    if not is_normal(gamma, n):
        raise CrossedModuleError("inclusion crossed module needs a normal subgroup")
    sub, emb = conjugation_gamma_group(gamma).restrict(n)
    return CrossedGammaModule(sub, list(emb), name).validate()


def trivial_gamma_group_from_module(module: EquivariantModule) -> GammaGroup:
    """The finite abelian group of a module with its Gamma-action (the G-action is forgotten)."""
    view = FiniteModuleView(module)
    if view.zero != 0:
        raise CrossedModuleError("zero element must come first")
    return GammaGroup(FiniteGroup(view.add, check=False), module.gg.gamma, view.gamma_perm, check=False)


def is_crossed_equivariant_module(cm: CrossedGammaModule, gamma_action: Sequence[IntMatrix]) -> bool:
    """Im mu acts trivially; checked both directly and by factoring through Gamma / Im mu."""
    ident = IntMatrix.identity(gamma_action[0].nrows)
    direct = all(gamma_action[s] == ident for s in cm.image_of_mu())
    from .finite_group import quotient

    q = quotient(cm.gamma, cm.image_of_mu())
    factored = all(gamma_action[s] == gamma_action[q.coset_reps[q.projection[s]]] for s in range(cm.gamma.order))
    if direct != factored:
        raise AssertionError("trivial action on Im mu must be equivalent to factoring through the quotient")
    return direct


def is_gamma_perfect_crossed(cm: CrossedGammaModule) -> bool:
    return cm.gg.is_gamma_perfect()


# ---------------------------------------------------------------- extensions


@dataclass
class CrossedExtension:
    """A -sigma-> (X, eta) -tau-> (G, mu), A abelian with mu trivial."""

    kernel: CrossedGammaModule
    middle: CrossedGammaModule
    base: CrossedGammaModule
    sigma: list[int]
    tau: list[int]
    section: list[int] | None = None

    def violations(self) -> list[str]:
        out: list[str] = []
        a, x, g = self.kernel, self.middle, self.base
        for cm in (a, x, g):
            out += [f"{cm.name}: {v}" for v in cm.violations()]
        if out:
            return out
        if not a.group.is_abelian() or any(a.mu):
            out.append("kernel must be abelian with trivial mu")
        out += _hom_problems("sigma", a.gg, x.gg, self.sigma)
        out += _hom_problems("tau", x.gg, g.gg, self.tau)
        if out:
            return out
        if len(set(self.sigma)) != a.group.order:
            out.append("sigma is not injective")
        if set(self.tau) != set(range(g.group.order)):
            out.append("tau is not surjective")
        ker = {i for i in range(x.group.order) if self.tau[i] == 0}
        if ker != set(self.sigma):
            out.append("image of sigma differs from kernel of tau")
        if any(x.mu[s] != 0 for s in self.sigma):
            out.append("eta o sigma is not trivial")
        if any(g.mu[self.tau[i]] != x.mu[i] for i in range(x.group.order)):
            out.append("mu o tau != eta")
        central = all(x.group.mul(s, y) == x.group.mul(y, s) for s in self.sigma for y in range(x.group.order))
        if not central:
            out.append("sigma(A) is not central in X")
        eta_img = set(x.mu)
        if any(a.gg.act(s, v) != v for s in eta_img for v in range(a.group.order)):
            out.append("eta(X) acts nontrivially on A")
        if self.section is not None:
            sec = self.section
            if len(sec) != g.group.order or any(self.tau[sec[y]] != y for y in range(g.group.order)):
                out.append("section is not a section of tau")
            elif any(sec[g.gg.act(s, y)] != x.gg.act(s, sec[y]) for s in range(g.gamma.order) for y in range(g.group.order)):
                out.append("section is not a Gamma-map")
        return out

    def validate(self) -> "CrossedExtension":
        bad = self.violations()
        if bad:
            raise CrossedModuleError("; ".join(bad))
        return self

    def as_dict(self) -> dict:
        return {
            "kernel_order": self.kernel.group.order,
            "middle_order": self.middle.group.order,
            "base_order": self.base.group.order,
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "eta": list(self.middle.mu),
            "section": None if self.section is None else list(self.section),
            "violations": self.violations(),
        }


def _hom_problems(name: str, src: GammaGroup, tgt: GammaGroup, f: Sequence[int]) -> list[str]:
    s, t = src.group, tgt.group
    if len(f) != s.order or any(not 0 <= y < t.order for y in f):
        return [f"{name} has the wrong size or range"]
    for a in range(s.order):
        for b in range(s.order):
            if f[s.mul(a, b)] != t.mul(f[a], f[b]):
                return [f"{name} is not a homomorphism"]
    for c in range(src.gamma.order):
        for a in range(s.order):
            if f[src.act(c, a)] != tgt.act(c, f[a]):
                return [f"{name} is not a Gamma-map"]
    return []


def validate_extension(ext: CrossedExtension) -> list[str]:
    return ext.violations()


def _product_gamma_group(p: GammaGroup, q: GammaGroup) -> GammaGroup:
    """P x Q with diagonal action; (a, b) -> a + |P| b."""
    n = p.group.order
    prod = direct_product(p.group, q.group)
    act = [[p.act(s, i % n) + n * q.act(s, i // n) for i in range(prod.order)] for s in range(p.gamma.order)]
    return GammaGroup(prod, p.gamma, act, check=False)


def _morphism_problems(f: Sequence[int], src: CrossedGammaModule, tgt: CrossedGammaModule) -> list[str]:
    out = _hom_problems("f", src.gg, tgt.gg, f)
    if not out and any(tgt.mu[f[i]] != src.mu[i] for i in range(src.group.order)):
        out.append("f does not commute with mu")
    return out


def pullback_extension(ext: CrossedExtension, new_base: CrossedGammaModule, f: Sequence[int]) -> CrossedExtension:
    """Fiber product D = {(x, g') : tau(x) = f(g')} over f: (G', mu') -> (G, mu)."""
    if ext.section is None:
        raise CrossedModuleError("pullback needs an extension with a Gamma-section")
    bad = _morphism_problems(f, new_base, ext.base)
    if bad:
        raise CrossedModuleError(bad[0])
    x = ext.middle
    nx = x.group.order
    prod = _product_gamma_group(x.gg, new_base.gg)
    members = [xi + nx * gi for gi in range(new_base.group.order) for xi in range(nx) if ext.tau[xi] == f[gi]]
    dgg, emb = prod.restrict(members)
    idx = {v: i for i, v in enumerate(emb)}
    eta = [new_base.mu[v // nx] for v in emb]
    middle = CrossedGammaModule(dgg, eta, "D")
    sigma = [idx[s] for s in ext.sigma]
    tau = [v // nx for v in emb]
    section = [idx[ext.section[f[gp]] + nx * gp] for gp in range(new_base.group.order)]
    return CrossedExtension(ext.kernel, middle, new_base, sigma, tau, section).validate()


def pushforward_extension(ext: CrossedExtension, new_kernel: CrossedGammaModule, h: Sequence[int]) -> CrossedExtension:
    """Cokernel of a -> (h(a)^-1, sigma(a)) in A' x X."""
    if ext.section is None:
        raise CrossedModuleError("pushforward needs an extension with a Gamma-section")
    if not new_kernel.group.is_abelian() or any(new_kernel.mu):
        raise CrossedModuleError("the new kernel must be abelian with trivial mu")
    bad = _hom_problems("h", ext.kernel.gg, new_kernel.gg, h)
    if bad:
        raise CrossedModuleError(bad[0])
    eta_img = set(ext.middle.mu)
    if any(new_kernel.gg.act(s, v) != v for s in eta_img for v in range(new_kernel.group.order)):
        raise CrossedModuleError("eta(X) must act trivially on the new kernel")
    x = ext.middle
    na = new_kernel.group.order
    prod = _product_gamma_group(new_kernel.gg, x.gg)
    a = new_kernel.group
    beta = {a.inv[h[i]] + na * ext.sigma[i] for i in range(ext.kernel.group.order)}
    ygg, q = prod.quotient(beta)
    eta = [x.mu[rep // na] for rep in q.coset_reps]
    middle = CrossedGammaModule(ygg, eta, "Y")
    sigma = [q.projection[v] for v in range(na)]
    tau = [ext.tau[rep // na] for rep in q.coset_reps]
    section = [q.projection[na * ext.section[y]] for y in range(ext.base.group.order)]
    return CrossedExtension(new_kernel, middle, ext.base, sigma, tau, section).validate()


def extensions_equivalent(e1: CrossedExtension, e2: CrossedExtension) -> bool:
    """An isomorphism X1 -> X2 of crossed Gamma-modules commuting with sigma and tau.

    Both extensions must share the kernel and base groups (same element indexing).
    """
    x1, x2 = e1.middle, e2.middle
    if x1.group.order != x2.group.order:
        return False
    for phi in homomorphisms(x1.group, x2.group):
        if len(set(phi)) != x1.group.order:
            continue
        if any(phi[e1.sigma[i]] != e2.sigma[i] for i in range(len(e1.sigma))):
            continue
        if any(e2.tau[phi[i]] != e1.tau[i] for i in range(x1.group.order)):
            continue
        if any(x2.mu[phi[i]] != x1.mu[i] for i in range(x1.group.order)):
            continue
        if any(phi[x1.gg.act(s, i)] != x2.gg.act(s, phi[i]) for s in range(x1.gamma.order) for i in range(x1.group.order)):
            continue
        return True
    return False


def identity_morphism(cm: CrossedGammaModule) -> list[int]:
    return list(range(cm.group.order))


# ---------------------------------------------------------------- worked examples


def cyclic_central_extension(m: int = 4) -> CrossedExtension:
    """Z/2 <- Z/m -> ... : A = 2Z/m inside X = Z/m over G = Gamma = Z/2, all actions trivial."""
    from .finite_group import cyclic

    if m % 2:
        raise ValueError("m must be even")
    gamma = cyclic(2)
    x = CrossedGammaModule(GammaGroup(cyclic(m), gamma), [i % 2 for i in range(m)], "X").validate()
    g = make_inclusion(gamma, [0, 1], "G")
    a = make_trivial(GammaGroup(cyclic(m // 2), gamma), "A")
    sigma = [2 * i for i in range(m // 2)]
    tau = [g.mu.index(i % 2) for i in range(m)]
    sec = [0] * 2
    sec[g.mu.index(1)] = 1
    return CrossedExtension(a, x, g, sigma, tau, sec).validate()


def crossed_module_from_spec(spec: dict) -> CrossedGammaModule:
    """{"group", "gamma", "action", "mu"} or {"inclusion": {"gamma": ..., "subgroup": [...]}}."""
    from .finite_group import gamma_group_from_spec, group_from_spec

    if "inclusion" in spec:
        inc = spec["inclusion"]
        return make_inclusion(group_from_spec(inc["gamma"]), inc["subgroup"])
    try:
        gg = gamma_group_from_spec(spec["group"], spec.get("gamma"), spec.get("action"))
    except GroupAxiomError as exc:
        raise CrossedModuleError(str(exc)) from exc
    mu = spec.get("mu")
    if mu is None or mu == "trivial":
        return make_trivial(gg)
    return CrossedGammaModule(gg, list(mu))


def extension_from_spec(spec: dict) -> CrossedExtension:
    return CrossedExtension(
        crossed_module_from_spec(spec["kernel"]),
        crossed_module_from_spec(spec["middle"]),
        crossed_module_from_spec(spec["base"]),
        list(spec["sigma"]),
        list(spec["tau"]),
        list(spec["section"]) if spec.get("section") is not None else None,
    )
