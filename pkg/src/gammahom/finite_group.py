"""Finite groups given by multiplication tables, and groups with operators.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence


class GroupAxiomError(ValueError):
    pass


class FiniteGroup:
    """A finite group as a Cayley table."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, check: bool = True):
        n = len(table)
        self.order = n
        self.table = [list(r) for r in table]
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        if check:
            self._validate()
        self.inv = [0] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == 0:
                    self.inv[a] = b
                    break

    def _validate(self) -> None:
        n = self.order
        t = self.table
        if any(len(r) != n for r in t):
            raise GroupAxiomError("table is not square")
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise GroupAxiomError("element 0 is not the identity")
            if sorted(t[a]) != list(range(n)):
                raise GroupAxiomError("row is not a permutation")
        for a in range(n):
            if sorted(t[b][a] for b in range(n)) != list(range(n)):
                raise GroupAxiomError("column is not a permutation")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupAxiomError(f"associativity fails at {a},{b},{c}")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def commutator(self, a: int, b: int) -> int:
        return self.prod(a, b, self.inv[a], self.inv[b])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.prod(g, x, self.inv[g])

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center(self) -> frozenset[int]:
        t = self.table
        return frozenset(z for z in range(self.order) if all(t[z][g] == t[g][z] for g in range(self.order)))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def __len__(self) -> int:
        return self.order


# ---------------------------------------------------------------- constructors


def cyclic(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic order must be positive")
    return FiniteGroup([[(a + b) % m for b in range(m)] for a in range(m)], [f"t^{i}" for i in range(m)], check=False)


def from_permutations(perms: Sequence[tuple[int, ...]], names: Sequence[str] | None = None) -> FiniteGroup:
    """Group whose elements are the given list of permutations (closed, identity first)."""
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(len(q)))] for q in perms] for p in perms]
    return FiniteGroup(table, names or ["".join(map(str, p)) for p in perms], check=False)


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    return from_permutations(perms)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, elements r^i s^j stored as i + n*j."""
    def idx(i, j):
        return (i % n) + n * j

    table = []
    for j1 in range(2):
        for i1 in range(n):
            row = []
            for j2 in range(2):
                for i2 in range(n):
                    # r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                    row.append(idx(i1 + (i2 if j1 == 0 else -i2), (j1 + j2) % 2))
            table.append(row)
    names = [f"r^{i}" for i in range(n)] + [f"r^{i}s" for i in range(n)]
    return FiniteGroup(table, names, check=False)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Elements (a, b) stored as a + |G| b."""
    n, m = g.order, h.order
    table = [[0] * (n * m) for _ in range(n * m)]
    for b1 in range(m):
        for a1 in range(n):
            row = table[a1 + n * b1]
            for b2 in range(m):
                hb = h.table[b1][b2] * n
                ga = g.table[a1]
                for a2 in range(n):
                    row[a2 + n * b2] = ga[a2] + hb
    names = [f"({x},{y})" for y in h.names for x in g.names]
    return FiniteGroup(table, names, check=False)


def quaternion() -> FiniteGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k in that order."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1", ("i", "j"): "k", ("j", "k"): "i",
            ("k", "i"): "j", ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(a: str, b: str) -> str:
        neg = a.startswith("-") != b.startswith("-")
        a, b = a.lstrip("-"), b.lstrip("-")
        if a == "1":
            r = b
        elif b == "1":
            r = a
        else:
            r = unit[(a, b)]
        if r.startswith("-"):
            neg, r = not neg, r[1:]
        return ("-" if neg else "") + r

    return FiniteGroup([[names.index(mul(a, b)) for b in names] for a in names], names)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"], check=False)


def group_from_spec(spec) -> FiniteGroup:
    """Build a group from ``{"cyclic": m}``, ``{"symmetric": n}``, ``{"dihedral": n}``,
    ``{"product": [spec, spec]}`` or ``{"table": [[...]]}``."""
    if isinstance(spec, FiniteGroup):
        return spec
    if not isinstance(spec, dict) or len(spec) < 1:
        raise ValueError(f"bad group spec {spec!r}")
    if "cyclic" in spec:
        return cyclic(int(spec["cyclic"]))
    if "symmetric" in spec:
        return symmetric(int(spec["symmetric"]))
    if "dihedral" in spec:
        return dihedral(int(spec["dihedral"]))
    if "quaternion" in spec:
        return quaternion()
    if "product" in spec:
        a, b = spec["product"]
        return direct_product(group_from_spec(a), group_from_spec(b))
    if "table" in spec:
        return FiniteGroup(spec["table"], spec.get("names"))
    raise ValueError(f"bad group spec {spec!r}")


# ---------------------------------------------------------------- subgroups


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [x for x in set(gens) if x != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = g.table[a][s]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def normal_closure(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    conj = {g.conj(h, x) for x in gens for h in range(g.order)}
    return generated_subgroup(g, conj)


def is_subgroup(g: FiniteGroup, s: Iterable[int]) -> bool:
    s = set(s)
    if 0 not in s:
        return False
    return all(g.table[a][g.inv[b]] in s for a in s for b in s)


def is_normal(g: FiniteGroup, s: Iterable[int]) -> bool:
    s = set(s)
    return is_subgroup(g, s) and all(g.conj(h, x) in s for x in s for h in range(g.order))


def commutator_subgroup(g: FiniteGroup) -> frozenset[int]:
    return generated_subgroup(g, (g.commutator(a, b) for a in range(g.order) for b in range(g.order)))


def subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups (small groups only): closure of pairs then joins."""
    found = {frozenset([0])}
    cyc = {generated_subgroup(g, [a]) for a in range(g.order)}
    found |= cyc
    changed = True
    while changed:
        changed = False
        cur = list(found)
        for a in cur:
            for c in cyc:
                if not c <= a:
                    j = generated_subgroup(g, a | c)
                    if j not in found:
                        found.add(j)
                        changed = True
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def normal_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    return [s for s in subgroups(g) if is_normal(g, s)]


@dataclass
class QuotientGroup:
    group: FiniteGroup
    projection: list[int]  # element of parent -> coset index
    coset_reps: list[int]


def quotient(g: FiniteGroup, n: Iterable[int]) -> QuotientGroup:
    n = frozenset(n)
    if not is_normal(g, n):
        raise GroupAxiomError("quotient by a non-normal subgroup")
    proj = [-1] * g.order
    reps: list[int] = []
    for a in range(g.order):
        if proj[a] < 0:
            k = len(reps)
            reps.append(a)
            for x in n:
                proj[g.table[a][x]] = k
    table = [[proj[g.table[a][b]] for b in reps] for a in reps]
    return QuotientGroup(FiniteGroup(table, [g.names[r] for r in reps], check=False), proj, reps)


# ---------------------------------------------------------------- homomorphisms


@dataclass
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: list[int]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise ValueError("image list has wrong length")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        s, t, f = self.source, self.target, self.images
        return all(f[s.table[a][b]] == t.table[f[a]][f[b]] for a in range(s.order) for b in range(s.order))

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x in range(self.source.order) if self.images[x] == 0)

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order


def small_generating_set(g: FiniteGroup) -> list[int]:
    """Greedy generating set, preferring elements of large order."""
    gens: list[int] = []
    cur = frozenset([0])
    for a in sorted(range(g.order), key=lambda x: -g.element_order(x)):
        if a not in cur:
            gens.append(a)
            cur = generated_subgroup(g, gens)
            if len(cur) == g.order:
                break
    return gens


def _extend_on_generators(g: FiniteGroup, t: FiniteGroup, gens: list[int], imgs: list[int]) -> list[int] | None:
    """Extend generator images to a homomorphism if possible."""
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s, si in zip(gens, imgs):
                b = g.table[a][s]
                v = t.table[f[a]][si]
                if b in f:
                    if f[b] != v:
                        return None
                else:
                    f[b] = v
                    nxt.append(b)
        frontier = nxt
    out = [f[x] for x in range(g.order)]
    for a in range(g.order):
        for b in range(g.order):
            if out[g.table[a][b]] != t.table[out[a]][out[b]]:
                return None
    return out


def homomorphisms(g: FiniteGroup, t: FiniteGroup) -> list[list[int]]:
    gens = small_generating_set(g)
    out = []
    for imgs in itertools.product(range(t.order), repeat=len(gens)):
        if any(t.element_order(i) and g.element_order(s) % t.element_order(i) for s, i in zip(gens, imgs)):
            continue
        f = _extend_on_generators(g, t, gens, list(imgs))
        if f is not None:
            out.append(f)
    return out


def automorphisms(g: FiniteGroup) -> list[list[int]]:
    """All automorphisms as image lists, identity first."""
    gens = small_generating_set(g)
    out = []
    for imgs in itertools.product(range(g.order), repeat=len(gens)):
        if any(g.element_order(s) != g.element_order(i) for s, i in zip(gens, imgs)):
            continue
        f = _extend_on_generators(g, g, gens, list(imgs))
        if f is not None and len(set(f)) == g.order:
            out.append(f)
    out.sort(key=lambda f: f != list(range(g.order)))
    return out


def inner_automorphism(g: FiniteGroup, x: int) -> list[int]:
    return [g.conj(x, y) for y in range(g.order)]


def compose_perm(f: Sequence[int], h: Sequence[int]) -> list[int]:
    """(f o h)(x) = f(h(x))"""
    return [f[h[x]] for x in range(len(h))]


def invert_perm(f: Sequence[int]) -> list[int]:
    out = [0] * len(f)
    for i, y in enumerate(f):
        out[y] = i
    return out


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> list[int] | None:
    if g.order != h.order:
        return None
    gens = small_generating_set(g)
    for imgs in itertools.product(range(h.order), repeat=len(gens)):
        if any(g.element_order(s) != h.element_order(i) for s, i in zip(gens, imgs)):
            continue
        f = _extend_on_generators(g, h, gens, list(imgs))
        if f is not None and len(set(f)) == g.order:
            return f
    return None


# ---------------------------------------------------------------- operator groups


@dataclass
class GroupAction:
    """Action of ``acting`` on ``on`` by automorphisms: perms[s][x] = s . x"""

    acting: FiniteGroup
    on: FiniteGroup
    perms: list[list[int]]

    def validate(self) -> list[str]:
        errs = []
        a, g, p = self.acting, self.on, self.perms
        if len(p) != a.order:
            return ["action must list one permutation per acting element"]
        if p[0] != list(range(g.order)):
            errs.append("identity does not act trivially")
        for s in range(a.order):
            if sorted(p[s]) != list(range(g.order)):
                errs.append(f"element {s} does not act bijectively")
                continue
            ps = p[s]
            if any(ps[g.table[x][y]] != g.table[ps[x]][ps[y]] for x in range(g.order) for y in range(g.order)):
                errs.append(f"element {s} does not act by a homomorphism")
        for s in range(a.order):
            for t in range(a.order):
                st = a.table[s][t]
                if any(p[st][x] != p[s][p[t][x]] for x in range(g.order)):
                    errs.append(f"action law fails for {s},{t}")
                    return errs
        return errs


class GammaGroup:
    """A group G with an action of a group Gamma by automorphisms."""

    def __init__(self, group: FiniteGroup, gamma: FiniteGroup | None = None, action: list[list[int]] | None = None, check: bool = True):
        self.group = group
        self.gamma = gamma if gamma is not None else trivial_group()
        if action is None:
            action = [list(range(group.order)) for _ in range(self.gamma.order)]
        self.action = [list(p) for p in action]
        if check:
            errs = GroupAction(self.gamma, group, self.action).validate()
            if errs:
                raise GroupAxiomError("; ".join(errs))
        self._semidirect: FiniteGroup | None = None

    @property
    def G(self) -> FiniteGroup:
        return self.group

    def act(self, s: int, x: int) -> int:
        return self.action[s][x]

    def is_trivial_action(self) -> bool:
        return all(p == list(range(self.group.order)) for p in self.action)

    # --- subgroup calculus --------------------------------------------
    def gamma_differences(self) -> set[int]:
        g = self.group
        return {g.mul(self.act(s, x), g.inv[x]) for s in range(self.gamma.order) for x in range(g.order)}

    def gamma_commutant(self) -> frozenset[int]:
        """Subgroup generated by commutators and the elements s(x) x^-1."""
        g = self.group
        gens = {g.commutator(a, b) for a in range(g.order) for b in range(g.order)} | self.gamma_differences()
        return generated_subgroup(g, gens)

    def gamma_subgroup(self) -> frozenset[int]:
        """Normal subgroup generated by the elements s(x) x^-1."""
        return normal_closure(self.group, self.gamma_differences())

    def relative_commutator(self, h: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by x s(y) x^-1 y^-1 for x in G, y in h."""
        g = self.group
        h = list(h)
        gens = {g.prod(x, self.act(s, y), g.inv[x], g.inv[y]) for x in range(g.order) for y in h for s in range(self.gamma.order)}
        return generated_subgroup(g, gens)

    def is_gamma_perfect(self) -> bool:
        return len(self.gamma_commutant()) == self.group.order

    def is_gamma_stable(self, s: Iterable[int]) -> bool:
        s = set(s)
        return all(self.act(t, x) in s for t in range(self.gamma.order) for x in s)

    def fixed_points(self) -> frozenset[int]:
        return frozenset(x for x in range(self.group.order) if all(self.act(s, x) == x for s in range(self.gamma.order)))

    def coinvariant_quotient(self) -> QuotientGroup:
        """G / (Gamma G)"""
        return quotient(self.group, self.gamma_subgroup())

    def quotient(self, n: Iterable[int]) -> tuple["GammaGroup", QuotientGroup]:
        n = frozenset(n)
        if not self.is_gamma_stable(n):
            raise GroupAxiomError("subgroup is not Gamma-stable")
        q = quotient(self.group, n)
        act = [[q.projection[self.act(s, r)] for r in q.coset_reps] for s in range(self.gamma.order)]
        return GammaGroup(q.group, self.gamma, act, check=False), q

    def restrict(self, h: Iterable[int]) -> tuple["GammaGroup", list[int]]:
        """Gamma-stable subgroup as a group of its own; returns (subgroup, embedding)."""
        h = sorted(set(h))
        if not self.is_gamma_stable(h) or not is_subgroup(self.group, h):
            raise GroupAxiomError("not a Gamma-stable subgroup")
        idx = {x: i for i, x in enumerate(h)}
        g = self.group
        table = [[idx[g.table[a][b]] for b in h] for a in h]
        act = [[idx[self.act(s, x)] for x in h] for s in range(self.gamma.order)]
        return GammaGroup(FiniteGroup(table, [g.names[x] for x in h], check=False), self.gamma, act, check=False), h

    # --- semidirect product -------------------------------------------
    def sd_index(self, g: int, s: int) -> int:
        return g + self.group.order * s

    def sd_split(self, x: int) -> tuple[int, int]:
        return x % self.group.order, x // self.group.order

    def semidirect_product(self) -> FiniteGroup:
        """G x| Gamma with (g, s)(h, t) = (g s(h), st); element (g, s) is g + |G| s."""
        if self._semidirect is None:
            g, c = self.group, self.gamma
            n = g.order
            table = []
            for s in range(c.order):
                for a in range(n):
                    row = []
                    for t in range(c.order):
                        st = c.table[s][t] * n
                        ga = g.table[a]
                        act = self.action[s]
                        for b in range(n):
                            row.append(ga[act[b]] + st)
                    table.append(row)
            names = [f"({x},{y})" for y in c.names for x in g.names]
            self._semidirect = FiniteGroup(table, names, check=False)
        return self._semidirect

    # --- orbits -------------------------------------------------------
    def tuple_orbits(self, n: int) -> "TupleOrbits":
        return TupleOrbits(self, n)

    def __repr__(self) -> str:
        return f"GammaGroup(|G|={self.group.order}, |Gamma|={self.gamma.order})"


class TupleOrbits:
    """Gamma-orbits on G^n with tuples encoded in base |G| (first entry most significant)."""

    def __init__(self, gg: GammaGroup, n: int):
        self.gg = gg
        self.n = n
        q = gg.group.order
        self.size = q ** n
        gam = gg.gamma.order
        self.orbit_of = [-1] * self.size
        self.transporter = [0] * self.size  # s with tuple = s . rep
        self.reps: list[int] = []
        self.stabilizers: list[tuple[int, ...]] = []
        act = gg.action
        for code in range(self.size):
            if self.orbit_of[code] >= 0:
                continue
            k = len(self.reps)
            self.reps.append(code)
            t = self.decode(code)
            stab = []
            for s in range(gam):
                img = self.encode([act[s][x] for x in t])
                if img == code:
                    stab.append(s)
                if self.orbit_of[img] < 0:
                    self.orbit_of[img] = k
                    self.transporter[img] = s
            self.stabilizers.append(tuple(stab))

    def decode(self, code: int) -> list[int]:
        q = self.gg.group.order
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            code, out[i] = divmod(code, q)
        return out

    def encode(self, t: Sequence[int]) -> int:
        q = self.gg.group.order
        code = 0
        for x in t:
            code = code * q + x
        return code

    def __len__(self) -> int:
        return len(self.reps)


def gamma_group_from_spec(group_spec, gamma_spec=None, action_spec=None) -> GammaGroup:
    """Build a Gamma-group.

    ``action_spec`` may be ``None``/``"trivial"``, ``"inversion"`` (for an abelian
    group with Gamma of order 2), ``{"power": k}`` on a cyclic group (Gamma
    cyclic generated by x -> x^k), ``{"conjugation": element}`` (Gamma of order
    2 acting by an involutive inner automorphism), or an explicit list of
    permutations.
    """
    g = group_from_spec(group_spec)
    if action_spec in (None, "trivial"):
        gam = group_from_spec(gamma_spec) if gamma_spec is not None else trivial_group()
        return GammaGroup(g, gam)
    if action_spec == "inversion":
        if not g.is_abelian():
            raise ValueError("inversion is an automorphism only for abelian groups")
        return GammaGroup(g, cyclic(2), [list(range(g.order)), list(g.inv)])
    if isinstance(action_spec, dict) and "power" in action_spec:
        return power_action(g.order, int(action_spec["power"]))
    if isinstance(action_spec, dict) and "conjugation" in action_spec:
        x = int(action_spec["conjugation"])
        if g.mul(x, x) != 0 and x != 0:
            # order-2 Gamma needs an involutive inner automorphism
            p = inner_automorphism(g, x)
            if compose_perm(p, p) != list(range(g.order)):
                raise ValueError("conjugating element does not give an involution")
        return GammaGroup(g, cyclic(2), [list(range(g.order)), inner_automorphism(g, x)])
    if isinstance(action_spec, list):
        gam = group_from_spec(gamma_spec)
        return GammaGroup(g, gam, action_spec)
    raise ValueError(f"bad action spec {action_spec!r}")


def multiplicative_order(k: int, m: int) -> int:
    if m == 1:
        return 1
    r, x = 1, k % m
    while x != 1:
        x = x * k % m
        r += 1
        if r > m:
            raise ValueError(f"{k} is not a unit mod {m}")
    return r


def power_action(m: int, k: int) -> GammaGroup:
    """Z/m with Gamma = <x -> kx> (cyclic of the multiplicative order of k)."""
    from math import gcd

    if gcd(k, m) != 1:
        raise ValueError(f"k={k} must be coprime to m={m}")
    g = cyclic(m)
    r = multiplicative_order(k, m)
    gam = cyclic(r)
    action = [[(pow(k, s, m) * x) % m for x in range(m)] for s in range(r)]
    return GammaGroup(g, gam, action, check=False)
