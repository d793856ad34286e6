"""Free groups whose basis is permuted by a finite group.

A word is a tuple of letters (generator index, exponent +1 or -1).
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .finite_group import FiniteGroup, cyclic, direct_product

Letter = tuple[int, int]


def reduce_word(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_word(self.letters))

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "FreeWord":
        return cls(((i, e),))

    @classmethod
    def parse(cls, text: str, names: str = "xyzuvw") -> "FreeWord":
        """'x y^-1 z' or 'xY' (capital = inverse) style strings; '1' or '' is the identity."""
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls()
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            low = ch.lower()
            if low not in names:
                raise ValueError(f"unknown generator {ch!r}")
            e = -1 if ch.isupper() else 1
            i += 1
            if text.startswith("^-1", i):
                e, i = -e, i + 3
            out.append((names.index(low), e))
        return cls(tuple(out))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def to_str(self, names: str = "xyzuvw") -> str:
        if not self.letters:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^-1" for g, e in self.letters)

    def __str__(self) -> str:
        return self.to_str()


@dataclass
class BasisAction:
    """Gamma permuting the basis of a free group of the given rank."""

    rank: int
    gamma: FiniteGroup
    perms: list[list[int]]

    def violations(self) -> list[str]:
        out = []
        if len(self.perms) != self.gamma.order:
            return [f"expected {self.gamma.order} permutations"]
        for s, p in enumerate(self.perms):
            if sorted(p) != list(range(self.rank)):
                out.append(f"element {s} does not permute the basis")
        if out:
            return out
        if self.perms[0] != list(range(self.rank)):
            out.append("identity does not act trivially")
        for s in range(self.gamma.order):
            for t in range(self.gamma.order):
                st = self.gamma.mul(s, t)
                if any(self.perms[s][self.perms[t][i]] != self.perms[st][i] for i in range(self.rank)):
                    out.append(f"representation law fails for ({s}, {t})")
                    return out
        return out

    def apply(self, s: int, w: FreeWord) -> FreeWord:
        p = self.perms[s]
        return FreeWord(tuple((p[g], e) for g, e in w.letters))


def apply_gamma(act: BasisAction, s: int, w: FreeWord) -> FreeWord:
    return act.apply(s, w)


def swap_action() -> BasisAction:
    """Z/2 exchanging the two basis letters."""
    return BasisAction(2, cyclic(2), [[0, 1], [1, 0]])


def rotation_action(rank: int = 3) -> BasisAction:
    """Z/rank cycling the basis letters."""
    return BasisAction(rank, cyclic(rank), [[(i + s) % rank for i in range(rank)] for s in range(rank)])


# ---------------------------------------------------------------- Reidemeister-Schreier


def _letter_order(rank: int) -> list[Letter]:
    return [(g, e) for g in range(rank) for e in (1, -1)]


@dataclass
class SchreierData:
    rank_f: int
    target: FiniteGroup
    images: list[int]
    cosets: list[int]  # coset i <-> element cosets[i] of the image subgroup
    transversal: list[FreeWord]
    generators: list[FreeWord]
    edges: dict[tuple[int, Letter], int] = field(default_factory=dict)

    @property
    def index(self) -> int:
        return len(self.transversal)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def schreier_formula(self) -> int:
        return self.index * (self.rank_f - 1) + 1

    def evaluate(self, w: FreeWord) -> int:
        x = 0
        for g, e in w.letters:
            img = self.images[g] if e == 1 else _inv(self.target, self.images[g])
            x = self.target.mul(x, img)
        return x

    def in_kernel(self, w: FreeWord) -> bool:
        return self.evaluate(w) == 0

    def as_dict(self, names: str = "xyzuvw") -> dict:
        return {
            "rank_F": self.rank_f,
            "index": self.index,
            "transversal": [w.to_str(names) for w in self.transversal],
            "kernel_generators": [w.to_str(names) for w in self.generators],
            "rank": self.rank,
            "schreier_formula": self.schreier_formula(),
        }


def _inv(g: FiniteGroup, x: int) -> int:
    return next(y for y in range(g.order) if g.mul(x, y) == 0)


def schreier_kernel(rank_f: int, target: FiniteGroup, images: Sequence[int],
                    letter_order: Sequence[Letter] | None = None) -> SchreierData:
    """Kernel of F_rank -> target via a breadth-first (shortlex) Schreier transversal."""
    if len(images) != rank_f:
        raise ValueError(f"need {rank_f} images, got {len(images)}")
    order = list(letter_order) if letter_order is not None else _letter_order(rank_f)
    inv = {x: _inv(target, x) for x in range(target.order)}
    reps: dict[int, FreeWord] = {0: FreeWord()}
    cosets = [0]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, e in order:
            y = target.mul(x, images[g] if e == 1 else inv[images[g]])
            if y not in reps:
                reps[y] = reps[x] * FreeWord.gen(g, e)
                cosets.append(y)
                queue.append(y)
    edges = {}
    gens: list[FreeWord] = []
    for x in cosets:
        for g in range(rank_f):
            y = target.mul(x, images[g])
            edges[(cosets.index(x), (g, 1))] = cosets.index(y)
            w = reps[x] * FreeWord.gen(g) * reps[y].inverse()
            if not w.is_identity():
                gens.append(w)
    data = SchreierData(rank_f, target, list(images), cosets, [reps[x] for x in cosets], gens, edges)
    if data.rank != data.schreier_formula():
        raise AssertionError(f"Schreier rank {data.rank} != formula {data.schreier_formula()}")
    return data


def schreier_transversals(rank_f: int, target: FiniteGroup, images: Sequence[int]) -> list[SchreierData]:
    """Kernels for every ordering of the letters (different breadth-first transversals)."""
    seen = set()
    out = []
    for order in itertools.permutations(_letter_order(rank_f)):
        data = schreier_kernel(rank_f, target, images, order)
        key = tuple(w.letters for w in data.transversal)
        if key not in seen:
            seen.add(key)
            out.append(data)
    return out


# ---------------------------------------------------------------- fixed words


def reduced_words(rank: int, maxlen: int) -> Iterator[FreeWord]:
    """All reduced words of length <= maxlen, shortlex order."""
    letters = _letter_order(rank)
    level: list[tuple[Letter, ...]] = [()]
    yield FreeWord()
    for _ in range(maxlen):
        nxt = []
        for w in level:
            for l in letters:
                if w and w[-1] == (l[0], -l[1]):
                    continue
                nxt.append(w + (l,))
        for w in nxt:
            yield FreeWord(w)
        level = nxt


@dataclass
class FixedWordSearch:
    maxlen: int
    examined: int
    fixed: list[FreeWord]

    @property
    def only_identity(self) -> bool:
        return all(w.is_identity() for w in self.fixed)

    def as_dict(self) -> dict:
        return {
            "max_length": self.maxlen,
            "words_examined": self.examined,
            "fixed_words": [w.to_str() for w in self.fixed],
            "only_identity": self.only_identity,
        }


def fixed_word_search(act: BasisAction, maxlen: int, limit: int = 5_000_000) -> FixedWordSearch:
    """Exhaustively list reduced words of length <= maxlen fixed by every element of Gamma."""
    if maxlen > 64:
        raise ValueError("word length is capped at 64")
    perms = [p for s, p in enumerate(act.perms) if s != 0]
    letters = _letter_order(act.rank)
    fixed = [FreeWord()]
    examined = 1
    stack: list[tuple[Letter, ...]] = [()]
    while stack:
        w = stack.pop()
        if len(w) == maxlen:
            continue
        for l in letters:
            if w and w[-1] == (l[0], -l[1]):
                continue
            u = w + (l,)
            examined += 1
            if examined > limit:
                raise RuntimeError(f"more than {limit} words; lower maxlen")
            if all(all(p[g] == g for g, _ in u) for p in perms):
                fixed.append(FreeWord(u))
            stack.append(u)
    return FixedWordSearch(maxlen, examined, fixed)


# ---------------------------------------------------------------- subgroups via folding


class FoldedGraph:
    """Stallings graph of a finitely generated subgroup, base vertex 0."""

    def __init__(self, rank: int, words: Iterable[FreeWord]):
        self.rank = rank
        self.out: list[dict[Letter, int]] = [{}]
        for w in words:
            self._add_loop(w)
        self._fold()

    def _new(self) -> int:
        self.out.append({})
        return len(self.out) - 1

    def _add_loop(self, w: FreeWord) -> None:
        if w.is_identity():
            return
        v = 0
        for i, (g, e) in enumerate(w.letters):
            u = 0 if i == len(w) - 1 else self._new()
            self._link(v, (g, e), u)
            v = u

    def _link(self, v: int, l: Letter, u: int) -> None:
        self.out[v].setdefault(l, set()).add(u)
        self.out[u].setdefault((l[0], -l[1]), set()).add(v)

    def _fold(self) -> None:
        parent = list(range(len(self.out)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        changed = True
        while changed:
            changed = False
            for v in range(len(self.out)):
                if find(v) != v:
                    continue
                for l, targets in list(self.out[v].items()):
                    roots = {find(t) for t in targets}
                    self.out[v][l] = roots
                    if len(roots) > 1:
                        keep = min(roots)
                        for r in roots - {keep}:
                            parent[r] = keep
                            for l2, t2 in self.out[r].items():
                                self.out[keep].setdefault(l2, set()).update(t2)
                            self.out[r] = {}
                        changed = True
                        break
                if changed:
                    break
        alive = sorted({find(v) for v in range(len(self.out))})
        ren = {v: i for i, v in enumerate(alive)}
        self.edges: list[dict[Letter, int]] = []
        for v in alive:
            row = {}
            for l, ts in self.out[v].items():
                (t,) = {find(x) for x in ts}
                row[l] = ren[t]
            self.edges.append(row)

    @property
    def vertices(self) -> int:
        return len(self.edges)

    @property
    def rank_of_subgroup(self) -> int:
        e = sum(1 for row in self.edges for (g, s) in row if s == 1)
        return e - self.vertices + 1

    def is_complete(self) -> bool:
        return all(len(row) == 2 * self.rank for row in self.edges)

    def contains(self, w: FreeWord) -> bool:
        v = 0
        for l in w.letters:
            if l not in self.edges[v]:
                return False
            v = self.edges[v][l]
        return v == 0


@dataclass
class StableBasisVerdict:
    in_subgroup: bool
    closed_under_gamma: bool
    generates: bool
    free_basis: bool
    size: int
    subgroup_rank: int

    @property
    def stable_basis(self) -> bool:
        return self.in_subgroup and self.closed_under_gamma and self.generates and self.free_basis

    def as_dict(self) -> dict:
        return {
            "in_subgroup": self.in_subgroup,
            "closed_under_gamma": self.closed_under_gamma,
            "generates": self.generates,
            "free_basis": self.free_basis,
            "size": self.size,
            "subgroup_rank": self.subgroup_rank,
            "stable_basis": self.stable_basis,
        }


class NotInSubgroup(ValueError):
    pass


def gamma_stable_basis_check(candidates: Sequence[FreeWord], act: BasisAction, data: SchreierData,
                             strict: bool = False) -> StableBasisVerdict:
    """Is the set Gamma-closed and a free basis of the kernel in ``data``?"""
    cands = list(dict.fromkeys(candidates))
    inside = all(data.in_kernel(w) for w in cands)
    if strict and not inside:
        bad = next(w for w in cands if not data.in_kernel(w))
        raise NotInSubgroup(f"{bad} is not in the kernel")
    cset = set(cands)
    closed = all(act.apply(s, w) in cset for s in range(act.gamma.order) for w in cands)
    graph = FoldedGraph(act.rank, cands)
    generates = inside and graph.is_complete() and graph.vertices == data.index
    free = generates and len(cands) == graph.rank_of_subgroup
    return StableBasisVerdict(inside, closed, generates, free, len(cands), graph.rank_of_subgroup)


def gamma_orbit(act: BasisAction, w: FreeWord) -> list[FreeWord]:
    return list(dict.fromkeys(act.apply(s, w) for s in range(act.gamma.order)))


def find_stable_generating_set(act: BasisAction, data: SchreierData, extra_length: int = 3) -> list[FreeWord] | None:
    """Union of Gamma-orbits of Schreier generators and short kernel words that is a free basis."""
    pool: list[FreeWord] = list(data.generators)
    pool += [w for w in reduced_words(act.rank, extra_length) if not w.is_identity() and data.in_kernel(w)]
    orbits: list[tuple[FreeWord, ...]] = []
    seen: set[FreeWord] = set()
    for w in pool:
        if w in seen:
            continue
        orb = tuple(gamma_orbit(act, w))
        seen.update(orb)
        orbits.append(orb)
    target = data.rank
    sizes = [len(o) for o in orbits]

    def search(start: int, chosen: list[int], total: int) -> list[FreeWord] | None:
        if total == target:
            words = [w for i in chosen for w in orbits[i]]
            if gamma_stable_basis_check(words, act, data).stable_basis:
                return words
            return None
        for i in range(start, len(orbits)):
            if total + sizes[i] <= target:
                got = search(i + 1, chosen + [i], total + sizes[i])
                if got is not None:
                    return got
        return None

    return search(0, [], 0)


def is_gamma_map(act: BasisAction, target: FiniteGroup, target_action: Sequence[Sequence[int]], images: Sequence[int]) -> bool:
    """f(gamma x_i) = gamma f(x_i) for the homomorphism given on the basis."""
    return all(images[act.perms[s][i]] == target_action[s][images[i]] for s in range(act.gamma.order) for i in range(act.rank))


# ---------------------------------------------------------------- the two worked examples


@dataclass
class SwapCounterexample:
    schreier: SchreierData
    all_transversals_unstable: bool
    fixed_words: FixedWordSearch

    @property
    def rank_is_odd(self) -> bool:
        return self.schreier.rank % 2 == 1

    @property
    def verdict(self) -> bool:
        """Odd rank and no nontrivial fixed word: a Z/2-set of odd size would need a fixed point."""
        return self.rank_is_odd and self.fixed_words.only_identity

    def as_dict(self) -> dict:
        return {
            "kernel": self.schreier.as_dict(),
            "rank_odd": self.rank_is_odd,
            "schreier_bases_unstable": self.all_transversals_unstable,
            "fixed_word_search": {
                "max_length": self.fixed_words.maxlen,
                "words_examined": self.fixed_words.examined,
                "nontrivial_fixed": [str(w) for w in self.fixed_words.fixed if not w.is_identity()],
            },
            "no_gamma_stable_basis_by_argument": self.verdict,
        }


def swap_counterexample(maxlen: int = 12) -> SwapCounterexample:
    act = swap_action()
    z2 = cyclic(2)
    if not is_gamma_map(act, z2, [[0, 1], [0, 1]], [1, 1]):
        raise AssertionError("x, y -> generator is not equivariant")
    data = schreier_kernel(2, z2, [1, 1])
    unstable = all(
        not gamma_stable_basis_check(d.generators, act, d).closed_under_gamma
        for d in schreier_transversals(2, z2, [1, 1])
    )
    return SwapCounterexample(data, unstable, fixed_word_search(act, maxlen))


def klein_example() -> tuple[BasisAction, SchreierData, list[FreeWord] | None]:
    """Z/3 rotating x, y, z onto Z/2 x Z/2 with x -> (c,0), y -> (0,c), z -> (c,c)."""
    act = rotation_action(3)
    v4 = direct_product(cyclic(2), cyclic(2))  # (a, b) -> a + 2b
    rot = [[0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
    images = [1, 2, 3]
    if not is_gamma_map(act, v4, rot, images):
        raise AssertionError("the map to Z/2 x Z/2 is not equivariant")
    data = schreier_kernel(3, v4, images)
    return act, data, find_stable_generating_set(act, data)
