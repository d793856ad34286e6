"""Exact integer and rational linear algebra.

Matrices are sparse and stored column-wise as ``{row: value}`` dicts.  The
homology machinery works with finitely presented abelian groups: a group is a
number of generators together with a matrix whose columns are relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = x*a + y*b = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


# ---------------------------------------------------------------- sparse matrices


class IntMatrix:
    """Sparse integer matrix, column dictionaries."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = cols

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict[int, int]] = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, ncols, cols)

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[dict[int, int]]) -> "IntMatrix":
        cols = [{i: v for i, v in c.items() if v} for c in columns]
        return cls(nrows, len(cols), cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.cols[j].get(i, 0)

    def to_rows(self) -> list[list[int]]:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for j, a in vec.items():
            if not a:
                continue
            for i, v in self.cols[j].items():
                s = out.get(i, 0) + a * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols, [add_vec(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        if k == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        return IntMatrix(self.nrows, self.ncols, [{i: k * v for i, v in c.items()} for c in self.cols])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    def __hash__(self):  # pragma: no cover - matrices are mutable
        raise TypeError("unhashable")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "IntMatrix":
        cols: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return IntMatrix(self.ncols, self.nrows, cols)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        cols = [dict(c) for c in self.cols]
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("row mismatch in hstack")
            cols.extend(dict(c) for c in o.cols)
        return IntMatrix(self.nrows, len(cols), cols)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        cols = [dict(c) for c in self.cols]
        offset = self.nrows
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("column mismatch in vstack")
            for j, c in enumerate(o.cols):
                for i, v in c.items():
                    cols[j][i + offset] = v
            offset += o.nrows
        return IntMatrix(offset, self.ncols, cols)

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def add_vec(a: dict[int, int], b: dict[int, int], k: int = 1) -> dict[int, int]:
    """Return a + k*b as a new sparse vector."""
    out = dict(a)
    for i, v in b.items():
        s = out.get(i, 0) + k * v
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    nrows = sum(b.nrows for b in blocks)
    cols: list[dict[int, int]] = []
    off = 0
    for b in blocks:
        for c in b.cols:
            cols.append({i + off: v for i, v in c.items()})
        off += b.nrows
    return IntMatrix(nrows, len(cols), cols)


def rational_to_int_columns(nrows: int, columns: Iterable[dict[int, Fraction]]) -> IntMatrix:
    """Scale each column by the lcm of its denominators (rank preserving)."""
    out = []
    for c in columns:
        den = 1
        for v in c.values():
            den = lcm(den, Fraction(v).denominator) or 1
        out.append({i: int(Fraction(v) * den) for i, v in c.items() if v})
    return IntMatrix(nrows, len(out), out)


# ---------------------------------------------------------------- Smith normal form


@dataclass
class SmithDecomposition:
    """u * a * v == d with u, v unimodular and d diagonal with a divisibility chain."""

    u: list[list[int]]
    d: list[list[int]]
    v: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]] | IntMatrix, ncols: int | None = None) -> SmithDecomposition:
    """Dense Smith normal form with both transforms.

    Pivoting uses the entry of smallest absolute value; the divisibility chain
    is enforced by folding offending rows into the pivot row.
    """
    if isinstance(a, IntMatrix):
        m, n = a.shape
        d = a.to_rows()
    else:
        d = [list(map(int, r)) for r in a]
        m = len(d)
        n = len(d[0]) if m else (ncols or 0)
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row dst += k * row src
        rd, rs = d[dst], d[src]
        for c in range(n):
            if rs[c]:
                rd[c] += k * rs[c]
        ud, us = u[dst], u[src]
        for c in range(m):
            if us[c]:
                ud[c] += k * us[c]

    def add_col(dst, src, k):
        for r in d:
            if r[src]:
                r[dst] += k * r[src]
        for r in v:
            if r[src]:
                r[dst] += k * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = d[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // p
                    add_row(i, t, -q)
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // p
                    add_col(j, t, -q)
                    if d[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if d[i][t] and (best is None or abs(d[i][t]) < best[0]):
                        best = (abs(d[i][t]), i, t)
                for j in range(t, n):
                    if d[t][j] and (best is None or abs(d[t][j]) < best[0]):
                        best = (abs(d[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column are clear; enforce divisibility
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithDecomposition(u, d, v)


def _dense_invariants(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense matrix (no transforms)."""
    d = [r[:] for r in rows if any(r)]
    if not d:
        return []
    m, n = len(d), len(d[0])
    out: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = d[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        d[t], d[i] = d[i], d[t]
        if j != t:
            for r in d:
                r[t], r[j] = r[j], r[t]
        while True:
            p = d[t][t]
            dirty = False
            prow = d[t]
            for i in range(t + 1, m):
                x = d[i][t]
                if x:
                    q = x // p
                    ri = d[i]
                    for c in range(t, n):
                        if prow[c]:
                            ri[c] -= q * prow[c]
                    if ri[t]:
                        dirty = True
            for j in range(t + 1, n):
                x = prow[j]
                if x:
                    q = x // p
                    for r in d:
                        if r[t]:
                            r[j] -= q * r[t]
                    if prow[j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if d[i][t] and (best is None or abs(d[i][t]) < best[0]):
                        best = (abs(d[i][t]), i, t)
                for j in range(t, n):
                    if d[t][j] and (best is None or abs(d[t][j]) < best[0]):
                        best = (abs(d[t][j]), t, j)
                _, i, j = best
                d[t], d[i] = d[i], d[t]
                if j != t:
                    for r in d:
                        r[t], r[j] = r[j], r[t]
                continue
            bad = None
            for i in range(t + 1, m):
                ri = d[i]
                for j in range(t + 1, n):
                    if ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rb = d[bad]
            for c in range(t, n):
                prow[c] += rb[c]
        out.append(abs(d[t][t]))
        t += 1
    return out


def _eliminate_unit_pivots(mat: IntMatrix, modulus: int = 0) -> tuple[int, list[dict[int, int]]]:
    """Markowitz-style elimination of +-1 pivots.

    Returns the number of unit pivots removed and the surviving columns (with
    pivot rows deleted).  Unimodular operations only, so the invariant factors
    of the remainder plus that many 1's are those of ``mat``.
    """
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(mat.cols) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    units = 0
    import heapq

    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    stalled: list[int] = []
    progress = True
    while progress:
        progress = False
        while heap:
            ln, j = heapq.heappop(heap)
            c = cols.get(j)
            if c is None:
                continue
            if ln != len(c):
                heapq.heappush(heap, (len(c), j))
                continue
            if not c:
                del cols[j]
                continue
            best = None
            for i, v in c.items():
                if v == 1 or v == -1:
                    rl = len(rows[i])
                    if best is None or rl < best[0]:
                        best = (rl, i)
                        if rl == 1:
                            break
            if best is None:
                stalled.append(j)
                continue
            pr = best[1]
            pv = c[pr]
            # clear row pr in every other column using column j
            for j2 in list(rows[pr]):
                if j2 == j:
                    continue
                c2 = cols[j2]
                q = c2[pr] * pv  # pv = +-1 so q = c2[pr]/pv
                for i, v in c.items():
                    s = c2.get(i, 0) - q * v
                    if s:
                        if i not in c2:
                            rows[i].add(j2)
                        c2[i] = s
                    else:
                        if i in c2:
                            del c2[i]
                            rows[i].discard(j2)
                heapq.heappush(heap, (len(c2), j2))
            # drop pivot column and row
            for i in c:
                rows[i].discard(j)
            del cols[j]
            del rows[pr]
            units += 1
            progress = True
        if progress and stalled:
            for j in stalled:
                if j in cols:
                    heapq.heappush(heap, (len(cols[j]), j))
            stalled = []
            progress = bool(heap)
    rest = [c for c in cols.values() if c]
    return units, rest


def invariant_factors(mat: IntMatrix) -> list[int]:
    """Nonzero invariant factors (ascending, with the divisibility chain)."""
    units, rest = _eliminate_unit_pivots(mat)
    if not rest:
        return [1] * units
    row_ids = sorted({i for c in rest for i in c})
    index = {r: k for k, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, c in enumerate(rest):
        for i, v in c.items():
            dense[index[i]][j] = v
    tail = _dense_invariants(dense)
    tail = _normalize_chain(tail)
    return [1] * units + tail


def _normalize_chain(diag: list[int]) -> list[int]:
    """Turn any diagonal into the canonical divisibility chain."""
    diag = [abs(x) for x in diag if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                if b % a:
                    g = gcd(a, b)
                    diag[i], diag[j] = g, a * b // g
                    changed = True
        diag.sort()
    return diag


def rank(mat: IntMatrix) -> int:
    """Rank over the rationals."""
    units, rest = _eliminate_unit_pivots(mat)
    if not rest:
        return units
    return units + _rational_rank_cols(rest)


def _rational_rank_cols(cols: list[dict[int, int]]) -> int:
    """Rank by fraction-free elimination on sparse columns."""
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for c in cols:
        v = dict(c)
        while v:
            p = min(v)
            if p not in pivots:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                pivots[p] = {i: x // g for i, x in v.items()}
                r += 1
                break
            w = pivots[p]
            a, b = w[p], v[p]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            nv: dict[int, int] = {}
            for i, x in v.items():
                nv[i] = fa * x
            for i, x in w.items():
                s = nv.get(i, 0) - fb * x
                if s:
                    nv[i] = s
                else:
                    nv.pop(i, None)
            g = 0
            for x in nv.values():
                g = gcd(g, x)
            v = {i: x // g for i, x in nv.items()} if g > 1 else nv
    return r


def rank_mod_p(mat: IntMatrix, p: int) -> int:
    """Rank over GF(p)."""
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for c in mat.cols:
        v = {i: x % p for i, x in c.items() if x % p}
        while v:
            piv = min(v)
            if piv not in pivots:
                inv = pow(v[piv], -1, p)
                pivots[piv] = {i: x * inv % p for i, x in v.items()}
                r += 1
                break
            w = pivots[piv]
            k = v[piv]
            for i, x in w.items():
                s = (v.get(i, 0) - k * x) % p
                if s:
                    v[i] = s
                else:
                    v.pop(i, None)
    return r


# ---------------------------------------------------------------- lattices


class Lattice:
    """Sublattice of Z^n held as an echelon basis keyed by leading index."""

    def __init__(self, dim: int, gens: Iterable[dict[int, int]] = ()):
        self.dim = dim
        self.rows: dict[int, dict[int, int]] = {}
        for g in gens:
            self.add(g)

    def add(self, vec: dict[int, int]) -> bool:
        v = {i: x for i, x in vec.items() if x}
        changed = False
        while v:
            j = min(v)
            p = self.rows.get(j)
            if p is None:
                if v[j] < 0:
                    v = {i: -x for i, x in v.items()}
                self.rows[j] = v
                return True
            a, b = p[j], v[j]
            if b % a == 0:
                v = add_vec(v, p, -(b // a))
                continue
            g, x, y = xgcd(a, b)
            new_p = add_vec({i: x * t for i, t in p.items()}, v, y)
            v = add_vec({i: (b // g) * t for i, t in p.items()}, v, -(a // g))
            self.rows[j] = new_p
            changed = True
        return changed

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Subtract basis rows while leading entries divide; returns remainder."""
        v = {i: x for i, x in vec.items() if x}
        while v:
            j = min(v)
            p = self.rows.get(j)
            if p is None or v[j] % p[j]:
                return v
            v = add_vec(v, p, -(v[j] // p[j]))
        return v

    def __contains__(self, vec: dict[int, int]) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: dict[int, int]) -> dict[int, int]:
        """Coefficients with respect to ``basis()`` (position in sorted pivots)."""
        order = {j: k for k, j in enumerate(sorted(self.rows))}
        v = {i: x for i, x in vec.items() if x}
        out: dict[int, int] = {}
        while v:
            j = min(v)
            p = self.rows.get(j)
            if p is None or v[j] % p[j]:
                raise ValueError("vector not in lattice")
            q = v[j] // p[j]
            out[order[j]] = q
            v = add_vec(v, p, -q)
        return out

    def basis(self) -> list[dict[int, int]]:
        return [self.rows[j] for j in sorted(self.rows)]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis())


def kernel_basis(mat: IntMatrix) -> list[dict[int, int]]:
    """Z-basis of the integer kernel of ``mat`` (vectors in column coordinates).

    Sparse column reduction with tracked transforms: unit pivots first (fewest
    entries in their row), then Euclid steps inside a row.  Columns that
    vanish contribute their transform to the kernel basis.
    """
    m, n = mat.shape
    cols: dict[int, dict[int, int]] = {}
    trans: dict[int, dict[int, int]] = {}
    kernel: list[dict[int, int]] = []
    rows: dict[int, set[int]] = {}
    for j, c in enumerate(mat.cols):
        if not c:
            kernel.append({j: 1})
            continue
        cols[j] = dict(c)
        trans[j] = {j: 1}
        for i in c:
            rows.setdefault(i, set()).add(j)

    def axpy(dst: int, src: int, q: int) -> None:
        """column dst -= q * column src (and transforms)."""
        cd, cs = cols[dst], cols[src]
        for i, v in cs.items():
            s_ = cd.get(i, 0) - q * v
            if s_:
                if i not in cd:
                    rows[i].add(dst)
                cd[i] = s_
            else:
                if i in cd:
                    del cd[i]
                    rows[i].discard(dst)
        td = trans[dst]
        for i, v in trans[src].items():
            s_ = td.get(i, 0) - q * v
            if s_:
                td[i] = s_
            else:
                td.pop(i, None)

    def retire(j: int) -> None:
        for i in cols[j]:
            rows[i].discard(j)
        del cols[j]
        del trans[j]

    def settle_zero(j: int) -> None:
        if j in cols and not cols[j]:
            kernel.append(trans[j])
            del cols[j]
            del trans[j]

    import heapq

    heap = [(len(js), i) for i, js in rows.items() if js]
    heapq.heapify(heap)
    while heap:
        cnt, r = heapq.heappop(heap)
        js = rows.get(r)
        if not js:
            continue
        if cnt != len(js):
            heapq.heappush(heap, (len(js), r))
            continue
        best = None
        for j in js:
            v = cols[j][r]
            key = (abs(v), len(cols[j]))
            if best is None or key < best[0]:
                best = (key, j)
        j = best[1]
        while abs(cols[j][r]) != 1:
            others = [j2 for j2 in rows[r] if j2 != j]
            if not others:
                break
            for j2 in others:
                axpy(j2, j, cols[j2][r] // cols[j][r])
                settle_zero(j2)
            if all(j2 not in rows[r] for j2 in others):
                break
            j = min(rows[r], key=lambda x: (abs(cols[x][r]), len(cols[x])))
        pv = cols[j][r]
        if abs(pv) == 1:
            for j2 in list(rows[r]):
                if j2 != j:
                    axpy(j2, j, cols[j2][r] * pv)
                    settle_zero(j2)
        retire(j)
        del rows[r]
    for j in list(cols):
        settle_zero(j)
    return kernel


def solve_integer(mat: IntMatrix, target: dict[int, int]) -> dict[int, int] | None:
    """Some integer x with mat x = target, or None."""
    m, n = mat.shape
    # lattice of (column, -e_j) pairs; reduce (target, 0)
    lat = Lattice(m + n)
    for j, c in enumerate(mat.cols):
        v = dict(c)
        v[m + j] = 1
        lat.add(v)
    rem = lat.reduce(dict(target))
    if any(i < m for i in rem):
        return None
    return {i - m: -x for i, x in rem.items()}


# ---------------------------------------------------------------- presented groups


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + sum of Z/d for d in torsion."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "pretty": str(self)}

    @classmethod
    def from_diagonal(cls, ngens: int, factors: list[int]) -> "AbelianInvariants":
        factors = _normalize_chain(factors)
        return cls(ngens - len(factors), tuple(d for d in factors if d != 1))

    @classmethod
    def parse(cls, text: str) -> "AbelianInvariants":
        """Parse strings such as ``"Z"``, ``"Z/2"``, ``"Z^2 + Z/6"`` or ``"0"``."""
        text = text.strip()
        if text in ("0", ""):
            return cls(0)
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part.startswith("Z/"):
                tors.append(int(part[2:]))
            elif part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            else:
                raise ValueError(f"cannot parse {part!r}")
        return cls(free, tuple(d for d in _normalize_chain(tors) if d != 1))


class FPAbelianGroup:
    """Abelian group Z^ngens / (column span of relations)."""

    def __init__(self, ngens: int, relations: IntMatrix | None = None):
        self.ngens = ngens
        if relations is None:
            relations = IntMatrix.zeros(ngens, 0)
        if relations.nrows != ngens:
            raise ValueError("relations must have ngens rows")
        self.relations = relations
        self._lattice: Lattice | None = None
        self._invariants: AbelianInvariants | None = None
        self._snf: SmithDecomposition | None = None

    @classmethod
    def free(cls, n: int) -> "FPAbelianGroup":
        return cls(n)

    @classmethod
    def cyclic(cls, n: int) -> "FPAbelianGroup":
        if n == 0:
            return cls(1)
        return cls(1, IntMatrix(1, 1, [{0: n}]))

    @classmethod
    def from_invariants(cls, inv: AbelianInvariants) -> "FPAbelianGroup":
        n = inv.free_rank + len(inv.torsion)
        cols = [{inv.free_rank + k: d} for k, d in enumerate(inv.torsion)]
        return cls(n, IntMatrix(n, len(cols), cols))

    @property
    def relation_lattice(self) -> Lattice:
        if self._lattice is None:
            self._lattice = Lattice(self.ngens, self.relations.cols)
        return self._lattice

    def invariants(self) -> AbelianInvariants:
        if self._invariants is None:
            f = invariant_factors(self.relations)
            self._invariants = AbelianInvariants(self.ngens - len(f), tuple(d for d in f if d != 1))
        return self._invariants

    def order(self) -> int | None:
        return self.invariants().order

    def is_zero_element(self, vec: dict[int, int]) -> bool:
        return vec_is_zero(vec) or vec in self.relation_lattice

    def equal(self, a: dict[int, int], b: dict[int, int]) -> bool:
        return self.is_zero_element(add_vec(a, b, -1))

    # canonical coordinates for finite enumeration ------------------------
    def _smith(self) -> SmithDecomposition:
        if self._snf is None:
            self._snf = smith_normal_form(self.relations)
        return self._snf

    def cyclic_orders(self) -> list[int]:
        """Orders of the canonical cyclic coordinates (0 = infinite), length ngens."""
        s = self._smith()
        diag = s.diagonal
        return [abs(diag[i]) if i < len(diag) else 0 for i in range(self.ngens)]

    def normal_form(self, vec: dict[int, int]) -> tuple[int, ...]:
        """Canonical coordinates: equal elements give equal tuples."""
        u = self._smith().u
        orders = self.cyclic_orders()
        out = []
        for i in range(self.ngens):
            y = sum(u[i][j] * x for j, x in vec.items())
            out.append(y % orders[i] if orders[i] else y)
        return tuple(out)

    def from_normal_form(self, coords: Sequence[int]) -> dict[int, int]:
        uinv = _inverse_unimodular(self._smith().u)
        out: dict[int, int] = {}
        for i in range(self.ngens):
            s = sum(uinv[i][j] * coords[j] for j in range(self.ngens))
            if s:
                out[i] = s
        return out

    def elements(self) -> list[tuple[int, ...]]:
        """All elements (as normal forms) of a finite group."""
        orders = self.cyclic_orders()
        if any(o == 0 for o in orders):
            raise ValueError("group is infinite")
        import itertools

        return [tuple(t) for t in itertools.product(*[range(o) for o in orders])]

    def __repr__(self) -> str:
        return f"FPAbelianGroup({self.ngens} gens, {self.relations.ncols} rels) ~ {self.invariants()}"


def vec_is_zero(vec: dict[int, int]) -> bool:
    return all(not x for x in vec.values())


def _inverse_unimodular(u: list[list[int]]) -> list[list[int]]:
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


class AbelianMap:
    """Homomorphism of presented groups given on generators."""

    def __init__(self, source: FPAbelianGroup, target: FPAbelianGroup, matrix: IntMatrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not match groups")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise ValueError("map does not send relations to relations")

    def is_well_defined(self) -> bool:
        lat = self.target.relation_lattice
        for c in self.source.relations.cols:
            if self.matrix.apply(c) not in lat:
                return False
        return True

    def __call__(self, vec: dict[int, int]) -> dict[int, int]:
        return self.matrix.apply(vec)

    def compose(self, first: "AbelianMap") -> "AbelianMap":
        """self o first"""
        return AbelianMap(first.source, self.target, self.matrix @ first.matrix, check=False)

    def is_zero(self) -> bool:
        lat = self.target.relation_lattice
        return all(c in lat for c in self.matrix.cols)

    def _kernel_generators(self) -> list[dict[int, int]]:
        m = self.matrix.hstack(self.target.relations)
        n = self.source.ngens
        gens = []
        for v in kernel_basis(m):
            w = {i: x for i, x in v.items() if i < n}
            if w:
                gens.append(w)
        return gens

    def kernel(self) -> tuple[FPAbelianGroup, "AbelianMap"]:
        """Kernel as a presented group together with its inclusion."""
        n = self.source.ngens
        lat = Lattice(n, self._kernel_generators())
        for c in self.source.relations.cols:
            lat.add(c)
        basis = lat.basis()
        rels = [lat.coordinates(c) for c in self.source.relations.cols]
        k = FPAbelianGroup(len(basis), IntMatrix.from_columns(len(basis), rels))
        inc = AbelianMap(k, self.source, IntMatrix.from_columns(n, basis), check=False)
        return k, inc

    def image(self) -> tuple[FPAbelianGroup, "AbelianMap"]:
        n = self.source.ngens
        rels = self._kernel_generators() + [dict(c) for c in self.source.relations.cols]
        im = FPAbelianGroup(n, IntMatrix.from_columns(n, rels))
        return im, AbelianMap(im, self.target, self.matrix, check=False)

    def cokernel(self) -> tuple[FPAbelianGroup, "AbelianMap"]:
        t = self.target
        ck = FPAbelianGroup(t.ngens, t.relations.hstack(self.matrix))
        return ck, AbelianMap(t, ck, IntMatrix.identity(t.ngens), check=False)

    def is_injective(self) -> bool:
        k, _ = self.kernel()
        return k.invariants().is_zero()

    def is_surjective(self) -> bool:
        ck, _ = self.cokernel()
        return ck.invariants().is_zero()


def subquotient(group: FPAbelianGroup, outgoing: AbelianMap | None, incoming: AbelianMap | None) -> AbelianInvariants:
    """Invariants of ker(outgoing) / im(incoming) inside ``group``."""
    n = group.ngens
    if outgoing is not None:
        if outgoing.source is not group and outgoing.source.ngens != n:
            raise ValueError("outgoing map has wrong source")
        if not outgoing.target.relations.ncols and not group.relations.ncols:
            kgens = kernel_basis(outgoing.matrix)
        else:
            kgens = outgoing._kernel_generators()
    else:
        kgens = [{i: 1} for i in range(n)]
    bgens = [dict(c) for c in group.relations.cols]
    if incoming is not None:
        bgens.extend(dict(c) for c in incoming.matrix.cols)
    klat = Lattice(n, kgens)
    for b in bgens:
        klat.add(b)  # boundaries lie in the kernel; harmless if already there
    coords = [klat.coordinates(b) for b in bgens if b]
    r = klat.rank
    f = invariant_factors(IntMatrix.from_columns(r, coords))
    return AbelianInvariants(r - len(f), tuple(d for d in f if d != 1))


def free_subquotient(outgoing: IntMatrix | None, incoming: IntMatrix | None, n: int) -> AbelianInvariants:
    """ker(outgoing)/im(incoming) for free groups, using elimination only.

    Rank of the homology is n - rank(out) - rank(in); the torsion is the
    nontrivial invariant factors of ``incoming``.
    """
    r_out = rank(outgoing) if outgoing is not None else 0
    f = invariant_factors(incoming) if incoming is not None else []
    return AbelianInvariants(n - r_out - len(f), tuple(d for d in f if d != 1))


# ---------------------------------------------------------------- complexes


@dataclass
class ChainComplexZ:
    """Chain complex of presented groups, boundaries lower degree by one."""

    groups: dict[int, FPAbelianGroup]
    boundaries: dict[int, AbelianMap] = field(default_factory=dict)  # n: C_n -> C_{n-1}

    def group(self, n: int) -> FPAbelianGroup:
        return self.groups.get(n, FPAbelianGroup(0))

    def check_d_squared(self) -> bool:
        for n, d in self.boundaries.items():
            d2 = self.boundaries.get(n - 1)
            if d2 is None:
                continue
            if not d2.compose(d).is_zero():
                return False
        return True

    def all_free(self, degrees: Iterable[int]) -> bool:
        return all(self.group(n).relations.ncols == 0 or self.group(n).relations.is_zero() for n in degrees)

    def homology_at(self, n: int) -> AbelianInvariants:
        if n not in self.groups:
            return AbelianInvariants(0)
        g = self.groups[n]
        out = self.boundaries.get(n)
        inc = self.boundaries.get(n + 1)
        if self.all_free([n - 1, n, n + 1]):
            return free_subquotient(out.matrix if out else None, inc.matrix if inc else None, g.ngens)
        return subquotient(g, out, inc)

    def rational_homology_at(self, n: int) -> int:
        if n not in self.groups:
            return 0
        return rational_subquotient_dim(
            self.group(n).relations,
            self.boundaries[n].matrix if n in self.boundaries else None,
            self.group(n - 1).relations if n in self.boundaries else None,
            self.boundaries[n + 1].matrix if n + 1 in self.boundaries else None,
            self.groups[n].ngens,
        )


@dataclass
class CochainComplexZ:
    """Cochain complex of presented groups, coboundaries raise degree by one."""

    groups: dict[int, FPAbelianGroup]
    coboundaries: dict[int, AbelianMap] = field(default_factory=dict)  # n: C^n -> C^{n+1}

    def group(self, n: int) -> FPAbelianGroup:
        return self.groups.get(n, FPAbelianGroup(0))

    def check_d_squared(self) -> bool:
        for n, d in self.coboundaries.items():
            d2 = self.coboundaries.get(n + 1)
            if d2 is None:
                continue
            if not d2.compose(d).is_zero():
                return False
        return True

    def cohomology_at(self, n: int) -> AbelianInvariants:
        if n not in self.groups:
            return AbelianInvariants(0)
        return subquotient(self.groups[n], self.coboundaries.get(n), self.coboundaries.get(n - 1))

    def rational_cohomology_at(self, n: int) -> int:
        if n not in self.groups:
            return 0
        out = self.coboundaries.get(n)
        inc = self.coboundaries.get(n - 1)
        return rational_subquotient_dim(
            self.groups[n].relations,
            out.matrix if out else None,
            self.group(n + 1).relations if out else None,
            inc.matrix if inc else None,
            self.groups[n].ngens,
        )


def rational_subquotient_dim(
    rel_here: IntMatrix,
    out: IntMatrix | None,
    rel_target: IntMatrix | None,
    inc: IntMatrix | None,
    ngens: int,
) -> int:
    """dim over Q of ker(out)/im(inc) on Q^ngens / span(rel_here).

    Uses dim = (n - rk W) - (rk[out|W'] - rk W') - (rk[inc|W] - rk W) with W the
    relations here and W' the relations of the target.
    """
    rk_w = rank(rel_here) if rel_here.ncols else 0
    dim = ngens - rk_w
    if out is not None:
        if rel_target is not None and rel_target.ncols:
            rk_wt = rank(rel_target)
            dim -= rank(out.hstack(rel_target)) - rk_wt
        else:
            dim -= rank(out)
    if inc is not None:
        dim -= (rank(inc.hstack(rel_here)) - rk_w) if rel_here.ncols else rank(inc)
    return dim


@dataclass
class ChainComplexQ:
    """Rational chain complex on Q^dims[n] modulo optional relation subspaces."""

    dims: dict[int, int]
    boundaries: dict[int, IntMatrix] = field(default_factory=dict)
    relations: dict[int, IntMatrix] = field(default_factory=dict)

    def _rel(self, n: int) -> IntMatrix:
        return self.relations.get(n, IntMatrix.zeros(self.dims.get(n, 0), 0))

    def check_d_squared(self) -> bool:
        for n, d in self.boundaries.items():
            d2 = self.boundaries.get(n - 1)
            if d2 is None:
                continue
            prod = d2 @ d
            rel = self._rel(n - 2)
            if rel.ncols == 0:
                if not prod.is_zero():
                    return False
            elif rank(prod.hstack(rel)) != rank(rel):
                return False
        return True

    def homology_dim(self, n: int) -> int:
        if n not in self.dims:
            return 0
        return rational_subquotient_dim(
            self._rel(n),
            self.boundaries.get(n),
            self._rel(n - 1) if n in self.boundaries else None,
            self.boundaries.get(n + 1),
            self.dims[n],
        )


def abelian_invariants_of_matrix(relations: IntMatrix) -> AbelianInvariants:
    return FPAbelianGroup(relations.nrows, relations).invariants()


@dataclass
class HomologyPresentation:
    """ker(outgoing)/im(incoming) with explicit cycle generators."""

    group: FPAbelianGroup
    cycles: Lattice

    def class_of(self, vec: dict[int, int]) -> dict[int, int]:
        """Coordinates of a cycle in the generators of ``group``."""
        return self.cycles.coordinates(vec)

    def cycle_basis(self) -> list[dict[int, int]]:
        return self.cycles.basis()


def homology_presentation(group: FPAbelianGroup, outgoing: AbelianMap | None, incoming: AbelianMap | None) -> HomologyPresentation:
    n = group.ngens
    if outgoing is not None:
        kgens = outgoing._kernel_generators()
    else:
        kgens = [{i: 1} for i in range(n)]
    klat = Lattice(n, kgens)
    bgens = [dict(c) for c in group.relations.cols]
    if incoming is not None:
        bgens.extend(dict(c) for c in incoming.matrix.cols)
    for b in bgens:
        klat.add(b)
    coords = [klat.coordinates(b) for b in bgens if b]
    r = klat.rank
    return HomologyPresentation(FPAbelianGroup(r, IntMatrix.from_columns(r, coords)), klat)


def induced_map(chain_map: IntMatrix, source: HomologyPresentation, target: HomologyPresentation) -> AbelianMap:
    cols = [target.class_of(chain_map.apply(z)) for z in source.cycle_basis()]
    return AbelianMap(source.group, target.group, IntMatrix.from_columns(target.group.ngens, cols))
