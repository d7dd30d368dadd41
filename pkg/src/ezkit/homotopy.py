"""Integral homology of simplicial and cubical complexes.

Chains are normalized: the basis in degree n is the set of non-degenerate
n-cells and degenerate faces are dropped.  Weak equivalences are replaced by
integral homology equivalences, which are decided exactly through the
mapping cone.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .errors import UnsupportedBaseError
from .presheaf import CellComplex, ComplexMap

Column = dict[int, int]


# ---------------------------------------------------------------------------
# Smith normal form


def _dense_snf(A: list[list[int]]) -> list[int]:
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    ri, rt = A[i], A[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for i in range(t, m):
                        if A[i][t]:
                            A[i][j] -= q * A[i][t]
                    clean = clean and not A[t][j]
            if clean:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                rt, ri = A[t], A[bad[0]]
                for j in range(t, n):
                    rt[j] += ri[j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cands)
            if j == t:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        factors.append(abs(A[t][t]))
        t += 1
    return factors


def _snf_columns(columns: Sequence[Column], nrows: int) -> list[int]:
    """Invariant factors of the matrix whose j-th column is ``columns[j]``."""
    # eliminate unit pivots sparsely, then finish densely
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows[i][j] = v
    by_col: dict[int, set[int]] = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            by_col[j].add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda i: len(rows[i])):
            r = rows[i]
            pivot = next((j for j, v in r.items() if v in (1, -1)), None)
            if pivot is None:
                continue
            p = r[pivot]
            del rows[i]
            for j in r:
                by_col[j].discard(i)
            for k in list(by_col[pivot]):
                rk = rows[k]
                q = rk[pivot] * p
                for j, v in r.items():
                    nv = rk.get(j, 0) - q * v
                    if nv:
                        if j not in rk:
                            by_col[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        by_col[j].discard(k)
                if not rk:
                    del rows[k]
            del by_col[pivot]
            units += 1
            progress = True
            break
    rest = [i for i in rows if rows[i]]
    cols = sorted({j for i in rest for j in rows[i]})
    dense = [[rows[i].get(j, 0) for j in cols] for i in rest]
    return [1] * units + _dense_snf(dense)


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | …`` (non-zero ones) and the rank of ``M``."""
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    columns = [{i: int(M[i][j]) for i in range(nrows) if M[i][j]} for j in range(ncols)]
    factors = sorted(_snf_columns(columns, nrows))
    return factors, len(factors)


# ---------------------------------------------------------------------------
# chains


def _face_terms(K: CellComplex, n: int):
    """``(sign, face)`` pairs defining the differential on an n-cell."""
    cat = K.category
    kind = cat.kind[0]
    if kind == "simplex":
        return [((-1) ** i, cat.face(n, i)) for i in range(n + 1)]
    if kind == "box":
        terms = []
        for i in range(n):
            terms.append(((-1) ** i, cat.face(n, i, 1)))
            terms.append((-((-1) ** i), cat.face(n, i, 0)))
        return terms
    raise UnsupportedBaseError(f"homology is only available over Δ and □, not {cat}")


@dataclass
class ChainComplex:
    """Normalized chains: ``bases[n]`` lists the n-cells, ``boundaries[n]`` the
    columns of ``∂_n`` (indexed by position in ``bases[n-1]``)."""

    bases: dict[int, list]
    boundaries: dict[int, list[Column]] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.bases, default=-1)

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def matrix(self, n: int) -> list[list[int]]:
        cols = self.boundaries.get(n, [])
        return [[c.get(i, 0) for c in cols] for i in range(self.rank(n - 1))]


def chain_complex(K: CellComplex) -> ChainComplex:
    _face_terms(K, 0)
    bases: dict[int, list] = defaultdict(list)
    for y in K.cells:
        bases[K.degree_of(y)].append(y)
    bases = {n: bases.get(n, []) for n in range(K.dimension + 1)}
    index = {n: {y: i for i, y in enumerate(cells)} for n, cells in bases.items()}
    cc = ChainComplex(bases)
    for n in range(1, K.dimension + 1):
        terms = _face_terms(K, n)
        cols = []
        for y in bases[n]:
            col: Column = {}
            for sign, d in terms:
                f = K.face(y, d)
                if f.sigma.dom != f.sigma.cod:
                    continue
                i = index[n - 1][f.cell]
                col[i] = col.get(i, 0) + sign
            cols.append({i: v for i, v in col.items() if v})
        cc.boundaries[n] = cols
    for n in range(2, K.dimension + 1):
        for col in cc.boundaries[n]:
            total: Column = defaultdict(int)
            for i, v in col.items():
                for k, w in cc.boundaries[n - 1][i].items():
                    total[k] += v * w
            if any(total.values()):
                raise AssertionError(f"∂∘∂ ≠ 0 in degree {n}")
    return cc


def chain_map(f: ComplexMap) -> dict[int, list[Column]]:
    """Columns of the induced chain map in each degree."""
    src, tgt = chain_complex(f.source), chain_complex(f.target)
    index = {n: {y: i for i, y in enumerate(cells)} for n, cells in tgt.bases.items()}
    out = {}
    for n, cells in src.bases.items():
        cols = []
        for y in cells:
            e = f.image(y)
            if e.sigma.dom == e.sigma.cod:
                cols.append({index[n][e.cell]: 1})
            else:
                cols.append({})
        out[n] = cols
    return out


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologySummary:
    """Free ranks and torsion coefficients, degree by degree."""

    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __str__(self):
        lines = []
        for n, (r, tors) in enumerate(zip(self.ranks, self.torsion)):
            parts = ([f"Z^{r}"] if r else []) + [f"Z/{d}" for d in tors]
            lines.append(f"H_{n} = {' + '.join(parts) if parts else '0'}")
        return "\n".join(lines)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))

    def records(self) -> list[dict]:
        return [{"degree": n, "rank": r, "torsion": list(t)}
                for n, (r, t) in enumerate(zip(self.ranks, self.torsion))]


def homology(K: CellComplex) -> HomologySummary:
    cc = chain_complex(K)
    top = cc.top
    facts = {n: sorted(_snf_columns(cc.boundaries.get(n, []), cc.rank(n - 1)))
             for n in range(1, top + 1)}
    ranks, torsion = [], []
    for n in range(top + 1):
        r_out = len(facts.get(n, ()))
        into = facts.get(n + 1, [])
        ranks.append(cc.rank(n) - r_out - len(into))
        torsion.append(tuple(d for d in into if d > 1))
    return HomologySummary(tuple(ranks), tuple(torsion))


def euler_characteristic(K: CellComplex) -> int:
    return sum((-1) ** n * c for n, c in K.census().items())


def is_homology_equivalence(f: ComplexMap) -> bool:
    """Whether ``f`` induces isomorphisms on integral homology, decided by
    checking that the mapping cone is acyclic."""
    X, Y = chain_complex(f.source), chain_complex(f.target)
    fm = chain_map(f)
    top = max(X.top + 1, Y.top)

    def cone_rank(n):
        return X.rank(n - 1) + Y.rank(n)

    def cone_columns(n):
        # basis of cone_n: X_{n-1} (offset 0) then Y_n (offset |X_{n-1}|)
        off = X.rank(n - 2)
        cols = []
        for i in range(X.rank(n - 1)):
            col: Column = {}
            if n - 1 >= 1:
                for k, v in X.boundaries[n - 1][i].items():
                    col[k] = -v
            for k, v in fm[n - 1][i].items():
                col[off + k] = col.get(off + k, 0) + v
            cols.append({k: v for k, v in col.items() if v})
        for j in range(Y.rank(n)):
            col = {}
            if n >= 1:
                for k, v in Y.boundaries[n][j].items():
                    col[off + k] = v
            cols.append(col)
        return cols

    facts = {n: _snf_columns(cone_columns(n), cone_rank(n - 1)) for n in range(1, top + 1)}
    for n in range(0, top + 1):
        into = facts.get(n + 1, [])
        if cone_rank(n) != len(facts.get(n, ())) + len(into):
            return False
        if any(d != 1 for d in into):
            return False
    return True


# ---------------------------------------------------------------------------
# diagonal-lemma instances


def is_levelwise_homology_equivalence(f: ComplexMap) -> bool:
    """Whether ``f_a : X_a -> Y_a`` is a homology equivalence for every ``a``."""
    from .bipresheaf import base_category, curry_level_map

    A = base_category(f.source)
    return all(is_homology_equivalence(curry_level_map(f, a)) for a in A.objects())


def diagonal_lemma_instance(f: ComplexMap, mode: str) -> tuple[bool, bool]:
    """``(hypothesis, conclusion)`` for one map of bicomplexes: whether ``f`` is a
    levelwise homology equivalence, and whether ``diag f`` is one.

    A passing pair is evidence, not proof: homology equivalence is only a
    necessary condition for a weak equivalence.
    """
    from .diagonal import induced_map

    return is_levelwise_homology_equivalence(f), is_homology_equivalence(induced_map(f, mode))
