"""Brute-force reference computations that share no code with the package."""

from __future__ import annotations

import itertools
from math import gcd


def monotone_maps(m: int, n: int) -> list[tuple[int, ...]]:
    """All order-preserving maps {0..m} -> {0..n} as value tuples."""
    return list(itertools.combinations_with_replacement(range(n + 1), m + 1))


def surjections(m: int, n: int) -> list[tuple[int, ...]]:
    return [f for f in monotone_maps(m, n) if set(f) == set(range(n + 1))]


def nondegenerate_pairs(n: int, p: int, q: int) -> list[tuple]:
    """Non-degenerate n-simplices of Δ^p × Δ^q: pairs of monotone maps
    [n] -> [p], [n] -> [q] that are jointly injective on consecutive values."""
    out = []
    for f in monotone_maps(n, p):
        for g in monotone_maps(n, q):
            if all((f[i], g[i]) != (f[i + 1], g[i + 1]) for i in range(n)):
                out.append((f, g))
    return out


def cube_vertex_functions(m: int, n: int, connections: bool) -> set[tuple]:
    """Vertex tables of the maps {0,1}^m -> {0,1}^n whose outputs are
    constants or maxima over disjoint, order-respecting coordinate blocks
    (singletons only when ``connections`` is false)."""
    verts = list(itertools.product((0, 1), repeat=m))

    def blocks(start, left):
        if left == 0:
            yield ()
            return
        for c in (0, 1):
            for rest in blocks(start, left - 1):
                yield (c,) + rest
        for first in range(start, m):
            sizes = range(1, m - first + 1) if connections else (1,)
            for size in sizes:
                for extra in itertools.combinations(range(first + 1, m), size - 1):
                    block = (first,) + extra
                    for rest in blocks(max(block) + 1, left - 1):
                        yield (block,) + rest

    out = set()
    for syms in blocks(0, n):
        out.add(tuple(tuple(s if isinstance(s, int) else max(v[j] for j in s) for s in syms)
                      for v in verts))
    return out


def set_pushout_size(B: list, C: list, S: list, f, g) -> int:
    """Number of classes of B ⊔ C modulo f(s) ~ g(s)."""
    parent = {("B", b): ("B", b) for b in B}
    parent.update({("C", c): ("C", c) for c in C})

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for s in S:
        a, b = root(("B", f(s))), root(("C", g(s)))
        if a != b:
            parent[a] = b
    return len({root(x) for x in parent})


def _det(M):
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * _det(minor)
    return total


def determinantal_invariant_factors(M: list[list[int]]) -> list[int]:
    """Invariant factors d_k = D_k / D_(k-1), with D_k the gcd of k × k minors."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def integer_rank(M: list[list[int]]) -> int:
    from fractions import Fraction

    A = [[Fraction(x) for x in row] for row in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                q = A[r][c] / A[rank][c]
                A[r] = [x - q * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def simplicial_components(K) -> int:
    """Number of path components of a complex over Δ, from vertices and edges
    (edge endpoints read through the two cofaces [0] -> [1])."""
    from ezkit import Morphism

    verts = [y for y in K.cells if K.shapes[y] == 0]
    parent = {v: v for v in verts}

    def root(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for y in K.cells:
        if K.shapes[y] != 1:
            continue
        ends = [K.face(y, Morphism(0, 1, (j,))).cell for j in (0, 1)]
        a, b = root(ends[0]), root(ends[1])
        if a != b:
            parent[a] = b
    return len({root(v) for v in verts})
