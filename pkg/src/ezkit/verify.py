"""Invariant sweeps, grouped into named suites.

Each suite returns a list of :class:`Verdict`; :data:`SUITES` is the single
registry used by ``verify --suite``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import corpus
from .bipresheaf import ez_square, external_product, latching_formula_levels, square_category
from .category import (BoxCategory, EZCategory, Morphism, ProductCategory, SimplexCategory,
                       SliceCategory, parse_category, vertex_action)
from .diagonal import GEOMETRIC, JOIN, diagonal_categorical, tensor
from .errors import UnsupportedBaseError
from .homotopy import diagonal_lemma_instance, homology, is_homology_equivalence
from .presheaf import (CellComplex, filtration_check, find_isomorphism, is_isomorphic, product,
                       representable, skeletal_square, terminal_map)


@dataclass(frozen=True)
class Verdict:
    name: str
    ok: bool
    detail: str = ""

    def record(self) -> dict:
        return {"check": self.name, "pass": self.ok, "detail": self.detail}


@dataclass
class Options:
    category: EZCategory | None = None
    bound: int | None = None
    seed: int = 0
    count: int = 20
    counters: dict = field(default_factory=dict)

    def tally(self, key: str, n: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + n

    def categories(self, default_bound: int, kinds=("simplex", "box", "boxc")) -> list[EZCategory]:
        bound = default_bound if self.bound is None else self.bound
        if self.category is not None:
            return [self.category if self.bound is None else self.category.with_bound(bound)]
        return [parse_category(k, bound) for k in kinds]


# ---------------------------------------------------------------------------
# Reedy and EZ axioms


def _semantics(A: EZCategory, f: Morphism):
    """A faithful function-level model of ``f`` used as an independent oracle."""
    if isinstance(A, SimplexCategory):
        return f.data
    if isinstance(A, BoxCategory):
        return tuple(vertex_action(f, v) for v in itertools.product((0, 1), repeat=f.dom))
    if isinstance(A, ProductCategory):
        return (_semantics(A.first, f.data[0]), _semantics(A.second, f.data[1]))
    if isinstance(A, SliceCategory):
        return _semantics(A.base, f.data)
    raise TypeError(A)


def _compose_semantics(A: EZCategory, g, f, dom):
    if isinstance(A, SimplexCategory):
        return tuple(g[v] for v in f)
    if isinstance(A, BoxCategory):
        verts = list(itertools.product((0, 1), repeat=len(f[0]) if f else 0))
        index = {v: i for i, v in enumerate(verts)}
        return tuple(g[index[w]] for w in f)
    if isinstance(A, ProductCategory):
        return (_compose_semantics(A.first, g[0], f[0], dom[0]),
                _compose_semantics(A.second, g[1], f[1], dom[1]))
    if isinstance(A, SliceCategory):
        return _compose_semantics(A.base, g, f, dom.cod)
    raise TypeError(A)


def reedy_checks(A: EZCategory, exhaustive_limit: int = 1_500_000) -> list[Verdict]:
    name = f"reedy/{A.spec}@{A.bound}"
    objs = A.objects()
    out = []

    # unique factorization, by brute force over all (minus, plus) pairs
    bad = 0
    total = 0
    for b in objs:
        for a in objs:
            pairs: dict = {}
            for c in objs:
                minus = [m for m in A.hom(b, c) if A.is_minus(m)]
                plus = [p for p in A.hom(c, a) if A.is_plus(p)]
                for m in minus:
                    for p in plus:
                        pairs.setdefault(A.compose(p, m), []).append((m, p))
            for phi in A.hom(b, a):
                total += 1
                found = pairs.get(phi, [])
                if len(found) != 1 or found[0] != A.factorize(phi):
                    bad += 1
    out.append(Verdict(f"{name}/factorization", bad == 0, f"{total} arrows, {bad} failures"))

    # degree behaviour of the two wide subcategories
    bad = 0
    for b in objs:
        for a in objs:
            for f in A.hom(b, a):
                ident = A.is_identity(f)
                if ident and not (A.is_minus(f) and A.is_plus(f)):
                    bad += 1
                if not ident and A.is_minus(f) and not A.degree(a) < A.degree(b):
                    bad += 1
                if not ident and A.is_plus(f) and not A.degree(b) < A.degree(a):
                    bad += 1
    out.append(Verdict(f"{name}/degree", bad == 0, f"{bad} violations"))

    # sections exist and separate degeneracies
    bad = 0
    count = 0
    for b in objs:
        seen: dict = {}
        for s in A.minus_out(b):
            count += 1
            secs = frozenset(t for t in A.hom(s.cod, b) if A.is_identity(A.compose(s, t)))
            if not secs or secs != frozenset(A.sections(s)):
                bad += 1
            if secs in seen and seen[secs] != s:
                bad += 1
            seen[secs] = s
    out.append(Verdict(f"{name}/sections", bad == 0, f"{count} degeneracies, {bad} failures"))

    # associativity: composition is faithful function composition, plus an
    # exhaustive triple sweep where affordable
    bad = 0
    for b in objs:
        for a in objs:
            sems = [_semantics(A, f) for f in A.hom(b, a)]
            if len(set(sems)) != len(sems):
                bad += 1
    for x in objs:
        for y in objs:
            for z in objs:
                for f in A.hom(x, y):
                    sf = _semantics(A, f)
                    for g in A.hom(y, z):
                        got = _semantics(A, A.compose(g, f))
                        if got != _compose_semantics(A, _semantics(A, g), sf, x):
                            bad += 1
    h = {(x, y): len(A.hom(x, y)) for x in objs for y in objs}
    triples = sum(h[p, q] * h[q, r] * h[r, s] for p in objs for q in objs for r in objs for s in objs)
    detail = f"semantic pair check, {bad} failures"
    if triples <= exhaustive_limit:
        for p, q, r, s in itertools.product(objs, repeat=4):
            for f in A.hom(p, q):
                for g in A.hom(q, r):
                    gf = A.compose(g, f)
                    for k in A.hom(r, s):
                        if A.compose(k, gf) != A.compose(A.compose(k, g), f):
                            bad += 1
        detail = f"{triples} triples exhaustively and semantic pair check, {bad} failures"
    out.append(Verdict(f"{name}/associativity", bad == 0, detail))

    if isinstance(A, BoxCategory):
        out.append(box_closure_check(A))
    return out


def _vertex_table(fn, m: int) -> tuple:
    return tuple(fn(v) for v in itertools.product((0, 1), repeat=m))


def box_generator_closure(bound: int, connections: bool) -> dict[tuple[int, int], set]:
    """Vertex tables of all composites of cubical generators between
    ``[1]^m`` and ``[1]^n`` with ``m, n ≤ bound``."""
    gens: list[tuple[int, int, tuple]] = []
    for n in range(1, bound + 1):
        for i in range(n):
            for e in (0, 1):
                gens.append((n - 1, n, _vertex_table(lambda v, i=i, e=e: v[:i] + (e,) + v[i:], n - 1)))
    for n in range(bound):
        for i in range(n + 1):
            gens.append((n + 1, n, _vertex_table(lambda v, i=i: v[:i] + v[i + 1:], n + 1)))
            if connections and i < n:
                gens.append((n + 1, n, _vertex_table(
                    lambda v, i=i: v[:i] + (max(v[i], v[i + 1]),) + v[i + 2:], n + 1)))
    arrows: dict[tuple[int, int], set] = {(m, m): {_vertex_table(lambda v: v, m)}
                                          for m in range(bound + 1)}
    frontier = [(m, m, t) for (m, _), ts in arrows.items() for t in ts]
    index = {n: {v: k for k, v in enumerate(itertools.product((0, 1), repeat=n))}
             for n in range(bound + 1)}
    while frontier:
        nxt = []
        for m, n, t in frontier:
            for d, c, g in gens:
                if d != n:
                    continue
                comp = tuple(g[index[n][w]] for w in t)
                bucket = arrows.setdefault((m, c), set())
                if comp not in bucket:
                    bucket.add(comp)
                    nxt.append((m, c, comp))
        frontier = nxt
    return arrows


def box_closure_check(A: BoxCategory) -> Verdict:
    bound = min(A.bound, 3)
    closure = box_generator_closure(bound, A.connections)
    bad = []
    for m in range(bound + 1):
        for n in range(bound + 1):
            tables = [_semantics(A, f) for f in A.hom(m, n)]
            if len(set(tables)) != len(tables) or set(tables) != closure.get((m, n), set()):
                bad.append((m, n))
    return Verdict(f"reedy/{A.spec}@{A.bound}/generator-closure", not bad,
                   f"mismatched hom-sets {bad}" if bad else f"degrees ≤ {bound} agree")


def suite_reedy(opts: Options) -> list[Verdict]:
    if opts.category is not None:
        cats = opts.categories(3)
    else:
        bound = 3 if opts.bound is None else opts.bound
        cats = [SimplexCategory(bound), BoxCategory(bound), BoxCategory(bound, True),
                ProductCategory(SimplexCategory(bound), SimplexCategory(bound), bound)]
    out = []
    for A in cats:
        out += reedy_checks(A)
        opts.tally("categories")
    return out


# ---------------------------------------------------------------------------
# Eilenberg-Zilber lemma


def ez_lemma_check(K: CellComplex) -> tuple[bool, str]:
    """Every element has exactly one ``(σ, y)`` with ``y`` non-degenerate and
    ``x = y·σ``; every cell is non-degenerate; the elements are exactly the
    ``y·φ``."""
    A = K.category
    checked = 0
    for a in A.objects():
        elems = K.evaluate(a)
        if len(set(elems)) != len(elems):
            return False, f"duplicate elements at {a!r}"
        generated = {K.act(K.element(y), phi) for y in K.cells for phi in A.hom(a, K.shapes[y])}
        if generated != set(elems):
            return False, f"elements at {a!r} are not the images of cells"
        for x in elems:
            hits = [(s, y) for s in A.minus_out(a) for y in K.cells_of_shape(s.cod)
                    if K.act(K.element(y), s) == x]
            if len(hits) != 1:
                return False, f"{len(hits)} decompositions of {x!r}"
            checked += 1
    for y in K.cells:
        for s in A.minus_out(K.shapes[y]):
            if A.is_identity(s):
                continue
            for t in A.sections(s):
                if K.act(K.act(K.element(y), t), s) == K.element(y):
                    return False, f"cell {y!r} is degenerate along {s!r}"
    return True, f"{checked} elements"


def suite_ez(opts: Options) -> list[Verdict]:
    out = []
    for A in opts.categories(3):
        complexes = corpus.corpus_complexes(A, opts.seed, opts.count)
        if A.kind[0] in ("simplex", "box") and A.bound >= 2:
            complexes += [K.with_category(A) for K in corpus.builtin_complexes(A.bound).values()
                          if K.category.same_kind(A)]
        bad = []
        n = 0
        for i, K in enumerate(complexes):
            ok, detail = ez_lemma_check(K)
            n += int(detail.split()[0]) if ok else 0
            if not ok:
                bad.append(f"#{i}: {detail}")
            opts.tally("complexes")
        out.append(Verdict(f"ez/{A.spec}@{A.bound}/unique-decomposition", not bad,
                           "; ".join(bad) or f"{len(complexes)} complexes, {n} elements"))
    return out


# ---------------------------------------------------------------------------
# skeleta


def suite_skeletal(opts: Options) -> list[Verdict]:
    out = []
    for A in opts.categories(3):
        complexes = corpus.corpus_complexes(A, opts.seed, max(opts.count, 20))
        bad_sq, bad_filt, squares = [], [], 0
        for i, K in enumerate(complexes):
            for n in range(0, A.bound + 1):
                squares += 1
                if not skeletal_square(K, n).is_pushout:
                    bad_sq.append((i, n))
            ok, stable = filtration_check(K)
            if not ok or stable != K.dimension:
                bad_filt.append(i)
            opts.tally("complexes")
        out.append(Verdict(f"skeletal/{A.spec}@{A.bound}/pushout", not bad_sq,
                           f"{squares} squares, failures {bad_sq}" if bad_sq
                           else f"{len(complexes)} complexes, {squares} squares"))
        out.append(Verdict(f"skeletal/{A.spec}@{A.bound}/filtration", not bad_filt,
                           f"failures {bad_filt}" if bad_filt else f"{len(complexes)} complexes"))
    return out


# ---------------------------------------------------------------------------
# latching objects and the pushout square over A × A


def suite_latching(opts: Options) -> list[Verdict]:
    out = []
    for A in opts.categories(2, kinds=("simplex", "box")):
        objs = [a for a in A.objects() if A.degree(a) <= 2]
        bad, n = [], 0
        for a, a2, b in itertools.product(objs, repeat=3):
            res = latching_formula_levels((a, a2), b, A, [c for c in objs], seed=opts.seed)
            n += len(res)
            bad += [(a, a2, b, c) for c, ok in res.items() if not ok]
        opts.tally("latching tuples", n)
        out.append(Verdict(f"latching/{A.spec}@{A.bound}/formula", not bad,
                           f"failures {bad[:5]}" if bad else f"{n} tuples (a, a', b, c)"))
    return out


def suite_ezsquare(opts: Options) -> list[Verdict]:
    out = []
    for A in opts.categories(2):
        P = square_category(A)
        reps = [representable(P, pair) for pair in P.objects() if P.degree(pair) <= 2]
        rand = corpus.corpus_bicomplexes(A, opts.seed, max(opts.count, 20))
        for label, items in (("representables", reps), ("random", rand)):
            bad, n = [], 0
            for i, X in enumerate(items):
                for k in range(-1, A.bound + 2):
                    n += 1
                    if not ez_square(X, k).is_pushout:
                        bad.append((i, k))
                opts.tally("bicomplexes")
            out.append(Verdict(f"ezsquare/{A.spec}@{A.bound}/{label}", not bad,
                               f"failures {bad}" if bad else f"{len(items)} bicomplexes, {n} squares"))
    return out


# ---------------------------------------------------------------------------
# diagonals


def suite_diagonal(opts: Options) -> list[Verdict]:
    """Join and geometric product on representables; categorical diagonal of
    external products against categorical products."""
    bound = 3 if opts.bound is None else opts.bound
    out = []
    D, B, C = SimplexCategory(bound), BoxCategory(bound), BoxCategory(bound, True)
    bad = [(m, n) for m in range(bound) for n in range(bound - m)
           if not is_isomorphic(tensor(representable(D, m), representable(D, n), JOIN),
                                representable(D, m + n + 1))]
    out.append(Verdict(f"diagonal/join@{bound}/representables", not bad,
                       f"failures {bad}" if bad else "⟦m⟧ ⋆ ⟦n⟧ ≅ ⟦m+n+1⟧ for m+n+1 ≤ bound"))
    for A in (B, C):
        bad = [(m, n) for m in range(bound + 1) for n in range(bound + 1 - m)
               if not is_isomorphic(tensor(representable(A, m), representable(A, n), GEOMETRIC),
                                    representable(A, m + n))]
        out.append(Verdict(f"diagonal/geometric-{A.spec}@{bound}/representables", not bad,
                           f"failures {bad}" if bad else "⟦m⟧ ⊗ ⟦n⟧ ≅ ⟦m+n⟧ for m+n ≤ bound"))
    for A in (D.with_bound(2), B.with_bound(2)):
        Ks = [K for K in corpus.corpus_complexes(A, opts.seed, 8, max_degree=1)]
        bad = []
        for i, (K, L) in enumerate(zip(Ks, Ks[1:])):
            X = external_product(K, L)
            diag, prod = diagonal_categorical(X), product(K, L)
            same_sizes = all(len(diag.evaluate(a)) == len(K.with_category(diag.category).evaluate(a))
                             * len(L.with_category(diag.category).evaluate(a))
                             for a in diag.category.objects())
            if not same_sizes or find_isomorphism(diag, prod.with_category(diag.category)) is None:
                bad.append(i)
        out.append(Verdict(f"diagonal/categorical-{A.spec}/external-products", not bad,
                           f"failures {bad}" if bad else f"{len(Ks) - 1} pairs"))
    return out


def suite_diaglemma(opts: Options) -> list[Verdict]:
    """Diagonal-lemma instances, plus the minimal-box product counterexample."""
    out = []
    plan = {"simplex": ("cat", "join"), "box": ("geom",), "boxc": ("geom",)}
    for A in opts.categories(2):
        modes = plan.get(A.spec)
        if modes is None:
            raise UnsupportedBaseError(f"no diagonal-lemma family over {A}")
        family = corpus.diagonal_lemma_family(A)
        for mode in modes:
            bad, n = [], 0
            for m in family:
                levelwise, diag = diagonal_lemma_instance(m.map, mode)
                n += 1
                if not (levelwise and diag):
                    bad.append(m.name)
                opts.tally("maps")
            out.append(Verdict(f"diaglemma/{A.spec}/{mode}", not bad,
                               f"failures {bad}" if bad else f"{n} levelwise equivalences"))
    if opts.category is None or opts.category.kind == ("box", False):
        B = BoxCategory(2)
        sq = product(representable(B, 1), representable(B, 1))
        h = homology(sq)
        ok = h.ranks == (1, 1, 1) and not any(h.torsion)
        out.append(Verdict("diaglemma/box/product-of-intervals-homology", ok, str(h).replace("\n", "; ")))
        out.append(Verdict("diaglemma/box/product-of-intervals-not-contractible",
                           not is_homology_equivalence(terminal_map(sq)), "□¹×□¹ -> □⁰"))
    return out


SUITES: dict[str, Callable[[Options], list[Verdict]]] = {
    "reedy": suite_reedy,
    "ez": suite_ez,
    "skeletal": suite_skeletal,
    "latching": suite_latching,
    "ezsquare": suite_ezsquare,
    "diagonal": suite_diagonal,
    "diaglemma": suite_diaglemma,
}


def run_suite(name: str, opts: Options | None = None) -> list[Verdict]:
    opts = opts or Options()
    names = list(SUITES) if name == "all" else [name]
    verdicts = []
    for n in names:
        verdicts += SUITES[n](opts)
    return sorted(verdicts, key=lambda v: v.name)
