"""Built-in complexes, seeded random complexes and bicomplexes, and the family
of levelwise homology equivalences used to exercise diagonal functors."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bipresheaf import external_product, external_product_map, square_category
from .category import BoxCategory, EZCategory, SimplexCategory
from .presheaf import (CellComplex, ComplexMap, boundary, coproduct,
                       empty, product, pushout, representable, representable_map,
                       skeleton, subcomplex, terminal_map)


# ---------------------------------------------------------------------------
# small named complexes


def horn(category: EZCategory, n: int, k: int) -> CellComplex:
    """The horn Λⁿ_k: the boundary of Δⁿ without the face opposite ``k``."""
    R = representable(category, n)
    faces = [category.label(category.face(n, i)) for i in range(n + 1) if i != k]
    return subcomplex(R, faces)[0]


def open_box(category: EZCategory, n: int, i: int, eps: int) -> CellComplex:
    """``∂□ⁿ`` without the face ``δ_i^ε``."""
    R = representable(category, n)
    faces = [category.label(category.face(n, j, e)) for j in range(n) for e in (0, 1)
             if (j, e) != (i, eps)]
    return subcomplex(R, faces)[0]


def collapse(K: CellComplex) -> ComplexMap:
    """The unique map to the terminal complex."""
    return terminal_map(K)


def circle(category: EZCategory) -> CellComplex:
    """One vertex and one 1-cell, obtained by collapsing the boundary of ⟦1⟧."""
    R = representable(category, 1)
    dR, incl = skeleton(R, 0)
    P, _, _ = pushout(incl, collapse(dR))
    return P


def inclusion(sub: CellComplex, K: CellComplex) -> ComplexMap:
    return ComplexMap(sub, K, {y: K.element(y) for y in sub.cells})


def builtin_complexes(bound: int = 3) -> dict[str, CellComplex]:
    """Named complexes written by the ``examples`` command."""
    D, B, C = SimplexCategory(bound), BoxCategory(bound), BoxCategory(bound, True)
    out: dict[str, CellComplex] = {"empty": empty(D)}
    for A, tag in ((D, "simplex"), (B, "box"), (C, "boxc")):
        for a in range(min(bound, 3) + 1):
            out[f"{tag}-{a}"] = representable(A, a)
        for a in range(1, min(bound, 3) + 1):
            out[f"{tag}-boundary-{a}"] = boundary(A, a)
        out[f"{tag}-circle"] = circle(A)
    if bound >= 2:
        out["simplex-horn-2-1"] = horn(D, 2, 1)
        out["box-open-2"] = open_box(B, 2, 0, 1)
        out["simplex-square-product"] = product(representable(D, 1), representable(D, 1))
        out["box-min-square-product"] = product(representable(B, 1), representable(B, 1))
        P = square_category(D.with_bound(max(bound // 2, 1)))
        out["bi-simplex-1-1"] = representable(P, (1, 1))
        out["bi-boundary-2-x-simplex-1"] = external_product(
            boundary(D.with_bound(2), 2), representable(D.with_bound(2), 1))
    return out


# ---------------------------------------------------------------------------
# random complexes


def _glue(K: CellComplex, a, y1, y2) -> CellComplex:
    """Identify two cells of the same shape ``a``."""
    A = K.category
    R = representable(A, a)
    two = coproduct([R, R], A)
    top = ComplexMap(two, K, {(i, c): K.act(K.element(y), p)
                              for i, y in enumerate((y1, y2))
                              for c, p in [(A.label(p), p) for p in A.plus_in(a)]}, validate=False)
    fold = ComplexMap(two, R, {(i, c): R.element(c) for (i, c) in two.cells}, validate=False)
    return pushout(top, fold)[0]


def _squash(K: CellComplex, y, sigma) -> CellComplex:
    """Collapse the cell ``y`` along the degeneracy ``sigma`` out of its shape."""
    A = K.category
    a = K.shapes[y]
    R = representable(A, a)
    into = ComplexMap(R, K, {A.label(p): K.act(K.element(y), p) for p in A.plus_in(a)},
                      validate=False)
    return pushout(into, representable_map(A, sigma))[0]


def random_complex(A: EZCategory, rng: random.Random, max_degree: int | None = None,
                   max_pieces: int = 3, min_degree: int = 0) -> CellComplex:
    """A random finite presheaf: a subcomplex of a few representables, with
    random identifications and collapses."""
    top = A.bound if max_degree is None else min(max_degree, A.bound)
    objs = [a for a in A.objects() if min(min_degree, top) <= A.degree(a) <= top]
    pieces = [representable(A, rng.choice(objs)) for _ in range(rng.randint(1, max_pieces))]
    K = coproduct(pieces, A)
    keep = rng.sample(list(K.cells), k=rng.randint((len(K.cells) + 1) // 2, len(K.cells)))
    K, _ = subcomplex(K, keep)
    for _ in range(rng.randint(0, 2)):
        move = rng.random()
        if move < 0.5:
            shapes = [a for a in {K.shapes[y] for y in K.cells}
                      if len(K.cells_of_shape(a)) >= 2]
            if shapes:
                a = rng.choice(sorted(shapes, key=A.degree))
                y1, y2 = rng.sample(list(K.cells_of_shape(a)), 2)
                K = _glue(K, a, y1, y2)
        else:
            cands = [y for y in K.cells if K.degree_of(y) > 0]
            if cands:
                y = rng.choice(cands)
                sigmas = [s for s in A.minus_out(K.shapes[y]) if not A.is_identity(s)]
                K = _squash(K, y, rng.choice(sigmas))
    return K


def random_bicomplex(A: EZCategory, rng: random.Random, max_degree: int = 2) -> CellComplex:
    """Random presheaf on ``A × A``: external products and representables,
    glued and cut down."""
    P = square_category(A)
    kind = rng.random()
    if kind < 0.4:
        K = random_complex(A, rng, max_degree=max(max_degree - 1, 1), max_pieces=2)
        L = random_complex(A, rng, max_degree=1, max_pieces=2, min_degree=1)
        X = external_product(K, L)
        if X.category != P:
            X = X.with_category(P)
    else:
        X = random_complex(P, rng, max_degree=max_degree, max_pieces=2, min_degree=1)
    return X


def corpus_complexes(A: EZCategory, seed: int = 0, count: int = 20,
                     max_degree: int | None = None) -> list[CellComplex]:
    rng = random.Random(f"{seed}:{A.spec}")
    return [random_complex(A, rng, max_degree) for _ in range(count)]


def corpus_bicomplexes(A: EZCategory, seed: int = 0, count: int = 20,
                       max_degree: int = 2) -> list[CellComplex]:
    rng = random.Random(f"{seed}:{A.spec}:bi")
    return [random_bicomplex(A, rng, max_degree) for _ in range(count)]


# ---------------------------------------------------------------------------
# levelwise homology equivalences


@dataclass
class FamilyMember:
    name: str
    map: ComplexMap


def _boxed(f: ComplexMap, L: CellComplex) -> ComplexMap:
    return external_product_map(f, ComplexMap.identity(L))


def collapse_pushout(X: CellComplex, K: CellComplex, L: CellComplex, at) -> ComplexMap:
    """Glue ``K ⊠ L`` onto ``X`` along ``{v} ⊠ L -> X`` (``at`` is the image of
    the vertex ``v`` of ``K`` on every cell of ``L``) and collapse ``K`` to a
    point: returns ``W -> W'`` where ``W = X ∪ K ⊠ L``."""
    A = K.category
    v = next(y for y in K.cells if K.degree_of(y) == 0)
    pt = representable(A, 0)
    (vertex,) = pt.cells
    vin = ComplexMap(pt, K, {vertex: K.element(v)}, validate=False)
    S = external_product(pt, L)
    leg = _boxed(vin, L)
    glue = ComplexMap(S, X, {(vertex, z): at(z) for z in L.cells}, validate=False)
    _, from_KL, _ = pushout(leg, glue)
    _, _, q = pushout(_boxed(collapse(K), L), from_KL)
    return q


def diagonal_lemma_family(A: EZCategory) -> list[FamilyMember]:
    """At least ten maps of bicomplexes over ``A × A`` that are homology
    equivalences after fixing the second coordinate."""
    kind = A.kind[0]
    A2 = A.with_bound(2)
    pt = representable(A2, 0)
    I = representable(A2, 1)
    seconds = {"point": pt, "interval": I, "circle": circle(A2)}
    if kind == "simplex":
        seconds["triangle-boundary"] = boundary(A2, 2)
        firsts = {
            "collapse-interval": collapse(I),
            "collapse-triangle": collapse(representable(A2, 2)),
            "horn-inclusion": inclusion(horn(A2, 2, 1), representable(A2, 2)),
            "degeneracy": representable_map(A2, A2.degeneracy(1, 0)),
        }
    else:
        seconds["square-boundary"] = boundary(A2, 2)
        firsts = {
            "collapse-interval": collapse(I),
            "collapse-square": collapse(representable(A2, 2)),
            "open-box-inclusion": inclusion(open_box(A2, 2, 0, 1), representable(A2, 2)),
            "degeneracy": representable_map(A2, A2.degeneracy(1, 0)),
        }
    members = []
    for fname, f in firsts.items():
        for lname in ("point", "interval", "circle"):
            members.append(FamilyMember(f"{fname} ⊠ {lname}", _boxed(f, seconds[lname])))
    last = list(seconds)[-1]
    members.append(FamilyMember(f"collapse-interval ⊠ {last}", _boxed(collapse(I), seconds[last])))
    # pushouts of collapses: hang an interval off a bicomplex and collapse it
    C = seconds["circle"]
    base = external_product(seconds[last], C)
    v0 = next(y for y in seconds[last].cells if seconds[last].degree_of(y) == 0)
    members.append(FamilyMember(
        f"collapse glued onto {last} ⊠ circle",
        collapse_pushout(base, I, C, lambda z: base.element((v0, z)))))
    members.append(FamilyMember(
        "collapse glued onto interval ⊠ interval",
        collapse_pushout(external_product(I, I), I, I,
                         lambda z: external_product(I, I).element((next(iter(I.cells)), z)))))
    return members


def named_family(A: EZCategory) -> dict[str, ComplexMap]:
    return {m.name: m.map for m in diagonal_lemma_family(A)}

