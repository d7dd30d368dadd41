"""Presheaves on A × A: external products, currying, latching objects, and
the skeletal pushout square for the second coordinate."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .category import EZCategory, Morphism, ProductCategory
from .presheaf import (CellComplex, Colimit, ComplexMap, Element, colimit, coproduct,
                       coproduct_map, is_pushout, pushout_colimit,
                       representable, representable_map, skeleton, subcomplex)

BiComplex = CellComplex
BiComplexMap = ComplexMap


def square_category(A: EZCategory) -> ProductCategory:
    return ProductCategory(A, A)


def base_category(X: CellComplex) -> EZCategory:
    cat = X.category
    if not isinstance(cat, ProductCategory) or cat.first != cat.second or cat.total is not None:
        raise ValueError(f"expected a complex over A × A, got {cat}")
    return cat.first


def _common_base(K: CellComplex, L: CellComplex) -> EZCategory:
    if not K.category.same_kind(L.category):
        raise ValueError(f"base categories differ: {K.category} vs {L.category}")
    return K.category if K.category.bound >= L.category.bound else L.category


def external_product(K: CellComplex, L: CellComplex) -> CellComplex:
    """``K ⊠ L`` with ``(K ⊠ L)_(c,d) = K_c × L_d``; cells are pairs of cells."""
    A = _common_base(K, L)
    P = square_category(A)
    shapes, faces = {}, {}
    for y in K.cells:
        for z in L.cells:
            shape = (K.shapes[y], L.shapes[z])
            shapes[(y, z)] = shape
            for pq in P.plus_in(shape):
                p, q = pq.data
                if A.is_identity(p) and A.is_identity(q):
                    continue
                fy, fz = K.face(y, p), L.face(z, q)
                faces[((y, z), pq)] = Element(P.pair(fy.sigma, fz.sigma), (fy.cell, fz.cell))
    return CellComplex(P, shapes, faces, validate=False)


def external_product_map(f: ComplexMap, g: ComplexMap) -> ComplexMap:
    """``f ⊠ g``."""
    src = external_product(f.source, g.source)
    tgt = external_product(f.target, g.target)
    P = tgt.category
    assignment = {}
    for (y, z) in src.cells:
        fy, gz = f.image(y), g.image(z)
        assignment[(y, z)] = Element(P.pair(fy.sigma, gz.sigma), (fy.cell, gz.cell))
    return ComplexMap(src, tgt, assignment, validate=False)


# ---------------------------------------------------------------------------
# currying: X_a is the presheaf b ↦ X_(b, a)


def to_curried(x: Element) -> Element:
    """An element of ``X`` at ``(c, a)`` as an element of ``X_a`` at ``c``."""
    s, t = x.sigma.data
    return Element(s, (t, x.cell))


def from_curried(X: CellComplex, x: Element) -> Element:
    t, y = x.cell
    return Element(X.category.pair(x.sigma, t), y)


def curry_level(X: CellComplex, a) -> CellComplex:
    """The presheaf ``b ↦ X_(b, a)`` on A.

    Its cells are pairs ``(τ, y)`` with ``y`` a cell of shape ``(b, b')`` and
    ``τ : a -> b'`` in A₋.
    """
    A = base_category(X)
    P = X.category
    shapes, faces = {}, {}
    for t in A.minus_out(a):
        for y in X.cells:
            b, b2 = X.shapes[y]
            if b2 != t.cod:
                continue
            cid = (t, y)
            shapes[cid] = b
            for p in A.plus_in(b):
                if A.is_identity(p):
                    continue
                f = X.face(y, P.pair(p, A.identity(b2)))
                s1, t1 = f.sigma.data
                faces[(cid, p)] = Element(s1, (A.compose(t1, t), f.cell))
    return CellComplex(A, shapes, faces, validate=False)


def curry_map(X: CellComplex, psi: Morphism) -> ComplexMap:
    """``X_a -> X_a'`` induced by ``psi : a' -> a``."""
    A = base_category(X)
    src, tgt = curry_level(X, psi.cod), curry_level(X, psi.dom)
    assignment = {}
    for (t, y) in src.cells:
        b = src.shapes[(t, y)]
        x = Element(X.category.pair(A.identity(b), t), y)
        assignment[(t, y)] = to_curried(X.act(x, X.category.pair(A.identity(b), psi)))
    return ComplexMap(src, tgt, assignment, validate=False)


def curry_level_map(f: ComplexMap, a) -> ComplexMap:
    """``f_a : X_a -> Y_a``."""
    X, Y = f.source, f.target
    A = base_category(X)
    src, tgt = curry_level(X, a), curry_level(Y, a)
    assignment = {}
    for (t, y) in src.cells:
        b = src.shapes[(t, y)]
        x = Element(X.category.pair(A.identity(b), t), y)
        assignment[(t, y)] = to_curried(f.apply(x))
    return ComplexMap(src, tgt, assignment, validate=False)


# ---------------------------------------------------------------------------
# latching objects


def _latching(X: CellComplex, b) -> tuple[Colimit, ComplexMap, tuple[Morphism, ...]]:
    A = base_category(X)
    LC = A.latching_category(b)
    objects = [curry_level(X, s.cod) for s in LC.objects]
    arrows = [(j, i, curry_map(X, t)) for i, j, t in LC.arrows]
    col = colimit(objects, arrows, A)
    comparison = col.descend(curry_level(X, b), [curry_map(X, s) for s in LC.objects])
    return col, comparison, LC.objects


def latching_object(X: CellComplex, b) -> tuple[CellComplex, ComplexMap]:
    """``L_b X`` and the canonical map ``L_b X -> X_b``."""
    col, comparison, _ = _latching(X, b)
    return col.complex, comparison


def latching_map(f: ComplexMap, b) -> ComplexMap:
    """``L_b X -> L_b Y`` induced by ``f : X -> Y``."""
    colx, _, objs = _latching(f.source, b)
    coly, _, _ = _latching(f.target, b)
    comps = [curry_level_map(f, s.cod) for s in objs]
    return ComplexMap(colx.complex, coly.complex,
                      {(i, c): coly.classify(i, comps[i].image(c)) for (i, c) in colx.complex.cells},
                      validate=False)


def _representable_arrow(P: ProductCategory, x: Element, plus_of: dict) -> Morphism:
    """The arrow of ``A×A`` named by an element of a representable bicomplex."""
    return P.compose(plus_of[x.cell], x.sigma)


def latching_formula_check(pair: tuple, b, c, A: EZCategory, samples: int = 6,
                           seed: int = 0) -> bool:
    """Compare ``(L_b ⟦(a, a')⟧)_c`` with ``A(c, a) × {f : b -> a' | f₋ ≠ id}``.

    Cardinalities must agree, the canonical identification must be a
    bijection onto the right-hand side, and it must commute with the maps
    induced by a sample of arrows out of ``(a, a')``.
    """
    return latching_formula_levels(pair, b, A, [c], samples, seed)[c]


def latching_formula_levels(pair: tuple, b, A: EZCategory, levels=None, samples: int = 6,
                            seed: int = 0) -> dict:
    """:func:`latching_formula_check` for several levels ``c`` at once
    (default: every object of ``A``)."""
    a, a2 = pair
    P = square_category(A)
    levels = list(A.objects()) if levels is None else list(levels)
    X = representable(P, pair)
    L, comparison = latching_object(X, b)
    plus_of = {P.label(p): p for p in P.plus_in(pair)}
    degenerate = [f for f in A.hom(b, a2) if not A.is_identity(A.factorize(f)[0])]

    def named(Z, comp, plus, x):
        return _representable_arrow(P, from_curried(Z, comp.apply(x)), plus).data

    verdict = {}
    for c in levels:
        rhs = {(u, f) for u in A.hom(c, a) for f in degenerate}
        lhs = [named(X, comparison, plus_of, x) for x in L.evaluate(c)]
        verdict[c] = len(lhs) == len(rhs) and set(lhs) == rhs

    rng = random.Random(seed)
    arrows = [al for e in P.objects() for al in P.hom(pair, e) if not P.is_identity(al)]
    for al in rng.sample(arrows, min(samples, len(arrows))):
        Y = representable(P, al.cod)
        _, comp_y = latching_object(Y, b)
        plus_y = {P.label(p): p for p in P.plus_in(al.cod)}
        induced = latching_map(representable_map(P, al), b)
        u1, u2 = al.data
        for c in levels:
            for x in L.evaluate(c):
                u, f = named(X, comparison, plus_of, x)
                v, g = named(Y, comp_y, plus_y, induced.apply(x))
                if v != A.compose(u1, u) or g != A.compose(u2, f):
                    verdict[c] = False
    return verdict


# ---------------------------------------------------------------------------
# skeleta and the pushout square


def bi_skeleton(X: CellComplex, n: int) -> tuple[CellComplex, ComplexMap]:
    """Cells whose second shape coordinate has degree ≤ n, with the inclusion."""
    A = base_category(X)
    return subcomplex(X, [y for y in X.cells if A._degree(X.shapes[y][1]) <= n])


@dataclass
class EzSquare:
    top: ComplexMap
    left: ComplexMap
    right: ComplexMap
    bottom: ComplexMap
    is_pushout: bool


def _evaluation_map(X: CellComplex, target: CellComplex, src: CellComplex,
                    first: ComplexMap | None, a, plus_of: dict) -> ComplexMap:
    """``(x, h) ↦ x · (id, h)`` on ``K ⊠ R`` where ``first : K -> X_a`` (``None``
    when ``K = X_a``) and ``R ⊆ ⟦a⟧``."""
    A = base_category(X)
    P = X.category
    assignment = {}
    for (k, r) in src.cells:
        xa = first.image(k) if first is not None else Element(A.identity(src.shapes[(k, r)][0]), k)
        x = from_curried(X, xa)
        e = X.act(x, P.pair(A.identity(xa.level), plus_of[r]))
        if e.cell not in target:
            raise AssertionError(f"evaluation of {(k, r)!r} leaves the expected skeleton")
        assignment[(k, r)] = e
    return ComplexMap(src, target, assignment, validate=False)


def ez_square(X: CellComplex, n: int) -> EzSquare:
    """The square

        ∐ L_aX ⊠ ⟦a⟧ ∪ X_a ⊠ ∂⟦a⟧  ---->  Sk^(n-1) X
                 |                             |
        ∐ X_a ⊠ ⟦a⟧                 ---->  Skⁿ X

    over objects ``a`` of degree ``n``, together with its pushout verdict.
    """
    A = base_category(X)
    P = X.category
    sk_lo, _ = bi_skeleton(X, n - 1)
    sk_hi, _ = bi_skeleton(X, n)
    right = ComplexMap(sk_lo, sk_hi, {y: sk_hi.element(y) for y in sk_lo.cells}, validate=False)
    corners, cells, tops, lefts, bottoms = [], [], [], [], []
    for a in (A.objects_of_degree(n) if n >= 0 else ()):
        L, ell = latching_object(X, a)
        Xa = ell.target
        R = representable(A, a)
        dR, incl = skeleton(R, n - 1)
        plus_of = {A.label(p): p for p in A.plus_in(a)}
        LR, LdR = external_product(L, R), external_product(L, dR)
        XdR, XR = external_product(Xa, dR), external_product(Xa, R)
        id_L, id_X = ComplexMap.identity(L), ComplexMap.identity(Xa)
        col = pushout_colimit(external_product_map(id_L, incl), external_product_map(ell, ComplexMap.identity(dR)))
        to_cell = col.descend(XR, [external_product_map(ell, ComplexMap.identity(R)),
                                   external_product_map(id_X, incl),
                                   external_product_map(ell, incl)])
        ev_LR = _evaluation_map(X, sk_lo, LR, ell, a, plus_of)
        ev_XdR = _evaluation_map(X, sk_lo, XdR, None, a, plus_of)
        ev_LdR = _evaluation_map(X, sk_lo, LdR, ell, a, plus_of)
        corners.append(col.complex)
        cells.append(XR)
        tops.append(col.descend(sk_lo, [ev_LR, ev_XdR, ev_LdR]))
        lefts.append(to_cell)
        bottoms.append(_evaluation_map(X, sk_hi, XR, None, a, plus_of))
    corner = coproduct(corners, P)
    cell = coproduct(cells, P)
    top = coproduct_map(corner, sk_lo, tops)
    left = ComplexMap(corner, cell, {(i, c): _tag(i, lefts[i].image(c)) for (i, c) in corner.cells},
                      validate=False)
    bottom = coproduct_map(cell, sk_hi, bottoms)
    return EzSquare(top, left, right, bottom, is_pushout(top, left, right, bottom))


def _tag(i: int, e: Element) -> Element:
    return Element(e.sigma, (i, e.cell))
