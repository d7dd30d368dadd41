"""Diagonal functors from presheaves on A × A to presheaves on A.

``diagonal_categorical`` restricts along ``a ↦ (a, a)``.  ``day_diagonal`` is
the left Kan extension of a promonoidal structure ``⊗ : A × A -> aSet``,
computed as the coend ``∫^(a,a') X_(a,a') × (a ⊗ a')`` level by level.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .bipresheaf import base_category, external_product
from .category import EZCategory, Morphism, ProductCategory, sort_key
from .errors import BoundError, UnsupportedBaseError
from .presheaf import (CellComplex, ComplexMap, cellularize, product,
                       representable)


@dataclass(frozen=True)
class PromonoidalStructure:
    """One of the built-in structures: ``join`` (Δ, ``([m],[n]) ↦ Δ^(m+n+1)``),
    ``geometric`` (□, ``([1]^m,[1]^n) ↦ [1]^(m+n)``) or ``categorical-product``
    (``(a, a') ↦ ⟦a⟧ × ⟦a'⟧``)."""

    name: str

    def check(self, A: EZCategory) -> None:
        kind = A.kind[0]
        if self.name == "join" and kind != "simplex":
            raise UnsupportedBaseError("the join is defined over Δ only")
        if self.name == "geometric" and kind != "box":
            raise UnsupportedBaseError("the geometric product is defined over □ only")
        if self.name == "categorical-product" and A.kind == ("box", True):
            raise BoundError("categorical products over □ with connections are not finite")

    @property
    def representable_valued(self) -> bool:
        return self.name != "categorical-product"

    def tensor_object(self, a, a2):
        return a + a2 + 1 if self.name == "join" else a + a2

    def tensor_arrow(self, f: Morphism, g: Morphism) -> Morphism:
        if self.name == "join":
            shift = f.cod + 1
            data = f.data + tuple(shift + v for v in g.data)
        elif self.name == "geometric":
            m = f.dom
            data = f.data + tuple(s if isinstance(s, int) else tuple(j + m for j in s)
                                  for s in g.data)
        else:
            raise ValueError("categorical-product values are not representable")
        return Morphism(self.tensor_object(f.dom, g.dom), self.tensor_object(f.cod, g.cod), data)

    def degree(self, A: EZCategory, shape) -> int:
        """Largest cell degree of ``value(shape)``."""
        a, a2 = shape
        if self.representable_valued:
            return A._degree(self.tensor_object(a, a2))
        return A._degree(a) + A._degree(a2)

    def value(self, A: EZCategory, a, a2) -> CellComplex:
        if self.representable_valued:
            return representable(A, self.tensor_object(a, a2))
        return product(representable(A, a), representable(A, a2))

    # elements of value(a, a2) at level c, and the two actions on them
    def elements(self, A: EZCategory, shape, c) -> tuple:
        a, a2 = shape
        if self.representable_valued:
            return A.hom(c, self.tensor_object(a, a2))
        return tuple((u, v) for u in A.hom(c, a) for v in A.hom(c, a2))

    def push(self, A: EZCategory, fg: tuple[Morphism, Morphism], p):
        f, g = fg
        if self.representable_valued:
            return A.compose(self.tensor_arrow(f, g), p)
        return (A.compose(f, p[0]), A.compose(g, p[1]))

    def precompose(self, A: EZCategory, p, psi: Morphism):
        if self.representable_valued:
            return A.compose(p, psi)
        return (A.compose(p[0], psi), A.compose(p[1], psi))


JOIN = PromonoidalStructure("join")
GEOMETRIC = PromonoidalStructure("geometric")
CATEGORICAL_PRODUCT = PromonoidalStructure("categorical-product")

STRUCTURES = {"join": JOIN, "geom": GEOMETRIC, "geometric": GEOMETRIC,
              "categorical-product": CATEGORICAL_PRODUCT}


def _output_category(X: CellComplex, required: int, category: EZCategory | None) -> EZCategory:
    A = base_category(X)
    if category is None:
        return A.with_bound(max(A.bound, required))
    if not category.same_kind(A):
        raise ValueError(f"output category {category} does not match {A}")
    if category.bound < required:
        raise BoundError(f"degree bound {category.bound} is too small for the diagonal; "
                         f"{required} is required", required=required)
    return category


def required_bound(X: CellComplex, P: PromonoidalStructure) -> int:
    A = base_category(X)
    return max((P.degree(A, X.shapes[y]) for y in X.cells), default=0)


def _coend(X: CellComplex, P: PromonoidalStructure, category: EZCategory | None = None):
    A = base_category(X)
    P.check(A)
    out = _output_category(X, required_bound(X, P), category)
    XP = X.category
    find_at = {}
    levels = {}
    for c in out.objects():
        parent = {}
        for y in X.cells:
            for p in P.elements(out, X.shapes[y], c):
                parent[(y, p)] = (y, p)

        def root(m):
            while parent[m] != m:
                parent[m] = parent[parent[m]]
                m = parent[m]
            return m

        for y in X.cells:
            for d in XP.plus_in(X.shapes[y]):
                if XP.is_identity(d):
                    continue
                f = X.face(y, d)
                for p in P.elements(out, d.dom, c):
                    r1 = root((f.cell, P.push(out, f.sigma.data, p)))
                    r2 = root((y, P.push(out, d.data, p)))
                    if r1 != r2:
                        parent[r1] = r2
        classes = defaultdict(list)
        for m in parent:
            classes[root(m)].append(m)
        find = {}
        reps = []
        for ms in classes.values():
            rep = min(ms, key=sort_key)
            reps.append(rep)
            for m in ms:
                find[m] = rep
        find_at[c] = find
        levels[c] = sorted(reps, key=sort_key)

    def act_rep(r, psi):
        y, p = r
        return find_at[psi.dom][(y, P.precompose(out, p, psi))]

    K, nf = cellularize(out, levels, act_rep)

    def classify(y, p):
        c = p.dom if isinstance(p, Morphism) else p[0].dom
        return nf[find_at[c][(y, p)]]

    return K, classify


def day_diagonal(X: CellComplex, P: PromonoidalStructure,
                 category: EZCategory | None = None) -> CellComplex:
    """Left Kan extension of ``P`` along the Yoneda embedding, applied to ``X``.

    The output category defaults to the base category with its bound raised
    to the largest degree of ``a ⊗ a'`` over cells ``(a, a')`` of ``X``; an
    explicit ``category`` whose bound is too small raises :class:`BoundError`.
    """
    return _coend(X, P, category)[0]


def _categorical(X: CellComplex, category: EZCategory | None = None):
    A = base_category(X)
    if A.kind == ("box", True) and category is None:
        raise BoundError("the categorical diagonal over □ with connections is not finite; "
                         "pass a category to truncate explicitly")
    required = max((A._degree(a) + A._degree(b) for a, b in X.shapes.values()), default=0)
    out = _output_category(X, required, category)
    Xo = X.with_category(ProductCategory(out, out))
    PP = Xo.category
    levels = {c: Xo.evaluate((c, c)) for c in out.objects()}

    def act_diag(x, psi):
        return Xo.act(x, PP.pair(psi, psi))

    return cellularize(out, levels, act_diag)


def diagonal_categorical(X: CellComplex, category: EZCategory | None = None) -> CellComplex:
    """Precomposition with ``A -> A × A``: ``(δX)_a = X_(a,a)``."""
    return _categorical(X, category)[0]


def diagonal(X: CellComplex, mode: str, category: EZCategory | None = None) -> CellComplex:
    """Dispatch on ``mode`` in ``{"cat", "join", "geom"}``."""
    if mode == "cat":
        return diagonal_categorical(X, category)
    return day_diagonal(X, STRUCTURES[mode], category)


def tensor(K: CellComplex, L: CellComplex, P: PromonoidalStructure | str,
           category: EZCategory | None = None) -> CellComplex:
    """``K ⊗ L = diag(K ⊠ L)``; the categorical product when ``P`` is
    ``"cat"`` or the categorical-product structure."""
    if P == "cat" or P == CATEGORICAL_PRODUCT:
        return product(K, L, category)
    if isinstance(P, str):
        P = STRUCTURES[P]
    return day_diagonal(external_product(K, L), P, category)


def induced_map(f: ComplexMap, mode: str | PromonoidalStructure,
                category: EZCategory | None = None) -> ComplexMap:
    """``diag f : diag X -> diag Y`` for the diagonal selected by ``mode``."""
    X, Y = f.source, f.target
    if mode == "cat":
        if category is None:
            A = base_category(X)
            req = max((A._degree(a) + A._degree(b)
                       for Z in (X, Y) for a, b in Z.shapes.values()), default=0)
            category = A.with_bound(max(A.bound, base_category(Y).bound, req))
        KX, _ = _categorical(X, category)
        KY, nf = _categorical(Y, category)
        PP = ProductCategory(category, category)
        fo = ComplexMap(X.with_category(PP), Y.with_category(PP), f.assignment, validate=False)
        return ComplexMap(KX, KY, {x: nf[fo.apply(x)] for x in KX.cells}, validate=False)
    P = STRUCTURES[mode] if isinstance(mode, str) else mode
    if category is None:
        A = base_category(X)
        req = max(required_bound(X, P), required_bound(Y, P))
        category = A.with_bound(max(A.bound, base_category(Y).bound, req))
    KX, _ = _coend(X, P, category)
    KY, classify = _coend(Y, P, category)
    assignment = {}
    for (y, p) in KX.cells:
        e = f.image(y)
        assignment[(y, p)] = classify(e.cell, P.push(category, e.sigma.data, p))
    return ComplexMap(KX, KY, assignment, validate=False)
