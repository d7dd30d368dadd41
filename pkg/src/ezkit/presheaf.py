"""Finite presheaves on an EZ category, stored cellularly.

A :class:`CellComplex` keeps only its non-degenerate cells together with the
Eilenberg-Zilber normal form of every face ``y·p`` (``p`` ranging over the
A₋-free arrows, i.e. A₊, into the cell's shape).  Every other element is a
pair ``(σ, y)`` with ``σ`` in A₋; by the Eilenberg-Zilber lemma that pair is
unique, so :class:`Element` equality is equality in the presheaf.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .category import EZCategory, Morphism, sort_key
from .errors import BoundError


class Element:
    """An element ``cell · sigma`` in EZ normal form; lives at ``sigma.dom``."""

    __slots__ = ("sigma", "cell", "_hash")

    def __init__(self, sigma: Morphism, cell: Hashable):
        self.sigma = sigma
        self.cell = cell
        self._hash = hash((sigma, cell))

    @property
    def level(self):
        return self.sigma.dom

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Element):
            return NotImplemented
        return self._hash == other._hash and self.sigma == other.sigma and self.cell == other.cell

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Element({self.cell!r} · {self.sigma.data!r} @ {self.level!r})"

    def sort_key(self):
        return (sort_key(self.sigma), sort_key(self.cell))

    def __reduce__(self):
        return (Element, (self.sigma, self.cell))


class CellComplex:
    """A finite presheaf given by non-degenerate cells and normal-form faces.

    ``shapes`` maps cell ids to objects; ``faces`` maps ``(cell, p)`` to an
    :class:`Element` for every non-identity A₊ arrow ``p`` into the cell's shape.
    """

    def __init__(self, category: EZCategory, shapes: Mapping[Hashable, Hashable],
                 faces: Mapping[tuple[Hashable, Morphism], Element], *, validate: bool = True):
        self.category = category
        self.shapes = dict(shapes)
        self._faces = dict(faces)
        deg = category._degree
        self.cells = tuple(sorted(self.shapes, key=lambda c: (deg(self.shapes[c]), sort_key(c))))
        by_shape = defaultdict(list)
        for c in self.cells:
            by_shape[self.shapes[c]].append(c)
        self._by_shape = {k: tuple(v) for k, v in by_shape.items()}
        if validate:
            self.validate()

    # -- basic queries ------------------------------------------------------
    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return cell in self.shapes

    def __eq__(self, other):
        if not isinstance(other, CellComplex):
            return NotImplemented
        return (self.category == other.category and self.shapes == other.shapes
                and self._faces == other._faces)

    __hash__ = None

    def __repr__(self):
        return f"<CellComplex over {self.category} census={self.census()}>"

    def degree_of(self, cell) -> int:
        return self.category._degree(self.shapes[cell])

    @property
    def dimension(self) -> int:
        """Largest cell degree, or -1 when empty."""
        return max((self.degree_of(c) for c in self.cells), default=-1)

    def census(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degree_of(c) for c in self.cells).items()))

    def cells_of_shape(self, b) -> tuple:
        return self._by_shape.get(b, ())

    def element(self, cell) -> Element:
        return Element(self.category.identity(self.shapes[cell]), cell)

    def face(self, cell, p: Morphism) -> Element:
        """Normal form of ``cell · p`` for an A₊ arrow ``p``."""
        if p.dom == p.cod and self.category.is_identity(p):
            return self.element(cell)
        return self._faces[(cell, p)]

    # -- presheaf structure ---------------------------------------------------
    def evaluate(self, a) -> tuple[Element, ...]:
        """All elements at level ``a``."""
        out = []
        for s in self.category.minus_out(a):
            for y in self._by_shape.get(s.cod, ()):
                out.append(Element(s, y))
        return tuple(out)

    def act(self, x: Element, phi: Morphism) -> Element:
        """Normal form of ``x · phi``."""
        if phi.cod != x.level:
            raise ValueError(f"cannot act on an element at {x.level!r} by {phi!r}")
        cat = self.category
        minus, plus = cat.factorize(cat.compose(x.sigma, phi))
        if plus.dom == plus.cod:
            return Element(minus, x.cell)
        f = self._faces[(x.cell, plus)]
        return Element(cat.compose(f.sigma, minus), f.cell)

    def is_element(self, x: Element) -> bool:
        return (x.cell in self.shapes and self.category.is_minus(x.sigma)
                and x.sigma.cod == self.shapes[x.cell])

    def with_category(self, category: EZCategory) -> "CellComplex":
        """The same complex over an instance of the same kind with another bound."""
        if not category.same_kind(self.category):
            raise ValueError(f"cannot move a complex over {self.category} to {category}")
        for c in self.cells:
            if category._degree(self.shapes[c]) > category.bound:
                raise BoundError(f"cell {c!r} exceeds bound {category.bound}",
                                 required=self.degree_of(c))
        return CellComplex(category, self.shapes, self._faces, validate=False)

    def validate(self) -> None:
        cat = self.category
        for y in self.cells:
            b = self.shapes[y]
            if cat.degree(b) > cat.bound:
                raise BoundError(f"cell {y!r} exceeds bound {cat.bound}", required=cat.degree(b))
            for p in cat.plus_in(b):
                if cat.is_identity(p):
                    continue
                f = self._faces.get((y, p))
                if f is None:
                    raise ValueError(f"missing face of {y!r} along {p!r}")
                if not self.is_element(f) or f.level != p.dom:
                    raise ValueError(f"face of {y!r} along {p!r} is not a normal form: {f!r}")
        for y in self.cells:
            b = self.shapes[y]
            for p in cat.plus_in(b):
                if cat.is_identity(p):
                    continue
                fp = self._faces[(y, p)]
                for q in cat.plus_generators_in(p.dom):
                    if self.act(fp, q) != self.face(y, cat.compose(p, q)):
                        raise ValueError(f"action on {y!r} is not functorial at {p!r}, {q!r}")

    def ez_decompose(self, x: Element) -> tuple[Morphism, Hashable]:
        if not self.is_element(x):
            raise ValueError(f"{x!r} is not an element of this complex")
        return x.sigma, x.cell


class ComplexMap:
    """A natural transformation, specified on cells."""

    def __init__(self, source: CellComplex, target: CellComplex,
                 assignment: Mapping[Hashable, Element], *, validate: bool = True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if validate:
            self.validate()

    def __repr__(self):
        return f"<ComplexMap {len(self.source)} cells -> {len(self.target)} cells>"

    def __eq__(self, other):
        if not isinstance(other, ComplexMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    __hash__ = None

    def image(self, cell) -> Element:
        return self.assignment[cell]

    def apply(self, x: Element) -> Element:
        """``f(y·σ) = f(y)·σ``."""
        img = self.assignment[x.cell]
        if x.sigma.dom == x.sigma.cod:
            return img
        return self.target.act(img, x.sigma)

    def at_level(self, a) -> list[Element]:
        return [self.apply(x) for x in self.source.evaluate(a)]

    def validate(self) -> None:
        src, tgt, cat = self.source, self.target, self.source.category
        for y in src.cells:
            img = self.assignment.get(y)
            if img is None:
                raise ValueError(f"map undefined on cell {y!r}")
            if not tgt.is_element(img) or img.level != src.shapes[y]:
                raise ValueError(f"image of {y!r} is not an element of matching shape")
            for p in cat.plus_in(src.shapes[y]):
                if not cat.is_identity(p) and self.apply(src.face(y, p)) != tgt.act(img, p):
                    raise ValueError(f"map is not natural at cell {y!r} along {p!r}")

    def then(self, g: "ComplexMap") -> "ComplexMap":
        """``g ∘ self``."""
        return ComplexMap(self.source, g.target,
                          {y: g.apply(x) for y, x in self.assignment.items()}, validate=False)

    def is_levelwise_bijective(self) -> bool:
        cat = self.source.category
        for a in cat.objects():
            imgs = self.at_level(a)
            if len(set(imgs)) != len(imgs) or len(imgs) != len(self.target.evaluate(a)):
                return False
        return True

    @staticmethod
    def identity(K: CellComplex) -> "ComplexMap":
        return ComplexMap(K, K, {y: K.element(y) for y in K.cells}, validate=False)


# ---------------------------------------------------------------------------
# cellularization of levelwise-presented presheaves


def cellularize(category: EZCategory, levels: Mapping[Hashable, Sequence],
                act: Callable[[Hashable, Morphism], Hashable],
                name: Callable[[Hashable], Hashable] | None = None,
                ) -> tuple[CellComplex, dict[Hashable, Element]]:
    """Turn a levelwise presentation into a :class:`CellComplex`.

    ``levels[a]`` lists the elements at every object ``a`` within the bound and
    ``act(x, phi)`` returns one of those listed elements.  Returns the complex
    and the normal form of every listed element.
    """
    name = name or (lambda x: x)
    nf: dict[Hashable, Element] = {}
    shapes: dict[Hashable, Hashable] = {}
    rep_of: dict[Hashable, Hashable] = {}
    for a in category.objects():
        gens = category.minus_generators_out(a)
        for x in levels.get(a, ()):
            for sigma in gens:
                y = act(x, category.sections(sigma)[0])
                if act(y, sigma) == x:
                    e = nf[y]
                    nf[x] = Element(category.compose(e.sigma, sigma), e.cell)
                    break
            else:
                cid = name(x)
                if cid in shapes:
                    raise ValueError(f"cell name {cid!r} is not unique")
                shapes[cid] = a
                rep_of[cid] = x
                nf[x] = Element(category.identity(a), cid)
    faces = {}
    for cid, x in rep_of.items():
        for p in category.plus_in(shapes[cid]):
            if not category.is_identity(p):
                faces[(cid, p)] = nf[act(x, p)]
    return CellComplex(category, shapes, faces, validate=False), nf


# ---------------------------------------------------------------------------
# constructions


def empty(category: EZCategory) -> CellComplex:
    return CellComplex(category, {}, {}, validate=False)


def representable(category: EZCategory, a) -> CellComplex:
    """``A(-, a)``: one cell per A₊ arrow into ``a``."""
    shapes, faces = {}, {}
    for p in category.plus_in(a):
        cid = category.label(p)
        shapes[cid] = p.dom
        for q in category.plus_in(p.dom):
            if not category.is_identity(q):
                r = category.compose(p, q)
                faces[(cid, q)] = Element(category.identity(r.dom), category.label(r))
    return CellComplex(category, shapes, faces, validate=False)


def representable_element(category: EZCategory, phi: Morphism) -> Element:
    """The element of ``A(-, cod phi)`` corresponding to ``phi``."""
    minus, plus = category.factorize(phi)
    return Element(minus, category.label(plus))


def representable_map(category: EZCategory, phi: Morphism) -> ComplexMap:
    """Postcomposition ``A(-, b) -> A(-, a)`` with ``phi: b -> a``."""
    src = representable(category, phi.dom)
    tgt = representable(category, phi.cod)
    plus = {category.label(p): p for p in category.plus_in(phi.dom)}
    return ComplexMap(src, tgt, {c: representable_element(category, category.compose(phi, p))
                                 for c, p in plus.items()}, validate=False)


def yoneda(K: CellComplex, x: Element) -> ComplexMap:
    """The map ``A(-, a) -> K`` classifying ``x ∈ K_a``."""
    cat = K.category
    src = representable(cat, x.level)
    return ComplexMap(src, K, {cat.label(p): K.act(x, p) for p in cat.plus_in(x.level)},
                      validate=False)


def evaluate(K: CellComplex, a) -> tuple[Element, ...]:
    return K.evaluate(a)


def act(K: CellComplex, x: Element, phi: Morphism) -> Element:
    return K.act(x, phi)


def ez_decompose(K: CellComplex, x: Element) -> tuple[Morphism, Hashable]:
    return K.ez_decompose(x)


def subcomplex(K: CellComplex, cells: Iterable[Hashable]) -> tuple[CellComplex, ComplexMap]:
    """Smallest subcomplex containing ``cells``, with its inclusion."""
    keep = set()
    stack = list(cells)
    while stack:
        y = stack.pop()
        if y in keep:
            continue
        keep.add(y)
        for p in K.category.plus_generators_in(K.shapes[y]):
            stack.append(K.face(y, p).cell)
    sub = CellComplex(K.category, {y: K.shapes[y] for y in keep},
                      {k: v for k, v in K._faces.items() if k[0] in keep}, validate=False)
    return sub, ComplexMap(sub, K, {y: K.element(y) for y in keep}, validate=False)


def skeleton(K: CellComplex, n: int) -> tuple[CellComplex, ComplexMap]:
    """``Skⁿ K`` (cells of degree ≤ n) and its inclusion; ``n = -1`` gives ∅."""
    return subcomplex(K, [y for y in K.cells if K.degree_of(y) <= n])


def boundary(category: EZCategory, a) -> CellComplex:
    """``∂⟦a⟧``, the (deg a − 1)-skeleton of the representable."""
    return skeleton(representable(category, a), category.degree(a) - 1)[0]


def filtration_check(K: CellComplex) -> tuple[bool, int]:
    """Check that ``Sk⁻¹K ⊆ Sk⁰K ⊆ …`` is increasing and exhausts ``K``.

    Returns ``(ok, n)`` where ``n`` is the first index at which the sequence
    equals ``K``.
    """
    prev: set = set()
    for n in range(-1, K.dimension + 1):
        cells = set(skeleton(K, n)[0].cells)
        if not prev <= cells:
            return False, n
        prev = cells
        if cells == set(K.cells):
            return True, n
    return False, K.dimension


def coproduct(complexes: Sequence[CellComplex], category: EZCategory | None = None) -> CellComplex:
    """Disjoint union; cell ``y`` of the ``i``-th summand becomes ``(i, y)``."""
    if category is None:
        if not complexes:
            raise ValueError("an empty coproduct needs an explicit category")
        category = complexes[0].category
    shapes, faces = {}, {}
    for i, K in enumerate(complexes):
        for y in K.cells:
            shapes[(i, y)] = K.shapes[y]
        for (y, p), e in K._faces.items():
            faces[((i, y), p)] = Element(e.sigma, (i, e.cell))
    return CellComplex(category, shapes, faces, validate=False)


def coproduct_injection(total: CellComplex, K: CellComplex, i: int) -> ComplexMap:
    return ComplexMap(K, total, {y: total.element((i, y)) for y in K.cells}, validate=False)


def coproduct_map(total: CellComplex, target: CellComplex,
                  components: Sequence[ComplexMap]) -> ComplexMap:
    """The copairing of ``components`` out of ``total = coproduct(...)``."""
    return ComplexMap(total, target, {(i, y): components[i].image(y) for (i, y) in total.cells},
                      validate=False)


def coproduct_of_maps(maps: Sequence[ComplexMap], category: EZCategory | None = None
                      ) -> tuple[CellComplex, CellComplex, ComplexMap]:
    src = coproduct([f.source for f in maps], category)
    tgt = coproduct([f.target for f in maps], category)
    assignment = {}
    for i, f in enumerate(maps):
        for y, e in f.assignment.items():
            assignment[(i, y)] = Element(e.sigma, (i, e.cell))
    return src, tgt, ComplexMap(src, tgt, assignment, validate=False)


def terminal(category: EZCategory) -> CellComplex:
    return representable(category, category.objects()[0])


def terminal_map(K: CellComplex) -> ComplexMap:
    """The unique map to the representable on the degree-0 terminal object."""
    cat = K.category
    t = cat.objects()[0]
    T = representable(cat, t)
    assignment = {}
    for y in K.cells:
        (arrow,) = cat.hom(K.shapes[y], t)
        assignment[y] = representable_element(cat, arrow)
    return ComplexMap(K, T, assignment, validate=False)


def product_bound(K: CellComplex, L: CellComplex) -> int:
    return K.dimension + L.dimension


def product(K: CellComplex, L: CellComplex, category: EZCategory | None = None) -> CellComplex:
    """Categorical product ``K × L``.

    Over □ with connections products of representables have non-degenerate
    cells in every degree, so an explicit (truncating) ``category`` is required.
    """
    return _product(K, L, category)[0]


def _product(K, L, category=None):
    if not K.category.same_kind(L.category):
        raise ValueError("factors live over different categories")
    if category is None:
        if K.category.kind == ("box", True):
            raise BoundError("categorical products over □ with connections are not "
                             "finite; pass a category to truncate explicitly")
        bound = max(K.category.bound, L.category.bound, product_bound(K, L))
        category = K.category.with_bound(bound)
    K2, L2 = K.with_category(category), L.with_category(category)
    levels = {a: [(x, y) for x in K2.evaluate(a) for y in L2.evaluate(a)]
              for a in category.objects()}

    def act_pair(xy, phi):
        return (K2.act(xy[0], phi), L2.act(xy[1], phi))

    return cellularize(category, levels, act_pair, name=lambda xy: (xy[0], xy[1]))


def product_map(f: ComplexMap, g: ComplexMap, category: EZCategory | None = None) -> ComplexMap:
    """``f × g`` between categorical products."""
    if category is None:
        bound = max(product_bound(f.source, g.source), product_bound(f.target, g.target),
                    f.source.category.bound)
        category = f.source.category.with_bound(bound)
    P, _ = _product(f.source, g.source, category)
    Q, nf = _product(f.target, g.target, category)
    fs, gs = _rebased_map(f, category), _rebased_map(g, category)
    return ComplexMap(P, Q, {c: nf[(fs.apply(c[0]), gs.apply(c[1]))] for c in P.cells},
                      validate=False)


def _rebased_map(f: ComplexMap, category: EZCategory) -> ComplexMap:
    return ComplexMap(f.source.with_category(category), f.target.with_category(category),
                      f.assignment, validate=False)


# ---------------------------------------------------------------------------
# colimits


class Colimit:
    """A computed colimit with its legs ``objects[i] -> complex``."""

    def __init__(self, complex: CellComplex, objects: Sequence[CellComplex],
                 legs: Sequence[ComplexMap], classify: Callable[[int, Element], Element]):
        self.complex = complex
        self.objects = tuple(objects)
        self.legs = tuple(legs)
        self._classify = classify

    def classify(self, i: int, x: Element) -> Element:
        """Normal form in the colimit of the element ``x`` of ``objects[i]``."""
        return self._classify(i, x)

    def descend(self, target: CellComplex, components: Sequence[ComplexMap]) -> ComplexMap:
        """The mediating map determined by a cocone ``components``."""
        return ComplexMap(self.complex, target,
                          {(i, y): components[i].image(y) for (i, y) in self.complex.cells},
                          validate=False)


def colimit(objects: Sequence[CellComplex], arrows: Sequence[tuple[int, int, ComplexMap]],
            category: EZCategory | None = None) -> Colimit:
    """Colimit of a finite diagram, computed levelwise by union-find.

    A cell of the result is named ``(i, y)`` after the least representative
    of its class, ordered by diagram index and then canonically.
    """
    if category is None:
        if not objects:
            raise ValueError("an empty diagram needs an explicit category")
        category = objects[0].category
    for K in objects:
        if K.category != category:
            raise ValueError(f"diagram object over {K.category}, expected {category}")
    find_at: dict[Hashable, dict] = {}
    levels = {}
    for a in category.objects():
        parent: dict = {}
        members = [(i, x) for i, K in enumerate(objects) for x in K.evaluate(a)]
        for m in members:
            parent[m] = m

        def root(m):
            while parent[m] != m:
                parent[m] = parent[parent[m]]
                m = parent[m]
            return m

        for i, j, f in arrows:
            for x in objects[i].evaluate(a):
                r1, r2 = root((i, x)), root((j, f.apply(x)))
                if r1 != r2:
                    parent[r1] = r2
        classes = defaultdict(list)
        for m in members:
            classes[root(m)].append(m)
        find = {}
        reps = []
        for ms in classes.values():
            rep = min(ms, key=lambda m: (m[0], m[1].sort_key()))
            reps.append(rep)
            for m in ms:
                find[m] = rep
        find_at[a] = find
        levels[a] = sorted(reps, key=lambda m: (m[0], m[1].sort_key()))

    def act_rep(r, phi):
        i, x = r
        return find_at[phi.dom][(i, objects[i].act(x, phi))]

    K, nf = cellularize(category, levels, act_rep, name=lambda r: (r[0], r[1].cell))

    def classify(i, x):
        return nf[find_at[x.level][(i, x)]]

    legs = [ComplexMap(obj, K, {y: classify(i, obj.element(y)) for y in obj.cells},
                       validate=False) for i, obj in enumerate(objects)]
    return Colimit(K, objects, legs, classify)


def pushout(f: ComplexMap, g: ComplexMap) -> tuple[CellComplex, ComplexMap, ComplexMap]:
    """Pushout of ``B <-f- S -g-> C``; returns ``(P, B -> P, C -> P)``."""
    if f.source is not g.source and f.source != g.source:
        raise ValueError("pushout legs must share their source")
    col = pushout_colimit(f, g)
    return col.complex, col.legs[0], col.legs[1]


def pushout_colimit(f: ComplexMap, g: ComplexMap) -> Colimit:
    """As :func:`pushout`, keeping the :class:`Colimit` (objects ``B, C, S``)."""
    return colimit([f.target, g.target, f.source], [(2, 0, f), (2, 1, g)], f.target.category)


def is_commutative(top: ComplexMap, left: ComplexMap, right: ComplexMap,
                   bottom: ComplexMap) -> bool:
    S = top.source
    return all(right.apply(top.image(s)) == bottom.apply(left.image(s)) for s in S.cells)


def is_pushout(top: ComplexMap, left: ComplexMap, right: ComplexMap, bottom: ComplexMap) -> bool:
    """Whether the commuting square

        S --top--> B
        |left      |right
        C -bottom> D

    is a pushout, by comparing the computed pushout with ``D`` levelwise.
    """
    if not is_commutative(top, left, right, bottom):
        raise ValueError("square does not commute")
    col = pushout_colimit(top, left)
    comparison = col.descend(right.target, [right, bottom, top.then(right)])
    return comparison.is_levelwise_bijective()


@dataclass
class Square:
    """A commuting square ``S -top-> B``, ``S -left-> C``, ``B -right-> D``,
    ``C -bottom-> D`` together with its pushout verdict."""

    top: ComplexMap
    left: ComplexMap
    right: ComplexMap
    bottom: ComplexMap
    is_pushout: bool


def skeletal_square(K: CellComplex, n: int) -> Square:
    """The square attaching the n-cells of ``K``::

        ∐ ∂⟦a_y⟧ ---> Sk^(n-1) K
           |              |
        ∐ ⟦a_y⟧   ---> Skⁿ K

    indexed by the non-degenerate n-cells ``y`` of shape ``a_y``.
    """
    cat = K.category
    lo, _ = skeleton(K, n - 1)
    hi, _ = skeleton(K, n)
    top_cells = [y for y in K.cells if K.degree_of(y) == n]
    reps, bds, incls, attach, chars = [], [], [], [], []
    for y in top_cells:
        R = representable(cat, K.shapes[y])
        dR, incl = skeleton(R, n - 1)
        chi = yoneda(hi, hi.element(y))
        reps.append(R)
        bds.append(dR)
        incls.append(incl)
        chars.append(chi)
        attach.append(_restrict(incl.then(chi), lo))
    S = coproduct(bds, cat)
    C = coproduct(reps, cat)
    top = coproduct_map(S, lo, attach)
    left = ComplexMap(S, C, {(i, c): Element(e.sigma, (i, e.cell))
                             for (i, c) in S.cells for e in [incls[i].image(c)]}, validate=False)
    right = ComplexMap(lo, hi, {y: hi.element(y) for y in lo.cells}, validate=False)
    bottom = coproduct_map(C, hi, chars)
    return Square(top, left, right, bottom, is_pushout(top, left, right, bottom))


def _restrict(f: ComplexMap, target: CellComplex) -> ComplexMap:
    """Corestrict ``f`` to a subcomplex ``target`` sharing cell ids."""
    for e in f.assignment.values():
        if e.cell not in target:
            raise ValueError(f"image cell {e.cell!r} is outside the subcomplex")
    return ComplexMap(f.source, target, f.assignment, validate=False)


# ---------------------------------------------------------------------------
# isomorphism


def _colours(K: CellComplex, table: dict) -> dict:
    cat = K.category
    colour = {}
    for y in K.cells:
        b = K.shapes[y]
        sig = (sort_key(b),) + tuple(
            (sort_key(p), sort_key(K.face(y, p).sigma), colour[K.face(y, p).cell])
            for p in cat.plus_in(b) if not cat.is_identity(p))
        colour[y] = table.setdefault(sig, len(table))
    return colour


def find_isomorphism(K: CellComplex, L: CellComplex) -> ComplexMap | None:
    """A shape- and face-preserving bijection of cells, or ``None``."""
    if not K.category.same_kind(L.category):
        return None
    if Counter(K.shapes.values()) != Counter(L.shapes.values()):
        return None
    table: dict = {}
    ck, cl = _colours(K, table), _colours(L, table)
    if Counter(ck.values()) != Counter(cl.values()):
        return None
    by_colour = defaultdict(list)
    for z in L.cells:
        by_colour[cl[z]].append(z)
    order = sorted(K.cells, key=lambda y: (-K.degree_of(y), sort_key(y)))
    fwd: dict = {}
    bwd: dict = {}
    cat = K.category

    def assign(y, z, trail) -> bool:
        stack = [(y, z)]
        while stack:
            y, z = stack.pop()
            if y in fwd:
                if fwd[y] != z:
                    return False
                continue
            if z in bwd or ck[y] != cl[z]:
                return False
            fwd[y] = z
            bwd[z] = y
            trail.append(y)
            for p in cat.plus_generators_in(K.shapes[y]):
                fy, fz = K.face(y, p), L.face(z, p)
                if fy.sigma != fz.sigma:
                    return False
                stack.append((fy.cell, fz.cell))
        return True

    def undo(trail):
        for y in trail:
            del bwd[fwd.pop(y)]

    def search(k) -> bool:
        while k < len(order) and order[k] in fwd:
            k += 1
        if k == len(order):
            return True
        y = order[k]
        for z in by_colour[ck[y]]:
            if z in bwd:
                continue
            trail: list = []
            if assign(y, z, trail) and search(k + 1):
                return True
            undo(trail)
        return False

    if not search(0):
        return None
    return ComplexMap(K, L, {y: L.element(z) for y, z in fwd.items()}, validate=False)


def is_isomorphic(K: CellComplex, L: CellComplex) -> bool:
    return find_isomorphism(K, L) is not None
