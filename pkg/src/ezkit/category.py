"""Finite, degree-truncated Eilenberg-Zilber categories.

Five kinds are available: the simplex category, the minimal box category,
the box category with (max-type) connections, binary products and slices.
Every instance carries a degree bound; "all objects" always means all
objects of degree at most that bound.

Morphisms are plain immutable values (:class:`Morphism`) whose payload is in
canonical form, so equality of payloads is equality of arrows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable, Iterator

from .errors import BoundError


def sort_key(x: Any) -> tuple:
    """Total order on the nested payloads used throughout the package."""
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(sort_key(v) for v in x))
    if isinstance(x, frozenset):
        return (4, tuple(sorted(sort_key(v) for v in x)))
    if isinstance(x, Morphism):
        return (5, sort_key(x.dom), sort_key(x.cod), sort_key(x.data))
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (6, key())
    raise TypeError(f"no canonical order for {x!r}")


class Morphism:
    """An arrow ``dom -> cod`` with a canonical payload.

    Instances are immutable and cache their hash; they are compared
    structurally, so two morphisms are equal iff they are the same arrow.
    """

    __slots__ = ("dom", "cod", "data", "_hash")

    def __init__(self, dom: Hashable, cod: Hashable, data: Hashable):
        self.dom = dom
        self.cod = cod
        self.data = data
        self._hash = hash((dom, cod, data))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self._hash == other._hash and self.data == other.data
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r}: {self.data!r})"

    def __reduce__(self):
        return (Morphism, (self.dom, self.cod, self.data))


@dataclass(frozen=True)
class LatchingCategory:
    """The category of non-identity A₋ arrows out of ``obj``.

    ``arrows`` lists triples ``(i, j, tau)`` with ``tau ∘ objects[i] == objects[j]``
    and ``tau`` a non-identity A₋ arrow.
    """

    obj: Hashable
    objects: tuple[Morphism, ...]
    arrows: tuple[tuple[int, int, Morphism], ...]


class EZCategory:
    """Shared machinery; subclasses supply objects, homs, composition and the
    two wide subcategories."""

    bound: int

    # -- subclass interface -------------------------------------------------
    @property
    def kind(self) -> tuple:
        raise NotImplementedError

    def _objects(self) -> Iterator[Hashable]:
        raise NotImplementedError

    def _degree(self, a) -> int:
        raise NotImplementedError

    def _hom(self, b, a) -> list[Morphism]:
        raise NotImplementedError

    def _compose(self, g: Morphism, f: Morphism) -> Morphism:
        raise NotImplementedError

    def _identity(self, a) -> Morphism:
        raise NotImplementedError

    def is_minus(self, f: Morphism) -> bool:
        raise NotImplementedError

    def is_plus(self, f: Morphism) -> bool:
        raise NotImplementedError

    def _factorize(self, f: Morphism) -> tuple[Morphism, Morphism]:
        raise NotImplementedError

    def is_object(self, a) -> bool:
        raise NotImplementedError

    def with_bound(self, bound: int) -> "EZCategory":
        raise NotImplementedError

    def label(self, p: Morphism) -> Hashable:
        """Short cell name for an A₊ arrow (used by representables)."""
        return p.data

    # -- generic operations -------------------------------------------------
    def same_kind(self, other: "EZCategory") -> bool:
        return self.kind == other.kind

    def degree(self, a) -> int:
        if not self.is_object(a):
            raise ValueError(f"{a!r} is not an object of {self}")
        return self._degree(a)

    def _check_bound(self, a):
        if self.degree(a) > self.bound:
            raise BoundError(f"object {a!r} exceeds degree bound {self.bound}",
                             required=self._degree(a))

    @lru_cache(maxsize=None)
    def objects(self) -> tuple:
        return tuple(sorted(self._objects(),
                            key=lambda a: (self._degree(a), sort_key(a))))

    def objects_of_degree(self, n: int) -> tuple:
        return tuple(a for a in self.objects() if self._degree(a) == n)

    @lru_cache(maxsize=None)
    def hom(self, b, a) -> tuple[Morphism, ...]:
        self._check_bound(a)
        self._check_bound(b)
        return tuple(sorted(self._hom(b, a), key=sort_key))

    @lru_cache(maxsize=None)
    def identity(self, a) -> Morphism:
        return self._identity(a)

    def is_identity(self, f: Morphism) -> bool:
        return f.dom == f.cod and f == self.identity(f.dom)

    @lru_cache(maxsize=2**20)
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """``g ∘ f`` (apply ``f`` first)."""
        if f.cod != g.dom:
            raise ValueError(f"cannot compose {g!r} after {f!r}")
        return self._compose(g, f)

    @lru_cache(maxsize=2**20)
    def factorize(self, f: Morphism) -> tuple[Morphism, Morphism]:
        """Reedy factorization ``f = plus ∘ minus``; returns ``(minus, plus)``."""
        return self._factorize(f)

    @lru_cache(maxsize=None)
    def minus_out(self, a) -> tuple[Morphism, ...]:
        """All A₋ arrows with domain ``a``, identity first."""
        d = self.degree(a)
        out = [f for b in self.objects() if self._degree(b) <= d
               for f in self.hom(a, b) if self.is_minus(f)]
        return tuple(sorted(out, key=lambda f: (-self._degree(f.cod), sort_key(f))))

    @lru_cache(maxsize=None)
    def plus_in(self, a) -> tuple[Morphism, ...]:
        """All A₊ arrows with codomain ``a``, identity first."""
        d = self.degree(a)
        out = [f for b in self.objects() if self._degree(b) <= d
               for f in self.hom(b, a) if self.is_plus(f)]
        return tuple(sorted(out, key=lambda f: (-self._degree(f.dom), sort_key(f))))

    @lru_cache(maxsize=None)
    def minus_generators_out(self, a) -> tuple[Morphism, ...]:
        """Indecomposable non-identity A₋ arrows out of ``a``."""
        proper = [f for f in self.minus_out(a) if not self.is_identity(f)]
        composite = set()
        for r in proper:
            for t in self.minus_out(r.cod):
                if not self.is_identity(t):
                    composite.add(self.compose(t, r))
        return tuple(f for f in proper if f not in composite)

    @lru_cache(maxsize=None)
    def plus_generators_in(self, a) -> tuple[Morphism, ...]:
        """Indecomposable non-identity A₊ arrows into ``a`` (the faces)."""
        proper = [f for f in self.plus_in(a) if not self.is_identity(f)]
        composite = set()
        for p in proper:
            for q in self.plus_in(p.dom):
                if not self.is_identity(q):
                    composite.add(self.compose(p, q))
        return tuple(f for f in proper if f not in composite)

    @lru_cache(maxsize=None)
    def sections(self, sigma: Morphism) -> tuple[Morphism, ...]:
        if not self.is_minus(sigma):
            raise ValueError(f"{sigma!r} is not in A₋")
        ident = self.identity(sigma.cod)
        return tuple(s for s in self.hom(sigma.cod, sigma.dom)
                     if self.compose(sigma, s) == ident)

    @lru_cache(maxsize=None)
    def latching_category(self, a) -> LatchingCategory:
        objs = tuple(f for f in self.minus_out(a) if not self.is_identity(f))
        index = {f: i for i, f in enumerate(objs)}
        arrows = []
        for i, s in enumerate(objs):
            for t in self.minus_out(s.cod):
                if self.is_identity(t):
                    continue
                arrows.append((i, index[self.compose(t, s)], t))
        return LatchingCategory(a, objs, tuple(arrows))

    def __str__(self):
        return self.spec


# ---------------------------------------------------------------------------
# the simplex category


@dataclass(frozen=True)
class SimplexCategory(EZCategory):
    """Δ truncated at ``bound``; the object ``m`` stands for ``[m]`` and a
    morphism's payload is its list of values."""

    bound: int = 3

    @property
    def kind(self):
        return ("simplex",)

    @property
    def spec(self):
        return "simplex"

    def with_bound(self, bound):
        return SimplexCategory(bound)

    def is_object(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and a >= 0

    def _objects(self):
        return range(self.bound + 1)

    def _degree(self, a):
        return a

    def _hom(self, b, a):
        return [Morphism(b, a, vals)
                for vals in itertools.combinations_with_replacement(range(a + 1), b + 1)]

    def _identity(self, a):
        return Morphism(a, a, tuple(range(a + 1)))

    def _compose(self, g, f):
        gd = g.data
        return Morphism(f.dom, g.cod, tuple(gd[i] for i in f.data))

    def is_minus(self, f):
        return len(set(f.data)) == f.cod + 1

    def is_plus(self, f):
        d = f.data
        return all(d[i] < d[i + 1] for i in range(len(d) - 1))

    def _factorize(self, f):
        image = tuple(sorted(set(f.data)))
        pos = {v: i for i, v in enumerate(image)}
        k = len(image) - 1
        return (Morphism(f.dom, k, tuple(pos[v] for v in f.data)),
                Morphism(k, f.cod, image))

    def label(self, p):
        sep = "" if p.cod < 10 else ","
        return sep.join(str(v) for v in p.data)

    @staticmethod
    def face(n: int, i: int) -> Morphism:
        """The coface ``δ_i : [n-1] -> [n]`` skipping ``i``."""
        return Morphism(n - 1, n, tuple(j for j in range(n + 1) if j != i))

    @staticmethod
    def degeneracy(n: int, i: int) -> Morphism:
        """The codegeneracy ``σ_i : [n+1] -> [n]`` hitting ``i`` twice."""
        return Morphism(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


# ---------------------------------------------------------------------------
# box categories
#
# A morphism [1]^m -> [1]^n is a length-n tuple of output symbols: 0 or 1 for a
# constant, or a tuple of input coordinates whose max is taken.  Successive
# coordinate tuples are disjoint and increasing (max of one < min of the next);
# without connections every tuple is a singleton.


def _box_outputs(m: int, connections: bool, start: int = 0):
    """All non-constant symbols whose coordinates are ``>= start``."""
    if connections:
        for r in range(1, m - start + 1):
            yield from itertools.combinations(range(start, m), r)
    else:
        for i in range(start, m):
            yield (i,)


def _box_hom(m: int, n: int, connections: bool):
    def rec(pos, start):
        if pos == n:
            yield ()
            return
        for c in (0, 1):
            for rest in rec(pos + 1, start):
                yield (c,) + rest
        for sym in _box_outputs(m, connections, start):
            for rest in rec(pos + 1, sym[-1] + 1):
                yield (sym,) + rest
    return rec(0, 0)


@dataclass(frozen=True)
class BoxCategory(EZCategory):
    """□ truncated at ``bound``; the object ``n`` stands for ``[1]^n``."""

    bound: int = 3
    connections: bool = False

    @property
    def kind(self):
        return ("box", self.connections)

    @property
    def spec(self):
        return "boxc" if self.connections else "box"

    def with_bound(self, bound):
        return BoxCategory(bound, self.connections)

    def is_object(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and a >= 0

    def _objects(self):
        return range(self.bound + 1)

    def _degree(self, a):
        return a

    def _hom(self, b, a):
        return [Morphism(b, a, d) for d in _box_hom(b, a, self.connections)]

    def _identity(self, a):
        return Morphism(a, a, tuple((i,) for i in range(a)))

    def _compose(self, g, f):
        fd = f.data
        out = []
        for sym in g.data:
            if isinstance(sym, int):
                out.append(sym)
                continue
            coords: list[int] = []
            one = False
            for j in sym:
                s = fd[j]
                if s == 1:
                    one = True
                    break
                if s != 0:
                    coords.extend(s)
            if one:
                out.append(1)
            elif coords:
                out.append(tuple(sorted(coords)))
            else:
                out.append(0)
        return Morphism(f.dom, g.cod, tuple(out))

    def is_minus(self, f):
        return all(not isinstance(s, int) for s in f.data)

    def is_plus(self, f):
        used = [s for s in f.data if not isinstance(s, int)]
        return all(len(s) == 1 for s in used) and [s[0] for s in used] == list(range(f.dom))

    def _factorize(self, f):
        syms = [s for s in f.data if not isinstance(s, int)]
        k = len(syms)
        plus, j = [], 0
        for s in f.data:
            if isinstance(s, int):
                plus.append(s)
            else:
                plus.append((j,))
                j += 1
        return Morphism(f.dom, k, tuple(syms)), Morphism(k, f.cod, tuple(plus))

    def label(self, p):
        return "".join(str(s) if isinstance(s, int) else "*" for s in p.data)

    @staticmethod
    def face(n: int, i: int, eps: int) -> Morphism:
        """``δ_i^ε : [1]^(n-1) -> [1]^n`` inserting the constant ``ε`` at ``i``."""
        data = tuple((j,) for j in range(i)) + (eps,) + tuple((j,) for j in range(i, n - 1))
        return Morphism(n - 1, n, data)

    @staticmethod
    def degeneracy(n: int, i: int) -> Morphism:
        """``σ_i : [1]^(n+1) -> [1]^n`` forgetting coordinate ``i``."""
        return Morphism(n + 1, n, tuple((j,) for j in range(n + 1) if j != i))

    @staticmethod
    def connection(n: int, i: int) -> Morphism:
        """``γ_i : [1]^(n+1) -> [1]^n`` merging coordinates ``i, i+1`` by max."""
        data = tuple((j,) for j in range(i)) + ((i, i + 1),) + tuple((j,) for j in range(i + 2, n + 1))
        return Morphism(n + 1, n, data)


def vertex_action(f: Morphism, v: tuple[int, ...]) -> tuple[int, ...]:
    """Evaluate a box morphism on a vertex of ``{0,1}^dom``."""
    return tuple(s if isinstance(s, int) else max(v[j] for j in s) for s in f.data)


# ---------------------------------------------------------------------------
# products and slices


@dataclass(frozen=True)
class ProductCategory(EZCategory):
    """``first × second`` with componentwise Reedy structure.

    Degree is additive.  ``bound`` caps the total degree and defaults to the
    sum of the factor bounds.
    """

    first: EZCategory
    second: EZCategory
    total: int | None = None

    @property
    def bound(self):
        if self.total is not None:
            return self.total
        return self.first.bound + self.second.bound

    @property
    def kind(self):
        return ("product", self.first.kind, self.second.kind)

    @property
    def spec(self):
        if self.first.kind == self.second.kind:
            return f"product:{self.first.spec}"
        return f"product:{self.first.spec}*{self.second.spec}"

    def with_bound(self, bound):
        return ProductCategory(self.first.with_bound(bound), self.second.with_bound(bound), bound)

    def is_object(self, a):
        return (isinstance(a, tuple) and len(a) == 2
                and self.first.is_object(a[0]) and self.second.is_object(a[1]))

    def _objects(self):
        for a in self.first.objects():
            for b in self.second.objects():
                if self.first._degree(a) + self.second._degree(b) <= self.bound:
                    yield (a, b)

    def _degree(self, a):
        return self.first._degree(a[0]) + self.second._degree(a[1])

    def _check_bound(self, a):
        super()._check_bound(a)
        self.first._check_bound(a[0])
        self.second._check_bound(a[1])

    def _hom(self, b, a):
        return [Morphism(b, a, (f, g))
                for f in self.first.hom(b[0], a[0]) for g in self.second.hom(b[1], a[1])]

    def _identity(self, a):
        return Morphism(a, a, (self.first.identity(a[0]), self.second.identity(a[1])))

    def _compose(self, g, f):
        return Morphism(f.dom, g.cod, (self.first.compose(g.data[0], f.data[0]),
                                       self.second.compose(g.data[1], f.data[1])))

    def is_minus(self, f):
        return self.first.is_minus(f.data[0]) and self.second.is_minus(f.data[1])

    def is_plus(self, f):
        return self.first.is_plus(f.data[0]) and self.second.is_plus(f.data[1])

    def _factorize(self, f):
        m1, p1 = self.first.factorize(f.data[0])
        m2, p2 = self.second.factorize(f.data[1])
        mid = (m1.cod, m2.cod)
        return Morphism(f.dom, mid, (m1, m2)), Morphism(mid, f.cod, (p1, p2))

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        return Morphism((f.dom, g.dom), (f.cod, g.cod), (f, g))

    def label(self, p):
        return (self.first.label(p.data[0]), self.second.label(p.data[1]))


@dataclass(frozen=True)
class SliceCategory(EZCategory):
    """The slice ``apex ↓ base``; objects are base arrows out of ``apex`` and the
    Reedy structure is created by the codomain functor."""

    base: EZCategory
    apex: Hashable

    @property
    def bound(self):
        return self.base.bound

    @property
    def kind(self):
        return ("slice", self.base.kind, self.apex)

    @property
    def spec(self):
        return f"slice:{self.base.spec}@{self.apex}"

    def with_bound(self, bound):
        return SliceCategory(self.base.with_bound(bound), self.apex)

    def is_object(self, a):
        return isinstance(a, Morphism) and a.dom == self.apex and self.base.is_object(a.cod)

    def _objects(self):
        for b in self.base.objects():
            yield from self.base.hom(self.apex, b)

    def _degree(self, a):
        return self.base._degree(a.cod)

    def _hom(self, b, a):
        return [Morphism(b, a, g) for g in self.base.hom(b.cod, a.cod)
                if self.base.compose(g, b) == a]

    def _identity(self, a):
        return Morphism(a, a, self.base.identity(a.cod))

    def _compose(self, g, f):
        return Morphism(f.dom, g.cod, self.base.compose(g.data, f.data))

    def is_minus(self, f):
        return self.base.is_minus(f.data)

    def is_plus(self, f):
        return self.base.is_plus(f.data)

    def _factorize(self, f):
        m, p = self.base.factorize(f.data)
        mid = self.base.compose(m, f.dom)
        return Morphism(f.dom, mid, m), Morphism(mid, f.cod, p)

    def label(self, p):
        return (self.base.label(p.dom), self.base.label(p.data))


def parse_category(spec: str, bound: int) -> EZCategory:
    """Build an instance from ``simplex``, ``box``, ``boxc``, ``product:<A>``,
    ``product:<A>*<B>`` or ``slice:<A>@<apex>``.

    For products each factor gets ``bound``, so the product's own bound is
    the sum of the factor bounds.
    """
    spec = spec.strip()
    if spec == "simplex":
        return SimplexCategory(bound)
    if spec == "box":
        return BoxCategory(bound, False)
    if spec == "boxc":
        return BoxCategory(bound, True)
    if spec.startswith("product:"):
        rest = spec[len("product:"):]
        left, _, right = rest.partition("*")
        a = parse_category(left, bound)
        b = parse_category(right or left, bound)
        return ProductCategory(a, b)
    if spec.startswith("slice:"):
        rest = spec[len("slice:"):]
        base, sep, apex = rest.rpartition("@")
        if not sep:
            raise ValueError(f"slice category needs '@<apex>': {spec!r}")
        return SliceCategory(parse_category(base, bound), int(apex))
    raise ValueError(f"unknown category {spec!r}")
