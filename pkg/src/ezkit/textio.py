"""Line-oriented text format for complexes and maps.

A complex document looks like::

    # Δ¹
    category simplex
    bound 1
    cell 0 : 0
    cell 1 : 0
    cell 01 : 1
    act 01 d0 = id 1
    act 01 d1 = id 0

Only generating faces are listed; the remaining faces are derived and the
derivation is checked for consistency.  ``sigma`` tokens are ``id`` or the
payload of an A₋ arrow (Δ: dot-separated values, □: dot-separated outputs
whose coordinates are joined by ``+``, products: ``(left;right)``).  Shapes of
product cells are written ``(a,a')``.

A map document holds ``begin source`` / ``end`` and ``begin target`` / ``end``
blocks followed by ``map <src> -> <sigma> <tgt>`` lines.
"""

from __future__ import annotations

import re
from typing import Hashable, Iterable

from .category import (BoxCategory, EZCategory, Morphism, ProductCategory, SimplexCategory,
                       SliceCategory, parse_category)
from .errors import BoundError, ParseError
from .presheaf import CellComplex, ComplexMap, Element

_TOKEN = re.compile(r"^[A-Za-z0-9_.'+*\-]+$")
_RESERVED = {"id", "->", "=", ":"}


# ---------------------------------------------------------------------------
# tokens for objects and arrows


def shape_token(A: EZCategory, a) -> str:
    if isinstance(A, ProductCategory):
        return f"({shape_token(A.first, a[0])},{shape_token(A.second, a[1])})"
    if isinstance(A, SliceCategory):
        return f"{a.cod}:{arrow_token(A.base, a, force=True)}"
    return str(a)


def arrow_token(A: EZCategory, f: Morphism, force: bool = False) -> str:
    """Payload token of ``f``; identities are ``id`` unless ``force``."""
    if not force and f.dom == f.cod and A.is_identity(f):
        return "id"
    if isinstance(A, ProductCategory):
        return f"({arrow_token(A.first, f.data[0])};{arrow_token(A.second, f.data[1])})"
    if isinstance(A, SliceCategory):
        return arrow_token(A.base, f.data, force)
    if isinstance(A, BoxCategory):
        return ".".join(str(s) if isinstance(s, int) else "+".join(map(str, s))
                        for s in f.data) or "-"
    return ".".join(map(str, f.data))


def generator_name(A: EZCategory, g: Morphism) -> str:
    """``d<i>`` for Δ faces, ``d<i>_<ε>`` for □ faces, pairs for products."""
    if isinstance(A, ProductCategory):
        return f"({generator_name(A.first, g.data[0])};{generator_name(A.second, g.data[1])})"
    if isinstance(A, SliceCategory):
        return generator_name(A.base, g.data)
    if A.is_identity(g):
        return "id"
    if isinstance(A, SimplexCategory) and g.cod == g.dom + 1:
        (i,) = set(range(g.cod + 1)) - set(g.data)
        return f"d{i}"
    if isinstance(A, BoxCategory) and g.cod == g.dom + 1:
        (i,) = [k for k, s in enumerate(g.data) if isinstance(s, int)]
        return f"d{i}_{g.data[i]}"
    return arrow_token(A, g)


class _Tables:
    """Lookup tables from tokens to objects and arrows, built lazily."""

    def __init__(self, A: EZCategory):
        self.A = A
        self._shapes = None
        self._gens: dict = {}
        self._minus: dict = {}

    def shape(self, tok: str, line: int):
        if self._shapes is None:
            self._shapes = {shape_token(self.A, a): a for a in self.A.objects()}
        if tok not in self._shapes:
            raise ParseError(f"unknown shape {tok!r} for {self.A} (bound {self.A.bound})", line)
        return self._shapes[tok]

    def generator(self, b, tok: str, line: int) -> Morphism:
        if b not in self._gens:
            self._gens[b] = {generator_name(self.A, g): g for g in self.A.plus_generators_in(b)}
        if tok not in self._gens[b]:
            raise ParseError(f"{tok!r} is not a generating face of shape "
                             f"{shape_token(self.A, b)}", line)
        return self._gens[b][tok]

    def minus(self, dom, cod, tok: str, line: int) -> Morphism:
        key = (dom, cod)
        if key not in self._minus:
            self._minus[key] = {arrow_token(self.A, s): s for s in self.A.minus_out(dom)
                                if s.cod == cod}
        if tok not in self._minus[key]:
            raise ParseError(f"{tok!r} is not a degeneracy from {shape_token(self.A, dom)} "
                             f"to {shape_token(self.A, cod)}", line)
        return self._minus[key][tok]


# ---------------------------------------------------------------------------
# writing


def _is_token(x) -> bool:
    return isinstance(x, str) and bool(_TOKEN.match(x)) and x not in _RESERVED


def cell_names(K: CellComplex) -> dict[Hashable, str]:
    """Cell ids kept verbatim when they are all plain tokens, else ``c<k>``."""
    if all(_is_token(y) for y in K.cells):
        return {y: y for y in K.cells}
    width = len(str(max(len(K.cells) - 1, 0)))
    return {y: f"c{k:0{width}d}" for k, y in enumerate(K.cells)}


def _header(A: EZCategory) -> list[str]:
    if isinstance(A, ProductCategory):
        lines = [f"category {A.spec}", f"bound {A.first.bound}"]
        if A.total is not None or A.first.bound != A.second.bound:
            lines.append(f"total {A.bound}")
        return lines
    return [f"category {A.spec}", f"bound {A.bound}"]


def _complex_lines(K: CellComplex, names: dict) -> list[str]:
    A = K.category
    lines = []
    for y in K.cells:
        lines.append(f"cell {names[y]} : {shape_token(A, K.shapes[y])}")
    for y in K.cells:
        for g in A.plus_generators_in(K.shapes[y]):
            e = K.face(y, g)
            lines.append(f"act {names[y]} {generator_name(A, g)} = "
                         f"{arrow_token(A, e.sigma)} {names[e.cell]}")
    return lines


def dump_complex(K: CellComplex, comment: str | None = None) -> str:
    census = " ".join(f"{n}:{c}" for n, c in K.census().items()) or "empty"
    head = [f"# {comment}"] if comment else []
    head.append(f"# cells by degree {census}")
    return "\n".join(head + _header(K.category) + _complex_lines(K, cell_names(K))) + "\n"


def dump_map(f: ComplexMap, comment: str | None = None) -> str:
    A = f.source.category
    sn, tn = cell_names(f.source), cell_names(f.target)
    lines = [f"# {comment}"] if comment else []
    lines += _header(A)
    lines += ["begin source"] + _complex_lines(f.source, sn) + ["end"]
    lines += ["begin target"] + _complex_lines(f.target, tn) + ["end"]
    for y in f.source.cells:
        e = f.image(y)
        lines.append(f"map {sn[y]} -> {arrow_token(A, e.sigma)} {tn[e.cell]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reading


def _strip(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((no, body.split()))
    return out


def _read_header(lines) -> tuple[EZCategory, list]:
    spec = bound = total = None
    rest = []
    for no, toks in lines:
        if toks[0] in ("category", "bound", "total"):
            if len(toks) != 2:
                raise ParseError(f"expected '{toks[0]} <value>'", no)
            if toks[0] == "category":
                spec = (toks[1], no)
            else:
                try:
                    val = int(toks[1])
                except ValueError:
                    raise ParseError(f"{toks[0]} must be an integer, got {toks[1]!r}", no) from None
                if val < 0:
                    raise ParseError(f"{toks[0]} must be non-negative", no)
                if toks[0] == "bound":
                    bound = val
                else:
                    total = val
        else:
            rest.append((no, toks))
    if spec is None:
        raise ParseError("missing 'category' line")
    if bound is None:
        raise ParseError("missing 'bound' line")
    try:
        A = parse_category(spec[0], bound)
    except ValueError as exc:
        raise ParseError(str(exc), spec[1]) from None
    if total is not None:
        if not isinstance(A, ProductCategory):
            raise ParseError("'total' only applies to product categories")
        A = ProductCategory(A.first, A.second, total)
    return A, rest


def _build_complex(A: EZCategory, lines, tables: _Tables) -> CellComplex:
    shapes: dict[str, Hashable] = {}
    where: dict[str, int] = {}
    acts: dict[tuple[str, Morphism], tuple[Element, int]] = {}
    pending = []
    for no, toks in lines:
        if toks[0] == "cell":
            if len(toks) != 4 or toks[2] != ":":
                raise ParseError("expected 'cell <id> : <shape>'", no)
            cid = toks[1]
            if cid in shapes:
                raise ParseError(f"duplicate cell {cid!r}", no)
            shapes[cid] = tables.shape(toks[3], no)
            where[cid] = no
        elif toks[0] == "act":
            if len(toks) != 6 or toks[3] != "=":
                raise ParseError("expected 'act <id> <generator> = <sigma> <id>'", no)
            pending.append((no, toks))
        else:
            raise ParseError(f"unexpected keyword {toks[0]!r}", no)
    for no, (_, y, gen, _, sig, z) in pending:
        if y not in shapes:
            raise ParseError(f"unknown cell {y!r}", no)
        if z not in shapes:
            raise ParseError(f"unknown cell {z!r}", no)
        g = tables.generator(shapes[y], gen, no)
        if (y, g) in acts:
            raise ParseError(f"duplicate action of {gen} on {y!r}", no)
        s = tables.minus(g.dom, shapes[z], sig, no)
        acts[(y, g)] = (Element(s, z), no)
    return _derive_faces(A, shapes, where, acts)


def _derive_faces(A: EZCategory, shapes, where, acts) -> CellComplex:
    faces: dict = {}

    def act(e: Element, q: Morphism) -> Element:
        minus, plus = A.factorize(A.compose(e.sigma, q))
        if plus.dom == plus.cod and A.is_identity(plus):
            return Element(minus, e.cell)
        f = faces[(e.cell, plus)]
        return Element(A.compose(f.sigma, minus), f.cell)

    deg = A._degree
    for y in sorted(shapes, key=lambda c: deg(shapes[c])):
        b = shapes[y]
        gens = A.plus_generators_in(b)
        for g in gens:
            if (y, g) not in acts:
                raise ParseError(f"cell {y!r} lacks the action of {generator_name(A, g)}",
                                 where[y])
            e, no = acts[(y, g)]
            if deg(shapes[e.cell]) >= deg(b):
                raise ParseError(f"face of {y!r} must have lower degree", no)
        for p in sorted((p for p in A.plus_in(b) if not A.is_identity(p)),
                        key=lambda p: -deg(p.dom)):
            found = None
            for g in gens:
                for q in A.hom(p.dom, g.dom):
                    if A.is_plus(q) and A.compose(g, q) == p:
                        try:
                            val = act(acts[(y, g)][0], q)
                        except KeyError:
                            raise ParseError(f"faces of {y!r} refer to an incomplete cell",
                                             where[y]) from None
                        if found is not None and val != found:
                            raise ParseError(f"face relations of cell {y!r} are inconsistent",
                                             where[y])
                        found = val
            faces[(y, p)] = found
    try:
        return CellComplex(A, shapes, faces)
    except BoundError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_complex(text: str) -> CellComplex:
    """Parse a complex document."""
    A, rest = _read_header(_strip(text))
    return _build_complex(A, rest, _Tables(A))


def load_map(text: str) -> ComplexMap:
    """Parse a map document with embedded source and target."""
    A, rest = _read_header(_strip(text))
    tables = _Tables(A)
    blocks: dict[str, list] = {}
    current = None
    maps = []
    for no, toks in rest:
        if toks[0] == "begin":
            if current is not None or len(toks) != 2 or toks[1] not in ("source", "target"):
                raise ParseError("expected 'begin source' or 'begin target'", no)
            if toks[1] in blocks:
                raise ParseError(f"duplicate {toks[1]} block", no)
            current = toks[1]
            blocks[current] = []
        elif toks[0] == "end":
            if current is None:
                raise ParseError("'end' without 'begin'", no)
            current = None
        elif current is not None:
            blocks[current].append((no, toks))
        elif toks[0] == "map":
            if len(toks) != 5 or toks[2] != "->":
                raise ParseError("expected 'map <src> -> <sigma> <tgt>'", no)
            maps.append((no, toks))
        else:
            raise ParseError(f"unexpected keyword {toks[0]!r}", no)
    if current is not None:
        raise ParseError(f"unterminated {current} block")
    for part in ("source", "target"):
        if part not in blocks:
            raise ParseError(f"missing {part} block")
    src = _build_complex(A, blocks["source"], tables)
    tgt = _build_complex(A, blocks["target"], tables)
    assignment = {}
    for no, (_, y, _, sig, z) in maps:
        if y not in src:
            raise ParseError(f"unknown source cell {y!r}", no)
        if z not in tgt:
            raise ParseError(f"unknown target cell {z!r}", no)
        if y in assignment:
            raise ParseError(f"cell {y!r} is mapped twice", no)
        assignment[y] = Element(tables.minus(src.shapes[y], tgt.shapes[z], sig, no), z)
    missing = [y for y in src.cells if y not in assignment]
    if missing:
        raise ParseError(f"map undefined on cell {missing[0]!r}")
    try:
        return ComplexMap(src, tgt, assignment)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_complex(path) -> CellComplex:
    with open(path, encoding="utf-8") as fh:
        return load_complex(fh.read())


def write_complex(path, K: CellComplex, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_complex(K, comment))


def renamed(K: CellComplex, names: dict | None = None) -> CellComplex:
    """``K`` with cells renamed as in its text form."""
    names = names or cell_names(K)
    faces = {(names[y], p): Element(e.sigma, names[e.cell]) for (y, p), e in K._faces.items()}
    return CellComplex(K.category, {names[y]: K.shapes[y] for y in K.cells}, faces,
                       validate=False)


def parse_object(A: EZCategory, token: str):
    """An object of ``A`` from its shape token (as used for ``--object``)."""
    return _Tables(A).shape(token.replace(" ", ""), None)


__all__: Iterable[str] = ["dump_complex", "dump_map", "load_complex", "load_map", "read_complex",
                          "write_complex", "renamed", "parse_object", "shape_token",
                          "arrow_token", "generator_name", "cell_names"]
