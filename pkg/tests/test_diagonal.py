import itertools
import random
from collections import Counter

import pytest

from ezkit import (BoundError, BoxCategory, CATEGORICAL_PRODUCT, ComplexMap, GEOMETRIC, JOIN,
                   SimplexCategory, UnsupportedBaseError, coproduct, day_diagonal, diagonal,
                   diagonal_categorical, external_product, external_product_map, homology,
                   induced_map, is_isomorphic, is_pushout, product, pushout, representable,
                   square_category, tensor)
from ezkit.corpus import collapse, corpus_complexes, horn, inclusion
from ezkit.diagonal import required_bound
from ezkit.presheaf import empty, skeleton

from oracles import nondegenerate_pairs, simplicial_components

D = SimplexCategory(3)
B = BoxCategory(3)
C = BoxCategory(3, True)


def rep2(A, a, a2):
    return representable(square_category(A), (a, a2))


# -- categorical diagonal ---------------------------------------------------

def test_categorical_diagonal_of_external_product_sizes():
    for K, L in zip(corpus_complexes(D.with_bound(2), seed=1, count=4),
                    corpus_complexes(D.with_bound(1), seed=2, count=4)):
        d = diagonal_categorical(external_product(K, L), D.with_bound(3))
        for a in range(4):
            assert len(d.evaluate(a)) == len(K.with_category(D).evaluate(a)) * \
                len(L.with_category(D).evaluate(a))


def test_categorical_diagonal_of_square_representable():
    d = diagonal_categorical(rep2(D.with_bound(1), 1, 1))
    expected = {n: len(nondegenerate_pairs(n, 1, 1)) for n in range(3)}
    assert expected == {0: 4, 1: 5, 2: 2}
    assert d.census() == expected
    assert is_isomorphic(d, product(representable(D, 1), representable(D, 1)))


def test_categorical_diagonal_of_empty():
    assert diagonal_categorical(empty(square_category(D))).cells == ()


def test_categorical_diagonal_over_connections_needs_explicit_bound():
    with pytest.raises(BoundError):
        diagonal_categorical(rep2(C.with_bound(1), 1, 1))


# -- Day diagonals ----------------------------------------------------------

@pytest.mark.parametrize("P,A", [(JOIN, D.with_bound(1)), (GEOMETRIC, B.with_bound(2)),
                                 (GEOMETRIC, C.with_bound(2))],
                         ids=["join", "geom-box", "geom-boxc"])
def test_representables_preserved(P, A):
    for a, a2 in itertools.product(A.objects(), repeat=2):
        if P.degree(A, (a, a2)) > 3:
            continue
        out = A.with_bound(3)
        assert is_isomorphic(day_diagonal(rep2(A, a, a2), P, out), P.value(out, a, a2))


def test_join_of_points_is_interval():
    pt = representable(D.with_bound(0), 0)
    assert is_isomorphic(day_diagonal(external_product(pt, pt), JOIN), representable(D, 1))


def test_geometric_of_intervals_is_square():
    I = representable(B.with_bound(1), 1)
    assert is_isomorphic(day_diagonal(external_product(I, I), GEOMETRIC), representable(B, 2))


def test_join_on_box_is_unsupported():
    I = representable(B.with_bound(1), 1)
    with pytest.raises(UnsupportedBaseError):
        day_diagonal(external_product(I, I), JOIN)
    with pytest.raises(UnsupportedBaseError):
        tensor(representable(D, 0), representable(D, 0), GEOMETRIC)


def test_bound_error_reports_required_bound():
    X = rep2(D.with_bound(2), 2, 2)
    assert required_bound(X, JOIN) == 5
    with pytest.raises(BoundError) as err:
        day_diagonal(X, JOIN, D.with_bound(3))
    assert err.value.required == 5


def _census_join(K, L):
    # disjoint union over pairs of components of the ordinary join
    out = Counter()
    for n, c in K.census().items():
        out[n] += c * simplicial_components(L)
    for n, c in L.census().items():
        out[n] += c * simplicial_components(K)
    for (p, x), (q, y) in itertools.product(K.census().items(), L.census().items()):
        out[p + q + 1] += x * y
    return dict(sorted(out.items()))


def _census_product(K, L):
    out = Counter()
    for (p, x), (q, y) in itertools.product(K.census().items(), L.census().items()):
        out[p + q] += x * y
    return dict(sorted(out.items()))


def test_join_census_on_random_complexes():
    A = D.with_bound(1)
    Ks = corpus_complexes(A, seed=6, count=6)
    for K, L in zip(Ks, Ks[1:]):
        assert tensor(K, L, JOIN).census() == _census_join(K, L)


def test_geometric_census_on_random_minimal_cubical_sets():
    A = B.with_bound(2)
    Ks = corpus_complexes(A, seed=6, count=5, max_degree=2)
    for K, L in zip(Ks, Ks[1:]):
        assert tensor(K, L, GEOMETRIC, B.with_bound(4)).census() == _census_product(K, L)


def test_join_homology():
    # connected factors give the ordinary join: S¹ ⋆ S¹ ≃ S³
    S1 = skeleton(representable(D.with_bound(2), 2), 1)[0]
    assert homology(tensor(S1, S1, JOIN)).ranks == (1, 0, 0, 1)
    # without an empty simplex, S⁰ ⋆ S⁰ splits into one interval per pair of points
    S0 = skeleton(representable(D.with_bound(1), 1), 0)[0]
    J = tensor(S0, S0, JOIN)
    assert J.census() == {0: 8, 1: 4}
    assert homology(J).ranks == (4, 0)


# -- tensor -----------------------------------------------------------------

def test_tensor_examples():
    I = representable(D.with_bound(1), 1)
    pt = representable(D.with_bound(1), 0)
    J = tensor(I, pt, JOIN)
    assert J.census() == {0: 3, 1: 3, 2: 1}
    assert is_isomorphic(J, representable(D, 2))
    assert is_isomorphic(tensor(I, pt, "cat"), I)
    assert is_isomorphic(tensor(I, pt, CATEGORICAL_PRODUCT), I)
    Ib = representable(B.with_bound(1), 1)
    assert is_isomorphic(tensor(Ib, Ib, GEOMETRIC), representable(B, 2))


@pytest.mark.parametrize("A", [B, C], ids=["box", "boxc"])
def test_geometric_associative_and_unital(A):
    one = A.with_bound(1)
    for a, b, c in itertools.product(range(2), repeat=3):
        Ra, Rb, Rc = (representable(one, x) for x in (a, b, c))
        left = tensor(tensor(Ra, Rb, GEOMETRIC), Rc.with_category(A), GEOMETRIC)
        right = tensor(Ra.with_category(A), tensor(Rb, Rc, GEOMETRIC), GEOMETRIC)
        assert is_isomorphic(left, right)
        assert is_isomorphic(left, representable(A, a + b + c))
    unit = representable(A, 0)
    for K in corpus_complexes(A.with_bound(2), seed=8, count=4):
        assert is_isomorphic(tensor(unit, K.with_category(A), GEOMETRIC), K.with_category(A))


# -- cocontinuity -----------------------------------------------------------

@pytest.mark.parametrize("mode,A", [("join", D.with_bound(1)), ("geom", B.with_bound(1)),
                                    ("geom", C.with_bound(1)), ("cat", D.with_bound(1))])
def test_diagonal_preserves_coproducts(mode, A):
    I = representable(A, 1)
    X = external_product(I, I)
    Y = external_product(skeleton(I, 0)[0], I)
    assert is_isomorphic(diagonal(coproduct([X, Y]), mode), coproduct([diagonal(X, mode),
                                                                       diagonal(Y, mode)]))


@pytest.mark.parametrize("mode,A", [("join", D.with_bound(1)), ("geom", B.with_bound(1)),
                                    ("geom", C.with_bound(1)), ("cat", D.with_bound(1))])
def test_diagonal_preserves_pushouts(mode, A):
    I = representable(A, 1)
    dI, incl = skeleton(I, 0)
    # glue the ends of I ⊠ I along ∂I ⊠ I onto a point ⊠ I
    f = external_product_map(incl, ComplexMap.identity(I))
    g = external_product_map(collapse(dI), ComplexMap.identity(I))
    P, legB, legC = pushout(f, g)
    out = A.with_bound(3)
    square = [induced_map(m, mode, out) for m in (f, g, legB, legC)]
    assert is_pushout(*square)


# -- induced maps -----------------------------------------------------------

@pytest.mark.parametrize("mode,A", [("join", D.with_bound(2)), ("geom", B.with_bound(2)),
                                    ("cat", D.with_bound(2))])
def test_induced_identity(mode, A):
    X = external_product(representable(A, 1), skeleton(representable(A, 2), 1)[0])
    m = induced_map(ComplexMap.identity(X), mode)
    assert all(m.image(y) == m.target.element(y) for y in m.source.cells)


@pytest.mark.parametrize("mode,A", [("join", D.with_bound(2)), ("geom", B.with_bound(2)),
                                    ("geom", C.with_bound(2)), ("cat", D.with_bound(2))])
def test_induced_respects_composition(mode, A):
    rng = random.Random(13)
    L = corpus_complexes(A.with_bound(1), seed=rng.randint(0, 50), count=1)[0].with_category(A)
    idL = ComplexMap.identity(L)
    if A.kind[0] == "simplex":
        first = inclusion(horn(A, 2, 1), representable(A, 2))
    else:
        from ezkit.corpus import open_box
        first = inclusion(open_box(A, 2, 0, 1), representable(A, 2))
    f = external_product_map(first, idL)
    g = external_product_map(collapse(first.target), idL)
    out = A.with_bound(4)
    fg = induced_map(f.then(g), mode, out)
    composite = induced_map(f, mode, out).then(induced_map(g, mode, out))
    assert fg.assignment == composite.assignment


def test_collapse_first_factor_gives_projection():
    A = D.with_bound(1)
    I = representable(A, 1)
    f = external_product_map(collapse(I), ComplexMap.identity(I))
    m = induced_map(f, "cat")
    m.validate()
    assert is_isomorphic(m.source, product(I, I))
    assert is_isomorphic(m.target, I.with_category(m.target.category))
    # a projection: every element at level c has |Δ(c, 1)| preimages
    for c in m.target.category.objects():
        counts = Counter(m.apply(x) for x in m.source.evaluate(c))
        assert set(counts) == set(m.target.evaluate(c))
        assert set(counts.values()) == {len(D.hom(c, 1))}
