import itertools

import pytest

from ezkit import (BoxCategory, SimplexCategory, bi_skeleton, coproduct, curry_level, ez_square,
                   external_product, is_isomorphic, latching_formula_check, latching_object,
                   representable, skeleton, square_category)
from ezkit.bipresheaf import base_category, latching_formula_levels
from ezkit.corpus import circle, corpus_bicomplexes, corpus_complexes
from ezkit.presheaf import empty

D = SimplexCategory(2)
B = BoxCategory(2)


# -- external product -------------------------------------------------------

@pytest.mark.parametrize("A", [D, B], ids=["simplex", "box"])
def test_representables_multiply(A):
    P = square_category(A)
    for a, a2 in itertools.product(A.objects(), repeat=2):
        assert is_isomorphic(external_product(representable(A, a), representable(A, a2)),
                             representable(P, (a, a2)))


def test_point_is_a_unit():
    L = circle(D)
    X = external_product(representable(D, 0), L)
    for c, d in itertools.product(D.objects(), repeat=2):
        assert len(X.evaluate((c, d))) == len(L.evaluate(d))


def test_interval_square_at_one_one():
    I = representable(D, 1)
    assert len(external_product(I, I).evaluate((1, 1))) == 9


@pytest.mark.parametrize("A", [D, B], ids=["simplex", "box"])
def test_external_product_is_cardinality_multiplicative(A):
    Ks = corpus_complexes(A, seed=2, count=4)
    for K, L in zip(Ks, Ks[1:]):
        X = external_product(K, L)
        for c, d in itertools.product(A.objects(), repeat=2):
            assert len(X.evaluate((c, d))) == len(K.evaluate(c)) * len(L.evaluate(d))


def test_external_product_base_mismatch():
    with pytest.raises(ValueError):
        external_product(representable(D, 0), representable(B, 0))


def test_base_category_rejects_plain_complex():
    with pytest.raises(ValueError):
        base_category(representable(D, 1))


# -- currying ---------------------------------------------------------------

def test_curry_external_product():
    K = skeleton(representable(D, 2), 1)[0]
    L = circle(D)
    X = external_product(K, L)
    for a in D.objects():
        n = len(L.evaluate(a))
        assert is_isomorphic(curry_level(X, a), coproduct([K] * n, D))


def test_curry_empty():
    X = empty(square_category(D))
    assert curry_level(X, 1).cells == ()


def test_curry_representable():
    for (b, b2) in itertools.product(D.objects(), repeat=2):
        X = representable(square_category(D), (b, b2))
        for a in D.objects():
            n = len(D.hom(a, b2))
            assert is_isomorphic(curry_level(X, a), coproduct([representable(D, b)] * n, D))


# -- latching objects -------------------------------------------------------

def test_latching_at_vertex_is_empty():
    X = representable(square_category(D), (1, 1))
    L, _ = latching_object(X, 0)
    assert L.cells == ()


def test_latching_example_sizes():
    X = representable(square_category(D), (0, 1))
    L, comparison = latching_object(X, 1)
    assert len(L.evaluate(0)) == 2
    comparison.validate()


def _formula(A, a, a2, b, c):
    # |A(c, a)| × |{f : b -> a' with non-identity degeneracy part}|, by image size
    def degenerate(f):
        return A.factorize(f)[0].dom != A.factorize(f)[0].cod
    return len(A.hom(c, a)) * sum(1 for f in A.hom(b, a2) if degenerate(f))


@pytest.mark.parametrize("A", [D, B], ids=["simplex", "box"])
def test_latching_sizes_match_closed_formula(A):
    P = square_category(A)
    for a, a2, b in itertools.product(A.objects(), repeat=3):
        L, _ = latching_object(representable(P, (a, a2)), b)
        for c in A.objects():
            assert len(L.evaluate(c)) == _formula(A, a, a2, b, c)


def test_latching_formula_check_examples():
    assert latching_formula_check((0, 0), 1, 0, D)
    assert latching_formula_check((0, 1), 1, 0, D)
    assert _formula(D, 0, 0, 1, 0) == 1
    assert _formula(D, 0, 1, 1, 0) == 2


def test_latching_formula_levels_on_box():
    res = latching_formula_levels((1, 2), 2, B)
    assert set(res) == set(B.objects()) and all(res.values())


# -- second-coordinate skeleta ----------------------------------------------

def test_bi_skeleton_examples():
    K = representable(D, 1)
    L = representable(D, 2)
    X = external_product(K, L)
    assert bi_skeleton(X, -1)[0].cells == ()
    for n in range(3):
        assert is_isomorphic(bi_skeleton(X, n)[0], external_product(K, skeleton(L, n)[0]))
    assert bi_skeleton(X, 5)[0] == X


def test_bi_skeleton_depends_on_second_degree_only():
    for X in corpus_bicomplexes(D, seed=4, count=5):
        for n in range(-1, 3):
            S, _ = bi_skeleton(X, n)
            assert all(D.degree(S.shapes[y][1]) <= n for y in S.cells)
            for a in D.objects():
                assert all(D.degree(S.shapes[y][1]) <= n
                           for (_, y) in curry_level(S, a).cells)


# -- the pushout square -----------------------------------------------------

def test_ez_square_representable():
    X = representable(square_category(D), (1, 1))
    assert ez_square(X, 1).is_pushout


def test_ez_square_saturation():
    X = representable(square_category(D), (2, 1))
    sq = ez_square(X, 2)
    assert sq.is_pushout
    assert sq.right.is_levelwise_bijective()


@pytest.mark.parametrize("A", [D, B], ids=["simplex", "box"])
def test_ez_square_on_random_bicomplexes(A):
    for X in corpus_bicomplexes(A, seed=7, count=4):
        for n in range(-1, A.bound + 1):
            assert ez_square(X, n).is_pushout
