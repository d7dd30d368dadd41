import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ezkit import BoxCategory, Morphism, ProductCategory, SimplexCategory, SliceCategory
from ezkit.category import parse_category, vertex_action
from ezkit.verify import box_closure_check, reedy_checks

from oracles import cube_vertex_functions, monotone_maps, surjections

D3 = SimplexCategory(3)
B3 = BoxCategory(3)
C3 = BoxCategory(3, True)


def as_function(f: Morphism):
    return dict(enumerate(f.data))


# -- degree -----------------------------------------------------------------

def test_degree_simplex_and_box():
    assert D3.degree(3) == 3
    assert B3.degree(0) == 0


def test_product_degree_is_additive():
    P = ProductCategory(D3, D3)
    assert P.degree((1, 2)) == 3


def test_slice_degree_is_codomain_degree_of_arrow():
    S = SliceCategory(D3, 2)
    for a in S.objects():
        assert S.degree(a) == a.cod


def test_unknown_category_spec_rejected():
    with pytest.raises(ValueError):
        parse_category("torus", 2)


# -- compose ----------------------------------------------------------------

def test_section_identity():
    d1 = SimplexCategory.face(1, 1)
    s0 = SimplexCategory.degeneracy(0, 0)
    assert D3.compose(s0, d1) == D3.identity(0)


def test_two_first_cofaces_compose_to_values_2_3():
    # function composition oracle: j -> d0_3(d0_2(j))
    f = SimplexCategory.face(2, 0)
    g = SimplexCategory.face(3, 0)
    expected = tuple(as_function(g)[as_function(f)[j]] for j in range(2))
    assert expected == (2, 3)
    assert D3.compose(g, f).data == expected


def test_compose_rejects_mismatch():
    with pytest.raises(ValueError):
        D3.compose(SimplexCategory.face(2, 0), SimplexCategory.face(2, 0))


@pytest.mark.parametrize("A", [BoxCategory(3), BoxCategory(3, True)], ids=["box", "boxc"])
def test_box_composites_match_vertex_semantics(A):
    for m, k, n in itertools.product(range(4), repeat=3):
        for f in A.hom(m, k):
            for g in A.hom(k, n):
                h = A.compose(g, f)
                for v in itertools.product((0, 1), repeat=m):
                    assert vertex_action(h, v) == vertex_action(g, vertex_action(f, v))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_simplex_associativity_and_units(data):
    a, b, c, d = (data.draw(st.integers(0, 3)) for _ in range(4))
    f = data.draw(st.sampled_from(D3.hom(a, b)))
    g = data.draw(st.sampled_from(D3.hom(b, c)))
    h = data.draw(st.sampled_from(D3.hom(c, d)))
    assert D3.compose(h, D3.compose(g, f)) == D3.compose(D3.compose(h, g), f)
    assert D3.compose(D3.identity(b), f) == f == D3.compose(f, D3.identity(a))


# -- factorization ----------------------------------------------------------

def test_factorize_image_example():
    phi = Morphism(2, 2, (0, 0, 2))
    minus, plus = D3.factorize(phi)
    assert minus == Morphism(2, 1, (0, 0, 1))
    assert plus == Morphism(1, 2, (0, 2))


@pytest.mark.parametrize("A", [D3, B3, C3, ProductCategory(SimplexCategory(2), SimplexCategory(2))],
                         ids=lambda A: A.spec)
def test_factorize_identity(A):
    for a in A.objects():
        assert A.factorize(A.identity(a)) == (A.identity(a), A.identity(a))


def test_boxc_square_to_interval_factorization_unique():
    A = C3
    for phi in A.hom(2, 1):
        pairs = [(mi, pl) for k in A.objects() for mi in A.hom(2, k) for pl in A.hom(k, 1)
                 if A.is_minus(mi) and A.is_plus(pl) and A.compose(pl, mi) == phi]
        assert pairs == [A.factorize(phi)]


# -- sections ---------------------------------------------------------------

def test_sections_of_simplex_codegeneracy():
    s0 = SimplexCategory.degeneracy(0, 0)
    assert set(D3.sections(s0)) == {SimplexCategory.face(1, 0), SimplexCategory.face(1, 1)}


def test_sections_of_identity():
    for A in (D3, B3, C3):
        assert A.sections(A.identity(2)) == (A.identity(2),)


def test_sections_reject_non_degeneracy():
    with pytest.raises(ValueError):
        D3.sections(SimplexCategory.face(1, 0))


@pytest.mark.parametrize("A", [B3, C3], ids=["box", "boxc"])
def test_box_sections_separate_square_degeneracies(A):
    minus = [s for s in A.hom(2, 1) if A.is_minus(s)]
    sets = [frozenset(A.sections(s)) for s in minus]
    assert all(sets)
    assert len(set(sets)) == len(minus)


# -- hom --------------------------------------------------------------------

def test_hom_counts_against_monotone_oracle():
    for m in range(4):
        for n in range(4):
            assert sorted(f.data for f in D3.hom(m, n)) == sorted(monotone_maps(m, n))
    assert len(D3.hom(1, 1)) == 3
    # C(4,2) = 6 counts the maps [1] -> [2]; the maps [2] -> [1] number C(4,3) = 4
    assert len(D3.hom(1, 2)) == 6
    assert len(D3.hom(2, 1)) == 4


def test_degeneracies_are_surjections():
    for m in range(4):
        for n in range(4):
            minus = sorted(f.data for f in D3.hom(m, n) if D3.is_minus(f))
            assert minus == sorted(surjections(m, n))


@pytest.mark.parametrize("connections", [False, True])
def test_box_hom_matches_vertex_oracle(connections):
    A = BoxCategory(3, connections)
    for m in range(4):
        for n in range(4):
            tables = {tuple(vertex_action(f, v) for v in itertools.product((0, 1), repeat=m))
                      for f in A.hom(m, n)}
            assert len(tables) == len(A.hom(m, n))
            assert tables == cube_vertex_functions(m, n, connections)
    if not connections:
        assert len(A.hom(1, 1)) == 3


def test_hom_beyond_bound_raises():
    from ezkit import BoundError
    with pytest.raises(BoundError):
        SimplexCategory(2).hom(3, 1)


def test_hom_order_is_deterministic():
    assert SimplexCategory(3).hom(2, 2) == D3.hom(2, 2)


# -- latching category ------------------------------------------------------

def test_latching_category_examples():
    assert D3.latching_category(0).objects == ()
    L1 = D3.latching_category(1)
    assert [s.data for s in L1.objects] == [(0, 0)]
    assert L1.arrows == ()
    L2 = D3.latching_category(2)
    # direct enumeration: non-identity surjections out of [2] and commuting triangles
    objs = [s for n in range(3) for s in D3.hom(2, n) if D3.is_minus(s) and n < 2]
    assert set(L2.objects) == set(objs) and len(objs) == 3
    expected = set()
    for i, s in enumerate(L2.objects):
        for j, t in enumerate(L2.objects):
            for tau in D3.hom(s.cod, t.cod):
                if D3.is_minus(tau) and not D3.is_identity(tau) and D3.compose(tau, s) == t:
                    expected.add((i, j, tau))
    assert set(L2.arrows) == expected and len(expected) == 2


# -- sweeps -----------------------------------------------------------------

@pytest.mark.parametrize("A", [SimplexCategory(3), BoxCategory(3), BoxCategory(3, True),
                               ProductCategory(SimplexCategory(3), SimplexCategory(3), 3),
                               SliceCategory(SimplexCategory(3), 0), SliceCategory(BoxCategory(3), 0)],
                         ids=["simplex", "box", "boxc", "product", "slice-simplex", "slice-box"])
def test_reedy_axioms(A):
    bad = [v for v in reedy_checks(A, exhaustive_limit=200_000) if not v.ok]
    assert not bad, bad


@pytest.mark.parametrize("A", [SliceCategory(SimplexCategory(2), 1), SliceCategory(SimplexCategory(3), 2),
                               SliceCategory(BoxCategory(2), 1), SliceCategory(BoxCategory(2, True), 0)],
                         ids=lambda A: A.spec)
def test_coslice_is_reedy_but_sections_can_fail(A):
    verdicts = {v.name.rsplit("/", 1)[1]: v.ok for v in reedy_checks(A, exhaustive_limit=200_000)}
    assert verdicts["factorization"] and verdicts["degree"] and verdicts["associativity"]
    assert not verdicts["sections"]


def test_coslice_degeneracy_without_section():
    # under [1]: the object (0,1): [1] -> [2] and the degeneracy (0,0,1): [2] -> [1]
    S = SliceCategory(SimplexCategory(2), 1)
    phi = Morphism(1, 2, (0, 1))
    sigma = Morphism(2, 1, (0, 0, 1))
    down = D3.compose(sigma, phi)
    arrow = Morphism(phi, down, sigma)
    assert S.is_minus(arrow)
    assert not [s for s in S.hom(down, phi) if S.compose(arrow, s) == S.identity(down)]


@pytest.mark.parametrize("connections", [False, True])
def test_box_generator_closure(connections):
    assert box_closure_check(BoxCategory(3, connections)).ok
