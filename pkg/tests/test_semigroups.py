from itertools import combinations, product

import pytest

import numpy as np

from toric.binomials import minimal_generators, normal_form_monomial
from toric.budget import Budget
from toric.cones import positive_hull
from toric.errors import AssumptionViolation, InvalidInputError, ResourceLimitExceeded
from toric.pairs import catalog
from toric.pairs.predicates import max_semigroup, variable_names
from toric.semigroups import (
    AffineSemigroup, decompose, generates_full_lattice, hilbert_basis, is_free, saturate, toric_ideal,
    veronese_recognize, veronese_semigroup, zero_face_covers,
)


def box_hilbert_basis(cone, bound):
    """Irreducible nonzero lattice points of the cone inside [-bound, bound]^n"""
    n = cone.ambient_rank
    points = [v for v in product(range(-bound, bound + 1), repeat=n) if any(v) and cone.contains(v)]

    def reducible(s):
        return any(a != s and cone.contains(tuple(x - y for x, y in zip(s, a))) for a in points)

    return sorted((v for v in points if not reducible(v)), reverse=True)


def monomial_factors(text):
    return frozenset(text.strip().split('*'))


def polynomial_sides(poly):
    lhs, rhs = poly.split(' - ')
    return {monomial_factors(lhs), monomial_factors(rhs)}


# -- Hilbert bases -----------------------------------------------------------

def test_orthant_hilbert_basis():
    S = saturate([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert S.hilbert_basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert is_free(S)
    assert generates_full_lattice(S)


def test_two_dimensional_cone():
    cone = positive_hull([(1, 0), (1, 2)])
    assert hilbert_basis(cone) == [(1, 2), (1, 1), (1, 0)]
    S = AffineSemigroup.from_cone(cone)
    assert not is_free(S)
    assert S.contains((1, 1))


def test_generated_semigroup_membership():
    S = AffineSemigroup.from_generators([(1, 0), (1, 2), (2, 2)])
    assert S.hilbert_basis == [(1, 2), (1, 0)]
    assert S.contains((2, 2))
    assert S.contains((3, 4))
    assert not S.contains((1, 1))
    assert not generates_full_lattice(S)


def test_decompose():
    gens = [(1, 0), (1, 2)]
    grading = positive_hull(gens).grading()
    assert decompose((2, 2), gens, grading) == (1, 1)
    assert decompose((3, 0), gens, grading) == (3, 0)
    assert decompose((1, 1), gens, grading) is None


def test_semigroup_with_torus_factor():
    S = saturate([(1, 0), (-1, 0), (0, 1)])
    hb = S.hilbert_basis
    assert len(hb) == 3
    assert (1, 0) in hb and (-1, 0) in hb
    assert [h[1] for h in hb if h[1]] == [1]
    assert is_free(S)
    pointed, split = S.pointed_part()
    assert split.u == 1
    assert pointed.ambient_rank == 1
    assert len(pointed.hilbert_basis) == 1
    with pytest.raises(AssumptionViolation):
        toric_ideal(S)


def test_invalid_semigroups():
    with pytest.raises(InvalidInputError):
        AffineSemigroup.from_generators([])
    with pytest.raises(InvalidInputError):
        saturate([(0, 0)])


@pytest.mark.parametrize('n', [3, 4, 5])
def test_gl_two_hilbert_basis_is_e_and_f(n):
    pair = catalog.gl(n, 2)
    S = max_semigroup(pair)
    assert len(S.hilbert_basis) == 2 * n
    names = variable_names(pair, S.hilbert_basis, S.cone)
    assert sorted(names) == sorted([f"e_{i}" for i in range(1, n + 1)] + [f"f_{i}" for i in range(1, n + 1)])


@pytest.mark.parametrize('g', [1, 2, 3, 4])
def test_gsp_hilbert_basis_size(g):
    assert len(max_semigroup(catalog.gsp(g)).hilbert_basis) == 2 * g


@pytest.mark.parametrize('g', [1, 2, 3, 4])
def test_gspin_hilbert_basis_is_cube(g):
    hb = max_semigroup(catalog.gspin(g)).hilbert_basis
    assert len(hb) == 2 ** g
    assert all(h[-1] == 1 and set(h[:-1]) <= {0, 1} for h in hb)


def test_permutohedral_hilbert_basis():
    assert len(max_semigroup(catalog.res_ramified_gl(3, (5, 2, 1))).hilbert_basis) == 30


@pytest.mark.parametrize('pair,bound', [(catalog.gsp(2), 2), (catalog.gl(3, 2), 2), (catalog.gspin(2), 2)])
def test_hilbert_basis_matches_box_oracle(pair, bound):
    S = max_semigroup(pair)
    assert S.hilbert_basis == box_hilbert_basis(S.cone, bound)


# -- Veronese ------------------------------------------------------------------

@pytest.mark.parametrize('n', [3, 4])
def test_gl_corank_one_is_veronese(n):
    S = max_semigroup(catalog.gl(n, n - 1))
    assert veronese_recognize(S, n, n - 1)
    assert S.hilbert_basis == box_hilbert_basis(S.cone, n - 1)


def test_veronese_semigroup_and_negative_cases():
    V = veronese_semigroup(2, 3)
    assert sorted(V.hilbert_basis) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert veronese_recognize(saturate([(1, 0), (0, 1)]), 2, 1)
    assert not veronese_recognize(max_semigroup(catalog.gsp(2)), 3, 2)
    assert not veronese_recognize(saturate([(1, 0), (0, 1)]), 2, 2)


# -- Toric ideals --------------------------------------------------------------

def test_toric_ideal_of_plane_cone():
    S = saturate([(1, 0), (1, 2)])
    ideal = toric_ideal(S, ['a', 'b', 'c'])
    assert ideal.minimal_count == 1
    assert ideal.check_kernel()
    assert ideal.evaluation_check()
    assert polynomial_sides(ideal.polynomial(ideal.generators[0])) == {
        frozenset({'a', 'c'}), frozenset({'b^2'})}


def test_gsp2_ideal():
    pair = catalog.gsp(2)
    S = max_semigroup(pair)
    names = variable_names(pair, S.hilbert_basis, S.cone)
    ideal = toric_ideal(S, names)
    assert ideal.minimal_count == 1
    assert polynomial_sides(ideal.polynomial(ideal.generators[0])) == {
        frozenset({'e_1', 'f_1'}), frozenset({'e_2', 'f_2'})}


def test_ramified_unitary_ideal():
    pair = catalog.gu_ramified(3, 2, 1)
    S = max_semigroup(pair)
    names = variable_names(pair, S.hilbert_basis, S.cone)
    ideal = toric_ideal(S, names)
    assert ideal.minimal_count == 1
    assert polynomial_sides(ideal.polynomial(ideal.generators[0])) == {
        frozenset({'x_1^2'}), frozenset({'x_2', 'x_3'})}


def test_gspin3_ideal_contains_lattice_relations():
    pair = catalog.gspin(3)
    S = max_semigroup(pair)
    hb = S.hilbert_basis
    ideal = toric_ideal(S, variable_names(pair, hb, S.cone))
    index = {frozenset(i for i, x in enumerate(h[:-1]) if x): k for k, h in enumerate(hb)}
    assert len(index) == 8

    def monomial(*subsets):
        u = [0] * len(hb)
        for U in subsets:
            u[index[U]] += 1
        return tuple(u)

    subsets = list(index)
    for U, V in combinations(subsets, 2):
        lhs = monomial(U, V)
        rhs = monomial(U & V, U | V)
        assert normal_form_monomial(lhs, ideal.groebner_basis) == \
            normal_form_monomial(rhs, ideal.groebner_basis)



def test_twisted_cubic_has_three_quadrics():
    S = saturate([(1, 0), (1, 3)])
    ideal = toric_ideal(S)
    assert ideal.minimal_count == 3
    assert ideal.to_dict()["degree_counts"] == {"6": 3}
    assert ideal.check_kernel()


@pytest.mark.parametrize("rays", [
    [(1, 0), (1, 2)],
    [(1, 0), (1, 3)],
    [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)],
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 2)],
])
def test_divisor_graph_count_matches_fiber_count(rays):
    S = saturate(rays)
    ideal = toric_ideal(S)
    A = [list(col) for col in zip(*S.hilbert_basis)]
    mins = minimal_generators(A, S.cone.grading(), ideal.groebner_basis, Budget())
    assert ideal.minimal_count == mins.count
    assert ideal.check_kernel()


def test_gspin3_ideal_is_generated_by_incomparable_pairs():
    S = max_semigroup(catalog.gspin(3))
    assert toric_ideal(S).minimal_count == 9


def test_zero_face_covers_are_minimal():
    positive = np.array([[True, False], [False, True], [True, True]])
    assert zero_face_covers(positive, Budget()) == [(2,), (0, 1)]


def test_zero_face_covers_respect_budget():
    positive = np.ones((4, 2), dtype=bool)
    with pytest.raises(ResourceLimitExceeded):
        zero_face_covers(positive, Budget(max_fiber_enumeration=2))

@pytest.mark.slow
def test_permutohedral_ideal_minimal_generators(full_budget):
    S = max_semigroup(catalog.res_ramified_gl(3, (5, 2, 1)), full_budget)
    assert toric_ideal(S, budget=full_budget).minimal_count == 1181
