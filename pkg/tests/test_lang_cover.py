import pytest

from toric.errors import InvalidInputError
from toric.lang_cover import (
    LangMap, fiber_length_over_closed_orbit, is_flat, is_smooth, lang_report, normalization_semigroup,
    pullback_cone, ramification_degrees,
)
from toric.lattice_galois import GaloisLattice
from toric.pairs import catalog
from toric.pairs.predicates import max_semigroup
from toric.semigroups import saturate


def cyclic_lattice(d):
    """Z^d with Frobenius e_j -> e_{j+1 mod d}"""
    frobenius = [[1 if i == (j + 1) % d else 0 for j in range(d)] for i in range(d)]
    return GaloisLattice.with_frobenius(frobenius)


def orthant(n):
    return saturate([tuple(1 if i == k else 0 for i in range(n)) for k in range(n)])


@pytest.mark.parametrize('r,p', [(1, 3), (2, 3), (3, 5), (2, 7)])
def test_split_group_order(r, p):
    assert LangMap(GaloisLattice.split(r), p).group_order() == (p - 1) ** r


@pytest.mark.parametrize('d,p', [(2, 3), (3, 3), (2, 5)])
def test_restriction_group_order(d, p):
    lm = LangMap(cyclic_lattice(d), p)
    assert not lm.is_split
    assert lm.group_order() == p ** d - 1


def test_invalid_prime():
    with pytest.raises(InvalidInputError):
        LangMap(GaloisLattice.split(2), 1)


def test_push_and_preimage():
    lm = LangMap(GaloisLattice.split(2), 5)
    assert lm.push((1, 2)) == (4, 8)
    assert lm.pull((1, 0)) == (4, 0)
    assert lm.preimage(lm.push((2, 4))) == (1, 2)


def test_split_orthant_degrees():
    p = 5
    lm = LangMap(GaloisLattice.split(3), p)
    report = ramification_degrees(lm, orthant(3).cone)
    assert report.degrees() == [p - 1] * 3
    assert report.over((1, 0, 0))[0].lambda_tilde == (1, 0, 0)


@pytest.mark.parametrize('d,p', [(2, 3), (3, 3), (2, 5)])
def test_restriction_orthant_is_totally_ramified_and_flat(d, p):
    lm = LangMap(cyclic_lattice(d), p)
    S = orthant(d)
    report = ramification_degrees(lm, S.cone)
    assert report.degrees() == [p ** d - 1] * d
    assert pullback_cone(lm, S.cone).predicates().simplicial
    assert fiber_length_over_closed_orbit(lm, S) == p ** d - 1
    assert is_flat(lm, S)
    assert is_smooth(S)


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_gl_minuscule_one_is_flat(n):
    pair = catalog.gl(n, 1)
    report = lang_report(LangMap.from_pair(pair), max_semigroup(pair))
    assert report.flat
    assert report.smooth
    assert report.fiber_length == report.group_order == 2 ** n


@pytest.mark.parametrize('g', [2, 3])
def test_gsp_is_not_flat(g):
    pair = catalog.gsp(g)
    report = lang_report(LangMap.from_pair(pair), max_semigroup(pair))
    assert not report.flat
    assert not report.smooth
    assert report.fiber_length > report.group_order
    assert report.conjecture_consistent


@pytest.mark.parametrize('pair', [catalog.gl(3, 2), catalog.gl(4, 2), catalog.gsp(2), catalog.gspin(2),
                                  catalog.gl(3, 1)], ids=lambda pair: pair.name)
def test_flat_iff_smooth_for_split_tori(pair):
    lm = LangMap.from_pair(pair, 3)
    S = max_semigroup(pair)
    fiber = fiber_length_over_closed_orbit(lm, S)
    assert fiber >= lm.group_order()
    assert is_flat(lm, S) == is_smooth(S)


def test_split_normalization_is_unchanged():
    pair = catalog.gsp(2)
    S = max_semigroup(pair)
    lm = LangMap.from_pair(pair)
    assert normalization_semigroup(lm, S).hilbert_basis == S.hilbert_basis


def test_characteristic_two_split_is_isomorphism():
    pair = catalog.gsp(2)
    report = lang_report(LangMap.from_pair(pair, 2), max_semigroup(pair))
    assert report.isomorphism
    assert report.group_order == 1
    assert report.fiber_length == 1
    assert report.conjecture_consistent


def test_torus_factor_contributes_its_degree():
    p = 3
    lm = LangMap(GaloisLattice.split(2), p)
    S = saturate([(1, 0), (-1, 0), (0, 1)])
    assert fiber_length_over_closed_orbit(lm, S) == (p - 1) ** 2
    assert is_smooth(S)


def test_non_smooth_plane_cone():
    lm = LangMap(GaloisLattice.split(2), 3)
    S = saturate([(1, 0), (1, 2)])
    assert not is_smooth(S)
    assert not is_flat(lm, S)


def test_report_keys():
    pair = catalog.gl(2, 1)
    data = lang_report(LangMap.from_pair(pair), max_semigroup(pair)).to_dict()
    assert set(data) >= {'group_order', 'rays', 'fiber_length', 'flat', 'smooth', 'split',
                         'normalization_hilbert_basis', 'conjecture_conjLco_consistent'}
    assert data['conjecture_conjLco_consistent'] is True
    assert [r['e'] for r in data['rays']] == [2, 2]
