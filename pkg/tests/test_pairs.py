import json
from dataclasses import replace

import pytest

from toric.errors import AssumptionViolation, InvalidInputError, InvariantViolation, UnsupportedPairError
from toric.lattice_galois import GaloisLattice
from toric.pairs import catalog
from toric.pairs.base import LMPair
from toric.pairs.predicates import (
    FLAT, ISOMORPHISM, NON_FLAT, NOT_R1, R1, ab_nondegenerate, classify, dim_T_mu, max_semigroup,
    nonflat_verdict, r1_criterion, select_semigroup, strictly_convex, variable_names,
)
from toric.pairs.registry import get_pair, list_pairs


# -- registry ------------------------------------------------------------------

def test_get_pair_defaults_and_prime():
    pair = get_pair('gsp:2')
    assert pair.name == 'gsp:2'
    assert pair.p == 3
    assert get_pair('gl:3:2', p=5).p == 5


@pytest.mark.parametrize('name', catalog.EXAMPLES)
def test_every_example_resolves(name):
    assert get_pair(name).name == name


@pytest.mark.parametrize('name', ['foo:1', 'gl:3', 'gl:x:1', 'gl:3:3', 'gu:3:2', 'res-gl:3:1,1,1', ''])
def test_bad_pair_names(name):
    with pytest.raises(InvalidInputError):
        get_pair(name)


def test_list_pairs_covers_every_family():
    rows = list_pairs()
    assert [r['family'] for r in rows] == list(catalog.FAMILIES)
    assert all(r['examples'] for r in rows)


def test_pair_file_round_trip(tmp_path):
    pair = catalog.gsp(2)
    path = tmp_path / 'gsp2.json'
    path.write_text(json.dumps(pair.to_dict()))
    loaded = get_pair(f"file:{path}")
    assert loaded.orbit == pair.orbit
    assert loaded.N.rank == 3
    assert get_pair(str(path), p=7).p == 7


def test_pair_file_errors(tmp_path):
    with pytest.raises(InvalidInputError):
        get_pair(f"file:{tmp_path / 'missing.json'}")
    bad = tmp_path / 'bad.json'
    bad.write_text('{not json')
    with pytest.raises(InvalidInputError):
        get_pair(str(bad))
    data = catalog.gl(2, 1).to_dict()
    data['orbit'] = [[1, 0]]
    unstable = tmp_path / 'unstable.json'
    unstable.write_text(json.dumps(data))
    with pytest.raises(InvariantViolation):
        get_pair(str(unstable))


def test_orbit_must_be_integral_after_scaling():
    with pytest.raises(InvariantViolation):
        LMPair('half', GaloisLattice.split(2), 1, (('1/2', 0),))


# -- structural predicates -------------------------------------------------------

def test_ab_nondegenerate_and_convexity():
    assert ab_nondegenerate(catalog.gsp(2))
    assert strictly_convex(catalog.gl(3, 1))
    degenerate = LMPair('flat', GaloisLattice.split(2), 1, ((1, 1),), ab_character=(1, -1))
    assert not ab_nondegenerate(degenerate)
    with pytest.raises(AssumptionViolation):
        classify(degenerate)


def test_dimension_formula():
    report = dim_T_mu(catalog.gsp(2))
    assert report.dimension == report.formula == 3
    assert report.checked and report.full
    parahoric = dim_T_mu(catalog.gl_two_step_parahoric(4, 2))
    assert parahoric.dimension == 2
    assert not parahoric.checked


def test_classification():
    gl31 = classify(catalog.gl(3, 1))
    assert gl31.simplicial and gl31.free and gl31.drinfeld_case
    gsp2 = classify(catalog.gsp(2))
    assert not gsp2.simplicial
    assert not gsp2.free


def test_flatness_expectations():
    assert nonflat_verdict(catalog.gl(3, 1)).verdict == FLAT
    gsp2 = nonflat_verdict(catalog.gsp(2))
    assert gsp2.verdict == NON_FLAT
    assert not gsp2.conditional
    assert gsp2.agrees_with(False)
    assert nonflat_verdict(catalog.gsp(2, p=2)).verdict == ISOMORPHISM
    assert nonflat_verdict(catalog.division_algebra(2)).verdict == FLAT
    hs = nonflat_verdict(catalog.hilbert_siegel(2, 2))
    assert hs.verdict == NON_FLAT
    assert hs.conditional


# -- R1 ---------------------------------------------------------------------------

def test_minuscule_pairs_pass_r1():
    assert r1_criterion(catalog.gl(3, 1)).passes
    assert r1_criterion(catalog.gsp(2)).verdict == R1


@pytest.mark.parametrize('n,r', [(3, 2), (4, 2), (4, 3)])
def test_two_step_parahoric_fails_r1(n, r):
    report = r1_criterion(catalog.gl_two_step_parahoric(n, r))
    assert report.verdict == NOT_R1
    assert report.divisible_elements() == [(0, r)]


def test_degree_four_restriction_fails_r1_by_divisibility():
    report = r1_criterion(catalog.res_gl_ramified_example(2))
    assert report.verdict == NOT_R1
    assert sorted(report.divisible_elements()) == [(0, 2), (2, 0)]


def test_proper_sub_semigroup_fails_r1():
    pair = catalog.gsp(2)
    report = r1_criterion(pair, select_semigroup(pair, 'free'))
    assert report.semigroup_kind == 'free'
    assert report.verdict == NOT_R1


# -- semigroup selection ----------------------------------------------------------

def test_select_max_and_free():
    pair = catalog.gsp(2)
    assert select_semigroup(pair).is_max
    free = select_semigroup(pair, 'free')
    assert free.kind == 'free'
    assert len(free.semigroup.hilbert_basis) == 3


def test_select_free_falls_back_to_smooth_max():
    choice = select_semigroup(replace(catalog.gl(3, 1), free_generators=None), 'free')
    assert choice.is_max


def test_select_free_unsupported():
    with pytest.raises(UnsupportedPairError):
        select_semigroup(catalog.gu_ramified(3, 2, 1), 'free')


def test_select_from_file(tmp_path):
    pair = catalog.gsp(2)
    path = tmp_path / 'S.json'
    path.write_text(json.dumps({'generators': [[1, 0, 0], [0, 1, 0], [-1, 0, 1], [0, -1, 1]],
                                'saturated': True}))
    choice = select_semigroup(pair, f"file:{path}")
    assert choice.kind == 'file'
    assert len(choice.semigroup.hilbert_basis) == 4
    assert choice.to_dict()['source'] == str(path)

    outside = tmp_path / 'outside.json'
    outside.write_text(json.dumps({'generators': [[-1, 0, 0]]}))
    with pytest.raises(AssumptionViolation):
        select_semigroup(pair, f"file:{outside}")
    with pytest.raises(InvalidInputError):
        select_semigroup(pair, 'minimal')


# -- variable names ----------------------------------------------------------------

def test_subset_names_for_gspin():
    pair = catalog.gspin(2)
    S = max_semigroup(pair)
    assert sorted(variable_names(pair, S.hilbert_basis, S.cone)) == ['x_{12}', 'x_{1}', 'x_{2}', 'x_{}']


def test_names_fall_back_to_indices():
    pair = catalog.gl(3, 1)
    S = max_semigroup(pair)
    assert variable_names(pair, S.hilbert_basis, S.cone) == ['x_1', 'x_2', 'x_3']
