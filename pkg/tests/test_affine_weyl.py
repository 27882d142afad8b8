import pytest

from toric.affine_weyl import AffineWeylGroup, admissible_set, face_map, face_map_report
from toric.budget import Budget
from toric.errors import NotAdmissibleError, ResourceLimitExceeded, UnsupportedPairError
from toric.pairs import catalog
from toric.pairs.predicates import orbit_cone
from toric.root_data import RootSystem


def test_translation_lengths():
    W = AffineWeylGroup(RootSystem.gl(2))
    assert W.length(W.translation((1, 0))) == 1
    assert W.length(W.translation((0, 0))) == 0
    assert W.length(W.translation((2, 0))) == 2


@pytest.mark.parametrize('pair,size', [
    (catalog.gl(2, 1), 3),
    (catalog.gl(3, 1), 7),
    (catalog.gl(3, 2), 7),
    (catalog.gl(4, 1), 15),
    (catalog.gsp(2), 13),
], ids=lambda x: getattr(x, 'name', str(x)))
def test_admissible_set_sizes(pair, size):
    assert len(admissible_set(pair)) == size


def test_gsp4_structure():
    poset = admissible_set(catalog.gsp(2))
    assert sorted(poset.maximal()) == sorted(poset.translations)
    assert len(poset.translations) == 4
    assert all(poset.elements[i].length == 3 for i in poset.translations)
    (bottom,) = poset.minimal()
    assert poset.elements[bottom].length == 0
    assert len(poset.lambda_set(bottom)) == 4
    assert all(poset.leq(bottom, i) for i in range(len(poset)))


def test_face_map_extremes():
    pair = catalog.gsp(2)
    poset = admissible_set(pair)
    cone = orbit_cone(pair)
    rays = cone.extremal_rays()
    for i, mu in poset.translations.items():
        face = face_map(pair, poset.elements[i], poset, cone)
        assert face.dimension == 1
        assert face.rays == frozenset({rays.index(tuple(mu))})
    (bottom,) = poset.minimal()
    whole = face_map(pair, poset.elements[bottom], poset, cone)
    assert whole.dimension == cone.dimension
    assert not whole.tight


@pytest.mark.parametrize('pair', [catalog.gl(3, 1), catalog.gl(4, 2), catalog.gsp(2)], ids=lambda p: p.name)
def test_face_map_reverses_order_and_is_surjective(pair):
    report = face_map_report(pair)
    assert report.order_reversing
    assert not report.violations
    assert report.surjective


def test_face_map_is_injective_for_gl_minuscule_one():
    assert face_map_report(catalog.gl(3, 1)).injective


def test_non_admissible_element():
    pair = catalog.gl(2, 1)
    poset = admissible_set(pair)
    with pytest.raises(NotAdmissibleError):
        face_map(pair, poset.group.translation((2, 0)), poset)


@pytest.mark.parametrize('pair', [catalog.gu_ramified(3, 2, 1), catalog.gl_two_step_parahoric(4, 2),
                                  catalog.res_ramified_gl(3, (5, 2, 1))], ids=lambda p: p.name)
def test_unsupported_pairs(pair):
    with pytest.raises(UnsupportedPairError):
        admissible_set(pair)


def test_admissible_budget():
    with pytest.raises(ResourceLimitExceeded):
        admissible_set(catalog.gsp(2), Budget(max_admissible=5))


def test_poset_dict_and_dot():
    poset = admissible_set(catalog.gl(2, 1))
    data = poset.to_dict()
    assert data['size'] == 3
    assert len(data['maximal']) == 2
    assert sum(1 for el in data['elements'] if el['translation']) == 2
    dot = poset.to_dot('gl:2:1')
    assert dot.startswith('digraph "gl:2:1" {')
    assert dot.count('->') == len(poset.covers)
