import pytest

from toric.errors import InvalidInputError, InvariantViolation
from toric.root_data import (
    RootSystem, WeylGroupElement, cartan_matrix, hull_contains_origin_interior, parabolic_quotient_size,
    parse_label, reduced_word, weyl_orbit,
)

IRREDUCIBLE_UP_TO_6 = (
    [('A', r) for r in range(1, 7)]
    + [('B', r) for r in range(2, 7)]
    + [('C', r) for r in range(3, 7)]
    + [('D', r) for r in range(4, 7)]
    + [('E', 6), ('F', 4), ('G', 2)]
)


def test_cartan_matrices():
    assert cartan_matrix('A', 2) == ((2, -1), (-1, 2))
    assert cartan_matrix('B', 2) == ((2, -1), (-2, 2))
    assert cartan_matrix('C', 2) == ((2, -2), (-1, 2))
    assert cartan_matrix('G', 2) == ((2, -3), (-1, 2))
    with pytest.raises(InvalidInputError):
        cartan_matrix('D', 2)
    with pytest.raises(InvalidInputError):
        cartan_matrix('E', 5)


def test_parse_label():
    assert parse_label('C2xC2') == [('C', 2), ('C', 2)]
    assert parse_label('A_3') == [('A', 3)]
    with pytest.raises(InvalidInputError):
        parse_label('Q3')


@pytest.mark.parametrize('series,rank,order', [
    ('A', 3, 24), ('B', 3, 48), ('C', 4, 384), ('D', 4, 192), ('E', 6, 51840), ('F', 4, 1152), ('G', 2, 12),
])
def test_weyl_group_orders(series, rank, order):
    assert RootSystem.cartan(series, rank).order() == order


@pytest.mark.parametrize('series,rank,count', [('A', 3, 6), ('B', 3, 9), ('G', 2, 6), ('D', 4, 12)])
def test_positive_root_counts(series, rank, count):
    assert len(RootSystem.cartan(series, rank).positive_roots()) == count


def test_realizations_reproduce_cartan_matrices():
    assert RootSystem.gl(4).cartan_label == 'A3'
    assert RootSystem.gsp(2).cartan_pairings == cartan_matrix('C', 2)
    assert RootSystem.gspin(3).cartan_pairings == cartan_matrix('B', 3)
    assert RootSystem.gsp(1, 2).cartan_label == 'C1xC1'


def test_inconsistent_root_system_rejected():
    with pytest.raises(InvariantViolation):
        RootSystem('A2', ((1, 0), (0, 1)), ((2, 0), (0, 2)))


def test_from_dict_round_trip():
    rs = RootSystem.gsp(2)
    assert RootSystem.from_dict(rs.to_dict()) == rs
    padded = RootSystem.gl(3).padded(1)
    assert RootSystem.from_dict(padded.to_dict()) == padded


def test_weyl_orbits():
    assert weyl_orbit(RootSystem.gl(3), (1, 0, 0)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(weyl_orbit(RootSystem.gl(4), (1, 1, 0, 0))) == 6
    assert len(weyl_orbit(RootSystem.gsp(2), (1, 1, 1))) == 4
    with pytest.raises(InvalidInputError):
        weyl_orbit(RootSystem.gl(3), (1, 0))


def test_reduced_word_and_length():
    rs = RootSystem.cartan('A', 2)
    w = WeylGroupElement.from_word(rs, (0, 1, 0))
    assert w.length(rs) == 3
    assert len(reduced_word(rs, w.matrix)) == 3
    assert WeylGroupElement.from_word(rs, (0, 0)).length(rs) == 0


@pytest.mark.parametrize('series,rank', IRREDUCIBLE_UP_TO_6)
def test_parabolic_quotient_lower_bound(series, rank):
    rs = RootSystem.cartan(series, rank)
    for omitted in range(rank):
        J = [i for i in range(rank) if i != omitted]
        q = parabolic_quotient_size(rs, J)
        assert q.size >= rank + 1
        end_node = omitted in (0, rank - 1)
        assert q.equality == (series == 'A' and end_node)


@pytest.mark.parametrize('series,rank', [('A', 3), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)])
def test_quotient_size_by_orbit_agrees(series, rank):
    rs = RootSystem.cartan(series, rank)
    for omitted in range(rank):
        J = [i for i in range(rank) if i != omitted]
        assert parabolic_quotient_size(rs, J, 'orbit').size == parabolic_quotient_size(rs, J).size


def test_parabolic_quotient_rejects_bad_input():
    rs = RootSystem.cartan('A', 2)
    with pytest.raises(InvalidInputError):
        parabolic_quotient_size(rs, [5])
    with pytest.raises(InvalidInputError):
        parabolic_quotient_size(rs, [0], method='guess')


def test_hull_contains_origin_interior():
    assert hull_contains_origin_interior([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert hull_contains_origin_interior(weyl_orbit(RootSystem.cartan('A', 2), (1, 0)))
    assert not hull_contains_origin_interior([(1, 0), (0, 1)])
    assert not hull_contains_origin_interior([(0, 0)])
