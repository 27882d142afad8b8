import pytest
import sympy

from toric.errors import AssumptionViolation, InvalidInputError, UnsupportedPairError
from toric.pairs import catalog
from toric.presentation import (
    chart_presentation, drinfeld_chart, fake_unitary_chart, parse_relation, raynaud_etale_check,
    raynaud_presentation, siegel_chart,
)


def test_raynaud_golden_strings():
    assert raynaud_presentation(1, 'group', 3).render() == ['u^3 - delta*u']
    assert raynaud_presentation(1, 'generators', 3).render() == ['u^3 - delta*u', 'u^2 - delta']
    two = raynaud_presentation(2, 'group', 3).render()
    assert two[0] == 'u_0^3 - delta_0*u_1'
    assert two[1] == 'u_1^3 - delta_1*u_0'


@pytest.mark.parametrize('d', [1, 2, 3])
@pytest.mark.parametrize('mode', ['group', 'generators'])
def test_raynaud_round_trip_and_equivariance(d, mode):
    presentation = raynaud_presentation(d, mode, 5)
    assert presentation.round_trip()
    assert presentation.equivariant()
    assert len(presentation.relations) == d + (1 if mode == 'generators' else 0)


@pytest.mark.parametrize('d,mode,p,expected', [
    (1, 'group', 3, 3),
    (1, 'generators', 3, 2),
    (2, 'group', 3, 9),
    (2, 'generators', 3, 8),
    (1, 'group', 5, 5),
])
def test_raynaud_etale_rank(d, mode, p, expected):
    check = raynaud_etale_check(d, mode, p)
    assert check.rank == expected
    assert check.matches


def test_raynaud_bad_arguments():
    with pytest.raises(InvalidInputError):
        raynaud_presentation(0)
    with pytest.raises(InvalidInputError):
        raynaud_presentation(1, 'scheme')


def test_parse_relation_handles_non_identifier_names():
    expr = parse_relation("a_1*z'_1^2 - w_p", ["z'_1", 'a_1', 'w_p'])
    a, z, w = sympy.Symbol('a_1'), sympy.Symbol("z'_1"), sympy.Symbol('w_p')
    assert sympy.expand(expr - (a * z ** 2 - w)) == 0
    with pytest.raises(InvalidInputError):
        parse_relation('u^^2', ['u'])


def test_drinfeld_chart():
    chart = drinfeld_chart(2, 3)
    assert chart.render() == ['u_1^2*u_2^2 - 3']
    assert chart.equivariant()
    assert chart.round_trip()


def test_fake_unitary_chart():
    chart = fake_unitary_chart(2, 3)
    assert chart.render() == ['u_1^3 - x_2*u_2', 'u_2^3 - x_1*u_1', 'u_1^2*u_2^2 - 3']
    assert chart.round_trip()


def test_siegel_chart():
    chart = siegel_chart(1, 3)
    assert chart.render() == ['z_1^2 - a_1', 'z^2 - w_p', "a_1*z'_1^2 - w_p", "z_1*z'_1 - z"]
    assert chart.equivariant()
    assert chart.round_trip()


def test_generic_chart_for_split_pair():
    chart = chart_presentation(catalog.gsp(2))
    assert sorted(chart.names) == ['e_1', 'e_2', 'f_1', 'f_2']
    assert 'e_1^2 - delta(e_1)' in chart.render()
    assert chart.equivariant()
    assert chart.round_trip()
    data = chart.to_dict()
    assert data['kind'] == 'generic'
    assert data['equivariant'] is True


def test_generic_chart_for_non_split_pair():
    chart = chart_presentation(catalog.division_algebra(2))
    assert len(chart.relations) == 2
    assert chart.equivariant()
    assert chart.round_trip()


@pytest.mark.parametrize('pair,kind', [
    (catalog.gl(3, 1), 'drinfeld'),
    (catalog.fake_unitary(2), 'fake-unitary'),
    (catalog.gsp(2), 'siegel'),
    (catalog.hilbert_siegel(1, 2), 'hilbert-siegel'),
    (catalog.gl(3, 2), 'split'),
], ids=lambda x: getattr(x, 'name', x))
def test_chart_kinds_round_trip(pair, kind):
    chart = chart_presentation(pair, kind=kind)
    assert chart.round_trip()
    assert chart.equivariant()


def test_chart_kind_mismatches():
    with pytest.raises(UnsupportedPairError):
        chart_presentation(catalog.gsp(2), kind='drinfeld')
    with pytest.raises(AssumptionViolation):
        chart_presentation(catalog.division_algebra(2), kind='split')
    with pytest.raises(InvalidInputError):
        chart_presentation(catalog.gsp(2), kind='affine')
