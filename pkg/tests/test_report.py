import os

import pytest

from toric.budget import Budget
from toric.errors import InvalidInputError
from toric.pairs import catalog
from toric.report import ReportOptions, report
from toric.sections import SECTION_ORDER, SectionStatus, get_registry
from utils.helpers import dump_json
from utils.report_generator import ReportGenerator


# -- registry --------------------------------------------------------------------

def test_registry_loads_settings():
    registry = get_registry()
    assert [s.name for s in registry.get_all_sections()] == list(SECTION_ORDER)
    config = registry.get_config()
    assert config['global']['default_prime'] == 3
    assert config['sections']['ideal']['max_variables'] == 12


def test_registry_budgets():
    registry = get_registry()
    assert registry.budget().name == 'fast'
    assert registry.budget('full').heavy_ideals
    capped = registry.budget('7')
    assert capped.max_groebner_basis == 7
    assert capped.max_admissible == 7
    for bad in ('0', '-1', 'huge'):
        with pytest.raises(InvalidInputError):
            registry.budget(bad)


def test_disabled_sections_do_not_run():
    registry = get_registry()
    registry.update_config({'sections': {'adm': {'enabled': False}, 'facemap': {'enabled': False}}})
    names = [s.name for s in registry.get_enabled_sections()]
    assert 'adm' not in names and 'facemap' not in names
    assert 'cone' in names


def test_run_sections_maps_failures_to_statuses():
    registry = get_registry()
    pair = catalog.gu_ramified(3, 2, 1)
    results = registry.run_sections(pair, {'budget': Budget()}, ['cone', 'adm'])
    assert results['cone'].status == SectionStatus.SUCCESS
    assert results['adm'].status == SectionStatus.NOT_APPLICABLE
    assert results['adm'].warnings

    results = registry.run_sections(catalog.gsp(2), {'budget': Budget(max_admissible=5)}, ['adm'])
    assert results['adm'].status == SectionStatus.BUDGET_EXCEEDED
    assert 'admissible set size' in results['adm'].errors[0]


def test_large_ideal_is_disabled_on_the_fast_budget():
    results = get_registry().run_sections(catalog.gspin(4), {'budget': Budget()}, ['ideal'])
    assert results['ideal'].status == SectionStatus.DISABLED


# -- report ------------------------------------------------------------------------

def test_report_of_gsp2(workdir):
    data = report(catalog.gsp(2))
    assert data['schema'] == 'weyl-toric/1'
    assert data['pair']['name'] == 'gsp:2'
    assert list(data['sections']) == list(SECTION_ORDER)
    statuses = {name: s['status'] for name, s in data['sections'].items()}
    assert set(statuses.values()) == {'success'}
    sections = data['sections']
    assert sections['hilbert']['data']['size'] == 4
    assert sections['ideal']['data']['minimal_generator_count'] == 1
    assert sections['lang']['data']['flat'] is False
    assert sections['lang']['data']['expected_agrees'] is True
    assert sections['adm']['data']['size'] == 13
    assert sections['facemap']['data']['surjective'] is True
    assert set(sections['chart']['data']) == {'generic', 'siegel'}
    assert 'execution_time' not in sections['cone']


def test_report_is_deterministic(workdir):
    options = ReportOptions(sections=['cone', 'hilbert', 'lang'])
    first = dump_json(report(catalog.gl(3, 2), options))
    second = dump_json(report(catalog.gl(3, 2), options))
    assert first == second


def test_report_section_filter_keeps_canonical_order(workdir):
    data = report(catalog.gl(2, 1), ReportOptions(sections=['lang', 'cone', 'nonsense']))
    assert list(data['sections']) == ['cone', 'lang']


def test_report_with_unusable_semigroup(workdir):
    data = report(catalog.gu_ramified(3, 2, 1), ReportOptions(semigroup='free', sections=['cone', 'hilbert']))
    assert 'error' in data['semigroup']
    assert data['sections']['cone']['status'] == 'success'
    assert data['sections']['hilbert']['status'] == 'error'
    assert data['sections']['hilbert']['errors'][0].startswith('semigroup:')


def test_report_timing_and_divisor_characters(workdir):
    data = report(catalog.gl(2, 1), ReportOptions(sections=['divisor'], chi=[(1, 0)], timing=True))
    divisor = data['sections']['divisor']
    assert 'execution_time' in divisor
    rows = divisor['data']['divisors']
    assert rows[0]['chi'] == [1, 0]
    assert [m['m'] for m in rows[0]['multiplicities']] == [1, 0]


# -- markdown report ------------------------------------------------------------------

def test_markdown_report(workdir):
    analysis = report(catalog.gsp(2), ReportOptions(sections=['cone', 'hilbert', 'adm']))
    path = ReportGenerator(str(workdir / 'out')).generate_report(analysis)
    assert os.path.exists(path)
    text = open(path, encoding='utf-8').read()
    assert text.startswith('# Local Model Pair Analysis')
    assert '`gsp:2`' in text
    assert '## Hilbert Basis' in text
    assert '| adm |' in text


def test_markdown_report_lists_failed_sections(workdir):
    analysis = report(catalog.gu_ramified(3, 2, 1), ReportOptions(sections=['adm']))
    path = ReportGenerator(str(workdir)).generate_report(analysis)
    text = open(path, encoding='utf-8').read()
    assert '**Status:** not_applicable' in text
