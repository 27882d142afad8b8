import json

import pytest

from main import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_parser_global_options_after_subcommand():
    args = build_parser().parse_args(['lang', 'gsp:2', '--p', '5', '--budget', 'full'])
    assert args.command == 'lang'
    assert args.p == 5
    assert args.budget == 'full'
    assert args.out == 'json'


def test_pair_list(workdir, capsys):
    code, data = run_json(capsys, 'pair', 'list')
    assert code == 0
    assert data['schema'] == 'weyl-toric/1'
    assert {row['family'] for row in data['pairs']} >= {'gl', 'gsp', 'gspin', 'res-gl', 'gu'}


def test_pair_show(workdir, capsys):
    code, data = run_json(capsys, 'pair', 'show', 'gsp:2', '--p', '5')
    assert code == 0
    assert data['pair']['p'] == 5
    assert len(data['pair']['orbit']) == 4


def test_hilbert(workdir, capsys):
    code, data = run_json(capsys, 'hilbert', 'gl:4:2')
    assert code == 0
    assert data['size'] == 8
    assert sorted(el['name'] for el in data['elements'])[:2] == ['e_1', 'e_2']


def test_ideal(workdir, capsys):
    code, data = run_json(capsys, 'ideal', 'gsp:2')
    assert code == 0
    assert data['minimal_generator_count'] == 1
    assert data['kernel_check'] is True


def test_lang_keys(workdir, capsys):
    code, data = run_json(capsys, 'lang', 'gl:3:1')
    assert code == 0
    for key in ('group_order', 'rays', 'fiber_length', 'flat', 'smooth', 'conjecture_conjLco_consistent'):
        assert key in data
    assert data['group_order'] == 8
    assert data['flat'] is True


def test_analyze(workdir, capsys):
    code, data = run_json(capsys, 'analyze', 'gl:2:1', '--sections', 'cone,divisor', '--chi', '1,0')
    assert code == 0
    assert data['schema'] == 'weyl-toric/1'
    assert list(data['sections']) == ['cone', 'divisor']
    assert data['sections']['divisor']['data']['divisors'][0]['chi'] == [1, 0]


def test_analyze_writes_markdown_report(workdir, capsys):
    code, _ = run(capsys, 'analyze', 'gl:2:1', '--sections', 'cone', '--report')
    assert code == 0
    assert list((workdir / 'reports').glob('analysis_gl_2_1_p3_*.md'))


def test_adm_with_dot(workdir, capsys):
    dot = workdir / 'adm.dot'
    code, data = run_json(capsys, 'adm', 'gsp:2', '--dot', str(dot))
    assert code == 0
    assert data['size'] == 13
    assert dot.read_text().startswith('digraph "gsp:2"')


def test_divisor(workdir, capsys):
    code, data = run_json(capsys, 'divisor', 'gl:2:1', '--chi', '1,0')
    assert code == 0
    assert [m['m'] for m in data['divisors'][0]['multiplicities']] == [1, 0]


def test_chart_and_raynaud(workdir, capsys):
    code, data = run_json(capsys, 'chart', 'gsp:1', '--kind', 'siegel')
    assert code == 0
    assert data['round_trip'] is True
    code, data = run_json(capsys, 'raynaud', '--d', '1', '--mode', 'generators', '--etale')
    assert code == 0
    assert [r['relation'] for r in data['presentation']['relations']] == ['u^3 - delta*u', 'u^2 - delta']
    assert data['etale'] == {'rank': 2, 'expected': 2, 'matches': True}


def test_lattice_file(workdir, capsys):
    path = workdir / 'swap.json'
    path.write_text(json.dumps({'rank': 2, 'inertia': [[0, 1], [1, 0]], 'frobenius': [[1, 0], [0, 1]]}))
    code, data = run_json(capsys, 'lattice', str(path), '--average', '1,0')
    assert code == 0
    assert data['inertia_order'] == 2
    assert data['average']['value'] == ['1/2', '1/2']


def test_unknown_pair_exits_2(workdir, capsys):
    code, data = run_json(capsys, 'lang', 'nope:1')
    assert code == 2
    assert data['error'] == 'invalid_input'


def test_budget_exceeded_exits_3(workdir, capsys):
    code, data = run_json(capsys, 'adm', 'gsp:2', '--budget', '1')
    assert code == 3
    assert data['error'] == 'budget_exceeded'


def test_unsupported_pair_exits_2(workdir, capsys):
    code, _ = run(capsys, 'adm', 'gu:3:2,1')
    assert code == 2


def test_text_output(workdir, capsys):
    code, out = run(capsys, 'lang', 'gl:2:1', '--out', 'text')
    assert code == 0
    assert 'lang gl:2:1' in out
    assert 'group_order' in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['--version'])
    assert exc.value.code == 0
    assert 'weyl-toric v' in capsys.readouterr().out
