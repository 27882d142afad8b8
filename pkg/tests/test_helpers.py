from fractions import Fraction

import pytest

from toric.errors import InvalidInputError
from utils.helpers import dump_json, parse_sections, parse_vector, parse_vectors, render_text, truncate_text
from utils.logger import get_logger, reset_logger, set_debug_mode


def test_parse_vector():
    assert parse_vector('1,0,-1') == (1, 0, -1)
    assert parse_vector('(2, 3)') == (2, 3)
    assert parse_vector('1/2,0', integral=False) == (Fraction(1, 2), Fraction(0))
    for bad in ('', 'a,b', '1/2,0', '1/0'):
        with pytest.raises(InvalidInputError):
            parse_vector(bad)


def test_parse_vectors():
    assert parse_vectors(['1,0;0,1', '1,1']) == [(1, 0), (0, 1), (1, 1)]
    assert parse_vectors([]) == []
    with pytest.raises(InvalidInputError):
        parse_vectors(['1,0,0'], rank=2)


def test_parse_sections():
    assert parse_sections('cone, lang,,') == ['cone', 'lang']
    assert parse_sections('') == []


def test_dump_json_handles_exact_values():
    text = dump_json({'a': Fraction(1, 2), 'b': Fraction(4, 2), 'c': (1, 2), 'd': {3, 1}})
    assert '"a": "1/2"' in text
    assert '"b": 2' in text
    assert text == dump_json({'a': Fraction(1, 2), 'b': Fraction(4, 2), 'c': (1, 2), 'd': {1, 3}})


def test_render_text():
    lines = render_text({'schema': 'x', 'size': 3, 'flat': True, 'rays': [[1, 0], [0, 1]],
                         'names': ['e_1', 'f_1'], 'empty': []})
    text = '\n'.join(lines)
    assert 'schema' not in text
    assert '(1, 0)' in text
    assert '- e_1' in text
    assert '✓' in text


def test_truncate_text():
    assert truncate_text('abc', 10) == 'abc'
    assert truncate_text('a' * 20, 10) == 'a' * 7 + '...'


def test_logger_is_a_singleton_on_stderr(capsys):
    log = get_logger()
    assert get_logger() is log
    log.info('hello')
    captured = capsys.readouterr()
    assert 'hello' not in captured.out
    set_debug_mode(True)
    assert log.debug_mode
    reset_logger()
    assert get_logger() is not log


def test_file_logging(workdir):
    log = get_logger(log_dir=str(workdir / 'logs'))
    log.enable_file_logging()
    log.info('to file')
    assert log.log_file.exists()


def test_timed_block_records_seconds():
    log = get_logger()
    with log.timed('work') as t:
        sum(range(1000))
    assert t['seconds'] >= 0.0
