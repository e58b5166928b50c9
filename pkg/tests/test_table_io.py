import pytest

from src.database import table_io
from src.logic import catalog
from src.logic.errors import MalformedTableError, NotAssociativeError, OutOfRangeError
from tests.conftest import table_path


def test_parse_with_comments_and_blank_lines():
    text = "# zero à esquerda\n\n2\n0 0\n# linha do meio\n1 1\n"
    assert table_io.parse_table(text) == catalog.left_zero(2)


@pytest.mark.parametrize('name, expected', [
    ('left_zero2.txt', catalog.left_zero(2)),
    ('right_zero2.txt', catalog.right_zero(2)),
    ('null2.txt', catalog.null_semigroup(2)),
    ('c3.txt', catalog.cyclic_group(3)),
    ('s3.txt', catalog.symmetric_group_3()),
    ('b2.txt', catalog.brandt_b2()),
    ('trivial.txt', catalog.trivial()),
])
def test_sample_files_match_catalog(name, expected):
    assert table_io.read_table(table_path(name)) == expected


def test_malformed_sample_reports_out_of_range():
    with pytest.raises(OutOfRangeError) as info:
        table_io.read_table(table_path('malformed_out_of_range.txt'))
    assert info.value.details == {'entry': '2', 'row': 1, 'col': 1}


@pytest.mark.parametrize('text', [
    '',
    '# só comentário\n',
    '2 2\n0 0\n0 0\n',
    'dois\n0 0\n0 0\n',
    '0\n',
    '2\n0 0\n',
    '2\n0 0\n0\n',
    '2\n0 x\n0 0\n',
])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(MalformedTableError):
        table_io.parse_table(text)


def test_parse_validates_associativity():
    with pytest.raises(NotAssociativeError):
        table_io.parse_table('2\n1 0\n0 0\n')


def test_read_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        table_io.read_table(str(tmp_path / 'nao_existe.txt'))


@pytest.mark.parametrize('table', [catalog.trivial(), catalog.symmetric_group_3(), catalog.monogenic(2, 3)])
def test_format_round_trip(table):
    text = table_io.format_table(table, comment='exemplo\ncom duas linhas')
    assert text.startswith('# exemplo\n# com duas linhas\n')
    assert table_io.parse_table(text) == table


def test_read_rejects_non_utf8_file(tmp_path):
    path = tmp_path / 'latin1.txt'
    path.write_bytes(b'# semigrupo nulo \xe7\n1\n0\n')
    with pytest.raises(MalformedTableError) as info:
        table_io.read_table(str(path))
    assert info.value.details == {'path': str(path)}
