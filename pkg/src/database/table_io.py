import os
from typing import List

from src.logic.algebra import CayleyTable, validate_table
from src.logic.errors import MalformedTableError

# Formato texto das tábuas:
#   - linhas começando com '#' são comentários; linhas em branco são ignoradas;
#   - a primeira linha útil é a ordem k;
#   - as k linhas seguintes trazem k inteiros (base 0) separados por espaço.


def _content_lines(text: str) -> List[str]:
    lines = []
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith('#'):
            continue
        lines.append(line)
    return lines


def _parse_int(token: str, where: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedTableError(f"Valor não inteiro '{token}' em {where}.", token=token) from None


def parse_table(text: str) -> CayleyTable:
    """
    Lê uma tábua no formato texto e a valida.

    :param text: Conteúdo completo do arquivo.
    :return: O CayleyTable validado.
    :raises MalformedTableError: se a estrutura do arquivo estiver incorreta.
    """
    lines = _content_lines(text)
    if not lines:
        raise MalformedTableError("Arquivo sem conteúdo: a primeira linha útil deve ser a ordem.")

    header = lines[0].split()
    if len(header) != 1:
        raise MalformedTableError(f"A primeira linha útil deve conter só a ordem, encontrado '{lines[0]}'.")
    order = _parse_int(header[0], 'cabeçalho')
    if order < 1:
        raise MalformedTableError(f"Ordem inválida: {order}.", order=order)

    rows = lines[1:]
    if len(rows) != order:
        raise MalformedTableError(f"Esperadas {order} linhas da tábua, encontradas {len(rows)}.", order=order)

    raw = []
    for i, line in enumerate(rows):
        tokens = line.split()
        if len(tokens) != order:
            raise MalformedTableError(
                f"A linha {i} da tábua tem {len(tokens)} entradas, esperadas {order}.", row=i)
        raw.append([_parse_int(token, f'linha {i}') for token in tokens])

    return validate_table(order, raw)


def read_table(path: str) -> CayleyTable:
    """ Lê e valida a tábua guardada em path. """
    if not os.path.exists(path):
        raise FileNotFoundError(f"O arquivo não foi encontrado em '{path}'")
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except UnicodeDecodeError:
        raise MalformedTableError(f"O arquivo '{path}' não está em UTF-8.", path=path) from None
    return parse_table(text)


def format_table(table: CayleyTable, comment: str = '') -> str:
    """ Escreve a tábua no formato texto; parse_table(format_table(t)) == t. """
    lines = [f'# {line}' for line in comment.splitlines()]
    lines.append(str(table.order))
    lines.extend(' '.join(str(v) for v in row) for row in table.table)
    return '\n'.join(lines) + '\n'
