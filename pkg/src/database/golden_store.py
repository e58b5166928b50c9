import os
import sys
from typing import Dict, List, Tuple

import pandas as pd

from src.logic.enumeration import NontransitiveResult, VerificationReport
from src.logic.errors import GoldenFixtureError

COLUMNS = ['order', 'filter', 'count']
# Linha-resumo da busca por ~p não transitiva: order = menor ordem achada
# (0 se nenhuma), count = quantos semigrupos nessa ordem.
NONTRANSITIVE_PREFIX = 'smallest_nontransitive<='


def _row_key(order: int, filter_label: str) -> str:
    if filter_label.startswith(NONTRANSITIVE_PREFIX):
        return filter_label
    return f'{order}:{filter_label}'


def rows_from_verification(report: VerificationReport) -> List[Dict]:
    """ Contagens de semigrupos por ordem e de satisfatores da condição por (ordem, n). """
    rows = []
    for order in report.orders_checked:
        rows.append({'order': order, 'filter': 'all', 'count': report.semigroups_enumerated[order]})
        for n, count in sorted(report.condition_satisfiers[order].items()):
            rows.append({'order': order, 'filter': f'condition({n})', 'count': count})
    return rows


def rows_from_nontransitive(result: NontransitiveResult) -> List[Dict]:
    bound = result.orders_scanned[-1] if result.orders_scanned else 0
    return [{
        'order': result.order or 0,
        'filter': f'{NONTRANSITIVE_PREFIX}{bound}',
        'count': len(result.examples),
    }]


def load_goldens(path: str) -> pd.DataFrame:
    if not os.path.exists(path):
        return pd.DataFrame(columns=COLUMNS)
    try:
        frame = pd.read_csv(path, comment='#', skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as error:
        raise GoldenFixtureError(f"Fixture '{path}' ilegível: {error}", path=path) from None
    missing = [column for column in COLUMNS if column not in frame.columns]
    if missing:
        raise GoldenFixtureError(f"Fixture '{path}' sem as colunas {missing}.", path=path, missing=missing)
    try:
        return frame[COLUMNS].astype({'order': int, 'filter': str, 'count': int})
    except (TypeError, ValueError):
        raise GoldenFixtureError(f"Fixture '{path}' com contagens não inteiras.", path=path) from None


def save_goldens(path: str, frame: pd.DataFrame) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    ordered = frame.sort_values(['filter', 'order'], kind='mergesort').reset_index(drop=True)
    ordered.to_csv(path, index=False, columns=COLUMNS)


def reconcile(path: str, rows: List[Dict], regen: bool = False) -> Tuple[List[Dict], bool]:
    """
    Compara as contagens calculadas com a fixture.
    Chaves ausentes na fixture são gravadas (primeira execução); com regen=True
    todas as chaves calculadas são regravadas.

    :param path: Caminho do CSV de contagens.
    :param rows: Linhas calculadas, com as colunas order, filter e count.
    :param regen: Se True, sobrescreve as contagens gravadas.
    :return: (lista de divergências, True se o arquivo foi regravado).
    """
    stored = {
        _row_key(int(record['order']), str(record['filter'])): record
        for record in load_goldens(path).to_dict('records')
    }
    mismatches = []
    changed = False
    for row in rows:
        key = _row_key(row['order'], row['filter'])
        previous = stored.get(key)
        if previous is None or regen:
            if previous is None or (int(previous['order']), int(previous['count'])) != (row['order'], row['count']):
                changed = True
            stored[key] = dict(row)
        elif (int(previous['order']), int(previous['count'])) != (row['order'], row['count']):
            mismatches.append({
                'filter': row['filter'],
                'order': row['order'],
                'count': row['count'],
                'expected_order': int(previous['order']),
                'expected_count': int(previous['count']),
            })

    if changed:
        save_goldens(path, pd.DataFrame(list(stored.values()), columns=COLUMNS))
        print(f"Fixture de contagens gravada em '{path}'.", file=sys.stderr)
    elif rows:
        print(f"Contagens comparadas com '{path}': {len(mismatches)} divergência(s).", file=sys.stderr)
    return mismatches, changed
