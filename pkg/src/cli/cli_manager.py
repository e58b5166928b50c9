import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

import config
from src.database import golden_store, table_io
from src.logic import algebra, conjugacy, enumeration
from src.logic.errors import AlgebraError

# Códigos de saída
EXIT_OK = 0
EXIT_PROPERTY_FALSE = 1
EXIT_INPUT_ERROR = 2


@dataclass
class Report:
    """ Resultado de um comando: resumo da entrada, carga útil e código de saída. """
    command: str
    input: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    exit_status: int = EXIT_OK

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'input': self.input,
            'results': self.results,
            'exit_status': self.exit_status,
        }


def _input_error(command: str, inputs: Dict[str, Any], error: Exception) -> Report:
    if isinstance(error, AlgebraError):
        payload = error.to_dict()
    else:
        payload = {'code': 'IO_ERROR', 'message': str(error)}
    print(f"Erro de entrada [{payload['code']}]: {payload['message']}", file=sys.stderr)
    return Report(command, inputs, {'error': payload}, EXIT_INPUT_ERROR)


def _table_summary(table: algebra.CayleyTable) -> Dict[str, Any]:
    identity = algebra.find_identity(table)
    return {
        'order': table.order,
        'table': table.to_lists(),
        'commutative': algebra.is_commutative(table),
        'identity': identity,
    }


# --- Comandos ---

def cmd_check(path: str, n: Optional[int] = None, n_max: Optional[int] = None) -> Report:
    """
    Valida a tábua e informa comutatividade, identidade e a condição
    xy ∈ {yx, (xy)ⁿ}, para um n fixo ou para o menor n ≤ n_max.
    """
    inputs = {'file': path, 'n': n, 'n_max': n_max}
    try:
        table = table_io.read_table(path)
        results = {'valid': True, **_table_summary(table)}
        if n is not None:
            report = algebra.satisfies_condition(table, n)
            results['condition'] = {
                'n': n,
                'holds': report.holds,
                'first_failure': list(report.first_failure) if report.first_failure else None,
                'branch_counts': {
                    branch.value: sum(1 for b in report.branches.values() if b is branch)
                    for branch in algebra.Branch
                },
            }
            holds = report.holds
        else:
            limit = n_max if n_max is not None else config.DEFAULT_N_MAX
            smallest = algebra.smallest_condition_n(table, limit)
            results['condition'] = {'n_max': limit, 'smallest_n': smallest}
            holds = smallest is not None
    except (AlgebraError, OSError) as error:
        return _input_error('check', inputs, error)
    return Report('check', inputs, results, EXIT_OK if holds else EXIT_PROPERTY_FALSE)


def cmd_classes(path: str) -> Report:
    """ Mostra os pares de ~p, se ~p já é transitiva e as classes de ~p*. """
    inputs = {'file': path}
    try:
        table = table_io.read_table(path)
    except (AlgebraError, OSError) as error:
        return _input_error('classes', inputs, error)
    relation = conjugacy.p_relation(table)
    results = {
        'order': table.order,
        'p_pairs': [list(pair) for pair in relation.pairs()],
        'transitive': conjugacy.is_p_transitive(table),
        'classes': conjugacy.conjugacy_classes(table).classes(),
    }
    triple = conjugacy.find_violating_triple(table)
    results['violating_triple'] = list(triple) if triple else None
    return Report('classes', inputs, results, EXIT_OK)


def cmd_witness(path: str, a: int, b: int, c: int, n: int) -> Report:
    """
    Busca testemunhas de a ~p b e b ~p c e as compõe numa testemunha de a ~p c.
    Sai com 1 se faltar um elo da cadeia ou se a condição falhar.
    """
    inputs = {'file': path, 'a': a, 'b': b, 'c': c, 'n': n}
    try:
        table = table_io.read_table(path)
        w_ab = conjugacy.p_related(table, a, b)
        w_bc = conjugacy.p_related(table, b, c)
        algebra.check_exponent(n)
    except (AlgebraError, OSError) as error:
        return _input_error('witness', inputs, error)

    results: Dict[str, Any] = {
        'witness_ab': [w_ab.u, w_ab.v] if w_ab else None,
        'witness_bc': [w_bc.u, w_bc.v] if w_bc else None,
    }
    if w_ab is None or w_bc is None:
        results['error'] = {'code': 'NO_WITNESS', 'message': "Um elo da cadeia não tem testemunha."}
        return Report('witness', inputs, results, EXIT_PROPERTY_FALSE)

    try:
        w = conjugacy.compose_witnesses(table, n, w_ab, w_bc)
    except AlgebraError as error:
        results['error'] = error.to_dict()
        return Report('witness', inputs, results, EXIT_PROPERTY_FALSE)

    view = algebra.adjoin_identity(table)
    results['composed'] = [w.u, w.v]
    results['identity'] = view.identity
    results['identity_adjoined'] = view.adjoined
    results['checks'] = {
        'xy': view.product(w.u, w.v),
        'yx': view.product(w.v, w.u),
        'a': a,
        'c': c,
    }
    return Report('witness', inputs, results, EXIT_OK)


def cmd_verify(max_order: int, n_max: int, jobs: int = config.DEFAULT_JOBS, regen_goldens: bool = False,
               goldens_path: str = config.GOLDENS_PATH, progress: bool = False) -> Report:
    """ Roda verify_theorem e compara as contagens com a fixture. """
    # jobs fica fora do resumo: a saída não depende dele.
    inputs = {'max_order': max_order, 'n_max': n_max}
    try:
        report = enumeration.verify_theorem(max_order, n_max, jobs=jobs, progress=progress)
        mismatches, _ = golden_store.reconcile(
            goldens_path, golden_store.rows_from_verification(report), regen=regen_goldens)
    except (AlgebraError, OSError) as error:
        return _input_error('verify', inputs, error)
    results = {**report.to_dict(), 'golden_mismatches': mismatches}
    ok = report.holds and not mismatches
    return Report('verify', inputs, results, EXIT_OK if ok else EXIT_PROPERTY_FALSE)


def cmd_find_nontransitive(max_order: int, jobs: int = config.DEFAULT_JOBS, regen_goldens: bool = False,
                           goldens_path: str = config.GOLDENS_PATH, progress: bool = False) -> Report:
    inputs = {'max_order': max_order}
    try:
        result = enumeration.find_nontransitive(max_order, jobs=jobs, progress=progress)
        mismatches, _ = golden_store.reconcile(
            goldens_path, golden_store.rows_from_nontransitive(result), regen=regen_goldens)
    except (AlgebraError, OSError) as error:
        return _input_error('find-nontransitive', inputs, error)
    results = {**result.to_dict(), 'golden_mismatches': mismatches}
    return Report('find-nontransitive', inputs, results, EXIT_PROPERTY_FALSE if mismatches else EXIT_OK)


def _build_filter(name: str, n: Optional[int], n_max: Optional[int]) -> enumeration.TableFilter:
    if name == 'commutative':
        return enumeration.TableFilter(enumeration.FilterKind.COMMUTATIVE)
    if name == 'condition':
        if n is not None:
            return enumeration.TableFilter.condition(n)
        return enumeration.TableFilter.condition_any(n_max if n_max is not None else config.DEFAULT_N_MAX)
    return enumeration.TableFilter()


def cmd_enumerate(max_order: int, filter_name: str = 'all', n: Optional[int] = None,
                  n_max: Optional[int] = None, dedup: bool = True, emit: bool = False,
                  jobs: int = config.DEFAULT_JOBS, progress: bool = False) -> Report:
    """ Conta (e opcionalmente emite) as tábuas de ordem 1..max_order que passam no filtro. """
    inputs = {'max_order': max_order, 'filter': filter_name, 'n': n, 'n_max': n_max, 'dedup': dedup}
    table_filter = _build_filter(filter_name, n, n_max)
    counts: Dict[str, int] = {}
    tables: List[str] = []
    try:
        # O limite é checado antes de qualquer busca.
        enumeration.EnumerationConfig(max_order, table_filter, dedup).validate()
        for order in range(1, max_order + 1):
            cfg = enumeration.EnumerationConfig(order, table_filter, dedup)
            consumer = (lambda t: tables.append(table_io.format_table(t))) if emit else (lambda t: None)
            counts[str(order)] = enumeration.enumerate_tables(cfg, consumer, jobs=jobs, progress=progress)
    except AlgebraError as error:
        return _input_error('enumerate', inputs, error)
    results: Dict[str, Any] = {'filter': table_filter.label, 'counts': counts}
    if emit:
        results['tables'] = tables
    return Report('enumerate', inputs, results, EXIT_OK)


# --- Saída ---

def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def render_text(report: Report) -> str:
    """ Versão legível do relatório; o contrato estável é o modo --json. """
    results = report.results
    lines = [f"Comando: {report.command}"]
    if 'error' in results:
        error = results['error']
        lines.append(f"Erro [{error['code']}]: {error['message']}")

    if report.command == 'check' and 'valid' in results:
        lines.append(f"Tábua válida de ordem {results['order']}.")
        lines.append(f"Comutativo: {'sim' if results['commutative'] else 'não'}")
        identity = results['identity']
        lines.append(f"Identidade: {identity if identity is not None else 'ausente'}")
        condition = results['condition']
        if 'holds' in condition:
            lines.append(f"Condição com n = {condition['n']}: {'vale' if condition['holds'] else 'falha'}")
            if condition['first_failure']:
                lines.append(f"Primeira falha no par {tuple(condition['first_failure'])}")
        else:
            smallest = condition['smallest_n']
            lines.append(f"Menor n ≤ {condition['n_max']}: {smallest if smallest is not None else 'nenhum'}")

    elif report.command == 'classes' and 'classes' in results:
        pairs = ', '.join(f"{a}~{b}" for a, b in results['p_pairs']) or '(só pares triviais)'
        lines.append(f"Pares de ~p: {pairs}")
        lines.append(f"~p transitiva: {'sim' if results['transitive'] else 'não'}")
        if results['violating_triple']:
            a, b, c = results['violating_triple']
            lines.append(f"Tripla sem transitividade: {a} ~p {b}, {b} ~p {c}, mas não {a} ~p {c}")
        lines.append("Classes de ~p*: " + ' '.join('{' + ', '.join(map(str, cls)) + '}' for cls in results['classes']))

    elif report.command == 'witness':
        for key, label in (('witness_ab', 'a ~p b'), ('witness_bc', 'b ~p c')):
            if results.get(key):
                u, v = results[key]
                lines.append(f"Testemunha de {label}: (u, v) = ({u}, {v})")
        if 'composed' in results:
            x, y = results['composed']
            checks = results['checks']
            lines.append(f"Testemunha composta: (x, y) = ({x}, {y})")
            lines.append(f"x·y = {checks['xy']} (a = {checks['a']})")
            lines.append(f"y·x = {checks['yx']} (c = {checks['c']})")
            if results['identity_adjoined']:
                lines.append(f"O índice {results['identity']} é a identidade adjunta de S¹.")

    elif report.command == 'verify' and 'holds' in results:
        frame = pd.DataFrame(
            [{'ordem': int(order), 'semigrupos': count} for order, count in results['semigroups_enumerated'].items()])
        lines.append(frame.to_string(index=False))
        lines.append(f"Falhas de transitividade entre satisfatores: {results['transitivity_failures_among_satisfiers']}")
        lines.append(f"Composições verificadas: {results['witness_compositions_checked']}, "
                     f"falhas: {results['witness_compositions_failed']}")
        lines.append(f"Comutativos conferidos: {results['commutative_checked']}, falhas: {results['commutative_failures']}")
        lines.append(f"Com xy = (xy)² conferidos: {results['idempotent_products_checked']}, "
                     f"falhas: {results['idempotent_products_failures']}")
        lines.append(f"Divergências da fixture: {len(results['golden_mismatches'])}")
        lines.append("Teorema verificado." if report.exit_status == EXIT_OK else "Verificação FALHOU.")

    elif report.command == 'find-nontransitive' and 'status' in results:
        scanned = results['orders_scanned']
        if results['status'] == 'NONE_FOUND':
            lines.append(f"Nenhuma ~p não transitiva até a ordem {scanned[-1] if scanned else 0}.")
        else:
            lines.append(f"Menor ordem com ~p não transitiva: {results['smallest_order']} "
                         f"({results['count']} semigrupo(s)).")
            for example in results['examples']:
                a, b, c = example['triple']
                lines.append(f"# {a} ~p {b} por {tuple(example['witness_ab'])}, "
                             f"{b} ~p {c} por {tuple(example['witness_bc'])}, mas não {a} ~p {c}")
                rows = example["table"]
                lines.append(table_io.format_table(algebra.validate_table(len(rows), rows)).rstrip())

    elif report.command == 'enumerate' and 'counts' in results:
        lines.append(f"Filtro: {results['filter']}")
        for order, count in results['counts'].items():
            lines.append(f"Ordem {order}: {count}")
        for text in results.get('tables', []):
            lines.append(text.rstrip())

    lines.append(f"Código de saída: {report.exit_status}")
    return '\n'.join(lines) + '\n'


# --- Argumentos ---

def build_parser() -> argparse.ArgumentParser:
    # --json vale depois de qualquer subcomando.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emite o relatório estruturado em vez do texto.")

    parser = argparse.ArgumentParser(
        description="Conjugação primária (~p) em semigrupos finitos dados por tábuas de Cayley.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", parents=[common], help="Valida a tábua e testa xy ∈ {yx, (xy)ⁿ}.")
    check.add_argument("file", help="Arquivo com a tábua no formato texto.")
    group = check.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, help="Expoente fixo da condição.")
    group.add_argument("--n-max", type=int, help="Procura o menor n em 2..n-max.")

    classes = subparsers.add_parser("classes", parents=[common], help="Pares de ~p e classes de ~p*.")
    classes.add_argument("file", help="Arquivo com a tábua no formato texto.")

    witness = subparsers.add_parser("witness", parents=[common], help="Compõe testemunhas de a ~p b e b ~p c.")
    witness.add_argument("file", help="Arquivo com a tábua no formato texto.")
    witness.add_argument("a", type=int)
    witness.add_argument("b", type=int)
    witness.add_argument("c", type=int)
    witness.add_argument("--n", type=int, required=True, help="Expoente da condição.")

    for name, help_text in (("verify", "Verificação exaustiva do teorema."),
                            ("find-nontransitive", "Menores semigrupos com ~p não transitiva.")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--max-order", type=int, required=True)
        if name == "verify":
            sub.add_argument("--n-max", type=int, default=config.DEFAULT_N_MAX)
        sub.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
        sub.add_argument("--regen-goldens", action="store_true", help="Regrava a fixture de contagens.")
        sub.add_argument("--goldens", default=config.GOLDENS_PATH, help="Caminho da fixture de contagens.")

    enum_parser = subparsers.add_parser("enumerate", parents=[common], help="Conta semigrupos de ordem pequena.")
    enum_parser.add_argument("--max-order", type=int, required=True)
    enum_parser.add_argument("--filter", choices=["all", "commutative", "condition"], default="all")
    enum_group = enum_parser.add_mutually_exclusive_group()
    enum_group.add_argument("--n", type=int)
    enum_group.add_argument("--n-max", type=int)
    enum_parser.add_argument("--no-dedup", action="store_true", help="Conta tábuas rotuladas.")
    enum_parser.add_argument("--emit", action="store_true", help="Inclui as tábuas no formato texto.")
    enum_parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    return parser


def run(args: argparse.Namespace) -> Report:
    progress = not args.json
    if args.command == "check":
        return cmd_check(args.file, n=args.n, n_max=args.n_max)
    if args.command == "classes":
        return cmd_classes(args.file)
    if args.command == "witness":
        return cmd_witness(args.file, args.a, args.b, args.c, args.n)
    if args.command == "verify":
        return cmd_verify(args.max_order, args.n_max, args.jobs, args.regen_goldens, args.goldens, progress)
    if args.command == "find-nontransitive":
        return cmd_find_nontransitive(args.max_order, args.jobs, args.regen_goldens, args.goldens, progress)
    return cmd_enumerate(args.max_order, args.filter, args.n, args.n_max,
                         dedup=not args.no_dedup, emit=args.emit, jobs=args.jobs, progress=progress)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ponto de entrada da CLI: interpreta os argumentos, executa o comando e
    escreve o relatório na saída padrão.

    :param argv: Argumentos (sem o nome do programa); None usa sys.argv.
    :return: O código de saída 0, 1 ou 2.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse já escreveu o diagnóstico em stderr.
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    report = run(args)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return report.exit_status
