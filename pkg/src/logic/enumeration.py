import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

import config
from src.logic.algebra import (
    CayleyTable,
    adjoin_identity,
    condition_holds,
    has_idempotent_products,
    idempotents,
    is_canonical,
    is_commutative,
)
from src.logic.conjugacy import (
    Witness,
    compose_witnesses,
    find_violating_triple,
    p_related,
    p_relation,
    transitive_closure,
    witness_table,
)
from src.logic.errors import (
    BadExponentError,
    CompositionFailedError,
    InvalidConfigError,
    OrderCapExceededError,
)

Triple = Tuple[int, int, int]


# --- Configuração da Enumeração ---

class FilterKind(Enum):
    ALL = 'all'
    COMMUTATIVE = 'commutative'
    CONDITION = 'condition'
    CONDITION_ANY = 'condition_any'


@dataclass(frozen=True)
class TableFilter:
    """
    Filtro aplicado a cada tábua associativa completa.
    CONDITION usa n fixo; CONDITION_ANY aceita qualquer n em 2..n (n faz o papel de n_max).
    """
    kind: FilterKind = FilterKind.ALL
    n: Optional[int] = None

    @classmethod
    def condition(cls, n: int) -> 'TableFilter':
        return cls(FilterKind.CONDITION, n)

    @classmethod
    def condition_any(cls, n_max: int) -> 'TableFilter':
        return cls(FilterKind.CONDITION_ANY, n_max)

    @property
    def label(self) -> str:
        if self.kind in (FilterKind.CONDITION, FilterKind.CONDITION_ANY):
            return f'{self.kind.value}({self.n})'
        return self.kind.value

    def validate(self) -> None:
        if self.kind in (FilterKind.CONDITION, FilterKind.CONDITION_ANY):
            if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
                raise BadExponentError(f"O filtro {self.kind.value} exige n ≥ 2, recebido {self.n!r}.", n=str(self.n))

    def accepts(self, table: CayleyTable) -> bool:
        if self.kind is FilterKind.COMMUTATIVE:
            return is_commutative(table)
        if self.kind is FilterKind.CONDITION:
            return condition_holds(table, self.n)
        if self.kind is FilterKind.CONDITION_ANY:
            return any(condition_holds(table, n) for n in range(2, self.n + 1))
        return True


@dataclass(frozen=True)
class EnumerationConfig:
    order: int
    filter: TableFilter = TableFilter()
    dedup: bool = True
    # Sem valor explícito, os limites vêm de config.py.
    max_order_cap: Optional[int] = None

    @property
    def cap(self) -> int:
        if self.max_order_cap is not None:
            return self.max_order_cap
        return config.MAX_ORDER_DEDUP if self.dedup else config.MAX_ORDER_LABELED

    def validate(self) -> None:
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise InvalidConfigError(f"A ordem precisa ser um inteiro ≥ 1, recebido {self.order!r}.",
                                     order=str(self.order))
        if self.order > self.cap:
            raise OrderCapExceededError(
                f"Ordem {self.order} acima do limite {self.cap} "
                f"({'com' if self.dedup else 'sem'} rejeição de isomorfismo).",
                order=self.order, cap=self.cap)
        self.filter.validate()


# --- Busca com Poda ---

def _consistent(t: List[int], k: int, i: int, j: int) -> bool:
    """
    Verifica toda tripla de associatividade que ficou determinada com a
    atribuição da célula (i, j). A tábua é plana, linha a linha, e -1 marca
    células ainda vazias.
    """
    v = t[i * k + j]
    # (i·j)·z = i·(j·z)
    for z in range(k):
        left = t[v * k + z]
        jz = t[j * k + z]
        if left < 0 or jz < 0:
            continue
        right = t[i * k + jz]
        if right >= 0 and left != right:
            return False
    # (x·i)·j = x·(i·j)
    for x in range(k):
        xi = t[x * k + i]
        if xi < 0:
            continue
        left = t[xi * k + j]
        right = t[x * k + v]
        if left >= 0 and right >= 0 and left != right:
            return False
    # (x·y)·j = x·(y·j) sempre que x·y = i
    for x in range(k):
        row = x * k
        for y in range(k):
            if t[row + y] != i:
                continue
            yj = t[y * k + j]
            if yj < 0:
                continue
            right = t[row + yj]
            if right >= 0 and right != v:
                return False
    # (i·y)·z = i·(y·z) sempre que y·z = j
    for y in range(k):
        iy = t[i * k + y]
        if iy < 0:
            continue
        for z in range(k):
            if t[y * k + z] != j:
                continue
            left = t[iy * k + z]
            if left >= 0 and left != v:
                return False
    return True


def _extend(t: List[int], k: int, pos: int, stop: int, commutative: bool) -> Iterator[Tuple[int, ...]]:
    """ Preenche as células pos..stop-1 em ordem linha a linha, valores crescentes. """
    if pos == stop:
        yield tuple(t[:stop])
        return
    i, j = divmod(pos, k)
    # Abaixo da diagonal, uma tábua comutativa só pode repetir a célula simétrica.
    values = (t[j * k + i],) if commutative and j < i else range(k)
    for value in values:
        t[pos] = value
        if _consistent(t, k, i, j):
            yield from _extend(t, k, pos + 1, stop, commutative)
    t[pos] = -1


def _first_row_prefixes(order: int, commutative: bool) -> List[Tuple[int, ...]]:
    return list(_extend([-1] * (order * order), order, 0, order, commutative))


def _subtree(order: int, prefix: Sequence[int], commutative: bool) -> Iterator[Tuple[int, ...]]:
    cells = order * order
    t = list(prefix) + [-1] * (cells - len(prefix))
    return _extend(t, order, len(prefix), cells, commutative)


def _accept(flat: Sequence[int], cfg: EnumerationConfig) -> Optional[CayleyTable]:
    table = CayleyTable.from_flat(cfg.order, flat)
    if cfg.dedup and not is_canonical(table):
        return None
    if not cfg.filter.accepts(table):
        return None
    return table


def _tables_in_subtree(prefix: Tuple[int, ...], cfg: EnumerationConfig) -> List[CayleyTable]:
    commutative = cfg.filter.kind is FilterKind.COMMUTATIVE
    accepted = []
    for flat in _subtree(cfg.order, prefix, commutative):
        table = _accept(flat, cfg)
        if table is not None:
            accepted.append(table)
    return accepted


def _map_prefixes(worker: Callable[[Tuple[int, ...]], Any], prefixes: List[Tuple[int, ...]],
                  jobs: int, desc: str, progress: bool) -> Iterator[Any]:
    """
    Aplica worker a cada prefixo e devolve os resultados na ordem dos prefixos,
    seja em um único processo, seja em vários.
    """
    bar = tqdm(total=len(prefixes), desc=desc, disable=None if progress else True, file=sys.stderr)
    try:
        if jobs <= 1:
            for prefix in prefixes:
                yield worker(prefix)
                bar.update()
        else:
            chunksize = max(1, len(prefixes) // (jobs * 8))
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                for result in executor.map(worker, prefixes, chunksize=chunksize):
                    yield result
                    bar.update()
    finally:
        bar.close()


def iter_tables(cfg: EnumerationConfig, jobs: int = config.DEFAULT_JOBS,
                progress: bool = False) -> Iterator[CayleyTable]:
    """
    Gera as tábuas associativas de cfg.order que passam no filtro, em ordem
    determinística (independente de jobs). Com dedup, só as tábuas canônicas.
    """
    cfg.validate()
    commutative = cfg.filter.kind is FilterKind.COMMUTATIVE
    prefixes = _first_row_prefixes(cfg.order, commutative)
    worker = partial(_tables_in_subtree, cfg=cfg)
    return (
        table
        for tables in _map_prefixes(worker, prefixes, jobs, f'ordem {cfg.order}', progress)
        for table in tables
    )


def enumerate_tables(cfg: EnumerationConfig, consumer: Callable[[CayleyTable], None],
                     jobs: int = config.DEFAULT_JOBS, progress: bool = False) -> int:
    """
    Entrega cada tábua ao consumer, sempre a partir deste processo.

    :param cfg: Ordem, filtro e rejeição de isomorfismo.
    :param consumer: Função chamada uma vez por tábua emitida.
    :param jobs: Número de processos da busca.
    :return: Quantidade de tábuas emitidas.
    """
    count = 0
    for table in iter_tables(cfg, jobs, progress):
        consumer(table)
        count += 1
    return count


# --- Verificação do Teorema ---

@dataclass
class TableCheck:
    """ Resultado da verificação de um único semigrupo. """
    order: int
    satisfied: List[int] = field(default_factory=list)
    transitivity_failures: int = 0
    compositions_checked: int = 0
    compositions_failed: int = 0
    commutative: bool = False
    commutative_failed: bool = False
    idempotent_products: bool = False
    idempotent_products_failed: bool = False
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)


def check_table(table: CayleyTable, n_values: Sequence[int]) -> TableCheck:
    """
    Para cada n em que vale a condição, confere a transitividade de ~p e compõe
    as testemunhas de toda cadeia a ~p b ~p c. Também confere os casos
    comutativo e xy = (xy)².
    """
    check = TableCheck(order=table.order)
    relation = p_relation(table)
    transitive = relation == transitive_closure(relation)

    if is_commutative(table):
        check.commutative = True
        if not relation.is_identity():
            check.commutative_failed = True
            check.counterexamples.append({'kind': 'commutative_not_identity', 'table': table.to_lists()})

    if has_idempotent_products(table):
        check.idempotent_products = True
        idempotent = set(idempotents(table))
        # Pares a ≠ b relacionados só envolvem idempotentes: a = uv = (uv)² = a².
        strays = sorted({e for pair in relation.pairs() for e in pair} - idempotent)
        if not transitive or strays:
            check.idempotent_products_failed = True
            check.counterexamples.append({
                'kind': 'idempotent_products', 'table': table.to_lists(),
                'transitive': transitive, 'non_idempotent': strays,
            })

    check.satisfied = [n for n in n_values if condition_holds(table, n)]
    if not check.satisfied:
        return check

    view = adjoin_identity(table)
    witnesses = witness_table(table)
    for n in check.satisfied:
        if not transitive:
            check.transitivity_failures += 1
            check.counterexamples.append({
                'kind': 'transitivity', 'n': n, 'table': table.to_lists(),
                'triple': list(find_violating_triple(table)),
            })
        for (a, b) in sorted(witnesses):
            w_ab = witnesses[(a, b)]
            for c in range(table.order):
                w_bc = witnesses.get((b, c))
                if w_bc is None:
                    continue
                check.compositions_checked += 1
                try:
                    w = compose_witnesses(table, n, w_ab, w_bc)
                    ok = view.product(w.u, w.v) == a and view.product(w.v, w.u) == c
                except CompositionFailedError:
                    ok = False
                if not ok:
                    check.compositions_failed += 1
                    check.counterexamples.append({
                        'kind': 'composition', 'n': n, 'table': table.to_lists(),
                        'triple': [a, b, c], 'witness_ab': [w_ab.u, w_ab.v], 'witness_bc': [w_bc.u, w_bc.v],
                    })
    return check


@dataclass
class VerificationReport:
    n_values: List[int]
    orders_checked: List[int] = field(default_factory=list)
    semigroups_enumerated: Dict[int, int] = field(default_factory=dict)
    # ordem -> n -> quantidade de semigrupos que satisfazem a condição
    condition_satisfiers: Dict[int, Dict[int, int]] = field(default_factory=dict)
    transitivity_failures_among_satisfiers: int = 0
    witness_compositions_checked: int = 0
    witness_compositions_failed: int = 0
    commutative_checked: int = 0
    commutative_failures: int = 0
    idempotent_products_checked: int = 0
    idempotent_products_failures: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return (self.transitivity_failures_among_satisfiers == 0
                and self.witness_compositions_failed == 0
                and self.commutative_failures == 0
                and self.idempotent_products_failures == 0)

    def start_order(self, order: int) -> None:
        self.orders_checked.append(order)
        self.semigroups_enumerated[order] = 0
        self.condition_satisfiers[order] = {n: 0 for n in self.n_values}

    def absorb(self, check: TableCheck) -> None:
        self.semigroups_enumerated[check.order] += 1
        for n in check.satisfied:
            self.condition_satisfiers[check.order][n] += 1
        self.transitivity_failures_among_satisfiers += check.transitivity_failures
        self.witness_compositions_checked += check.compositions_checked
        self.witness_compositions_failed += check.compositions_failed
        self.commutative_checked += int(check.commutative)
        self.commutative_failures += int(check.commutative_failed)
        self.idempotent_products_checked += int(check.idempotent_products)
        self.idempotent_products_failures += int(check.idempotent_products_failed)
        self.counterexamples.extend(check.counterexamples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'n_values': list(self.n_values),
            'orders_checked': list(self.orders_checked),
            'semigroups_enumerated': {str(k): v for k, v in self.semigroups_enumerated.items()},
            'condition_satisfiers': {
                str(order): {str(n): count for n, count in counts.items()}
                for order, counts in self.condition_satisfiers.items()
            },
            'transitivity_failures_among_satisfiers': self.transitivity_failures_among_satisfiers,
            'witness_compositions_checked': self.witness_compositions_checked,
            'witness_compositions_failed': self.witness_compositions_failed,
            'commutative_checked': self.commutative_checked,
            'commutative_failures': self.commutative_failures,
            'idempotent_products_checked': self.idempotent_products_checked,
            'idempotent_products_failures': self.idempotent_products_failures,
            'counterexamples': self.counterexamples,
        }


def _checks_in_subtree(prefix: Tuple[int, ...], cfg: EnumerationConfig,
                       n_values: Tuple[int, ...]) -> List[TableCheck]:
    return [check_table(table, n_values) for table in _tables_in_subtree(prefix, cfg)]


def _validated_orders(max_order: int) -> List[int]:
    # Valida o limite antes de começar qualquer busca.
    EnumerationConfig(max_order).validate()
    return list(range(1, max_order + 1))


def verify_theorem(max_order: int, n_max: int, jobs: int = config.DEFAULT_JOBS,
                   progress: bool = False, n_min: int = 2) -> VerificationReport:
    """
    Verifica exaustivamente, em todo semigrupo de ordem ≤ max_order (a menos de
    isomorfismo), que ~p é transitiva sempre que xy ∈ {yx, (xy)ⁿ} vale para
    algum n em n_min..n_max, e que a composição de testemunhas nunca falha.

    :return: VerificationReport com as contagens e eventuais contraexemplos.
    """
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 2:
        raise BadExponentError(f"n_max precisa ser ≥ 2, recebido {n_max!r}.", n=str(n_max))
    if not 2 <= n_min <= n_max:
        raise BadExponentError(f"n_min precisa estar em 2..{n_max}, recebido {n_min!r}.", n=str(n_min))
    orders = _validated_orders(max_order)

    n_values = tuple(range(n_min, n_max + 1))
    report = VerificationReport(n_values=list(n_values))
    for order in orders:
        cfg = EnumerationConfig(order)
        report.start_order(order)
        worker = partial(_checks_in_subtree, cfg=cfg, n_values=n_values)
        prefixes = _first_row_prefixes(order, commutative=False)
        for checks in _map_prefixes(worker, prefixes, jobs, f'verificando ordem {order}', progress):
            for check in checks:
                report.absorb(check)
        print(f"Ordem {order}: {report.semigroups_enumerated[order]} semigrupos verificados.", file=sys.stderr)
    return report


# --- Busca por ~p Não Transitiva ---

@dataclass(frozen=True)
class NontransitiveExample:
    table: CayleyTable
    triple: Triple
    w_ab: Witness
    w_bc: Witness

    def to_dict(self) -> Dict[str, Any]:
        return {
            'table': self.table.to_lists(),
            'triple': list(self.triple),
            'witness_ab': [self.w_ab.u, self.w_ab.v],
            'witness_bc': [self.w_bc.u, self.w_bc.v],
        }


@dataclass
class NontransitiveResult:
    orders_scanned: List[int]
    order: Optional[int]
    examples: List[NontransitiveExample]

    @property
    def found(self) -> bool:
        return bool(self.examples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': 'FOUND' if self.found else 'NONE_FOUND',
            'orders_scanned': list(self.orders_scanned),
            'smallest_order': self.order,
            'count': len(self.examples),
            'examples': [example.to_dict() for example in self.examples],
        }


def _certify_nontransitive(table: CayleyTable) -> Optional[NontransitiveExample]:
    triple = find_violating_triple(table)
    if triple is None:
        return None
    a, b, c = triple
    w_ab, w_bc = p_related(table, a, b), p_related(table, b, c)
    if w_ab is None or w_bc is None or p_related(table, a, c) is not None:
        raise RuntimeError(f"A tripla {triple} não se confirmou pela busca de testemunhas.")
    return NontransitiveExample(table, triple, w_ab, w_bc)


def _failures_in_subtree(prefix: Tuple[int, ...], cfg: EnumerationConfig) -> List[NontransitiveExample]:
    examples = []
    for table in _tables_in_subtree(prefix, cfg):
        example = _certify_nontransitive(table)
        if example is not None:
            examples.append(example)
    return examples


def find_nontransitive(max_order: int, jobs: int = config.DEFAULT_JOBS,
                       progress: bool = False) -> NontransitiveResult:
    """
    Percorre as ordens 1, 2, ... até max_order e devolve todos os semigrupos da
    menor ordem em que ~p não é transitiva, cada um com uma tripla verificada.
    Se nada for encontrado, o resultado vem vazio com as ordens percorridas.
    """
    orders = _validated_orders(max_order)
    scanned = []
    for order in orders:
        cfg = EnumerationConfig(order)
        worker = partial(_failures_in_subtree, cfg=cfg)
        prefixes = _first_row_prefixes(order, commutative=False)
        examples = [
            example
            for batch in _map_prefixes(worker, prefixes, jobs, f'buscando ordem {order}', progress)
            for example in batch
        ]
        scanned.append(order)
        if examples:
            print(f"~p não transitiva encontrada na ordem {order}: {len(examples)} semigrupo(s).", file=sys.stderr)
            return NontransitiveResult(scanned, order, examples)
    print(f"Nenhuma ~p não transitiva até a ordem {max_order}.", file=sys.stderr)
    return NontransitiveResult(scanned, None, [])
