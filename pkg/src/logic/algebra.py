from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.logic.errors import (
    BadExponentError,
    InvalidElementError,
    MalformedTableError,
    NotAssociativeError,
    OutOfRangeError,
    ZeroPowerError,
)

Pair = Tuple[int, int]


# --- Tipos Principais ---

@dataclass(frozen=True)
class CayleyTable:
    """
    Semigrupo finito dado pela sua tábua de multiplicação.
    Os elementos são os índices 0..order-1; table[i][j] é o produto i·j.
    Use validate_table para construir a partir de dados externos.
    """
    order: int
    table: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_flat(cls, order: int, flat: Sequence[int]) -> 'CayleyTable':
        """ Monta a tábua a partir da lista linha a linha (sem validar). """
        rows = tuple(tuple(int(v) for v in flat[r * order:(r + 1) * order]) for r in range(order))
        return cls(order, rows)

    @cached_property
    def grid(self) -> np.ndarray:
        grid = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        grid.flags.writeable = False
        return grid

    def flat(self) -> Tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def product(self, a: int, b: int) -> int:
        check_element(self, a)
        check_element(self, b)
        return self.table[a][b]

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.table]


@dataclass(frozen=True)
class MonoidView:
    """
    S¹: o próprio S quando ele já tem identidade (adjoined=False), ou S com uma
    identidade nova de índice base.order (adjoined=True). Os produtos com a
    identidade adjunta são calculados, nunca guardados na tábua base.
    """
    base: CayleyTable
    identity: int
    adjoined: bool

    @property
    def order(self) -> int:
        return self.base.order + 1 if self.adjoined else self.base.order

    def product(self, a: int, b: int) -> int:
        check_element(self, a)
        check_element(self, b)
        if a == self.identity:
            return b
        if b == self.identity:
            return a
        return self.base.table[a][b]

    @cached_property
    def grid(self) -> np.ndarray:
        """ Tábua completa de S¹, derivada de product (somente leitura). """
        if not self.adjoined:
            return self.base.grid
        k = self.base.order
        grid = np.empty((k + 1, k + 1), dtype=np.int64)
        grid[:k, :k] = self.base.grid
        grid[k, :] = np.arange(k + 1)
        grid[:, k] = np.arange(k + 1)
        grid.flags.writeable = False
        return grid


class Branch(Enum):
    """ Qual das igualdades de xy ∈ {yx, (xy)ⁿ} vale para o par (x, y). """
    COMMUTE = 'COMMUTE'
    POWER = 'POWER'
    BOTH = 'BOTH'
    NEITHER = 'NEITHER'


@dataclass(frozen=True)
class ConditionReport:
    n: int
    holds: bool
    branches: Dict[Pair, Branch]
    first_failure: Optional[Pair]


Carrier = Union[CayleyTable, MonoidView]


def check_element(S: Carrier, a: int) -> None:
    if not isinstance(a, (int, np.integer)) or isinstance(a, bool) or not 0 <= a < S.order:
        raise InvalidElementError(
            f"Elemento {a!r} fora do intervalo 0..{S.order - 1}.", element=str(a), order=S.order)


# --- Construção e Validação ---

def validate_table(order: int, raw: Sequence[Sequence[int]]) -> CayleyTable:
    """
    Valida uma tábua bruta e devolve o CayleyTable correspondente.

    :param order: A ordem k do semigrupo.
    :param raw: Grade k×k de inteiros; raw[i][j] é o produto i·j.
    :return: O CayleyTable validado.
    :raises OutOfRangeError: na primeira entrada (linha a linha) fora de 0..k-1.
    :raises NotAssociativeError: na primeira tripla (i, j, l) não associativa.
    """
    if not isinstance(order, int) or order < 1:
        raise MalformedTableError(f"Ordem inválida: {order!r}.", order=str(order))
    if len(raw) != order or any(len(row) != order for row in raw):
        raise MalformedTableError(f"A tábua precisa ter {order}×{order} entradas.", order=order)

    rows = []
    for i, row in enumerate(raw):
        values = []
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (int, np.integer)) or not 0 <= entry < order:
                raise OutOfRangeError(
                    f"Entrada {entry!r} na linha {i}, coluna {j} fora de 0..{order - 1}.",
                    entry=str(entry), row=i, col=j)
            values.append(int(entry))
        rows.append(tuple(values))

    table = CayleyTable(order, tuple(rows))
    violation = _first_nonassociative_triple(table.grid)
    if violation is not None:
        i, j, l = violation
        raise NotAssociativeError(f"(({i}·{j})·{l}) ≠ ({i}·({j}·{l})).", i=i, j=j, l=l)
    return table


def _first_nonassociative_triple(grid: np.ndarray) -> Optional[Tuple[int, int, int]]:
    k = grid.shape[0]
    idx = np.arange(k)
    # left[i, j, l] = (i·j)·l e right[i, j, l] = i·(j·l)
    left = grid[grid[:, :, None], idx[None, None, :]]
    right = grid[idx[:, None, None], grid[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    i, j, l = bad[0]
    return int(i), int(j), int(l)


# --- Operações Básicas ---

def product(S: Carrier, a: int, b: int) -> int:
    return S.product(a, b)


def power(S: Carrier, a: int, m: int) -> int:
    """
    Calcula aᵐ por iteração associada à esquerda.
    a⁰ só existe em um MonoidView, onde vale a identidade.
    """
    check_element(S, a)
    if m == 0:
        if isinstance(S, MonoidView):
            return S.identity
        raise ZeroPowerError("a⁰ não está definido em um semigrupo sem identidade adjunta.")
    if m < 0:
        raise BadExponentError(f"Expoente negativo: {m}.", n=m)
    result = a
    for _ in range(m - 1):
        result = S.product(result, a)
    return result


def _element_powers(grid: np.ndarray, n: int) -> np.ndarray:
    """ Vetor com eⁿ para cada elemento e, na mesma ordem de iteração de power. """
    elements = np.arange(grid.shape[0])
    result = elements.copy()
    for _ in range(n - 1):
        result = grid[result, elements]
    return result


def find_identity(S: CayleyTable) -> Optional[int]:
    elements = np.arange(S.order)
    for e in range(S.order):
        if np.array_equal(S.grid[e, :], elements) and np.array_equal(S.grid[:, e], elements):
            return e
    return None


def adjoin_identity(S: CayleyTable) -> MonoidView:
    identity = find_identity(S)
    if identity is not None:
        return MonoidView(S, identity, adjoined=False)
    return MonoidView(S, S.order, adjoined=True)


# --- Predicados Estruturais ---

def is_commutative(S: CayleyTable) -> bool:
    return bool(np.array_equal(S.grid, S.grid.T))


def idempotents(S: CayleyTable) -> List[int]:
    return [e for e in range(S.order) if S.table[e][e] == e]


def has_idempotent_products(S: CayleyTable) -> bool:
    """ True se xy = (xy)² para todos x, y. """
    grid = S.grid
    return bool(np.array_equal(grid[grid, grid], grid))


def check_exponent(n: int, minimum: int = 2) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise BadExponentError(f"O expoente precisa ser um inteiro ≥ {minimum}, recebido {n!r}.", n=str(n))


def _condition_masks(S: CayleyTable, n: int) -> Tuple[np.ndarray, np.ndarray]:
    grid = S.grid
    commute = grid == grid.T
    powers = _element_powers(grid, n)
    power_ok = powers[grid] == grid
    return commute, power_ok


def condition_holds(S: CayleyTable, n: int) -> bool:
    """ Versão booleana e rápida de satisfies_condition(S, n).holds. """
    check_exponent(n)
    commute, power_ok = _condition_masks(S, n)
    return bool(np.all(commute | power_ok))


def satisfies_condition(S: CayleyTable, n: int) -> ConditionReport:
    """
    Avalia xy ∈ {yx, (xy)ⁿ} para todo par ordenado (x, y).

    :param S: O semigrupo.
    :param n: O expoente, n > 1.
    :return: ConditionReport com o ramo de cada par e a primeira falha (linha a linha).
    """
    check_exponent(n)
    commute, power_ok = _condition_masks(S, n)
    branches = {}
    first_failure = None
    for x in range(S.order):
        for y in range(S.order):
            c, p = bool(commute[x, y]), bool(power_ok[x, y])
            if c and p:
                branch = Branch.BOTH
            elif c:
                branch = Branch.COMMUTE
            elif p:
                branch = Branch.POWER
            else:
                branch = Branch.NEITHER
                if first_failure is None:
                    first_failure = (x, y)
            branches[(x, y)] = branch
    return ConditionReport(n=n, holds=first_failure is None, branches=branches, first_failure=first_failure)


def smallest_condition_n(S: CayleyTable, n_max: int) -> Optional[int]:
    # Cada n é testado separadamente: não supomos monotonicidade em n.
    check_exponent(n_max)
    for n in range(2, n_max + 1):
        if condition_holds(S, n):
            return n
    return None


# --- Isomorfismo ---

@lru_cache(maxsize=None)
def _permutation_arrays(k: int) -> Tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(permutations(range(k))), dtype=np.int64).reshape(-1, k)
    inverses = np.argsort(perms, axis=1)
    perms.flags.writeable = False
    inverses.flags.writeable = False
    return perms, inverses


def _relabelings(grid: np.ndarray) -> np.ndarray:
    """
    Todas as reetiquetagens da tábua, uma por linha (achatadas linha a linha).
    Para a permutação π: T'[π(i)][π(j)] = π(T[i][j]).
    """
    k = grid.shape[0]
    perms, inverses = _permutation_arrays(k)
    inner = grid[inverses[:, :, None], inverses[:, None, :]]
    return np.take_along_axis(perms, inner.reshape(len(perms), k * k), axis=1)


def relabel(S: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """ Aplica a permutação perm (elemento i vira perm[i]) à tábua. """
    k = S.order
    if sorted(perm) != list(range(k)):
        raise InvalidElementError(f"{list(perm)} não é uma permutação de 0..{k - 1}.", order=k)
    table = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            table[perm[i]][perm[j]] = perm[S.table[i][j]]
    return CayleyTable(k, tuple(tuple(row) for row in table))


def canonical_form(S: CayleyTable) -> CayleyTable:
    """
    Menor tábua, em ordem lexicográfica da leitura linha a linha, entre todas
    as reetiquetagens de S. Varre as k! permutações.
    """
    candidates = _relabelings(S.grid)
    best = np.lexsort(candidates.T[::-1])[0]
    return CayleyTable.from_flat(S.order, candidates[best].tolist())


def is_canonical(S: CayleyTable) -> bool:
    """ True se S coincide com a própria forma canônica. """
    flat = S.grid.reshape(-1)
    candidates = _relabelings(S.grid)
    differs = candidates != flat
    first = differs.argmax(axis=1)
    smaller = candidates[np.arange(len(candidates)), first] < flat[first]
    return not bool(np.any(differs.any(axis=1) & smaller))


def is_isomorphic(S: CayleyTable, T: CayleyTable) -> bool:
    if S.order != T.order:
        return False
    return canonical_form(S) == canonical_form(T)
