from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.logic.algebra import (
    CayleyTable,
    MonoidView,
    adjoin_identity,
    check_element,
    condition_holds,
    find_identity,
    power,
    satisfies_condition,
)
from src.logic.errors import (
    BadWitnessError,
    CompositionFailedError,
    ConditionViolatedError,
    NotAGroupError,
)

Pair = Tuple[int, int]
Triple = Tuple[int, int, int]


# --- Tipos ---

@dataclass(frozen=True)
class Witness:
    """ Par (u, v) de S¹ que certifica a ~p b via a = uv e b = vu. """
    u: int
    v: int


@dataclass(frozen=True, eq=False)
class Relation:
    """
    Relação binária sobre 0..order-1 guardada como grade booleana (somente leitura).
    closed=True indica que a relação é sabidamente transitiva.
    """
    order: int
    bits: np.ndarray
    closed: bool = False

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool).reshape(self.order, self.order)
        bits.flags.writeable = False
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def from_pairs(cls, order: int, pairs: Iterable[Pair]) -> 'Relation':
        """ Fecho reflexivo e simétrico dos pares dados. """
        bits = np.eye(order, dtype=bool)
        for a, b in pairs:
            bits[a, b] = bits[b, a] = True
        return cls(order, bits)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.order, self.bits.tobytes()))

    def pairs(self) -> List[Pair]:
        """ Pares (a, b) relacionados com a < b. """
        return [(int(a), int(b)) for a, b in np.argwhere(np.triu(self.bits, k=1))]

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.bits, np.eye(self.order, dtype=bool)))

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diag(self.bits)))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.bits, self.bits.T))


@dataclass(frozen=True)
class Partition:
    """ class_of[i] é o menor elemento da classe de i. """
    order: int
    class_of: Tuple[int, ...]

    def classes(self) -> List[List[int]]:
        grouped: Dict[int, List[int]] = {}
        for element, representative in enumerate(self.class_of):
            grouped.setdefault(representative, []).append(element)
        return [grouped[r] for r in sorted(grouped)]


# --- Relação ~p ---

def _validated_elements(S: CayleyTable, *elements: int) -> None:
    for element in elements:
        check_element(S, element)


def p_related(S: CayleyTable, a: int, b: int) -> Optional[Witness]:
    """
    Procura u, v ∈ S¹ com a = uv e b = vu, varrendo S¹ × S¹ linha a linha.

    :return: A primeira testemunha encontrada, ou None.
    """
    _validated_elements(S, a, b)
    grid = adjoin_identity(S).grid
    hits = np.argwhere((grid == a) & (grid.T == b))
    if len(hits) == 0:
        return None
    u, v = hits[0]
    return Witness(int(u), int(v))


def witness_table(S: CayleyTable) -> Dict[Pair, Witness]:
    """
    Primeira testemunha de cada par relacionado, na mesma ordem de busca de
    p_related: witness_table(S)[(a, b)] == p_related(S, a, b).
    """
    grid = adjoin_identity(S).grid
    size = grid.shape[0]
    witnesses: Dict[Pair, Witness] = {}
    for u in range(size):
        for v in range(size):
            a, b = int(grid[u, v]), int(grid[v, u])
            if a < S.order and b < S.order and (a, b) not in witnesses:
                witnesses[(a, b)] = Witness(u, v)
    return witnesses


def p_relation(S: CayleyTable) -> Relation:
    k = S.order
    grid = adjoin_identity(S).grid
    uv, vu = grid, grid.T
    # Só uv = vu = 1 adjunto cai fora de S.
    inside = (uv < k) & (vu < k)
    bits = np.zeros((k, k), dtype=bool)
    bits[uv[inside], vu[inside]] = True
    return Relation(k, bits)


def transitive_closure(R: Relation) -> Relation:
    """ Fecho transitivo pelo algoritmo cúbico de Warshall sobre a grade booleana. """
    bits = R.bits.copy()
    for m in range(R.order):
        bits |= np.outer(bits[:, m], bits[m, :])
    return Relation(R.order, bits, closed=True)


def is_p_transitive(S: CayleyTable) -> bool:
    relation = p_relation(S)
    return relation == transitive_closure(relation)


def find_violating_triple(S: CayleyTable) -> Optional[Triple]:
    """ Primeira tripla (a, b, c), linha a linha, com a ~p b, b ~p c e não a ~p c. """
    bits = p_relation(S).bits
    violations = bits[:, :, None] & bits[None, :, :] & ~bits[:, None, :]
    found = np.argwhere(violations)
    if len(found) == 0:
        return None
    a, b, c = found[0]
    return int(a), int(b), int(c)


def partition_of(R: Relation) -> Partition:
    """
    Partição em classes de uma relação de equivalência. As componentes
    conexas do grafo da relação coincidem com as linhas do fecho transitivo.
    """
    _, labels = connected_components(csr_matrix(R.bits), directed=False)
    smallest: Dict[int, int] = {}
    for element, label in enumerate(labels):
        smallest.setdefault(int(label), element)
    return Partition(R.order, tuple(smallest[int(label)] for label in labels))


def conjugacy_classes(S: CayleyTable) -> Partition:
    return partition_of(transitive_closure(p_relation(S)))


# --- Composição de Testemunhas ---

def _certified_pair(view: MonoidView, witness: Witness, role: str) -> Pair:
    """ Devolve (uv, vu) de uma testemunha, exigindo que ambos caiam em S. """
    size = view.order
    if not (0 <= witness.u < size and 0 <= witness.v < size):
        raise BadWitnessError(f"Testemunha {role} fora de S¹: {witness}.", witness=role)
    first, second = view.product(witness.u, witness.v), view.product(witness.v, witness.u)
    if view.adjoined and view.identity in (first, second):
        raise BadWitnessError(f"Testemunha {role} produz a identidade adjunta.", witness=role)
    return first, second


def compose_witnesses(S: CayleyTable, n: int, w_ab: Witness, w_bc: Witness) -> Witness:
    """
    Dadas testemunhas de a ~p b e b ~p c num semigrupo que satisfaz
    xy ∈ {yx, (xy)ⁿ}, constrói (x, y) com a = xy e c = yx.

    :param S: O semigrupo.
    :param n: O expoente da condição, n > 1.
    :param w_ab: (a₁, a₂) com a = a₁a₂ e b = a₂a₁.
    :param w_bc: (b₁, b₂) com b = b₁b₂ e c = b₂b₁.
    :return: A testemunha (x, y) = (a₁b₁, b₂·bⁿ⁻²·a₂), já verificada.
    """
    if not condition_holds(S, n):
        x, y = satisfies_condition(S, n).first_failure
        raise ConditionViolatedError(
            f"A condição falha para n = {n} no par ({x}, {y}).", n=n, x=x, y=y)

    view = adjoin_identity(S)
    a, b = _certified_pair(view, w_ab, 'a~b')
    b_again, c = _certified_pair(view, w_bc, 'b~c')
    if b != b_again:
        raise BadWitnessError(
            f"As testemunhas não compartilham o elemento do meio ({b} ≠ {b_again}).", witness='b')

    if a == b:
        return w_bc
    if b == c:
        return w_ab

    a1, a2 = w_ab.u, w_ab.v
    b1, b2 = w_bc.u, w_bc.v
    # b⁰ é a identidade de S¹, então n = 2 dá y = b₂a₂.
    x = view.product(a1, b1)
    y = view.product(view.product(b2, power(view, b, n - 2)), a2)

    if view.product(x, y) != a or view.product(y, x) != c:
        raise CompositionFailedError(
            f"A testemunha composta ({x}, {y}) não certifica {a} ~p {c}.",
            a=a, b=b, c=c, x=x, y=y, n=n)
    return Witness(x, y)


# --- Oráculo de Grupos ---

def _group_inverses(S: CayleyTable) -> Tuple[int, List[int]]:
    identity = find_identity(S)
    if identity is None:
        raise NotAGroupError("O semigrupo não tem identidade.", element=0)
    inverses = []
    for a in range(S.order):
        candidates = [g for g in range(S.order)
                      if S.table[g][a] == identity and S.table[a][g] == identity]
        if not candidates:
            raise NotAGroupError(f"O elemento {a} não tem inverso.", element=a)
        inverses.append(candidates[0])
    return identity, inverses


def group_conjugacy(S: CayleyTable) -> Relation:
    """ a ~ b em um grupo se a = g⁻¹bg para algum g. """
    _, inverses = _group_inverses(S)
    grid = S.grid
    elements = np.arange(S.order)
    bits = np.zeros((S.order, S.order), dtype=bool)
    for g in range(S.order):
        conjugates = grid[grid[inverses[g], elements], g]
        bits[conjugates, elements] = True
    return Relation(S.order, bits)
