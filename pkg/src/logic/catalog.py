from itertools import permutations, product
from typing import List, Tuple

from src.logic.algebra import CayleyTable, validate_table

# Tábuas padrão usadas nos testes, nos arquivos de exemplo e no oráculo de grupos.


def trivial() -> CayleyTable:
    return validate_table(1, [[0]])


def left_zero(k: int) -> CayleyTable:
    """ x·y = x para todos x, y. """
    return validate_table(k, [[x] * k for x in range(k)])


def right_zero(k: int) -> CayleyTable:
    """ x·y = y para todos x, y. """
    return validate_table(k, [list(range(k)) for _ in range(k)])


def null_semigroup(k: int) -> CayleyTable:
    """ Todo produto é o zero 0. """
    return validate_table(k, [[0] * k for _ in range(k)])


def cyclic_group(k: int) -> CayleyTable:
    """ Cₖ como adição módulo k; a identidade é 0. """
    return validate_table(k, [[(x + y) % k for y in range(k)] for x in range(k)])


def monogenic(index: int, period: int) -> CayleyTable:
    """
    Semigrupo monogênico ⟨a | a^(index+period) = a^index⟩.
    O elemento i representa a^(i+1).
    """
    size = index + period - 1

    def reduce(exponent: int) -> int:
        if exponent > size:
            exponent = index + (exponent - index) % period
        return exponent

    return validate_table(size, [[reduce(x + y + 2) - 1 for y in range(size)] for x in range(size)])


def direct_product(S: CayleyTable, T: CayleyTable) -> CayleyTable:
    """ S × T com o par (s, t) no índice s·|T| + t. """
    pairs = list(product(range(S.order), range(T.order)))
    index = {pair: i for i, pair in enumerate(pairs)}
    table = [
        [index[(S.table[s1][s2], T.table[t1][t2])] for (s2, t2) in pairs]
        for (s1, t1) in pairs
    ]
    return validate_table(len(pairs), table)


def klein_four() -> CayleyTable:
    return direct_product(cyclic_group(2), cyclic_group(2))


def symmetric_group_3() -> CayleyTable:
    """
    S₃ pela composição (σ·τ)(x) = σ(τ(x)), com as permutações em ordem
    lexicográfica: 0 é a identidade, 1, 2 e 5 são transposições, 3 e 4 são 3-ciclos.
    """
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(sigma[tau[x]] for x in range(3))] for tau in perms]
        for sigma in perms
    ]
    return validate_table(len(perms), table)


def small_groups() -> List[Tuple[str, CayleyTable]]:
    """ Todos os grupos de ordem ≤ 6, a menos de isomorfismo. """
    return [
        ('C1', trivial()),
        ('C2', cyclic_group(2)),
        ('C3', cyclic_group(3)),
        ('C4', cyclic_group(4)),
        ('V4', klein_four()),
        ('C5', cyclic_group(5)),
        ('C6', cyclic_group(6)),
        ('S3', symmetric_group_3()),
    ]


def brandt_b2() -> CayleyTable:
    """
    Semigrupo de Brandt B₂: o zero 0 e as unidades matriciais e11, e12, e21, e22
    (índices 1 a 4), com e_ij·e_kl = e_il se j = k e 0 caso contrário.
    É o exemplo de bolso em que ~p não é transitiva: e12 ~p 0 ~p e21.
    """
    units = [(1, 1), (1, 2), (2, 1), (2, 2)]
    index = {unit: i + 1 for i, unit in enumerate(units)}

    def times(x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        (i, j), (k, l) = units[x - 1], units[y - 1]
        return index[(i, l)] if j == k else 0

    return validate_table(5, [[times(x, y) for y in range(5)] for x in range(5)])
