import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.logic import algebra, catalog, conjugacy
from src.logic.conjugacy import Relation, Witness
from src.logic.enumeration import EnumerationConfig, iter_tables
from src.logic.errors import (
    BadWitnessError,
    ConditionViolatedError,
    InvalidElementError,
    NotAGroupError,
)

ORDER_3_TABLES = list(iter_tables(EnumerationConfig(3)))


@st.composite
def reflexive_symmetric_relations(draw, max_size=12):
    size = draw(st.integers(min_value=1, max_value=max_size))
    cells = size * (size - 1) // 2
    upper = draw(st.lists(st.booleans(), min_size=cells, max_size=cells))
    pairs = [pair for pair, on in zip(zip(*np.triu_indices(size, k=1)), upper) if on]
    return Relation.from_pairs(size, [(int(a), int(b)) for a, b in pairs])


def closure_by_squaring(bits):
    current = bits.astype(bool)
    while True:
        as_int = current.astype(np.int64)
        step = current | ((as_int @ as_int) > 0)
        if np.array_equal(step, current):
            return current
        current = step


def verifies(S, witness, a, b):
    view = algebra.adjoin_identity(S)
    return view.product(witness.u, witness.v) == a and view.product(witness.v, witness.u) == b


# --- p_related ---

def test_p_related_on_left_zero(left_zero2):
    assert conjugacy.p_related(left_zero2, 0, 1) == Witness(0, 1)


def test_p_related_is_reflexive(left_zero2, null2, s3, b2):
    for S in (left_zero2, null2, s3, b2):
        for a in range(S.order):
            witness = conjugacy.p_related(S, a, a)
            assert witness is not None
            assert verifies(S, witness, a, a)


def test_p_related_absent_in_null_semigroup(null2):
    assert conjugacy.p_related(null2, 0, 1) is None


def test_p_related_rejects_unknown_element(null2):
    with pytest.raises(InvalidElementError):
        conjugacy.p_related(null2, 0, 5)


@pytest.mark.parametrize('table', ORDER_3_TABLES)
def test_every_witness_verifies(table):
    witnesses = conjugacy.witness_table(table)
    for a in range(table.order):
        for b in range(table.order):
            witness = conjugacy.p_related(table, a, b)
            assert witnesses.get((a, b)) == witness
            if witness is not None:
                assert verifies(table, witness, a, b)


# --- p_relation ---

def test_p_relation_examples(null2, left_zero2):
    assert conjugacy.p_relation(null2).is_identity()
    assert conjugacy.p_relation(left_zero2).bits.all()
    trivial = conjugacy.p_relation(catalog.trivial())
    assert trivial.bits.tolist() == [[True]]


@pytest.mark.parametrize('table', ORDER_3_TABLES)
def test_p_relation_is_reflexive_and_symmetric(table):
    relation = conjugacy.p_relation(table)
    assert relation.is_reflexive()
    assert relation.is_symmetric()


def test_relation_is_immutable(left_zero2):
    relation = conjugacy.p_relation(left_zero2)
    with pytest.raises(ValueError):
        relation.bits[0, 1] = False


# --- Fecho transitivo ---

def test_closure_of_chain():
    closed = conjugacy.transitive_closure(Relation.from_pairs(3, [(0, 1), (1, 2)]))
    assert closed.bits.all()
    assert closed.closed


def test_closure_is_idempotent():
    closed = conjugacy.transitive_closure(Relation.from_pairs(4, [(0, 2), (2, 3)]))
    assert conjugacy.transitive_closure(closed) == closed


def test_closure_of_identity():
    identity = Relation.from_pairs(5, [])
    assert conjugacy.transitive_closure(identity) == identity


@settings(max_examples=1000, deadline=None)
@given(reflexive_symmetric_relations())
def test_closure_matches_matrix_squaring(relation):
    closed = conjugacy.transitive_closure(relation)
    assert np.array_equal(closed.bits, closure_by_squaring(relation.bits))


@settings(max_examples=200, deadline=None)
@given(reflexive_symmetric_relations())
def test_partition_matches_closure_rows(relation):
    closed = conjugacy.transitive_closure(relation)
    partition = conjugacy.partition_of(closed)
    for element in range(relation.order):
        members = [int(m) for m in np.flatnonzero(closed.bits[element])]
        assert partition.class_of[element] == members[0]


# --- Transitividade e classes ---

def test_is_p_transitive_when_commutative_or_idempotent_products(null2, c3, left_zero2):
    assert conjugacy.is_p_transitive(null2)
    assert conjugacy.is_p_transitive(c3)
    assert conjugacy.is_p_transitive(left_zero2)


def test_brandt_b2_is_not_p_transitive(b2):
    assert not conjugacy.is_p_transitive(b2)
    a, b, c = conjugacy.find_violating_triple(b2)
    assert (a, b, c) == (2, 0, 3)
    assert conjugacy.p_related(b2, a, b) is not None
    assert conjugacy.p_related(b2, b, c) is not None
    assert conjugacy.p_related(b2, a, c) is None
    assert conjugacy.conjugacy_classes(b2).classes() == [[0, 2, 3], [1, 4]]


def test_no_violating_triple_when_transitive(s3):
    assert conjugacy.find_violating_triple(s3) is None


def test_conjugacy_classes_examples(null2, left_zero2, c3):
    assert conjugacy.conjugacy_classes(null2).classes() == [[0], [1]]
    assert conjugacy.conjugacy_classes(left_zero2).classes() == [[0, 1]]
    assert conjugacy.conjugacy_classes(c3).classes() == [[0], [1], [2]]


# --- Composição de testemunhas ---

def test_compose_on_left_zero(left_zero2):
    w_ab = conjugacy.p_related(left_zero2, 0, 1)
    w_bc = conjugacy.p_related(left_zero2, 1, 0)
    assert (w_ab, w_bc) == (Witness(0, 1), Witness(1, 0))
    assert conjugacy.compose_witnesses(left_zero2, 2, w_ab, w_bc) == Witness(0, 0)


def test_compose_passes_through_when_a_equals_b(left_zero2):
    w_aa = conjugacy.p_related(left_zero2, 0, 0)
    w_bc = conjugacy.p_related(left_zero2, 0, 1)
    assert conjugacy.compose_witnesses(left_zero2, 3, w_aa, w_bc) == w_bc


def test_compose_passes_through_when_b_equals_c(left_zero2):
    w_ab = conjugacy.p_related(left_zero2, 0, 1)
    w_bb = conjugacy.p_related(left_zero2, 1, 1)
    assert conjugacy.compose_witnesses(left_zero2, 2, w_ab, w_bb) == w_ab


@pytest.mark.parametrize('n', [2, 3, 4, 6])
def test_compose_in_group(c3, n):
    # Em grupos comutativos só há pares triviais.
    w = conjugacy.p_related(c3, 1, 1)
    assert verifies(c3, conjugacy.compose_witnesses(c3, n, w, w), 1, 1)


def test_compose_requires_condition(s3):
    w_ab = conjugacy.p_related(s3, 1, 2)
    w_bc = conjugacy.p_related(s3, 2, 5)
    with pytest.raises(ConditionViolatedError) as info:
        conjugacy.compose_witnesses(s3, 2, w_ab, w_bc)
    assert info.value.details == {'n': 2, 'x': 1, 'y': 2}


def test_compose_on_every_chain_of_s3(s3):
    # Com n = 7 a condição vale em S₃.
    witnesses = conjugacy.witness_table(s3)
    chains = 0
    for (a, b), w_ab in witnesses.items():
        for c in range(s3.order):
            w_bc = witnesses.get((b, c))
            if w_bc is not None:
                assert verifies(s3, conjugacy.compose_witnesses(s3, 7, w_ab, w_bc), a, c)
                chains += 1
    # Classes de tamanhos 1, 3 e 2.
    assert chains == 1 + 27 + 8


def test_compose_rejects_mismatched_middle(left_zero2):
    w_ab = conjugacy.p_related(left_zero2, 0, 1)
    with pytest.raises(BadWitnessError):
        conjugacy.compose_witnesses(left_zero2, 2, w_ab, w_ab)


def test_compose_rejects_identity_products(left_zero2):
    identity = algebra.adjoin_identity(left_zero2).identity
    w = Witness(identity, identity)
    with pytest.raises(BadWitnessError):
        conjugacy.compose_witnesses(left_zero2, 2, w, w)
    with pytest.raises(BadWitnessError):
        conjugacy.compose_witnesses(left_zero2, 2, Witness(0, 7), w)


@pytest.mark.parametrize('table', ORDER_3_TABLES)
def test_compose_on_every_chain_of_order_3(table):
    witnesses = conjugacy.witness_table(table)
    for n in range(2, 7):
        if not algebra.condition_holds(table, n):
            continue
        for (a, b), w_ab in witnesses.items():
            for c in range(table.order):
                w_bc = witnesses.get((b, c))
                if w_bc is not None:
                    assert verifies(table, conjugacy.compose_witnesses(table, n, w_ab, w_bc), a, c)


# --- Oráculo de grupos ---

@pytest.mark.parametrize('name, group', catalog.small_groups())
def test_p_relation_matches_group_conjugacy(name, group):
    assert conjugacy.p_relation(group) == conjugacy.group_conjugacy(group), name


def test_s3_class_sizes(s3):
    classes = conjugacy.conjugacy_classes(s3).classes()
    assert sorted(len(cls) for cls in classes) == [1, 2, 3]
    assert classes == [[0], [1, 2, 5], [3, 4]]


def test_abelian_group_conjugacy_is_identity(c3):
    assert conjugacy.group_conjugacy(c3).is_identity()


def test_group_conjugacy_rejects_non_groups(left_zero2):
    with pytest.raises(NotAGroupError) as info:
        conjugacy.group_conjugacy(left_zero2)
    assert info.value.details == {'element': 0}
    with pytest.raises(NotAGroupError):
        conjugacy.group_conjugacy(catalog.monogenic(2, 2))
