import pytest

from src.logic import algebra, conjugacy
from src.logic.enumeration import (
    EnumerationConfig,
    FilterKind,
    TableFilter,
    check_table,
    enumerate_tables,
    find_nontransitive,
    iter_tables,
    verify_theorem,
)
from src.logic.errors import BadExponentError, InvalidConfigError, OrderCapExceededError

# Contagens publicadas de semigrupos a menos de isomorfismo (sem identificar
# anti-isomorfismos), de tábuas rotuladas e de semigrupos comutativos.
ISO_COUNTS = {1: 1, 2: 5, 3: 24, 4: 188}
LABELED_COUNTS = {1: 1, 2: 8, 3: 113}
COMMUTATIVE_ISO_COUNTS = {1: 1, 2: 3, 3: 12, 4: 58}


def count(cfg, jobs=1):
    return enumerate_tables(cfg, lambda table: None, jobs=jobs)


# --- Contagens ---

@pytest.mark.parametrize('order, expected', sorted(ISO_COUNTS.items()))
def test_iso_class_counts(order, expected):
    assert count(EnumerationConfig(order)) == expected


@pytest.mark.parametrize('order, expected', sorted(LABELED_COUNTS.items()))
def test_labeled_counts(order, expected):
    assert count(EnumerationConfig(order, dedup=False)) == expected


def test_labeled_count_at_order_2_matches_brute_force():
    tables = [[[a, b], [c, d]] for a in range(2) for b in range(2) for c in range(2) for d in range(2)]
    associative = [raw for raw in tables
                   if all(raw[raw[i][j]][l] == raw[i][raw[j][l]]
                          for i in range(2) for j in range(2) for l in range(2))]
    assert len(associative) == 8
    emitted = [table.to_lists() for table in iter_tables(EnumerationConfig(2, dedup=False))]
    assert sorted(emitted) == sorted(associative)


@pytest.mark.parametrize('order, expected', sorted(COMMUTATIVE_ISO_COUNTS.items()))
def test_commutative_counts(order, expected):
    cfg = EnumerationConfig(order, TableFilter(FilterKind.COMMUTATIVE))
    assert count(cfg) == expected


# --- Propriedades do fluxo ---

@pytest.mark.parametrize('order', [1, 2, 3])
def test_dedup_stream_is_the_set_of_canonical_forms(order):
    deduped = list(iter_tables(EnumerationConfig(order)))
    labeled = list(iter_tables(EnumerationConfig(order, dedup=False)))
    assert all(algebra.is_canonical(table) for table in deduped)
    assert len(set(deduped)) == len(deduped)
    assert {algebra.canonical_form(table) for table in labeled} == set(deduped)


@pytest.mark.parametrize('order', [1, 2, 3])
def test_every_emitted_table_is_valid(order):
    for table in iter_tables(EnumerationConfig(order, dedup=False)):
        assert algebra.validate_table(order, table.to_lists()) == table


def test_stream_is_row_major_sorted():
    flats = [table.flat() for table in iter_tables(EnumerationConfig(3, dedup=False))]
    assert flats == sorted(flats)


@pytest.mark.parametrize('n', [2, 3])
@pytest.mark.parametrize('order', [2, 3])
def test_condition_filter_is_sound_and_complete(order, n):
    filtered = list(iter_tables(EnumerationConfig(order, TableFilter.condition(n))))
    expected = [table for table in iter_tables(EnumerationConfig(order))
                if algebra.satisfies_condition(table, n).holds]
    assert filtered == expected


def test_condition_any_filter():
    cfg = EnumerationConfig(3, TableFilter.condition_any(4))
    expected = [table for table in iter_tables(EnumerationConfig(3))
                if algebra.smallest_condition_n(table, 4) is not None]
    assert list(iter_tables(cfg)) == expected
    assert cfg.filter.label == 'condition_any(4)'


def test_stream_is_identical_across_jobs():
    cfg = EnumerationConfig(3, dedup=False)
    assert list(iter_tables(cfg, jobs=1)) == list(iter_tables(cfg, jobs=2))
    assert list(iter_tables(cfg, jobs=1)) == list(iter_tables(cfg, jobs=1))


def test_consumer_receives_every_table():
    seen = []
    total = enumerate_tables(EnumerationConfig(2), seen.append)
    assert total == len(seen) == 5


# --- Configuração ---

def test_order_cap():
    with pytest.raises(OrderCapExceededError) as info:
        count(EnumerationConfig(99))
    assert info.value.details == {'order': 99, 'cap': 6}
    with pytest.raises(OrderCapExceededError):
        count(EnumerationConfig(6, dedup=False))
    with pytest.raises(OrderCapExceededError):
        count(EnumerationConfig(3, max_order_cap=2))


def test_invalid_order():
    with pytest.raises(InvalidConfigError):
        count(EnumerationConfig(0))


def test_condition_filter_needs_exponent():
    with pytest.raises(BadExponentError):
        count(EnumerationConfig(2, TableFilter.condition(1)))


# --- Verificação ---

def test_verify_order_1():
    report = verify_theorem(1, 2)
    assert report.orders_checked == [1]
    assert report.semigroups_enumerated == {1: 1}
    assert report.condition_satisfiers == {1: {2: 1}}
    assert report.holds


def test_verify_up_to_order_4():
    report = verify_theorem(4, 6)
    assert report.semigroups_enumerated == ISO_COUNTS
    assert report.transitivity_failures_among_satisfiers == 0
    assert report.witness_compositions_failed == 0
    assert report.witness_compositions_checked > 0
    assert report.commutative_checked == sum(COMMUTATIVE_ISO_COUNTS.values())
    assert report.commutative_failures == 0
    assert report.idempotent_products_checked > 0
    assert report.idempotent_products_failures == 0
    assert report.counterexamples == []
    assert report.holds


def test_verify_report_is_identical_across_jobs():
    assert verify_theorem(3, 6, jobs=1).to_dict() == verify_theorem(3, 6, jobs=2).to_dict()


def test_verify_rejects_bad_arguments():
    with pytest.raises(BadExponentError):
        verify_theorem(2, 1)
    with pytest.raises(OrderCapExceededError):
        verify_theorem(99, 6)


def test_check_table_on_brandt_b2(b2):
    check = check_table(b2, range(2, 7))
    # B₂ não satisfaz a condição para nenhum n: e12² = 0 ≠ e12.
    assert check.satisfied == []
    assert check.transitivity_failures == 0
    assert not check.commutative


def test_check_table_on_left_zero(left_zero2):
    check = check_table(left_zero2, [2, 3])
    assert check.satisfied == [2, 3]
    assert check.idempotent_products and not check.idempotent_products_failed
    # Cadeias a ~p b ~p c com a, b, c em {0, 1}, uma vez por n.
    assert check.compositions_checked == 16
    assert check.compositions_failed == 0


# --- Busca por ~p não transitiva ---

@pytest.mark.parametrize('max_order', [1, 2])
def test_no_nontransitive_on_two_elements(max_order):
    result = find_nontransitive(max_order)
    assert not result.found
    assert result.orders_scanned == list(range(1, max_order + 1))
    assert result.to_dict()['status'] == 'NONE_FOUND'


@pytest.mark.slow
def test_find_nontransitive_up_to_order_5():
    result = find_nontransitive(5)
    assert result.found
    assert result.order <= 5
    assert result.orders_scanned[-1] == result.order
    for example in result.examples:
        a, b, c = example.triple
        table = example.table
        assert algebra.is_canonical(table)
        assert conjugacy.p_related(table, a, b) == example.w_ab
        assert conjugacy.p_related(table, b, c) == example.w_bc
        assert conjugacy.p_related(table, a, c) is None
    # Nenhum semigrupo abaixo da menor ordem achada falha.
    assert not find_nontransitive(result.order - 1).found
