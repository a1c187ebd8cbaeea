import pytest
from hypothesis import given, settings, strategies as st

from partindex.partitions import (
    Composition,
    Partition,
    PartitionClass,
    count_partitions,
    enumerate_partitions,
    frequency_vector,
    parse_parts,
)

from conftest import brute_partitions

CLASSES = [
    PartitionClass.all(),
    PartitionClass.distinct(),
    PartitionClass.odd_parts(),
    PartitionClass.odd_mod_four_d(1),
    PartitionClass.odd_mod_four_d(2),
    PartitionClass.odd_mod_four_d(3),
    PartitionClass.no_ones(),
    PartitionClass.no_ones(lambda p: p % 3 != 0),
    PartitionClass.where(lambda p: p in (2, 5), name="2or5"),
]


def test_empty_partition_for_every_class():
    for cls in CLASSES:
        assert [lam.parts for lam in enumerate_partitions(0, cls)] == [()]
        assert count_partitions(0, cls) == 1


def test_small_examples():
    assert [l.parts for l in enumerate_partitions(4, PartitionClass.odd_parts())] == [(3, 1), (1, 1, 1, 1)]
    assert [l.parts for l in enumerate_partitions(5, PartitionClass.distinct())] == [(5,), (4, 1), (3, 2)]
    assert count_partitions(10) == 42
    assert count_partitions(9, PartitionClass.odd_parts()) == 8
    assert count_partitions(9, PartitionClass.distinct()) == 8
    assert count_partitions(0, PartitionClass.odd_mod_four_d(3)) == 1


def test_class_with_no_admissible_partition():
    assert list(enumerate_partitions(3, PartitionClass.where(lambda p: p % 2 == 0))) == []
    assert count_partitions(1, PartitionClass.no_ones()) == 0


@pytest.mark.parametrize("cls", CLASSES, ids=str)
@pytest.mark.parametrize("n", range(0, 15))
def test_enumeration_matches_brute_force(cls, n):
    want = sorted((p for p in brute_partitions(n) if cls.contains(p)), reverse=True)
    got = [lam.parts for lam in enumerate_partitions(n, cls)]
    # decreasing lexicographic order and exactly the brute-force set
    assert got == want
    assert count_partitions(n, cls) == len(want)
    for lam in enumerate_partitions(n, cls):
        assert lam.weight == n
        assert lam.op_count % 2 == n % 2


def test_euler_identity_up_to_30():
    for n in range(31):
        assert count_partitions(n, PartitionClass.odd_parts()) == count_partitions(n, PartitionClass.distinct())


def test_stream_is_restartable_and_duplicate_free():
    stream = enumerate_partitions(12)
    first = list(stream)
    assert list(stream) == first
    assert len(set(first)) == len(first) == 77


def test_odd_mod_four_d_accepts():
    o1 = PartitionClass.odd_mod_four_d(1)
    assert [p for p in range(1, 12) if o1.accepts(p)] == [1, 3, 5, 7, 9, 11]
    o2 = PartitionClass.odd_mod_four_d(2)
    assert [p for p in range(1, 20) if o2.accepts(p)] == [1, 7, 9, 15, 17]
    with pytest.raises(ValueError):
        PartitionClass.odd_mod_four_d(0)


def test_frequency_vector():
    assert frequency_vector(Partition((3, 2, 1, 1))) == {3: 1, 2: 1, 1: 2}
    assert frequency_vector(Partition(())) == {}
    assert frequency_vector(Partition((5, 5, 5))) == {5: 3}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 40), max_size=12))
def test_frequency_vector_weight(parts):
    lam = Partition(tuple(sorted(parts, reverse=True)))
    fv = frequency_vector(lam)
    assert sum(i * m for i, m in fv.items()) == lam.weight
    assert lam.op_count == sum(m for i, m in fv.items() if i % 2)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        Composition((1, 0, 2))
    assert Composition((1, 3, 2)).weight == 6
    assert Partition(()).weight == 0


def test_text_format():
    assert parse_parts("3,2,1,1") == (3, 2, 1, 1)
    assert parse_parts("3|2|1|1") == (3, 2, 1, 1)
    assert parse_parts("") == ()
    assert str(Partition.parse("4,3")) == "4,3"
    for bad in ("3,,1", "a", "3,-1", "0"):
        with pytest.raises(ValueError):
            parse_parts(bad)


def test_large_weight_counts():
    # p(100) = 190569292; bounded-memory counting, no enumeration
    assert count_partitions(100) == 190569292
