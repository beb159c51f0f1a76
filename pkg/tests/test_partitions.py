import itertools

import pytest

from quiverkac.exactalg import RationalFunction, IntPoly, eval_at
from quiverkac.partitions import (
    Partition,
    centralizer_order,
    count_multipartitions,
    enumerate_multipartitions,
    enumerate_partitions,
    gl_order_poly,
    pairing,
    pairing_min_form,
    partitions_up_to,
)
from quiverkac.ffcount import centralizer_census, group_order

from oracles import conjugate_dot, gl_order, partition_count_pentagonal

SMALL = partitions_up_to(6)
P = Partition


def test_partition_validation():
    with pytest.raises(ValueError):
        P([1, 2])
    with pytest.raises(ValueError):
        P([2, 0])


@pytest.mark.parametrize("lam", SMALL, ids=str)
def test_partition_invariants(lam):
    assert lam.size == sum(k * m for k, m in lam.multiplicities().items())
    assert lam.size == sum(lam.conjugate().parts)
    assert lam.conjugate().conjugate() == lam


@pytest.mark.parametrize("a, b, expected", [
    ((), (3, 1), 0),
    ((1,), (1,), 1),
    ((2, 1), (2, 1), 5),
    ((3,), (1, 1), 2),
])
def test_pairing_examples(a, b, expected):
    assert pairing(P(a), P(b)) == expected
    assert pairing_min_form(P(a), P(b)) == expected


def test_pairing_exhaustive():
    for lam, mu in itertools.product(SMALL, repeat=2):
        v = pairing(lam, mu)
        assert v == pairing(mu, lam)
        assert v == pairing_min_form(lam, mu)
        assert v == conjugate_dot(lam.parts, mu.parts)


def test_pairing_with_column():
    for lam in SMALL:
        for w in range(5):
            assert pairing(lam, P([1] * w)) == w * lam.length


def test_centralizer_examples():
    q = RationalFunction(IntPoly([0, 1]))
    assert centralizer_order(P([1])) == q - 1
    assert centralizer_order(P([1, 1])) == (q**2 - 1) * (q**2 - q)
    assert centralizer_order(P([2])) == q**2 - q
    assert eval_at(centralizer_order(P([2])), 2) == 2


@pytest.mark.parametrize("n", range(6))
def test_centralizer_of_zero_matrix_is_gl(n):
    assert centralizer_order(P([1] * n)) == RationalFunction(gl_order_poly(n))
    for q in (2, 3, 4, 5):
        assert gl_order_poly(n)(q) == gl_order(n, q)


@pytest.mark.parametrize("n", range(1, 4))
@pytest.mark.parametrize("p", [2, 3])
def test_class_equation_for_nilpotents(n, p):
    # sum over Jordan types of |GL_n| / |C(lam)| is the number of nilpotents
    total = sum(eval_at(RationalFunction(gl_order_poly(n)) / centralizer_order(lam), p)
                for lam in enumerate_partitions(n))
    assert total == p ** (n * n - n)
    assert total == sum(centralizer_census(n, p).values())
    assert group_order((n,), p) == gl_order(n, p)


def test_enumerate_partitions():
    assert enumerate_partitions(0) == [P()]
    assert enumerate_partitions(1) == [P([1])]
    assert [x.parts for x in enumerate_partitions(4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    for n in range(13):
        parts = enumerate_partitions(n)
        assert len(parts) == partition_count_pentagonal(n)
        assert len(set(parts)) == len(parts)
        assert all(x.size == n for x in parts)
        assert parts == sorted(parts, reverse=True)


@pytest.mark.parametrize("bound, count", [((0,), 1), ((2,), 4), ((1, 1), 4), ((3, 2), 7 * 4)])
def test_enumerate_multipartitions(bound, count):
    items = list(enumerate_multipartitions(bound))
    assert len(items) == count == count_multipartitions(bound)
    assert len(set(items)) == count
    for lam in items:
        assert all(l.size <= b for l, b in zip(lam, bound))


def test_multipartition_stream_is_lazy():
    it = enumerate_multipartitions((30, 30, 30))
    assert next(it) == (P(), P(), P())
