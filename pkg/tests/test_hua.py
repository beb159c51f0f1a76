import itertools
from fractions import Fraction

import pytest

from quiverkac.exactalg import IntPoly, MSeries, ONE, Q, box, eval_at
from quiverkac.hua import (
    constant_terms,
    framed_numerator_series,
    hua_series,
    hua_term,
    kac_a_polynomials,
)
from quiverkac.partitions import enumerate_multipartitions
from quiverkac.quiver import Quiver

from conftest import QUIVERS
from oracles import count_abs_indecomposable, fr_factor_power, fr_series_mul

ALL_QUIVERS = dict(QUIVERS, jordan=Quiver.jordan())


# --- generating sums --------------------------------------------------------

@pytest.mark.parametrize("name", sorted(ALL_QUIVERS))
def test_hua_constant_coefficient(name):
    q = ALL_QUIVERS[name]
    assert hua_series(q, (1,) * q.n)[(0,) * q.n] == ONE


def test_hua_examples():
    assert hua_series(Quiver.single_vertex(), (1,))[(1,)] == 1 / (Q - 1)
    assert hua_series(Quiver.jordan(), (1,))[(1,)] == Q / (Q - 1)


def test_framed_examples():
    pt = Quiver.single_vertex()
    assert framed_numerator_series(pt, (2,), (1,))[(1,)] == Q**2 / (Q - 1)
    assert framed_numerator_series(pt, (1,), (1,))[(1,)] == Q / (Q - 1)


@pytest.mark.parametrize("name", sorted(ALL_QUIVERS))
def test_framed_with_zero_w_is_hua(name):
    q = ALL_QUIVERS[name]
    bound = (2,) * q.n
    assert framed_numerator_series(q, (0,) * q.n, bound) == hua_series(q, bound)


@pytest.mark.parametrize("name, w", [("point", (2,)), ("kronecker", (1, 0)), ("A3", (0, 1, 1)), ("jordan", (1,))])
def test_series_matches_termwise_definition(name, w):
    q = ALL_QUIVERS[name]
    bound = (2,) * q.n
    coeffs = {}
    for lam in enumerate_multipartitions(bound):
        v = tuple(p.size for p in lam)
        coeffs[v] = coeffs.get(v, 0) + hua_term(q, lam, w)
    assert framed_numerator_series(q, w, bound) == MSeries(bound, coeffs)


@pytest.mark.parametrize("name", sorted(ALL_QUIVERS))
def test_hua_orientation_invariant(name):
    q = ALL_QUIVERS[name]
    bound = (2,) * q.n
    assert hua_series(q.reversed(), bound) == hua_series(q, bound)


def test_parallel_matches_serial():
    q = QUIVERS["triangle"]
    assert hua_series(q, (2, 2, 2), jobs=3) == hua_series(q, (2, 2, 2))


# --- A-polynomials ----------------------------------------------------------

@pytest.mark.parametrize("quiver, alpha, poly", [
    (Quiver.single_vertex(), (1,), IntPoly([1])),
    (Quiver.single_vertex(), (2,), IntPoly()),
    (Quiver.jordan(), (1,), IntPoly([0, 1])),
    (Quiver.jordan(), (2,), IntPoly([0, 1])),
    (Quiver.kronecker(), (1, 1), IntPoly([1, 1])),
    (Quiver.kronecker(), (2, 2), IntPoly([1, 1])),
    (Quiver.kronecker(), (1, 2), IntPoly([1])),
    (Quiver.kronecker(), (2, 1), IntPoly([1])),
    (Quiver.kronecker(3), (1, 1), IntPoly([1, 1, 1])),
    (Quiver.path(2), (1, 1), IntPoly([1])),
    (Quiver.cycle(3), (1, 1, 1), IntPoly([2, 1])),
])
def test_a_polynomial_examples(quiver, alpha, poly):
    bound = tuple(max(2, a) for a in alpha)
    assert kac_a_polynomials(quiver, bound)[alpha] == poly


def test_a3_positive_roots():
    from oracles import A3_POSITIVE_ROOTS
    table = kac_a_polynomials(QUIVERS["A3"], (2, 2, 2))
    for alpha, a in table.items():
        assert a == (IntPoly([1]) if alpha in A3_POSITIVE_ROOTS else IntPoly())


def test_unit_vectors_have_a_one(loop_free_quiver):
    q = loop_free_quiver
    table = kac_a_polynomials(q, (1,) * q.n)
    for i in range(q.n):
        e = tuple(int(j == i) for j in range(q.n))
        assert table[e] == IntPoly([1])


def _brute_cases():
    # Sigma alpha <= 3, p in {2,3,5}; keep p^(dim Rep + dim End) manageable
    for name in ("point", "A2", "A3", "kronecker", "kronecker3", "triangle", "jordan"):
        q = ALL_QUIVERS[name]
        for alpha in itertools.product(range(4), repeat=q.n):
            if not 0 < sum(alpha) <= 3:
                continue
            rep = sum(alpha[s] * alpha[t] for s, t in q.edges)
            end = sum(a * a for a in alpha)
            for p in (2, 3, 5):
                if p ** rep <= 20000 and p ** (rep + end) <= 10**7:
                    yield name, alpha, p


BRUTE_CASES = list(_brute_cases())


@pytest.mark.parametrize("name, alpha, p", BRUTE_CASES)
def test_a_polynomial_counts_absolutely_indecomposables(name, alpha, p):
    q = ALL_QUIVERS[name]
    table = kac_a_polynomials(q, alpha)
    assert table[alpha](p) == count_abs_indecomposable(q.n, list(q.edges), alpha, p)


def test_brute_case_coverage():
    # every quiver contributes some alpha with total size 3
    names = {n for n, a, p in BRUTE_CASES if sum(a) == 3}
    assert names >= {"point", "A2", "A3", "kronecker", "jordan"}


def test_orientation_invariance_of_a_polynomials():
    q = Quiver(3, ((0, 1), (2, 1), (1, 0)))
    assert kac_a_polynomials(q, (2, 2, 2)) == kac_a_polynomials(q.reversed(), (2, 2, 2))


def test_constant_terms():
    assert constant_terms(kac_a_polynomials(Quiver.kronecker(), (1, 1)))[(1, 1)] == 1
    assert constant_terms(kac_a_polynomials(Quiver.jordan(), (1,)))[(1,)] == 0
    assert constant_terms({(2,): IntPoly()}) == {(2,): 0}


@pytest.mark.parametrize("name, bound", [("kronecker", (2, 2)), ("A2", (2, 2)), ("jordan", (3,)),
                                          ("point", (3,)), ("triangle", (1, 1, 1))])
def test_product_re_expansion(name, bound):
    """Rebuild H from prod (1 - q^{i+j} X^alpha)^{t_j} at q = 1/2, i <= N."""
    q = ALL_QUIVERS[name]
    table = kac_a_polynomials(q, bound)
    x = Fraction(1, 2)
    n_terms = 45
    zero = (0,) * q.n
    prod = {zero: Fraction(1)}
    for alpha, a in table.items():
        for j, t in enumerate(a.coeffs()):
            if t == 0:
                continue
            for i in range(n_terms):
                prod = fr_series_mul(prod, fr_factor_power(alpha, x ** (i + j), t, bound), bound)
    h = hua_series(q, bound)
    for v in box(bound):
        assert abs(prod.get(v, 0) - eval_at(h[v], x)) < Fraction(1, 2**30)
