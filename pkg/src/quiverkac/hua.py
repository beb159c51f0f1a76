"""Multipartition generating sums and Kac A-polynomials.

For a quiver with edge multiset E and a framing w, the framed sum is

    Phi(w) = sum_{lam in P^I}  q^{e(lam)} / prod_i |C(lam^i)|  X^{|lam|},
    e(lam) = sum_{edges s->t} <lam^s, lam^t> + sum_i w_i * len(lam^i),

where |C(lam)| is the centralizer order of a nilpotent of Jordan type lam
(``partitions.centralizer_order``) and ``<lam, 1^w> = w * len(lam)``.  With
w = 0 this is the Hua series H.

Summation strategy: |C(lam)| divides |GL_n| as polynomials (the quotient is
the size of the nilpotent orbit), so every term with |lam| = v is

    q^{e(lam)} * prod_i orbit(lam^i) / prod_i |GL_{v_i}|.

Numerators are summed as integer polynomials and each coefficient is
reduced once at the end.

A-polynomials.  Hua's product formula gives, as rational functions,

    log H = sum_alpha sum_{k>=1} A_alpha(q^k) X^{k alpha} / (k (q^k - 1)),

obtained by expanding log(1 - u) and summing sum_{i>=0} q^{ik} = 1/(1-q^k).
Reading off the coefficient of X^beta and solving for the k = 1 term:

    A_beta(q) = (q - 1) * ( L_beta - sum_{k>=2, k | beta} A_{beta/k}(q^k) / (k (q^k - 1)) ),

which is solved in order of increasing total size |beta|.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Optional, Sequence, Tuple

from .exactalg import (
    MSeries,
    IntPoly,
    RationalFunction,
    ONE,
    Q,
    box,
    eval_at,
    series_log,
    substitute_power,
    to_polynomial,
)
from .partitions import (
    Partition,
    centralizer_order,
    centralizer_order_poly,
    gl_order_poly,
    pairing,
    partitions_up_to,
)
from .quiver import Quiver

__all__ = [
    "hua_term",
    "hua_series",
    "framed_numerator_series",
    "kac_a_polynomials",
    "constant_terms",
    "plethystic_log_term",
]


def hua_term(quiver: Quiver, lam: Sequence[Partition], w: Optional[Sequence[int]] = None) -> RationalFunction:
    """Weight of a single multipartition, assembled directly from its definition."""
    lam = tuple(lam)
    if len(lam) != quiver.n:
        raise ValueError("multipartition length must equal the vertex count")
    e = sum(pairing(lam[s], lam[t]) for s, t in quiver.edges)
    if w is not None:
        w = quiver.check_dim(w, "w")
        e += sum(pairing(l, Partition([1] * wi)) for l, wi in zip(lam, w))
    den = ONE
    for l in lam:
        den = den * centralizer_order(l)
    return RationalFunction.q_power(e) / den


def _orbit_poly(lam: Partition) -> IntPoly:
    return to_polynomial(RationalFunction(gl_order_poly(lam.size), centralizer_order_poly(lam)))


def _vertex_data(bound):
    # per vertex: partitions of size <= bound_i with size, length and orbit size
    data = []
    for b in bound:
        parts = partitions_up_to(b)
        data.append([(p, p.size, p.length, _orbit_poly(p)) for p in parts])
    return data


def _pairing_tables(quiver: Quiver, data):
    # edge (s, t) -> table[a][b] = <lam^s_a, lam^t_b>; shared across parallel edges
    tables = {}
    for s, t in quiver.edges:
        if (s, t) in tables:
            continue
        tables[(s, t)] = [[pairing(a[0], b[0]) for b in data[t]] for a in data[s]]
    return [tables[e] for e in quiver.edges]


def _accumulate(quiver_n, edges, w, bound, first_range):
    """Sum numerators for multipartitions whose first component index lies in ``first_range``.

    Returns {v: coefficient list}.  Plain data only, so it can run in a worker process.
    """
    data = _vertex_data(bound)
    quiver = Quiver(quiver_n, edges)
    tables = _pairing_tables(quiver, data)
    n = quiver_n
    sums: Dict[Tuple[int, ...], IntPoly] = {}

    # depth-first walk over index tuples; partial products carried along
    idx = [0] * n

    def rec(i, size, qexp, poly):
        if i == n:
            e = qexp
            for (s, t), tab in zip(edges, tables):
                e += tab[idx[s]][idx[t]]
            key = tuple(size)
            term = poly.shift(e)
            prev = sums.get(key)
            sums[key] = term if prev is None else prev + term
            return
        rng = first_range if i == 0 else range(len(data[i]))
        for a in rng:
            p, sz, ln, orb = data[i][a]
            idx[i] = a
            size.append(sz)
            rec(i + 1, size, qexp + w[i] * ln, poly * orb)
            size.pop()

    rec(0, [], 0, IntPoly([1]))
    return {v: p.coeffs() for v, p in sums.items()}


def _framed_series(quiver: Quiver, w, bound, jobs: int = 1) -> MSeries:
    bound = quiver.check_dim(bound, "bound")
    w = quiver.check_dim(w, "w")
    first = len(partitions_up_to(bound[0]))
    if jobs <= 1 or first < 2:
        chunks = [_accumulate(quiver.n, quiver.edges, w, bound, range(first))]
    else:
        ranges = [range(k, first, jobs) for k in range(min(jobs, first))]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_accumulate, quiver.n, quiver.edges, w, bound, r) for r in ranges]
            chunks = [f.result() for f in futs]
    numer: Dict[Tuple[int, ...], IntPoly] = {}
    for chunk in chunks:
        for v, cs in chunk.items():
            p = IntPoly(cs)
            numer[v] = numer[v] + p if v in numer else p
    coeffs = {}
    for v, num in numer.items():
        den = IntPoly([1])
        for k in v:
            den = den * gl_order_poly(k)
        coeffs[v] = RationalFunction(num, den)
    return MSeries(bound, coeffs)


def hua_series(quiver: Quiver, bound: Sequence[int], jobs: int = 1) -> MSeries:
    """The unframed sum over all multipartitions with |lam| <= bound.

    Loops are allowed; a loop at i contributes q^{<lam^i, lam^i>}.
    """
    return _framed_series(quiver, (0,) * quiver.n, bound, jobs)


def framed_numerator_series(quiver: Quiver, w: Sequence[int], bound: Sequence[int], jobs: int = 1) -> MSeries:
    """The framed sum: every term gets the extra factor prod_i q^{w_i len(lam^i)}."""
    return _framed_series(quiver, w, bound, jobs)


def plethystic_log_term(a: RationalFunction, k: int) -> RationalFunction:
    """Contribution A(q^k) / (k (q^k - 1)) of one Adams term to log H."""
    qk = substitute_power(Q, k)
    return substitute_power(a, k) / ((qk - 1) * k)


def kac_a_polynomials(quiver: Quiver, bound: Sequence[int], jobs: int = 1) -> Dict[Tuple[int, ...], IntPoly]:
    """A_Gamma(alpha, q) for every 0 < alpha <= bound.

    Raises ``NonPolynomial``/``NonIntegral`` if some entry fails to be an
    integer polynomial, which would indicate a bug.
    """
    bound = quiver.check_dim(bound, "bound")
    log_h = series_log(hua_series(quiver, bound, jobs))
    table: Dict[Tuple[int, ...], IntPoly] = {}
    for beta in box(bound):
        if not any(beta):
            continue
        rest = log_h[beta]
        g = math.gcd(*beta)
        for k in range(2, g + 1):
            if g % k:
                continue
            alpha = tuple(b // k for b in beta)
            a = table[alpha]
            if not a.is_zero():
                rest = rest - plethystic_log_term(RationalFunction(a), k)
        table[beta] = to_polynomial(rest * (Q - 1))
    return table


def constant_terms(table: Dict[Tuple[int, ...], IntPoly]) -> Dict[Tuple[int, ...], int]:
    """A(alpha, 0) for every entry."""
    return {alpha: int(eval_at(RationalFunction(a), 0)) for alpha, a in table.items()}
