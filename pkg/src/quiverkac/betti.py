"""Poincare polynomials of Nakajima quiver varieties.

P_v(q) = sum_i b_{2i}(M(v, w)) q^{d_{v,w} - i} is the coefficient of X^v in

    framed_numerator_series(w) / hua_series.

Point counts relate to it by |V_1(v,w)(F_q)| / |G_v(F_q)| = q^{d_{v,w}} P_v(q)
(see ``expected_orbit_count``): the generating function of the ratio carries
the factor |g_v| / |V_{v,w}| = q^{-d_{v,w}}, because
dim V_{v,w} - dim g_v = sum_e v_s v_t + sum_i v_i w_i - sum_i v_i^2 = d_{v,w}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .exactalg import IntPoly, RationalFunction, box, eval_at, series_inverse, series_mul, to_polynomial
from .hua import framed_numerator_series, hua_series
from .quiver import Quiver, half_dimension
from .weyl import character_multiplicities

__all__ = [
    "PoincareTable",
    "NegativeBettiNumber",
    "poincare_series",
    "betti_numbers",
    "expected_orbit_count",
    "top_betti_equals_weight_multiplicity",
    "ChainRow",
]


class NegativeBettiNumber(ArithmeticError):
    pass


@dataclass
class PoincareTable:
    quiver: Quiver
    w: Tuple[int, ...]
    bound: Tuple[int, ...]
    polys: Dict[Tuple[int, ...], IntPoly]

    def __getitem__(self, v) -> IntPoly:
        return self.polys[tuple(v)]

    def __contains__(self, v):
        return tuple(v) in self.polys

    def half_dimension(self, v) -> int:
        return half_dimension(self.quiver, v, self.w)


def poincare_series(quiver: Quiver, w: Sequence[int], bound: Sequence[int], jobs: int = 1) -> PoincareTable:
    quiver.require_loop_free()
    w = quiver.check_dim(w, "w")
    bound = quiver.check_dim(bound, "bound")
    num = framed_numerator_series(quiver, w, bound, jobs)
    den = hua_series(quiver, bound, jobs)
    ratio = series_mul(num, series_inverse(den))
    polys = {}
    for v in box(bound):
        p = to_polynomial(ratio[v])
        if any(c < 0 for c in p.coeffs()):
            raise NegativeBettiNumber(f"P_{v} = {p} has a negative coefficient")
        d = half_dimension(quiver, v, w)
        if not p.is_zero() and p.degree > d:
            raise ArithmeticError(f"P_{v} = {p} has degree above d = {d}")
        polys[v] = p
    return PoincareTable(quiver, w, bound, polys)


def betti_numbers(table: PoincareTable, v: Sequence[int]) -> List[int]:
    """[b_0, b_2, ..., b_{2d}]; b_{2i} is the coefficient of q^{d-i}.

    Returns [] when d < 0 (the variety is empty).
    """
    v = tuple(v)
    if v not in table:
        raise KeyError(f"v={v} is outside the computed box {table.bound}")
    p = table[v]
    d = table.half_dimension(v)
    if not p.is_zero() and p.degree > d:
        raise ValueError(f"P_{v} has degree {p.degree} > d = {d}")
    cs = p.coeffs()
    return [cs[d - i] if 0 <= d - i < len(cs) else 0 for i in range(d + 1)]


def expected_orbit_count(table: PoincareTable, v: Sequence[int], p: int) -> int:
    """q^{d_{v,w}} P_v(q) at q = p: the predicted value of count / |G_v(F_p)|."""
    v = tuple(v)
    poly = table[v]
    if poly.is_zero():
        return 0
    return p ** table.half_dimension(v) * poly(p)


@dataclass
class ChainRow:
    v: Tuple[int, ...]
    poincare_at_zero: int
    multiplicity: int

    @property
    def ok(self) -> bool:
        return self.poincare_at_zero == self.multiplicity


def top_betti_equals_weight_multiplicity(quiver: Quiver, w: Sequence[int], bound: Sequence[int], jobs: int = 1) -> List[ChainRow]:
    """Compare P_v(0) with dim L(Lambda_w)_{Lambda_w - v} for all v in the box."""
    table = poincare_series(quiver, w, bound, jobs)
    mult = character_multiplicities(quiver, w, bound)
    rows = []
    for v in box(table.bound):
        at0 = eval_at(RationalFunction(table[v]), 0)
        rows.append(ChainRow(v, int(at0), mult[v]))
    return rows
