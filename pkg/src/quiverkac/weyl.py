"""Weyl group orbit sums, root multiplicities and highest-weight characters.

Conventions.  C = 2I - B is the integer Cartan matrix of a loop-free quiver,
<h_i, alpha_j> = C_ij, <h_i, Lambda_j> = delta_ij and <h_i, rho> = 1.  A
simple reflection acts by r_i(lam) = lam - <h_i, lam> alpha_i, so r_i(rho) =
rho - alpha_i.

An orbit element w(Lambda + rho) is stored as a ``WeylState``:

* ``mu``: the offset, w(Lambda+rho) = (Lambda+rho) - sum_i mu_i alpha_i,
* ``c``: the coroot pairings c_i = <h_i, w(Lambda+rho)>,
* ``sign``: det(w).

Applying r_i maps mu -> mu + c_i e_i, c_j -> c_j - c_i C_ji, sign -> -sign.

Breadth-first search from Lambda+rho applies r_i only when c_i > 0.  Every
element of the orbit of a dominant regular weight is reached this way
(walk a reduced word from the left: each step sends a weight to one on the
positive side of the reflecting wall).  Along such a step mu_i grows by
c_i > 0 and no other coordinate of mu changes, so mu only ever increases
componentwise along a search path; once a state leaves the box
[0, bound], everything reachable from it is outside too.  Pruning at the
box is therefore exact inside the box.

The stabilizer of a regular weight is trivial, so distinct Weyl elements
give distinct mu and mu alone is a sound deduplication key.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .exactalg import MSeries, box, eval_at, series_inverse, series_log, series_mul
from .quiver import Quiver, cartan_matrix

__all__ = [
    "WeylState",
    "NonIntegerMultiplicity",
    "NegativeOrNonIntegerMultiplicity",
    "WeylOrbitCollision",
    "weyl_orbit_states",
    "weyl_orbit_sum",
    "root_multiplicities",
    "character_multiplicities",
    "denominator_product",
]


class NonIntegerMultiplicity(ArithmeticError):
    pass


class NegativeOrNonIntegerMultiplicity(ArithmeticError):
    pass


class WeylOrbitCollision(RuntimeError):
    """Two search paths reached the same offset with different signs."""


@dataclass(frozen=True)
class WeylState:
    mu: Tuple[int, ...]
    c: Tuple[int, ...]
    sign: int

    @classmethod
    def initial(cls, w: Sequence[int]) -> "WeylState":
        return cls((0,) * len(w), tuple(x + 1 for x in w), 1)

    def reflect(self, i: int, cartan) -> "WeylState":
        ci = self.c[i]
        mu = list(self.mu)
        mu[i] += ci
        c = tuple(self.c[j] - ci * cartan[j][i] for j in range(len(self.c)))
        return WeylState(tuple(mu), c, -self.sign)


def weyl_orbit_states(quiver: Quiver, w: Sequence[int], bound: Sequence[int], prune: bool = True, max_states: int = 10**6):
    """All orbit states with mu inside the box, keyed by mu.

    With ``prune=False`` states outside the box are still expanded (the search
    then needs a finite Weyl group, or it stops at ``max_states``); used to
    test the pruning argument.
    """
    cartan = cartan_matrix(quiver)
    w = quiver.check_dim(w, "w")
    bound = quiver.check_dim(bound, "bound")
    start = WeylState.initial(w)
    seen: Dict[Tuple[int, ...], WeylState] = {start.mu: start}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for i in range(quiver.n):
            if st.c[i] <= 0:
                continue
            nxt = st.reflect(i, cartan)
            inside = all(a <= b for a, b in zip(nxt.mu, bound))
            if prune and not inside:
                continue
            old = seen.get(nxt.mu)
            if old is not None:
                if old.sign != nxt.sign or old.c != nxt.c:
                    raise WeylOrbitCollision(f"offset {nxt.mu} reached with conflicting data")
                continue
            seen[nxt.mu] = nxt
            if len(seen) > max_states:
                raise RuntimeError("Weyl orbit search exceeded max_states")
            queue.append(nxt)
    return {mu: st for mu, st in seen.items() if all(a <= b for a, b in zip(mu, bound))}


def weyl_orbit_sum(quiver: Quiver, w: Sequence[int], bound: Sequence[int]) -> MSeries:
    """sum_w det(w) X^{(Lambda+rho) - w(Lambda+rho)}, truncated to the box."""
    states = weyl_orbit_states(quiver, w, bound)
    return MSeries(tuple(bound), {mu: st.sign for mu, st in states.items()})


def _as_int(x: Fraction, what: str, exc):
    if x.denominator != 1:
        raise exc(f"{what} = {x} is not an integer")
    return int(x)


def root_multiplicities(quiver: Quiver, bound: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """m_alpha for 0 < alpha <= bound, from sum det(w) X^{rho - w rho} = prod (1 - X^alpha)^{m_alpha}.

    Taking logs, the coefficient of X^beta is -sum_{k | beta} m_{beta/k} / k.
    """
    bound = quiver.check_dim(bound, "bound")
    log_d = series_log(weyl_orbit_sum(quiver, (0,) * quiver.n, bound))
    mult: Dict[Tuple[int, ...], int] = {}
    for beta in box(bound):
        if not any(beta):
            continue
        val = -eval_at(log_d[beta], 0)
        g = math.gcd(*beta)
        for k in range(2, g + 1):
            if g % k == 0:
                val -= Fraction(mult[tuple(b // k for b in beta)], k)
        mult[beta] = _as_int(val, f"m{beta}", NonIntegerMultiplicity)
    return mult


def denominator_product(mult: Dict[Tuple[int, ...], int], bound: Sequence[int]) -> MSeries:
    """Expand prod_alpha (1 - X^alpha)^{m_alpha} inside the box."""
    bound = tuple(bound)
    out = MSeries.one(bound)
    zero = (0,) * len(bound)
    for alpha, m in sorted(mult.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        if m == 0:
            continue
        factor = MSeries(bound, {zero: 1, alpha: -1})
        if m < 0:
            factor = series_inverse(factor)
        for _ in range(abs(m)):
            out = series_mul(out, factor)
    return out


def character_multiplicities(quiver: Quiver, w: Sequence[int], bound: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """dim L(Lambda_w)_{Lambda_w - alpha} for every 0 <= alpha <= bound (Weyl-Kac ratio)."""
    bound = quiver.check_dim(bound, "bound")
    num = weyl_orbit_sum(quiver, w, bound)
    den = weyl_orbit_sum(quiver, (0,) * quiver.n, bound)
    ratio = series_mul(num, series_inverse(den))
    out = {}
    for alpha in box(bound):
        val = eval_at(ratio[alpha], 0)
        if val.denominator != 1 or val < 0:
            raise NegativeOrNonIntegerMultiplicity(f"multiplicity at {alpha} = {val}")
        out[alpha] = int(val)
    return out
