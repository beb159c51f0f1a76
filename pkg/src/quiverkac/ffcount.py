"""Finite-field point counts for the moment map, and small matrix censuses.

Everything runs over a prime field F_p with exact integer arithmetic.  Large
enumerations are done in numpy batches; a guard on the size of the search
space (default 10**8, overridable with ``QUIVERKAC_GUARD``) stops runaway
requests.

Two independent counts of {mu(A, B, I, J) = 1_v} are provided:

``count_bruteforce``
    Enumerate every (A_e, B_e, I_i, J_i) and evaluate the moment map
    mu_i = I_i J_i + sum_{s(e)=i} B_e A_e - sum_{t(e)=i} A_e B_e.

``count_fourier``
    Use the character-sum identity

        #{mu = xi} = |V| / |g| * sum_{x in g} a(x) Psi(<x, xi>),

    with a(x) = |ker rho(x)| for rho(x)(A_e, I_i) = (x_t A_e - A_e x_s, x_i I_i).
    For xi = 1_v, <x, xi> = tr(x).  Psi is never evaluated: since
    rho(c x) = c rho(x), a(c x) = a(x) while tr(c x) = c tr(x), so for c != 0
    the partial sums S_t = sum_{tr x = t} a(x) agree for all t != 0.  With
    T = S_0, S = sum_t S_t and sum_{t != 0} Psi(t) = -1 the character sum is
    T - (S - T) / (p - 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .partitions import Partition, enumerate_partitions
from .quiver import Quiver

__all__ = [
    "CharacteristicTooSmall",
    "SearchSpaceTooLarge",
    "InternalNonInteger",
    "FFRep",
    "CoadjointValue",
    "default_guard",
    "is_prime",
    "moment_map",
    "count_bruteforce",
    "count_fourier",
    "group_order",
    "verify_count_vs_poincare",
    "CountReport",
    "rank_mod_p",
    "jordan_type",
    "jordan_matrix",
    "centralizer_census",
    "intertwiner_count",
    "nilpotent_count",
]

DEFAULT_GUARD = 10**8
_BATCH = 1 << 14


class CharacteristicTooSmall(ValueError):
    pass


class SearchSpaceTooLarge(ValueError):
    pass


class InternalNonInteger(ArithmeticError):
    pass


def default_guard() -> int:
    env = os.environ.get("QUIVERKAC_GUARD")
    return int(env) if env else DEFAULT_GUARD


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p**0.5) + 1))


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# Single representations


@dataclass
class FFRep:
    """A point (A_e, I_i, B_e, J_i) of the doubled representation space over F_p.

    A_e is v_t x v_s, B_e is v_s x v_t, I_i is v_i x w_i, J_i is w_i x v_i.
    """

    quiver: Quiver
    v: Tuple[int, ...]
    w: Tuple[int, ...]
    p: int
    A: List[np.ndarray]
    B: List[np.ndarray]
    I: List[np.ndarray]
    J: List[np.ndarray]

    def __post_init__(self):
        q, v, w = self.quiver, self.v, self.w
        expect = (
            [(v[t], v[s]) for s, t in q.edges],
            [(v[s], v[t]) for s, t in q.edges],
            [(v[i], w[i]) for i in range(q.n)],
            [(w[i], v[i]) for i in range(q.n)],
        )
        for name, mats, shapes in zip("ABIJ", (self.A, self.B, self.I, self.J), expect):
            if len(mats) != len(shapes):
                raise ValueError(f"{name}: expected {len(shapes)} matrices, got {len(mats)}")
            for k, (m, shp) in enumerate(zip(mats, shapes)):
                if np.shape(m) != shp:
                    raise ValueError(f"{name}[{k}] has shape {np.shape(m)}, expected {shp}")

    @classmethod
    def zero(cls, quiver: Quiver, v, w, p) -> "FFRep":
        v = quiver.check_dim(v, "v")
        w = quiver.check_dim(w, "w")
        z = lambda r, c: np.zeros((r, c), dtype=np.int64)
        return cls(
            quiver, v, w, p,
            [z(v[t], v[s]) for s, t in quiver.edges],
            [z(v[s], v[t]) for s, t in quiver.edges],
            [z(v[i], w[i]) for i in range(quiver.n)],
            [z(w[i], v[i]) for i in range(quiver.n)],
        )


@dataclass
class CoadjointValue:
    """One v_i x v_i matrix per vertex, an element of g_v^* via the trace pairing."""

    p: int
    blocks: List[np.ndarray]

    def __eq__(self, other):
        if not isinstance(other, CoadjointValue):
            return NotImplemented
        return self.p == other.p and all(
            a.shape == b.shape and np.array_equal(a % self.p, b % self.p)
            for a, b in zip(self.blocks, other.blocks)
        )

    @classmethod
    def identity(cls, v, p) -> "CoadjointValue":
        return cls(p, [np.eye(k, dtype=np.int64) for k in v])


def moment_map(rep: FFRep) -> CoadjointValue:
    q, p = rep.quiver, rep.p
    out = [np.asarray(I, dtype=np.int64) @ np.asarray(J, dtype=np.int64) for I, J in zip(rep.I, rep.J)]
    for k, (s, t) in enumerate(q.edges):
        A = np.asarray(rep.A[k], dtype=np.int64)
        B = np.asarray(rep.B[k], dtype=np.int64)
        out[s] = out[s] + B @ A
        out[t] = out[t] - A @ B
    return CoadjointValue(p, [m % p for m in out])


# ---------------------------------------------------------------------------
# Batched helpers


def _digits(start: int, stop: int, p: int, ndigits: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    pw = p ** np.arange(ndigits, dtype=np.int64)
    return (idx[:, None] // pw[None, :]) % p


def rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a batch of integer matrices, shape (batch, rows, cols)."""
    M = np.array(mats, dtype=np.int64) % p
    if M.ndim == 2:
        M = M[None]
    nb, nr, nc = M.shape
    rank = np.zeros(nb, dtype=np.int64)
    if nr == 0 or nc == 0:
        return rank
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    rows = np.arange(nr)
    for col in range(nc):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        r0 = rank[b]
        top = M[b, r0].copy()
        M[b, r0] = M[b, piv]
        M[b, piv] = top
        prow = M[b, r0] * inv[M[b, r0, col]][:, None] % p
        M[b, r0] = prow
        factor = M[b, :, col].copy()
        factor[np.arange(len(b)), r0] = 0
        M[b] = (M[b] - factor[:, :, None] * prow[:, None, :]) % p
        rank[b] += 1
    return rank


def _split(total: int, jobs: int):
    step = max(_BATCH, -(-total // max(jobs, 1)))
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def _run_chunks(fn, args, total, jobs):
    if jobs <= 1:
        return [fn(*args, 0, total)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futs = [ex.submit(fn, *args, a, b) for a, b in _split(total, jobs)]
        return [f.result() for f in futs]


# ---------------------------------------------------------------------------
# Moment-map solution counts


def _layout(quiver: Quiver, v, w):
    """Slot list (kind, index, rows, cols) in a fixed order: A_e, B_e, I_i, J_i."""
    slots = []
    for k, (s, t) in enumerate(quiver.edges):
        slots.append(("A", k, v[t], v[s]))
    for k, (s, t) in enumerate(quiver.edges):
        slots.append(("B", k, v[s], v[t]))
    for i in range(quiver.n):
        slots.append(("I", i, v[i], w[i]))
    for i in range(quiver.n):
        slots.append(("J", i, w[i], v[i]))
    return slots


def _prepare(quiver, v, w, p, guard, exponent):
    _check_prime(p)
    v = quiver.check_dim(v, "v")
    w = quiver.check_dim(w, "w")
    if p <= sum(v):
        raise CharacteristicTooSmall(f"need p > sum(v) = {sum(v)}, got p = {p}")
    guard = default_guard() if guard is None else guard
    if p ** exponent > guard:
        raise SearchSpaceTooLarge(f"{p}^{exponent} exceeds the guard {guard}")
    return v, w


def _brute_chunk(n, edges, v, w, p, start, stop):
    quiver = Quiver(n, edges)
    slots = _layout(quiver, v, w)
    ndig = sum(r * c for _, _, r, c in slots)
    hits = 0
    for a in range(start, stop, _BATCH):
        b = min(a + _BATCH, stop)
        dig = _digits(a, b, p, ndig)
        m = b - a
        mats = {}
        off = 0
        for kind, k, r, c in slots:
            mats[(kind, k)] = dig[:, off:off + r * c].reshape(m, r, c)
            off += r * c
        ok = np.ones(m, dtype=bool)
        for i in range(n):
            mu = mats[("I", i)] @ mats[("J", i)]
            for k, (s, t) in enumerate(edges):
                if s == i:
                    mu = mu + mats[("B", k)] @ mats[("A", k)]
                if t == i:
                    mu = mu - mats[("A", k)] @ mats[("B", k)]
            ok &= np.all((mu - np.eye(v[i], dtype=np.int64)) % p == 0, axis=(1, 2))
        hits += int(ok.sum())
    return hits


def count_bruteforce(quiver: Quiver, v, w, p: int, guard: Optional[int] = None, jobs: int = 1) -> int:
    """Number of (A, B, I, J) over F_p with moment map equal to the identity."""
    quiver.require_loop_free()
    dim_m = 2 * (sum(quiver.check_dim(v)[s] * quiver.check_dim(v)[t] for s, t in quiver.edges)
                 + sum(a * b for a, b in zip(quiver.check_dim(v), quiver.check_dim(w, "w"))))
    v, w = _prepare(quiver, v, w, p, guard, dim_m)
    total = p ** dim_m
    parts = _run_chunks(_brute_chunk, (quiver.n, quiver.edges, v, w, p), total, jobs)
    return sum(parts)


def _rho_blocks(quiver, v, w, xs):
    """Batched matrix of rho(x) on V = (+)_e Hom(V_s, V_t) (+) (+)_i Hom(W_i, V_i).

    Row-major vectorization: vec(X A) = (X kron I) vec(A), vec(A Y) = (I kron Y^T) vec(A).
    """
    m = xs[0].shape[0] if xs else 0
    blocks = []
    for s, t in quiver.edges:
        xt, xsrc = xs[t], xs[s]
        left = np.einsum("bij,kl->bikjl", xt, np.eye(v[s], dtype=np.int64)).reshape(m, v[t] * v[s], v[t] * v[s])
        right = np.einsum("ik,blj->bijkl", np.eye(v[t], dtype=np.int64), xsrc).reshape(m, v[t] * v[s], v[t] * v[s])
        blocks.append(left - right)
    for i in range(quiver.n):
        blk = np.einsum("bij,kl->bikjl", xs[i], np.eye(w[i], dtype=np.int64)).reshape(m, v[i] * w[i], v[i] * w[i])
        blocks.append(blk)
    dim = sum(bk.shape[1] for bk in blocks)
    out = np.zeros((m, dim, dim), dtype=np.int64)
    off = 0
    for bk in blocks:
        d = bk.shape[1]
        out[:, off:off + d, off:off + d] = bk
        off += d
    return out


def _fourier_chunk(n, edges, v, w, p, start, stop):
    quiver = Quiver(n, edges)
    ndig = sum(k * k for k in v)
    dim_v = sum(v[s] * v[t] for s, t in edges) + sum(a * b for a, b in zip(v, w))
    # kernel dimension histograms for trace zero / all x
    zero_hist = [0] * (dim_v + 1)
    all_hist = [0] * (dim_v + 1)
    for a in range(start, stop, _BATCH):
        b = min(a + _BATCH, stop)
        m = b - a
        dig = _digits(a, b, p, ndig)
        xs, off = [], 0
        for k in v:
            xs.append(dig[:, off:off + k * k].reshape(m, k, k))
            off += k * k
        tr = np.zeros(m, dtype=np.int64)
        for x in xs:
            tr += np.trace(x, axis1=1, axis2=2)
        tr %= p
        if dim_v:
            ker = dim_v - rank_mod_p(_rho_blocks(quiver, v, w, xs), p)
        else:
            ker = np.zeros(m, dtype=np.int64)
        for kd, cnt in enumerate(np.bincount(ker, minlength=dim_v + 1)):
            all_hist[kd] += int(cnt)
        for kd, cnt in enumerate(np.bincount(ker[tr == 0], minlength=dim_v + 1)):
            zero_hist[kd] += int(cnt)
    return zero_hist, all_hist


def count_fourier(quiver: Quiver, v, w, p: int, guard: Optional[int] = None, jobs: int = 1) -> int:
    """Same count as ``count_bruteforce``, through the character-sum identity."""
    quiver.require_loop_free()
    v0 = quiver.check_dim(v)
    v, w = _prepare(quiver, v, w, p, guard, sum(k * k for k in v0))
    dim_g = sum(k * k for k in v)
    dim_v = sum(v[s] * v[t] for s, t in quiver.edges) + sum(a * b for a, b in zip(v, w))
    parts = _run_chunks(_fourier_chunk, (quiver.n, quiver.edges, v, w, p), p ** dim_g, jobs)
    T = S = 0
    for zh, ah in parts:
        T += sum(c * p**k for k, c in enumerate(zh))
        S += sum(c * p**k for k, c in enumerate(ah))
    char_sum = Fraction(T) - Fraction(S - T, p - 1)
    val = Fraction(p**dim_v, p**dim_g) * char_sum
    if val.denominator != 1:
        raise InternalNonInteger(f"character sum gave non-integer count {val}")
    return int(val)


def group_order(v: Sequence[int], p: int) -> int:
    """|G_v(F_p)| = prod_i |GL_{v_i}(F_p)|."""
    out = 1
    for n in v:
        for j in range(n):
            out *= p**n - p**j
    return out


@dataclass
class CountReport:
    v: Tuple[int, ...]
    w: Tuple[int, ...]
    p: int
    count: int
    group_order: int
    divisible: bool
    orbit_count: Optional[int]
    expected: int
    fourier: Optional[int] = None

    @property
    def ok(self) -> bool:
        fourier_ok = self.fourier is None or self.fourier == self.count
        return self.divisible and self.orbit_count == self.expected and fourier_ok


def verify_count_vs_poincare(quiver: Quiver, v, w, p: int, table=None, guard=None, jobs: int = 1,
                             with_fourier: bool = False) -> CountReport:
    """Check count / |G_v| == p^d P_v(p), and that |G_v| divides the count."""
    from .betti import expected_orbit_count, poincare_series

    v = quiver.check_dim(v, "v")
    w = quiver.check_dim(w, "w")
    if table is None or table.w != w or v not in table:
        table = poincare_series(quiver, w, v)
    count = count_bruteforce(quiver, v, w, p, guard=guard, jobs=jobs)
    g = group_order(v, p)
    divisible = count % g == 0
    fourier = count_fourier(quiver, v, w, p, guard=guard, jobs=jobs) if with_fourier else None
    return CountReport(
        v, w, p, count, g, divisible,
        count // g if divisible else None,
        expected_orbit_count(table, v, p),
        fourier,
    )


# ---------------------------------------------------------------------------
# Nilpotent census


def jordan_matrix(lam: Partition) -> np.ndarray:
    """Nilpotent matrix in Jordan normal form with block sizes ``lam``."""
    n = lam.size
    x = np.zeros((n, n), dtype=np.int64)
    off = 0
    for part in lam.parts:
        for j in range(part - 1):
            x[off + j, off + j + 1] = 1
        off += part
    return x


def _matpow_batch(x, k, p):
    out = np.broadcast_to(np.eye(x.shape[1], dtype=np.int64), x.shape).copy()
    for _ in range(k):
        out = (out @ x) % p
    return out


def jordan_type(x: np.ndarray, p: int) -> Optional[Partition]:
    """Jordan type of a nilpotent matrix (``None`` if not nilpotent)."""
    types = _jordan_types(np.asarray(x, dtype=np.int64)[None], p)
    return types[0]


def _jordan_types(xs: np.ndarray, p: int):
    m, n, _ = xs.shape
    if n == 0:
        return [Partition()] * m
    nil = np.all(_matpow_batch(xs, n, p) == 0, axis=(1, 2))
    # kernel dims of x^k, k = 0..n; the number of blocks of size >= k is kd[k] - kd[k-1]
    kd = [np.zeros(m, dtype=np.int64)]
    for k in range(1, n + 1):
        kd.append(n - rank_mod_p(_matpow_batch(xs, k, p), p))
    conj = np.stack([kd[k] - kd[k - 1] for k in range(1, n + 1)], axis=1)
    out = []
    for b in range(m):
        if not nil[b]:
            out.append(None)
            continue
        c = [int(a) for a in conj[b] if a > 0]
        out.append(Partition(c).conjugate())
    return out


def nilpotent_count(n: int, p: int) -> int:
    """p^{n^2 - n}, the number of nilpotent n x n matrices over F_p."""
    return p ** (n * n - n)


def centralizer_census(n: int, p: int, guard: Optional[int] = None) -> Dict[Partition, int]:
    """Count nilpotent n x n matrices over F_p by Jordan type, by exhaustive enumeration."""
    _check_prime(p)
    if n > 3:
        raise SearchSpaceTooLarge("centralizer_census is limited to n <= 3")
    guard = default_guard() if guard is None else guard
    if p ** (n * n) > guard:
        raise SearchSpaceTooLarge(f"{p}^{n * n} exceeds the guard {guard}")
    counts: Dict[Partition, int] = {lam: 0 for lam in enumerate_partitions(n)}
    total = p ** (n * n)
    for a in range(0, total, _BATCH):
        b = min(a + _BATCH, total)
        xs = _digits(a, b, p, n * n).reshape(b - a, n, n)
        for lam in _jordan_types(xs, p):
            if lam is not None:
                counts[lam] += 1
    return counts


def intertwiner_count(lam: Partition, mu: Partition, p: int, guard: Optional[int] = None) -> int:
    """#{A in Hom(F_p^|lam|, F_p^|mu|) : A X_lam = X_mu A}, by enumeration."""
    a, b = lam.size, mu.size
    guard = default_guard() if guard is None else guard
    if p ** (a * b) > guard:
        raise SearchSpaceTooLarge(f"{p}^{a * b} exceeds the guard {guard}")
    x1 = jordan_matrix(lam)
    x2 = jordan_matrix(mu)
    total = p ** (a * b)
    hits = 0
    for s in range(0, total, _BATCH):
        e = min(s + _BATCH, total)
        A = _digits(s, e, p, a * b).reshape(e - s, b, a)
        diff = (A @ x1 - x2[None] @ A) % p
        hits += int(np.all(diff == 0, axis=(1, 2)).sum())
    return hits
