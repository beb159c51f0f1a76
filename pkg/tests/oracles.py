"""Independent reference computations used by the test-suite.

Nothing here calls into the library's algorithms; each function recomputes
its quantity by a different route (recurrence, enumeration, classical
formula).
"""

from fractions import Fraction
from itertools import product


# --- partitions -------------------------------------------------------------

def partition_count_pentagonal(n):
    """p(n) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def conjugate_dot(a, b):
    """sum_k a'_k b'_k with conjugates computed from the part lists."""
    def conj(parts):
        return [sum(1 for x in parts if x > i) for i in range(max(parts, default=0))]
    return sum(x * y for x, y in zip(conj(a), conj(b)))


# --- q-analogues ------------------------------------------------------------

def poly_add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def gaussian_binomial(n, k):
    """[n choose k]_q coefficients (ascending) by the q-Pascal rule
    [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if k < 0 or k > n:
        return []
    if k == 0 or k == n:
        return [1]
    a = gaussian_binomial(n - 1, k - 1)
    b = gaussian_binomial(n - 1, k)
    return poly_add(a, [0] * k + b)


def gl_order(n, q):
    out = 1
    for j in range(n):
        out *= q**n - q**j
    return out


# --- linear algebra mod p ---------------------------------------------------

def nullspace_mod_p(rows, ncols, p):
    """Basis of {x : M x = 0} over F_p; M given as a list of rows."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = -m[i][f] % p
        basis.append(vec)
    return basis


def matmul(a, b, p):
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0]))]
            for i in range(len(a))]


def is_nilpotent(m, p):
    n = len(m)
    if n == 0:
        return True
    power = m
    for _ in range(n - 1):
        power = matmul(power, m, p)
    return all(x % p == 0 for row in power for x in row)


# --- absolutely indecomposable representations ------------------------------

def count_abs_indecomposable(n, edges, alpha, p):
    """A(alpha, p) by brute force: sum of |Aut M| / |G_alpha| over the
    absolutely indecomposable points M of the representation space.

    M is absolutely indecomposable iff every endomorphism is c*1 + nilpotent
    with c in F_p (End M local with residue field F_p).
    """
    shapes = [(alpha[t], alpha[s]) for s, t in edges]
    nent = sum(r * c for r, c in shapes)
    # unknowns: entries of g_i (alpha_i x alpha_i), row-major, concatenated
    goff, off = [], 0
    for a in alpha:
        goff.append(off)
        off += a * a
    nunk = off
    group = 1
    for a in alpha:
        group *= gl_order(a, p)
    total = Fraction(0)
    for flat in product(range(p), repeat=nent):
        maps, k = [], 0
        for r, c in shapes:
            maps.append([list(flat[k + i * c:k + (i + 1) * c]) for i in range(r)])
            k += r * c
        # equations g_t phi - phi g_s = 0, one per entry of each phi
        rows = []
        for (s, t), phi in zip(edges, maps):
            for i in range(alpha[t]):
                for j in range(alpha[s]):
                    row = [0] * nunk
                    for l in range(alpha[t]):  # (g_t phi)[i][j] = sum_l g_t[i][l] phi[l][j]
                        row[goff[t] + i * alpha[t] + l] += phi[l][j]
                    for l in range(alpha[s]):  # (phi g_s)[i][j] = sum_l phi[i][l] g_s[l][j]
                        row[goff[s] + l * alpha[s] + j] -= phi[i][l]
                    rows.append(row)
        basis = nullspace_mod_p(rows, nunk, p)
        dim_end = len(basis)
        if _abs_indecomposable(basis, alpha, goff, p):
            total += Fraction((p - 1) * p ** (dim_end - 1), group)
    assert total.denominator == 1
    return int(total)


def _abs_indecomposable(basis, alpha, goff, p):
    nunk = sum(a * a for a in alpha)
    for coeffs in product(range(p), repeat=len(basis)):
        vec = [0] * nunk
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(x + c * y) % p for x, y in zip(vec, b)]
        blocks = [[vec[goff[i] + r * a:goff[i] + (r + 1) * a] for r in range(a)]
                  for i, a in enumerate(alpha)]
        if not any(
            all(is_nilpotent([[(blk[r][cc] - (c if r == cc else 0)) % p for cc in range(len(blk))]
                              for r in range(len(blk))], p) for blk in blocks)
            for c in range(p)
        ):
            return False
    return True


# --- root systems and Weyl groups -------------------------------------------

def finite_weyl_orbit_sum(cartan, w, bound):
    """sum det(g) X^{(L+rho) - g(L+rho)} by closing the group generated by
    reflection matrices acting on coordinates (c_rho, c_L, x_1..x_n) of
    c_rho*rho + c_L*L + sum x_i alpha_i.  Finite Weyl groups only.

    r_i(rho) = rho - alpha_i, r_i(L) = L - w_i alpha_i,
    r_i(alpha_j) = alpha_j - C_ij alpha_i.
    """
    n = len(cartan)

    def reflect(i, vec):
        c_rho, c_l, xs = vec[0], vec[1], list(vec[2:])
        # <h_i, vec> = c_rho + c_l * w_i + sum_j C_ij x_j
        h = c_rho + c_l * w[i] + sum(cartan[i][j] * xs[j] for j in range(n))
        xs[i] -= h
        return (c_rho, c_l, *xs)

    start = (1, 1) + (0,) * n
    seen = {start: 1}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            for i in range(n):
                r = reflect(i, vec)
                if r not in seen:
                    seen[r] = -seen[vec]
                    nxt.append(r)
        frontier = nxt
        if len(seen) > 10**5:
            raise RuntimeError("infinite Weyl group")
    out = {}
    for vec, sign in seen.items():
        mu = tuple(-x for x in vec[2:])
        if all(0 <= a <= b for a, b in zip(mu, bound)):
            out[mu] = out.get(mu, 0) + sign
    return {k: v for k, v in out.items() if v}


A2_POSITIVE_ROOTS = {(1, 0), (0, 1), (1, 1)}
A3_POSITIVE_ROOTS = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)}


def affine_sl2_multiplicity(alpha):
    """Root multiplicities of affine sl2 (Kronecker quiver): real roots
    (k+1, k), (k, k+1) and imaginary roots (k, k), all of multiplicity 1."""
    a, b = alpha
    if a == b and a > 0:
        return 1
    return 1 if abs(a - b) == 1 else 0


def sl2_weight_multiplicity(w, a):
    """dim of the weight space L(w)_{w - a alpha} of the (w+1)-dim sl2 irreducible."""
    return 1 if 0 <= a <= w else 0


# --- truncated Fraction power series ----------------------------------------

def fr_series_mul(a, b, bound):
    out = {}
    for u, x in a.items():
        for v, y in b.items():
            s = tuple(i + j for i, j in zip(u, v))
            if all(i <= j for i, j in zip(s, bound)):
                out[s] = out.get(s, 0) + x * y
    return out


def fr_factor_power(alpha, c, t, bound):
    """(1 - c X^alpha)^t truncated to the box, t any integer."""
    zero = tuple(0 for _ in bound)
    if t >= 0:
        base = {zero: Fraction(1), alpha: -c}
        out = {zero: Fraction(1)}
        for _ in range(t):
            out = fr_series_mul(out, base, bound)
        return out
    geo, k = {}, 0
    while all(k * a <= b for a, b in zip(alpha, bound)):
        geo[tuple(k * a for a in alpha)] = c**k
        k += 1
    out = {zero: Fraction(1)}
    for _ in range(-t):
        out = fr_series_mul(out, geo, bound)
    return out
