"""Exact arithmetic in the indeterminate q.

Three value types live here:

* ``IntPoly`` -- integer polynomials in q,
* ``RationalFunction`` -- reduced quotients of two ``IntPoly``,
* ``MSeries`` -- multivariate power series in X_1..X_n with
  ``RationalFunction`` coefficients, truncated to a box ``0 <= v <= bound``.

Polynomial arithmetic (multiplication, exact gcd over Z[q]) is delegated to
FLINT through ``python-flint``; everything else is plain Python.  All values
are immutable.

The box is closed under the partial order on exponents, so the coefficient of
a product at ``v`` only involves coefficients at exponents ``<= v`` and every
ring operation below is exact inside the box.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from flint import fmpz_poly

__all__ = [
    "ExactArithmeticError",
    "NonPolynomial",
    "NonIntegral",
    "PoleAtPoint",
    "BoundMismatch",
    "IntPoly",
    "RationalFunction",
    "MSeries",
    "Q",
    "ONE",
    "ZERO",
    "as_rf",
    "series_mul",
    "series_inverse",
    "series_log",
    "series_exp",
    "substitute_power",
    "to_polynomial",
    "eval_at",
]


class ExactArithmeticError(ArithmeticError):
    pass


class NonPolynomial(ExactArithmeticError):
    """A rational function expected to be a polynomial has a nontrivial denominator."""


class NonIntegral(ExactArithmeticError):
    """A rational function is a polynomial over Q but not over Z."""


class PoleAtPoint(ExactArithmeticError, ZeroDivisionError):
    pass


class BoundMismatch(ValueError):
    pass


Exponent = Tuple[int, ...]


def _format_poly(coeffs: Sequence[int], var: str = "q") -> str:
    if not any(coeffs):
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first_body = out[0]
    s = ("-" if first_sign == "-" else "") + first_body
    for sign, body in out[1:]:
        s += f"{sign}{body}"
    return s


class IntPoly:
    """Polynomial in q with arbitrary-precision integer coefficients.

    ``IntPoly([c0, c1, ...])`` is ``c0 + c1*q + ...``.  The zero polynomial
    has degree -1.
    """

    __slots__ = ("_p", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        if isinstance(coeffs, fmpz_poly):
            self._p = coeffs
        else:
            self._p = fmpz_poly([int(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _wrap(cls, p: fmpz_poly) -> "IntPoly":
        obj = cls.__new__(cls)
        obj._p = p
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls._wrap(fmpz_poly([0] * k + [c]))

    @property
    def degree(self) -> int:
        return self._p.degree()

    def coeffs(self) -> list:
        """Coefficients ascending in q, no trailing zeros (empty for zero)."""
        return [int(c) for c in self._p.coeffs()]

    def is_zero(self) -> bool:
        return self._p.degree() < 0

    def leading(self) -> int:
        return int(self._p[self._p.degree()]) if not self.is_zero() else 0

    def __call__(self, x):
        if isinstance(x, int):
            return int(self._p(x))
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs()):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return IntPoly._wrap(self._p + other._p)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return IntPoly._wrap(self._p - other._p)

    def __rsub__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return IntPoly._wrap(other._p - self._p)

    def __mul__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return IntPoly._wrap(self._p * other._p)

    __rmul__ = __mul__

    def __neg__(self):
        return IntPoly._wrap(-self._p)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return IntPoly._wrap(self._p ** n)

    def shift(self, k: int) -> "IntPoly":
        """Multiply by q**k (k >= 0)."""
        if k == 0 or self.is_zero():
            return self
        return IntPoly._wrap(self._p * fmpz_poly([0] * k + [1]))

    def compose_power(self, k: int) -> "IntPoly":
        """The polynomial with q replaced by q**k."""
        if k < 1:
            raise ValueError("k must be positive")
        if k == 1 or self.degree <= 0:
            return self
        cs = self.coeffs()
        out = [0] * ((len(cs) - 1) * k + 1)
        for i, c in enumerate(cs):
            out[i * k] = c
        return IntPoly(out)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self._p == other._p
        if isinstance(other, int):
            return self._p == fmpz_poly([other])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPoly", tuple(self.coeffs())))
        return self._hash

    def __reduce__(self):
        return (IntPoly, (self.coeffs(),))

    def __repr__(self):
        return f"IntPoly({self.coeffs()})"

    def __str__(self):
        return _format_poly(self.coeffs())


def _as_intpoly(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly._wrap(fmpz_poly([x]))
    return NotImplemented


_FONE = fmpz_poly([1])


class RationalFunction:
    """A quotient ``num/den`` of integer polynomials in q, kept reduced.

    Normal form: ``gcd(num, den) = 1`` in Z[q] (so no common content either)
    and ``den`` has a positive leading coefficient.  Z[q] is a UFD with units
    +-1, so this form is unique and equality is structural.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        n = _as_intpoly(num)
        d = _as_intpoly(den)
        if n is NotImplemented or d is NotImplemented:
            raise TypeError("numerator and denominator must be IntPoly or int")
        self._set(n._p, d._p)

    def _set(self, n: fmpz_poly, d: fmpz_poly):
        if d.degree() < 0:
            raise ZeroDivisionError("zero denominator")
        if n.degree() < 0:
            n, d = n, _FONE
        elif d != _FONE:
            g = n.gcd(d)
            if g != _FONE:
                n = n // g
                d = d // g
            if d[d.degree()] < 0:
                n, d = -n, -d
        self._n = n
        self._d = d
        self._hash = None

    @classmethod
    def _make(cls, n: fmpz_poly, d: fmpz_poly) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj._set(n, d)
        return obj

    @classmethod
    def _raw(cls, n: fmpz_poly, d: fmpz_poly) -> "RationalFunction":
        # caller guarantees normal form
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        obj._hash = None
        return obj

    @classmethod
    def q_power(cls, k: int) -> "RationalFunction":
        """q**k for any integer k."""
        if k >= 0:
            return cls._raw(fmpz_poly([0] * k + [1]), _FONE)
        return cls._raw(_FONE, fmpz_poly([0] * (-k) + [1]))

    @property
    def numerator(self) -> IntPoly:
        return IntPoly._wrap(self._n)

    @property
    def denominator(self) -> IntPoly:
        return IntPoly._wrap(self._d)

    def is_zero(self) -> bool:
        return self._n.degree() < 0

    def is_polynomial(self) -> bool:
        return self._d == _FONE

    def __add__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if other._n.degree() < 0:
            return self
        if self._n.degree() < 0:
            return other
        if self._d == other._d:
            if self._d == _FONE:
                return RationalFunction._raw(self._n + other._n, _FONE)
            return RationalFunction._make(self._n + other._n, self._d)
        return RationalFunction._make(self._n * other._d + other._n * self._d, self._d * other._d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self._n, self._d)

    def __sub__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self._n.degree() < 0 or other._n.degree() < 0:
            return ZERO
        if self._d == _FONE and other._d == _FONE:
            return RationalFunction._raw(self._n * other._n, _FONE)
        # cross-cancel before multiplying to keep sizes down
        g1 = self._n.gcd(other._d)
        g2 = other._n.gcd(self._d)
        n = (self._n // g1) * (other._n // g2)
        d = (self._d // g2) * (other._d // g1)
        if d[d.degree()] < 0:
            n, d = -n, -d
        return RationalFunction._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        n, d = self._d, self._n
        if d[d.degree()] < 0:
            n, d = -n, -d
        return RationalFunction._raw(n, d)

    def __truediv__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self._n ** k, self._d ** k)

    def __eq__(self, other):
        other = as_rf(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.numerator.coeffs()), tuple(self.denominator.coeffs())))
        return self._hash

    def __reduce__(self):
        return (RationalFunction, (self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self.numerator.coeffs()}, {self.denominator.coeffs()})"

    def __str__(self):
        n = str(self.numerator)
        if self.is_polynomial():
            return n
        return f"({n})/({self.denominator})"


Scalar = Union[int, Fraction, IntPoly, RationalFunction]


def as_rf(x, strict: bool = True):
    """Coerce an int, Fraction or IntPoly to a RationalFunction."""
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return RationalFunction._raw(fmpz_poly([x]), _FONE)
    if isinstance(x, IntPoly):
        return RationalFunction._raw(x._p, _FONE)
    if isinstance(x, Fraction):
        return RationalFunction._make(fmpz_poly([x.numerator]), fmpz_poly([x.denominator]))
    if strict:
        raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")
    return NotImplemented


ZERO = RationalFunction._raw(fmpz_poly([]), _FONE)
ONE = RationalFunction._raw(_FONE, _FONE)
Q = RationalFunction._raw(fmpz_poly([0, 1]), _FONE)


def substitute_power(f: RationalFunction, k: int) -> RationalFunction:
    """Replace q by q**k in numerator and denominator."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    f = as_rf(f)
    if k == 1:
        return f
    return RationalFunction(f.numerator.compose_power(k), f.denominator.compose_power(k))


def to_polynomial(f: RationalFunction) -> IntPoly:
    """Return ``f`` as an ``IntPoly``; raise if it is not one.

    ``f`` is reduced, so it is a polynomial over Q exactly when the
    denominator is a constant; it is a polynomial over Z when that constant
    is 1.
    """
    f = as_rf(f)
    d = f.denominator
    if d.degree > 0:
        raise NonPolynomial(f"{f} is not a polynomial in q")
    if d.leading() != 1:
        raise NonIntegral(f"{f} has non-integer coefficients")
    return f.numerator


def eval_at(f: RationalFunction, x) -> Fraction:
    """Exact value of ``f`` at the rational number ``x``."""
    f = as_rf(f)
    x = Fraction(x)
    den = f.denominator(x)
    if den == 0:
        raise PoleAtPoint(f"{f} has a pole at q={x}")
    return Fraction(f.numerator(x)) / den


# ---------------------------------------------------------------------------
# Box-truncated multivariate series


def box(bound: Sequence[int]) -> Iterator[Exponent]:
    """All exponents 0 <= v <= bound, ordered by total degree then lexicographically."""
    pts = list(itertools.product(*(range(b + 1) for b in bound)))
    pts.sort(key=lambda v: (sum(v), v))
    return iter(pts)


def _leq(u: Exponent, v: Exponent) -> bool:
    return all(a <= b for a, b in zip(u, v))


class MSeries:
    """Power series in X_1..X_n truncated to the box ``[0, bound]``.

    Coefficients are ``RationalFunction``; absent exponents are zero.
    Exponents outside the box are silently dropped on construction.
    """

    __slots__ = ("bound", "_c")

    def __init__(self, bound: Sequence[int], coeffs: Mapping[Exponent, Scalar] = None):
        self.bound = tuple(int(b) for b in bound)
        if any(b < 0 for b in self.bound):
            raise ValueError("bound must be nonnegative")
        c: Dict[Exponent, RationalFunction] = {}
        if coeffs:
            n = len(self.bound)
            for v, a in coeffs.items():
                v = tuple(v)
                if len(v) != n:
                    raise BoundMismatch(f"exponent {v} has wrong length for bound {self.bound}")
                if not _leq(v, self.bound):
                    continue
                a = as_rf(a)
                if not a.is_zero():
                    c[v] = a
        self._c = c

    @classmethod
    def _from_dict(cls, bound: Exponent, c: Dict[Exponent, RationalFunction]) -> "MSeries":
        obj = cls.__new__(cls)
        obj.bound = bound
        obj._c = c
        return obj

    @classmethod
    def one(cls, bound: Sequence[int]) -> "MSeries":
        return cls(bound, {(0,) * len(bound): ONE})

    @classmethod
    def zero(cls, bound: Sequence[int]) -> "MSeries":
        return cls(bound)

    @classmethod
    def monomial(cls, bound: Sequence[int], v: Sequence[int], c: Scalar = 1) -> "MSeries":
        return cls(bound, {tuple(v): c})

    @property
    def nvars(self) -> int:
        return len(self.bound)

    def __getitem__(self, v) -> RationalFunction:
        return self._c.get(tuple(v), ZERO)

    def coefficient(self, v) -> RationalFunction:
        return self[v]

    def items(self):
        """Nonzero (exponent, coefficient) pairs in graded order."""
        return sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def support(self):
        return [v for v, _ in self.items()]

    def exponents(self):
        return box(self.bound)

    def constant(self) -> RationalFunction:
        return self[(0,) * self.nvars]

    def _check(self, other: "MSeries"):
        if not isinstance(other, MSeries):
            raise TypeError("expected MSeries")
        if other.bound != self.bound:
            raise BoundMismatch(f"bounds differ: {self.bound} vs {other.bound}")

    def __add__(self, other):
        self._check(other)
        c = dict(self._c)
        for v, a in other._c.items():
            s = c[v] + a if v in c else a
            if s.is_zero():
                c.pop(v, None)
            else:
                c[v] = s
        return MSeries._from_dict(self.bound, c)

    def __neg__(self):
        return MSeries._from_dict(self.bound, {v: -a for v, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "MSeries":
        s = as_rf(s)
        if s.is_zero():
            return MSeries.zero(self.bound)
        return MSeries._from_dict(self.bound, {v: a * s for v, a in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, MSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_coefficients(self, fn) -> "MSeries":
        return MSeries(self.bound, {v: fn(a) for v, a in self._c.items()})

    def __eq__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        return self.bound == other.bound and self._c == other._c

    def __repr__(self):
        return f"MSeries(bound={self.bound}, {len(self._c)} terms)"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for v, a in self.items():
            mono = "*".join(
                f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}" for i, e in enumerate(v) if e
            )
            if not mono:
                parts.append(f"({a})")
            else:
                parts.append(f"({a})*{mono}")
        return " + ".join(parts)


def _sub(v: Exponent, u: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(v, u))


def series_mul(a: MSeries, b: MSeries) -> MSeries:
    """Cauchy product of two series with the same bound, truncated to the box."""
    a._check(b)
    bound = a.bound
    out: Dict[Exponent, RationalFunction] = {}
    bitems = list(b._c.items())
    for u, cu in a._c.items():
        room = _sub(bound, u)
        for v, cv in bitems:
            if not _leq(v, room):
                continue
            w = tuple(x + y for x, y in zip(u, v))
            t = cu * cv
            if w in out:
                out[w] = out[w] + t
            else:
                out[w] = t
    return MSeries._from_dict(bound, {v: c for v, c in out.items() if not c.is_zero()})


def _graded_lower(c: Dict[Exponent, RationalFunction], v: Exponent):
    # nonzero entries at exponents u with 0 < u <= v
    for u, cu in c.items():
        if any(u) and _leq(u, v):
            yield u, cu


def series_inverse(a: MSeries) -> MSeries:
    """Multiplicative inverse, by recursion on total degree.

    With ``b = 1/a``: ``b_0 = 1/a_0`` and ``b_v = -(1/a_0) * sum_{0<u<=v} a_u b_{v-u}``.
    """
    a0 = a.constant()
    if a0.is_zero():
        raise ZeroDivisionError("series has zero constant term")
    inv0 = a0.inverse()
    lower = [(u, cu) for u, cu in a._c.items() if any(u)]
    out: Dict[Exponent, RationalFunction] = {}
    for v in box(a.bound):
        if not any(v):
            out[v] = inv0
            continue
        acc = ZERO
        for u, cu in lower:
            if _leq(u, v):
                bv = out.get(_sub(v, u))
                if bv is not None:
                    acc = acc + cu * bv
        if not acc.is_zero():
            out[v] = -(acc * inv0)
    return MSeries._from_dict(a.bound, out)


def series_log(a: MSeries) -> MSeries:
    """Formal logarithm of a series with constant term 1.

    Uses the Euler operator D = sum_i X_i d/dX_i, which multiplies the
    coefficient at v by |v|.  From D(a) = a * D(log a):

        |v| L_v = |v| a_v - sum_{0<u<v} |u| L_u a_{v-u}.
    """
    if a.constant() != ONE:
        raise ValueError("series_log needs constant term 1")
    out: Dict[Exponent, RationalFunction] = {}
    ac = a._c
    for v in box(a.bound):
        n = sum(v)
        if n == 0:
            continue
        acc = ac.get(v, ZERO) * n
        for u, lu in list(out.items()):
            if _leq(u, v) and u != v:
                av = ac.get(_sub(v, u))
                if av is not None:
                    acc = acc - lu * av * sum(u)
        if not acc.is_zero():
            out[v] = acc * RationalFunction._raw(_FONE, fmpz_poly([n]))
    return MSeries._from_dict(a.bound, out)


def series_exp(a: MSeries) -> MSeries:
    """Formal exponential of a series with constant term 0.

    Inverse of ``series_log``: |v| E_v = sum_{0<u<=v} |u| a_u E_{v-u}.
    """
    if not a.constant().is_zero():
        raise ValueError("series_exp needs constant term 0")
    lower = list(a._c.items())
    out: Dict[Exponent, RationalFunction] = {}
    for v in box(a.bound):
        n = sum(v)
        if n == 0:
            out[v] = ONE
            continue
        acc = ZERO
        for u, au in lower:
            if _leq(u, v):
                ev = out.get(_sub(v, u))
                if ev is not None:
                    acc = acc + au * ev * sum(u)
        if not acc.is_zero():
            out[v] = acc * RationalFunction._raw(_FONE, fmpz_poly([n]))
    return MSeries._from_dict(a.bound, out)
