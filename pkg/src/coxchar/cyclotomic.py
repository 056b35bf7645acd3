"""Exact arithmetic in cyclotomic fields.

A :class:`Cyclotomic` is stored in ``Q(zeta_n)`` on the power basis
``1, zeta_n, ..., zeta_n^(phi(n)-1)`` (reduced modulo the n-th cyclotomic
polynomial), always at the smallest conductor that contains it, so equal
numbers have equal representations.

Literal syntax (shared with the table files)::

    3   -1/2   E(4)   -E(3)^2   1/2*E(5)^2   1+E(3)   2*E(8)-E(8)^3
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import cyclotomic_poly, divisors, totient
from sympy.abc import x as _x


@lru_cache(maxsize=None)
def _phi_poly(n):
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    return tuple(int(c) for c in reversed(cyclotomic_poly(n, _x, polys=True).all_coeffs()))


@lru_cache(maxsize=None)
def _phi(n):
    return int(totient(n))


@lru_cache(maxsize=None)
def _powers(n):
    """``_powers(n)[k]`` is zeta_n^k on the power basis, for ``0 <= k < n``."""
    d = _phi(n)
    poly = _phi_poly(n)
    out = []
    v = [0] * d
    v[0] = 1
    for _ in range(n):
        out.append(tuple(v))
        # multiply by zeta: shift, then reduce the overflow with the monic poly
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            for i in range(d):
                v[i] -= top * poly[i]
    return tuple(out)


def _reduce(n, coeffs):
    """Reduce a polynomial in zeta_n (any length) onto the power basis."""
    d = _phi(n)
    pw = _powers(n)
    out = [Fraction(0)] * d
    for k, c in enumerate(coeffs):
        if c:
            row = pw[k % n]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _lift(m, coeffs, n):
    """Embed an element of ``Q(zeta_m)`` into ``Q(zeta_n)`` (``m`` divides ``n``)."""
    if m == n:
        return list(coeffs)
    step = n // m
    spread = [Fraction(0)] * n
    for k, c in enumerate(coeffs):
        spread[k * step] = c
    return _reduce(n, spread)


def _solve_exact(cols, target):
    """Solve ``sum_j y_j cols[j] = target`` over Q; ``None`` if inconsistent."""
    rows = len(target)
    k = len(cols)
    A = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][k] for i in range(r, rows)):
        return None
    y = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        y[c] = A[i][k]
    return y


class Cyclotomic:
    """An element of a cyclotomic field, normalised to its minimal conductor."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n, coeffs, _normalised=False):
        n = int(n)
        coeffs = [Fraction(c) for c in coeffs]
        if not _normalised:
            coeffs = _reduce(n, coeffs) if len(coeffs) != _phi(n) else coeffs
            n, coeffs = _shrink(n, coeffs)
        self.n = n
        self.coeffs = tuple(coeffs)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, q):
        return cls(1, [Fraction(q)], _normalised=True)

    @classmethod
    def root_of_unity(cls, n, k=1):
        """``zeta_n^k`` with ``zeta_n = exp(2 pi i / n)``."""
        return cls(n, _powers(n)[k % n])

    @classmethod
    def from_exponent_counts(cls, n, counts, scale=1):
        """``scale * sum_k counts[k] zeta_n^k``."""
        d = _phi(n)
        pw = _powers(n)
        acc = [0] * d
        for k, c in enumerate(counts):
            if c:
                row = pw[k % n]
                for i in range(d):
                    acc[i] += c * row[i]
        scale = Fraction(scale)
        return cls(n, [a * scale for a in acc])

    @classmethod
    def parse(cls, text):
        return parse_cyclotomic(text)

    # -- arithmetic --------------------------------------------------------------
    def _common(self, other):
        other = _coerce(other)
        n = lcm(self.n, other.n)
        return n, _lift(self.n, self.coeffs, n), _lift(other.n, other.coeffs, n)

    def __add__(self, other):
        n, a, b = self._common(other)
        return Cyclotomic(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs], _normalised=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        n, a, b = self._common(other)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(n, _reduce(n, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_rational():
            q = other.coeffs[0]
            return Cyclotomic(self.n, [c / q for c in self.coeffs], _normalised=True)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, j):
        """Image under ``zeta_n -> zeta_n^j`` (``j`` coprime to the conductor)."""
        n = self.n
        if gcd(j, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        spread = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            spread[(k * j) % n] += c
        return Cyclotomic(n, _reduce(n, spread))

    def conjugate(self):
        return self.galois(-1 % self.n if self.n > 1 else 1)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        n = self.n
        # product of the other Galois conjugates, divided by the norm
        others = Cyclotomic.rational(1)
        for j in range(2, n):
            if gcd(j, n) == 1:
                others = others * self.galois(j)
        norm = self * others
        if not norm.is_rational():
            raise ArithmeticError("norm is not rational")
        return others / norm

    # -- predicates ---------------------------------------------------------------
    def is_rational(self):
        return self.n == 1

    def is_zero(self):
        return self.n == 1 and self.coeffs[0] == 0

    def is_integral_rational(self):
        return self.n == 1 and self.coeffs[0].denominator == 1

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __int__(self):
        if not self.is_integral_rational():
            raise ValueError(f"{self} is not a rational integer")
        return int(self.coeffs[0])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def root_of_unity_angle(self):
        """``k/n`` (a fraction in ``[0, 1)``) if this is ``zeta_n^k``, else ``None``."""
        for m in _candidate_orders(self.n):
            for k, row in enumerate(_powers(m)):
                if gcd(k, m) != 1 and m > 1:
                    continue
                if Cyclotomic(m, row) == self:
                    return Fraction(k, m)
        return None

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(c) * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        return format_cyclotomic(self)


def _candidate_orders(n):
    # a root of unity in Q(zeta_n) has order dividing 2n (n odd) or n (n even)
    top = 2 * n if n % 2 else n
    return [int(d) for d in divisors(top)]


@lru_cache(maxsize=None)
def _embedding(m, n):
    """Columns: images of the power basis of Q(zeta_m) inside Q(zeta_n)."""
    out = []
    for k in range(_phi(m)):
        e = [Fraction(0)] * _phi(m)
        e[k] = Fraction(1)
        out.append(tuple(_lift(m, e, n)))
    return tuple(out)


def _shrink(n, coeffs):
    """Move to the smallest conductor whose field contains the element."""
    if all(c == 0 for c in coeffs[1:]):
        return 1, [coeffs[0] if coeffs else Fraction(0)]
    for m in divisors(n):
        m = int(m)
        if m == n:
            break
        if m % 4 == 2 or m == 1:
            continue
        y = _solve_exact(_embedding(m, n), coeffs)
        if y is not None:
            return m, y
    # n = 2 mod 4 never gets here: Q(zeta_n) = Q(zeta_{n/2}) was found above
    return n, list(coeffs)


def _coerce(v):
    if isinstance(v, Cyclotomic):
        return v
    if isinstance(v, (int, Fraction)):
        return Cyclotomic.rational(v)
    if hasattr(v, "__index__"):
        return Cyclotomic.rational(int(v))
    raise TypeError(f"cannot convert {v!r} to Cyclotomic")


def cyc(v):
    """Coerce an int, Fraction, literal string or Cyclotomic."""
    if isinstance(v, str):
        return parse_cyclotomic(v)
    return _coerce(v)


# -- literals --------------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<q>\d+(?:/\d+)?)(?:\s*\*\s*(?P<e1>E\(\s*\d+\s*\)(?:\s*\^\s*-?\d+)?))?
          |
          (?P<e2>E\(\s*\d+\s*\)(?:\s*\^\s*-?\d+)?)
        )\s*""",
    re.VERBOSE,
)
_ATOM = re.compile(r"E\(\s*(\d+)\s*\)(?:\s*\^\s*(-?\d+))?")


class CyclotomicSyntaxError(ValueError):
    def __init__(self, text, column):
        super().__init__(f"malformed cyclotomic literal {text!r} at column {column + 1}")
        self.column = column


def parse_cyclotomic(text):
    """Parse a literal such as ``-1/2*E(5)^2+E(5)``."""
    s = text.strip()
    if not s:
        raise CyclotomicSyntaxError(text, 0)
    pos = 0
    total = Cyclotomic.rational(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise CyclotomicSyntaxError(text, pos)
        q = Fraction(m.group("q")) if m.group("q") else Fraction(1)
        atom = m.group("e1") or m.group("e2")
        if atom:
            a = _ATOM.fullmatch(atom.replace(" ", ""))
            n = int(a.group(1))
            if n < 1:
                raise CyclotomicSyntaxError(text, pos)
            k = int(a.group(2)) if a.group(2) else 1
            term = Cyclotomic.root_of_unity(n, k) * q
        else:
            term = Cyclotomic.rational(q)
        total = total - term if m.group("sign") == "-" else total + term
        pos = m.end()
        first = False
    return total


def format_cyclotomic(z):
    """Render in the literal syntax; roots of unity print as ``E(n)^k``."""
    if z.is_rational():
        return str(z.coeffs[0])
    units = []
    for sign, w in (("", z), ("-", -z)):
        ang = w.root_of_unity_angle()
        if ang is not None:
            units.append((ang.denominator, sign != "", sign, ang.numerator))
    if units:
        # prefer the smaller conductor: -E(3)^2 rather than E(6)
        n, _, sign, k = min(units)
        return f"{sign}E({n})" + (f"^{k}" if k != 1 else "")
    parts = []
    for k, c in enumerate(z.coeffs):
        if not c:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            atom = f"E({z.n})" + (f"^{k}" if k != 1 else "")
            body = atom if abs(c) == 1 else f"{abs(c)}*{atom}"
        parts.append(("-" if c < 0 else "+") + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)
