"""Exact coefficients: polynomials in the level ``k`` over the rationals."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .pyramid import GenIndex, Kind, Pyramid

_ZERO = mpq(0)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _trim(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class Scalar:
    """An element of Q[k].

    Stored as a dense tuple of rationals, lowest degree first, with no
    trailing zeros, so the representation is canonical and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, dict):
            if not coeffs:
                self._c = ()
                return
            top = max(coeffs)
            dense = [_ZERO] * (top + 1)
            for e, c in coeffs.items():
                if e < 0:
                    raise ValueError("negative exponent")
                dense[e] += _q(c)
            self._c = _trim(dense)
        else:
            self._c = _trim([_q(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Scalar":
        s = object.__new__(cls)
        s._c = coeffs
        return s

    @classmethod
    def const(cls, value) -> "Scalar":
        value = _q(value)
        return cls._raw((value,) if value else ())

    @classmethod
    def k(cls) -> "Scalar":
        return cls._raw((_ZERO, mpq(1)))

    # ring structure ----------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return Scalar.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return Scalar._raw(a)
        out = list(a)
        for idx, c in enumerate(b):
            out[idx] += c
        return Scalar._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b = self._c, other._c
            if not a or not b:
                return ZERO
            if len(b) == 1:
                c = b[0]
                return Scalar._raw(tuple(x * c for x in a))
            if len(a) == 1:
                c = a[0]
                return Scalar._raw(tuple(x * c for x in b))
            out = [_ZERO] * (len(a) + len(b) - 1)
            for ia, x in enumerate(a):
                if x:
                    for ib, y in enumerate(b):
                        out[ia + ib] += x * y
            return Scalar._raw(_trim(out))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _q(other)
        if not other:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar._raw(tuple(c / other for c in self._c))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    # inspection --------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def coefficients(self) -> dict[int, Fraction]:
        """Sparse view ``{exponent: coefficient}``; zeros are omitted."""
        return {e: Fraction(int(c.numerator), int(c.denominator))
                for e, c in enumerate(self._c) if c}

    def coeff(self, e: int) -> Fraction:
        if 0 <= e < len(self._c):
            c = self._c[e]
            return Fraction(int(c.numerator), int(c.denominator))
        return Fraction(0)

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def evaluate(self, k) -> Fraction:
        """Substitute a rational value for the level."""
        k = _q(k)
        acc = _ZERO
        for c in reversed(self._c):
            acc = acc * k + c
        return Fraction(int(acc.numerator), int(acc.denominator))

    def substitute(self, k) -> "Scalar":
        return Scalar.const(self.evaluate(k))

    def divisible_by_linear(self, root) -> bool:
        """True if ``(k - root)`` divides this polynomial."""
        return self.evaluate(root) == 0

    # serialization -----------------------------------------------------------

    def to_json(self) -> list:
        return [[e, c.numerator, c.denominator] for e, c in self.coefficients().items()]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls({int(e): Fraction(int(num), int(den)) for e, num, den in data})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in range(len(self._c) - 1, -1, -1):
            c = self._c[e]
            if not c:
                continue
            neg = c < 0
            a = -c if neg else c
            if a.denominator == 1:
                cs = str(a.numerator)
            else:
                cs = f"({a.numerator}/{a.denominator})"
            if e == 0:
                body = cs.strip("()")
            else:
                var = "k" if e == 1 else f"k^{e}"
                body = var if a == 1 else cs + var
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar._raw(())
ONE = Scalar.const(1)
K = Scalar.k()


def form(p: Pyramid, g1: GenIndex, g2: GenIndex) -> Fraction:
    """Invariant symmetric form on the centralizer, on basis vectors.

    Non-zero only on degree-zero pairs: diagonal-diagonal, and
    ``(E_ij^(0), E_ji^(0))`` with ``l_i = l_j``. ``ELOW`` indices are read as
    the corresponding ``E`` basis elements.
    """
    for g in (g1, g2):
        if g.kind not in (Kind.E, Kind.ELOW):
            raise ValueError(f"form is defined on even generators only, got {g}")
    (_, i, j, r), (_, h, l, s) = g1, g2
    if r or s:
        return Fraction(0)
    n, N = p.n, p.N
    if i == j and h == l:
        li, lh = p.lam(i), p.lam(h)
        head = sum(p.lambdas[: i - 1]) + (n - i + 1) * li if i == h else 0
        return Fraction(head - min(li, lh), N)
    if i != j and h == j and l == i and p.lam(i) == p.lam(j):
        return Fraction(sum(p.lambdas[: i - 1]) + (n - i + 1) * p.lam(i), N)
    return Fraction(0)


def alpha(p: Pyramid, i: int) -> Scalar:
    """``a_i = -l_i + ((k+N)/N) (l_1 + ... + l_{i-1} + (n-i+1) l_i)``."""
    n, N = p.n, p.N
    li = p.lam(i)
    bracket = Fraction(sum(p.lambdas[: i - 1]) + (n - i + 1) * li, N)
    # (k + N) * bracket - l_i
    return Scalar([bracket * N - li, bracket])
