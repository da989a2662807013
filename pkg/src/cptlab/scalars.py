"""Exact Gaussian-rational scalars.

The exact coefficient backend for the whole package: complex numbers with
rational real and imaginary parts.  Arithmetic is closed, associative and
exact.  The float backend is plain ``complex``; mixing an exact scalar with a
float promotes to ``complex``.
"""

from __future__ import annotations

from fractions import Fraction


def _frac_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class QI:
    """A Gaussian rational a + b*i with a, b exact fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        if other is NotImplemented:
            return NotImplemented
        return self.to_complex() + other

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            return QI(self.re - other.re, self.im - other.im)
        if other is NotImplemented:
            return NotImplemented
        return self.to_complex() - other

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            return QI(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if other is NotImplemented:
            return NotImplemented
        return self.to_complex() * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            n = other.re * other.re + other.im * other.im
            if n == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return QI((self.re * other.re + self.im * other.im) / n,
                      (self.im * other.re - self.re * other.im) / n)
        if other is NotImplemented:
            return NotImplemented
        return self.to_complex() / other

    def __rtruediv__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            return other / self
        if other is NotImplemented:
            return NotImplemented
        return other / self.to_complex()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = QI(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if other is NotImplemented:
            return NotImplemented
        return self.to_complex() == other

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * float(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return "QI(%r, %r)" % (str(self.re), str(self.im))

    def __str__(self):
        return scalar_str(self)


def _coerce(x):
    """Promote ints and fractions to QI; leave float/complex/QI alone."""
    if isinstance(x, QI):
        return x
    if isinstance(x, (int, Fraction)):
        return QI(x)
    if isinstance(x, (float, complex)):
        return x
    return NotImplemented


ZERO = QI(0)
ONE = QI(1)
IMAG = QI(0, 1)
HALF = QI(Fraction(1, 2))


def qi(re=0, im=0) -> QI:
    return QI(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (QI, int, Fraction))


def as_scalar(x):
    """Normalise a coefficient: exact inputs become QI, floats stay complex."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError("not a scalar: %r" % (x,))
    if isinstance(c, float):
        return complex(c)
    return c


def conj(x):
    if isinstance(x, QI):
        return x.conjugate()
    return as_scalar(x).conjugate()


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, QI):
        return not x
    return abs(x) <= tol


def scalar_str(x) -> str:
    """Deterministic text form; exact values print as "a/b+c/d*i"."""
    if isinstance(x, QI):
        if x.im == 0:
            return _frac_str(x.re)
        if x.re == 0:
            if x.im == 1:
                return "i"
            if x.im == -1:
                return "-i"
            return _frac_str(x.im) + "*i"
        sign = "+" if x.im > 0 else "-"
        mag = abs(x.im)
        tail = "i" if mag == 1 else _frac_str(mag) + "*i"
        return "%s%s%s" % (_frac_str(x.re), sign, tail)
    return repr(x)
