"""Exact univariate polynomials with rational coefficients.

A polynomial is a tuple of coefficients, index = degree; the zero
polynomial is the empty tuple and has degree -1 (sentinel).  Coefficients
are Python ints or Fractions; integer-valued Fractions are normalized back
to int so that all-integer computations stay in fast int arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class UniPoly:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
              for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.degree else 0

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UniPoly(())
            return UniPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divexact(self, other):
        """Exact division; raises ValueError if the division is not exact."""
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return UniPoly(())
        a = list(self.coeffs)
        b = other.coeffs
        if len(a) < len(b):
            raise ValueError("non-exact polynomial division")
        lead = b[-1]
        q = [0] * (len(a) - len(b) + 1)
        for k in range(len(a) - len(b), -1, -1):
            c = a[k + len(b) - 1]
            if c == 0:
                continue
            if isinstance(c, int) and isinstance(lead, int):
                qk, r = divmod(c, lead)
                if r:
                    raise ValueError("non-exact polynomial division")
            else:
                qk = _norm_coeff(Fraction(c) / Fraction(lead))
            q[k] = qk
            for j, y in enumerate(b):
                a[k + j] -= qk * y
        if any(a[: len(b) - 1]):
            raise ValueError("non-exact polynomial division")
        return UniPoly(q)

    def __call__(self, value):
        """Evaluate by Horner's rule; value may be int, Fraction, or UniPoly."""
        acc = UniPoly(()) if isinstance(value, UniPoly) else 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def evaluate_mod(self, value, mod):
        acc = 0
        for c in reversed(self.coeffs):
            if not isinstance(c, int):
                raise ValueError("modular evaluation needs integer coefficients")
            acc = (acc * value + c) % mod
        return acc

    def reduce_mod(self, mod):
        """Coefficientwise reduction; halves use the inverse of 2 when it exists."""
        out = []
        for c in self.coeffs:
            if isinstance(c, int):
                out.append(c % mod)
            else:
                inv = pow(c.denominator % mod, -1, mod)
                out.append(c.numerator * inv % mod)
        return out

    def scale(self, s):
        return self * s

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{k}" if k else f"{c}")
        return "UniPoly(" + " + ".join(terms) + ")"


def _coerce(v):
    if isinstance(v, UniPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return UniPoly((v,))
    return NotImplemented


def product(factors):
    """Product of an iterable of polynomials (or (poly, exponent) pairs)."""
    acc = UniPoly.one()
    for f in factors:
        if isinstance(f, tuple):
            base, k = f
            acc = acc * base ** k
        else:
            acc = acc * f
    return acc


def verify_factorization(p: UniPoly, factors, unit=1) -> bool:
    """True iff unit * prod(base^exp) equals p exactly."""
    return product(factors) * unit == p
