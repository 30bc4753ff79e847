"""Dense matrices over exact scalars (int, Fraction, UniPoly).

Determinants come in two independent flavours: fraction-free Bareiss
elimination (the workhorse) and cofactor expansion (oracle for small
sizes).  Adjugates use the Faddeev-LeVerrier recursion, whose only
divisions are by the integers 1..n and therefore stay exact over any
ring of characteristic zero.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly


class DimensionError(ValueError):
    pass


def _zero_like(x):
    return UniPoly(()) if isinstance(x, UniPoly) else 0


def _divexact(a, b):
    """Exact division of scalars; b is int, Fraction, or UniPoly."""
    if isinstance(b, UniPoly):
        if isinstance(a, (int, Fraction)):
            a = UniPoly((a,))
        return a.divexact(b)
    if isinstance(a, UniPoly):
        if b == 1:
            return a
        return a.divexact(UniPoly((b,)))
    if b == 1:
        return a
    q = Fraction(a) / Fraction(b)
    if isinstance(a, int) and isinstance(b, int):
        if q.denominator != 1:
            raise ValueError("non-exact integer division in elimination")
        return int(q)
    return q if q.denominator != 1 else int(q)


class Matrix:
    """Dense row-major matrix; entries must share a common scalar ring."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged rows")

    @classmethod
    def identity(cls, n, one=1):
        zero = _zero_like(one)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols, zero=0):
        return cls([[zero for _ in range(cols)] for _ in range(rows)])

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.rows) for j in range(self.cols))

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def copy(self):
        return Matrix(self.entries)

    def transpose(self):
        return Matrix([[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.entries])

    def scale(self, s):
        return Matrix([[a * s for a in row] for row in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            arow = self.entries[i]
            orow = [None] * other.cols
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    x = arow[k]
                    if isinstance(x, UniPoly) and not x:
                        continue
                    if not isinstance(x, UniPoly) and x == 0:
                        continue
                    term = x * other.entries[k][j]
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = _zero_like(arow[0] if arow else 0)
                orow[j] = acc
            out.append(orow)
        return Matrix(out)

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def map(self, fn):
        return Matrix([[fn(a) for a in row] for row in self.entries])

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def poly_det(m: Matrix):
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    M = [row[:] for row in m.entries]
    zero = _zero_like(M[0][0])
    prev = 1
    sign = 1
    for k in range(n):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = _divexact(num, prev)
            M[i][k] = zero
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def cofactor_det(m: Matrix):
    """Determinant by cofactor expansion (independent oracle, small sizes)."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")

    def rec(rows, cols):
        if len(cols) == 1:
            return m.entries[rows[0]][cols[0]]
        acc = None
        r = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            a = m.entries[r][c]
            if (isinstance(a, UniPoly) and not a) or (not isinstance(a, UniPoly) and a == 0):
                continue
            sub = rec(rest, cols[:idx] + cols[idx + 1:])
            term = a * sub
            if idx % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = _zero_like(m.entries[0][0])
        return acc

    if m.rows == 0:
        return 1
    return rec(tuple(range(m.rows)), tuple(range(m.rows)))


def poly_charpoly_adjugate(m: Matrix):
    """Faddeev-LeVerrier: returns (char poly coefficients c_0..c_n, det, adjugate).

    The characteristic polynomial is det(x I - M) = sum c_k x^k with c_n = 1;
    det = (-1)^n c_0 and M adj(M) = det(M) I exactly.
    """
    if m.rows != m.cols:
        raise DimensionError("adjugate of a non-square matrix")
    n = m.rows
    if n == 0:
        return [1], 1, Matrix([])
    zero = _zero_like(m.entries[0][0])
    one = UniPoly.one() if isinstance(zero, UniPoly) else 1
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    Mk = Matrix.identity(n, one)
    prev_Mk = Mk
    for k in range(1, n + 1):
        N = m @ Mk
        tr = zero
        for i in range(n):
            tr = tr + N.entries[i][i]
        ck = -_divexact(tr, k)
        coeffs[n - k] = ck
        prev_Mk = Mk
        if k < n:
            Mk = Matrix([[N.entries[i][j] + (ck if i == j else zero)
                          for j in range(n)] for i in range(n)])
        else:
            # M_n = N + c_0 I must vanish; use it as an internal consistency check
            last = Matrix([[N.entries[i][j] + (ck if i == j else zero)
                            for j in range(n)] for i in range(n)])
            if any(x for row in last.entries for x in row):
                raise ArithmeticError("Faddeev-LeVerrier recursion failed to terminate")
    det = coeffs[0] if n % 2 == 0 else -coeffs[0]
    sign = 1 if (n - 1) % 2 == 0 else -1
    adj = prev_Mk.scale(sign) if sign == -1 else prev_Mk
    return coeffs, det, adj


def poly_adjugate(m: Matrix) -> Matrix:
    """Adjugate satisfying m @ adj(m) = det(m) * I exactly."""
    if m.rows != m.cols:
        raise DimensionError("adjugate of a non-square matrix")
    if m.rows == 1:
        one = UniPoly.one() if isinstance(m.entries[0][0], UniPoly) else 1
        return Matrix([[one]])
    _, _, adj = poly_charpoly_adjugate(m)
    return adj


def kron_scalar(block_scalars, n, zero=0):
    """Kronecker product of a scalar matrix with I_n (blockwise expansion)."""
    rows = len(block_scalars)
    cols = len(block_scalars[0]) if rows else 0
    out = [[zero] * (cols * n) for _ in range(rows * n)]
    for i in range(rows):
        for j in range(cols):
            s = block_scalars[i][j]
            for a in range(n):
                out[i * n + a][j * n + a] = s
    return out
