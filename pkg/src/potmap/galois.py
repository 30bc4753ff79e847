"""Unramified Frobenius modules over Z/p^nu and their local cohomology.

Frobenius means geometric Frobenius throughout; the twist convention is that
it acts on the rank-1 twist module Lambda(1) by q^{-1}, where q is the
residue cardinality attached to the module.  With that convention, for an
unramified module N the unramified H^1 is the Frobenius coinvariants and the
singular quotient is computed from N(-1), i.e. as ker(q F - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact.matrix import Matrix
from .exact.poly import UniPoly
from .exact.smith import invariant_valuations, kernel_length


@dataclass(frozen=True)
class FrobModule:
    """Finite free Z/p^nu-module with an invertible Frobenius matrix."""

    p: int
    nu: int
    q: int                  # residue cardinality of the local field
    matrix: tuple           # rank x rank, entries reduced mod p^nu

    def __post_init__(self):
        mod = self.modulus
        if self.q % self.p == 0:
            raise ValueError("residue cardinality must be invertible mod p")
        det = _int_det([list(r) for r in self.matrix])
        if det % self.p == 0:
            raise ValueError("Frobenius matrix must be invertible mod p")
        for row in self.matrix:
            for x in row:
                if not (0 <= x < mod):
                    raise ValueError("matrix entries must be reduced mod p^nu")

    @classmethod
    def make(cls, p, nu, q, matrix):
        mod = p ** nu
        return cls(p, nu, q, tuple(tuple(int(x) % mod for x in row) for row in matrix))

    @property
    def modulus(self):
        return self.p ** self.nu

    @property
    def rank(self):
        return len(self.matrix)

    def direct_sum(self, other: "FrobModule") -> "FrobModule":
        if (self.p, self.nu, self.q) != (other.p, other.nu, other.q):
            raise ValueError("direct sum needs matching base data")
        n, m = self.rank, other.rank
        rows = []
        for i in range(n):
            rows.append(tuple(self.matrix[i]) + (0,) * m)
        for i in range(m):
            rows.append((0,) * n + tuple(other.matrix[i]))
        return FrobModule(self.p, self.nu, self.q, tuple(rows))


def trivial_module(p, nu, q, rank=1):
    return FrobModule.make(p, nu, q, [[1 if i == j else 0 for j in range(rank)]
                                      for i in range(rank)])


def order3_module(p, nu, q):
    """Rank-2 module whose Frobenius has order 3 (char poly x^2 + x + 1)."""
    return FrobModule.make(p, nu, q, [[0, 1], [-1, -1]])


def tate_twist(m: FrobModule, n: int) -> FrobModule:
    """Twist: Frobenius scales by q^{-n}."""
    mod = m.modulus
    s = pow(m.q % mod, -n, mod) if n else 1
    return FrobModule.make(m.p, m.nu, m.q,
                           [[x * s % mod for x in row] for row in m.matrix])


def with_residue_cardinality(m: FrobModule, q: int) -> FrobModule:
    return FrobModule.make(m.p, m.nu, q, m.matrix)


def tensor_induce(m: FrobModule, d: int = 3) -> FrobModule:
    """Multiplicative induction to the d-fold tensor power.

    The induced Frobenius sends v1 (x) v2 (x) v3 to (F v3) (x) v1 (x) v2, so
    its d-th power is conjugate to F tensored with itself d times.  Only
    d = 3 is supported.
    """
    if d != 3:
        raise ValueError("tensor induction implemented for degree 3 only")
    k = m.rank
    mod = m.modulus
    n = k ** 3
    G = [[0] * n for _ in range(n)]

    def idx(a, b, c):
        return (a * k + b) * k + c

    for i1 in range(k):
        for i2 in range(k):
            for i3 in range(k):
                col = idx(i1, i2, i3)
                for j1 in range(k):
                    G[idx(j1, i1, i2)][col] = m.matrix[j1][i3] % mod
    return FrobModule.make(m.p, m.nu, m.q, G)


def frob_power(m: FrobModule, e: int):
    """Matrix of F^e mod p^nu."""
    mod = m.modulus
    n = m.rank
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(r) for r in m.matrix]
    while e:
        if e & 1:
            out = _matmul_mod(out, base, mod)
        base = _matmul_mod(base, base, mod)
        e >>= 1
    return out


def char_poly(m: FrobModule) -> UniPoly:
    """det(x I - F) with coefficients reduced to [0, p^nu)."""
    n = m.rank
    x = UniPoly.x()
    ent = [[(x if i == j else UniPoly.zero()) - UniPoly.const(m.matrix[i][j])
            for j in range(n)] for i in range(n)]
    from .exact.matrix import poly_det
    cp = poly_det(Matrix(ent))
    mod = m.modulus
    return UniPoly([c % mod for c in cp.coeffs])


def h1_ranks(m: FrobModule, e: int = 1):
    """Lengths of H^0, unramified H^1, and singular H^1 over the degree-e
    unramified extension, plus the invariant factors of the singular part.

    H^0 is ker(F^e - 1); the unramified H^1 is coker(F^e - 1) (same length,
    an Euler-characteristic identity for endomorphisms of finite modules);
    the singular quotient is ker(q^e F^e - 1).
    """
    mod = m.modulus
    n = m.rank
    Fe = frob_power(m, e)
    Fm1 = [[(Fe[i][j] - (1 if i == j else 0)) % mod for j in range(n)] for i in range(n)]
    qe = pow(m.q % mod, e, mod)
    qFm1 = [[(qe * Fe[i][j] - (1 if i == j else 0)) % mod for j in range(n)]
            for i in range(n)]
    len_h0 = kernel_length(Fm1, m.p, m.nu)
    len_unr = len_h0
    vals = invariant_valuations(qFm1, m.p, m.nu)
    len_sing = sum(vals)
    sing_factors = tuple(m.p ** v for v in sorted(vals) if v > 0)
    return {
        "h0": len_h0,
        "h1_unr": len_unr,
        "h1_sing": len_sing,
        "h1_sing_factors": sing_factors,
    }


def induced_twisted_module(ell, p, nu, trace=None, det=None) -> FrobModule:
    """Rank-8 module: induce a rank-2 module at the degree-3 place and twist
    by 2, over the base local field with residue cardinality ell.

    Defaults realize the level-raising congruence: trace = ell^3 + 1 and
    det = ell^3 for the degree-3 Frobenius.
    """
    mod = p ** nu
    if trace is None:
        trace = ell ** 3 + 1
    if det is None:
        det = ell ** 3
    base = FrobModule.make(p, nu, ell, [[0, -det], [1, trace]])
    ind = tensor_induce(base, 3)
    return tate_twist(ind, 2)


def decomposition_char_poly(ell, p, nu) -> UniPoly:
    """Product form (x-l)(x-1)(x-1/l)(x-1/l^2)(x^2+x+1)(x^2+x/l+1/l^2)."""
    mod = p ** nu
    li = pow(ell % mod, -1, mod)
    x = UniPoly.x()
    f = ((x - ell) * (x - 1) * (x - li) * (x - li * li % mod)
         * (x * x + x + 1) * (x * x + UniPoly.const(li) * x + li * li % mod))
    return UniPoly([c % mod for c in f.coeffs])


def _matmul_mod(a, b, mod):
    n = len(a)
    k = len(b)
    m = len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for r in range(k):
            x = a[i][r]
            if x:
                for j in range(m):
                    out[i][j] = (out[i][j] + x * b[r][j]) % mod
    return out


def _int_det(m):
    n = len(m)
    from fractions import Fraction
    M = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if M[r][k]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        inv = M[k][k]
        for r in range(k + 1, n):
            if M[r][k]:
                f = M[r][k] / inv
                for c in range(k, n):
                    M[r][c] -= f * M[k][c]
    return int(det) if det.denominator == 1 else det
