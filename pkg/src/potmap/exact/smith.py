"""Smith normal form over Z and Z/p^nu, plus finite-module helpers.

The integer form tracks unimodular transforms U, V with U*M*V = diag(d_i),
d_i >= 0 and d_i | d_{i+1}.  The mod-p^nu form lifts to Z, reduces, and
normalizes the invariant factors to powers of p (p^nu acting as 0), with the
prime-to-p unit parts absorbed into V.  Pivots are chosen by minimal
absolute value with ties broken by lowest (row, col), so outputs are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SmithForm:
    factors: tuple          # invariant factors d_1 | d_2 | ...
    U: tuple                # rows x rows, unimodular
    V: tuple                # cols x cols, unimodular
    rows: int
    cols: int

    def diagonal_ok(self, m, mod=None):
        """Check U m V = diag(factors) exactly (or mod `mod`)."""
        r, c = self.rows, self.cols
        prod = _mat_mul(_mat_mul([list(x) for x in self.U], m), [list(x) for x in self.V])
        for i in range(r):
            for j in range(c):
                want = self.factors[min(i, j)] if i == j and i < len(self.factors) else 0
                have = prod[i][j]
                if mod is not None:
                    if (have - want) % mod:
                        return False
                elif have != want:
                    return False
        return True


def _mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for r in range(k):
            x = ai[r]
            if x:
                br = b[r]
                for j in range(m):
                    if br[j]:
                        oi[j] += x * br[j]
    return out


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_form(m) -> SmithForm:
    """Smith normal form of an integer matrix, with transforms."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    M = [[int(x) for x in row] for row in m]
    U = _identity(rows)
    V = _identity(cols)
    t = 0
    factors = []
    while t < min(rows, cols):
        # pivot: minimal nonzero |entry|, ties by lowest (row, col)
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = M[i][j]
                if v and (piv is None or abs(v) < abs(M[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            M[t], M[pi] = M[pi], M[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in M:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        # reduce column and row; restart if a smaller remainder shows up
        while True:
            done = True
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    if q:
                        for j in range(cols):
                            M[i][j] -= q * M[t][j]
                        for j in range(rows):
                            U[i][j] -= q * U[t][j]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        U[t], U[i] = U[i], U[t]
                        done = False
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    if q:
                        for i in range(rows):
                            M[i][j] -= q * M[i][t]
                        for i in range(cols):
                            V[i][j] -= q * V[i][t]
                    if M[t][j]:
                        for i in range(rows):
                            M[i][t], M[i][j] = M[i][j], M[i][t]
                        for i in range(cols):
                            V[i][t], V[i][j] = V[i][j], V[i][t]
                        done = False
            if done:
                break
        # divisibility sweep: make pivot divide every remaining entry
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % M[t][t]:
                    for jj in range(cols):
                        M[t][jj] += M[i][jj]
                    for jj in range(rows):
                        U[t][jj] += U[i][jj]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if M[t][t] < 0:
            for j in range(cols):
                M[t][j] = -M[t][j]
            for j in range(rows):
                U[t][j] = -U[t][j]
        factors.append(M[t][t])
        t += 1
    while len(factors) < min(rows, cols):
        factors.append(0)
    return SmithForm(tuple(factors), tuple(tuple(r) for r in U),
                     tuple(tuple(r) for r in V), rows, cols)


def _vp(x, p, nu):
    """p-adic valuation capped at nu; 0 maps to nu."""
    x = abs(x)
    if x == 0:
        return nu
    v = 0
    while x % p == 0 and v < nu:
        x //= p
        v += 1
    return v


def smith_form_mod(m, p, nu) -> SmithForm:
    """Smith form over Z/p^nu: factors are powers of p (p^nu meaning 0)."""
    mod = p ** nu
    rows = len(m)
    cols = len(m[0]) if rows else 0
    lifted = [[int(x) % mod for x in row] for row in m]
    snf = smith_form(lifted)
    U = [list(r) for r in snf.U]
    V = [list(r) for r in snf.V]
    factors = []
    for i, d in enumerate(snf.factors):
        v = _vp(d, p, nu)
        factors.append(p ** v if v < nu else p ** nu)
        if d and v < nu:
            unit = d // p ** v
            inv = pow(unit % mod, -1, mod)
            for r in range(cols):
                V[r][i] = V[r][i] * inv % mod
    U = tuple(tuple(x % mod for x in row) for row in U)
    V = tuple(tuple(x % mod for x in row) for row in V)
    return SmithForm(tuple(factors), U, V, rows, cols)


# ---------------------------------------------------------------------------
# finite Z/p^nu module helpers


def invariant_valuations(m, p, nu):
    """Capped p-valuations of the invariant factors of m over Z/p^nu."""
    snf = smith_form_mod(m, p, nu)
    return tuple(_vp(d, p, nu) if d != p ** nu else nu for d in snf.factors)


def kernel_length(m, p, nu):
    """Length of ker(m) acting on (Z/p^nu)^cols (equals length of coker
    for square m)."""
    cols = len(m[0]) if m else 0
    vals = invariant_valuations(m, p, nu)
    return sum(vals) + nu * (cols - len(vals))


def cokernel_length(m, p, nu):
    rows = len(m)
    vals = invariant_valuations(m, p, nu)
    return sum(vals) + nu * (rows - len(vals))


def kernel_gens(m, p, nu):
    """Columns generating ker(m) over Z/p^nu, from the Smith transforms."""
    mod = p ** nu
    snf = smith_form_mod(m, p, nu)
    cols = snf.cols
    gens = []
    for i in range(cols):
        v = _vp(snf.factors[i], p, nu) if i < len(snf.factors) else nu
        if v == 0:
            continue
        scale = p ** (nu - v)
        gens.append(tuple(snf.V[r][i] * scale % mod for r in range(cols)))
    return gens


def solve_mod(m, rhs, p, nu):
    """One solution x of m x = rhs over Z/p^nu, or None."""
    mod = p ** nu
    snf = smith_form_mod(m, p, nu)
    r, c = snf.rows, snf.cols
    y = [sum(snf.U[i][k] * rhs[k] for k in range(r)) % mod for i in range(r)]
    z = [0] * c
    for i in range(min(r, c)):
        d = snf.factors[i] % mod
        if d == 0:
            if y[i] % mod:
                return None
            continue
        if y[i] % d:
            return None
        z[i] = y[i] // d % mod
    for i in range(c, r):
        pass
    for i in range(min(r, c), r):
        if y[i] % mod:
            return None
    x = [sum(snf.V[i][k] * z[k] for k in range(c)) % mod for i in range(c)]
    return x


def matrix_inverse_mod(m, mod):
    """Inverse of a square matrix over Z/mod (entries must make it a unit)."""
    n = len(m)
    aug = [[m[i][j] % mod for j in range(n)] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            try:
                pow(aug[r][col], -1, mod)
                piv = r
                break
            except ValueError:
                continue
        if piv is None:
            raise ValueError("matrix not invertible modulo %d" % mod)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, mod)
        aug[col] = [x * inv % mod for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % mod for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def is_unimodular_mod(m, p, mod):
    """True iff the square matrix is invertible over Z/mod (p the prime)."""
    n = len(m)
    mat = [[x % p for x in row] for row in m]
    # invertible mod p^nu iff invertible mod p
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if mat[r][col] % p:
                piv = r
                break
        if piv is None:
            return False
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(n):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank == n
