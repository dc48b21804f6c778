"""Exact rational and integer linear algebra.

Matrices are small and dense. Entries are Python ``int`` (integer matrices)
or :class:`fractions.Fraction` (rational matrices); both are exact, so no
routine here takes a tolerance.
"""

from fractions import Fraction
from math import gcd

__all__ = [
    "Matrix",
    "rref",
    "rank",
    "kernel_basis",
    "left_kernel_basis",
    "inverse",
    "solve",
    "column_hnf",
    "integer_kernel",
    "integer_kernel_with_congruences",
    "smith_normal_form",
    "solve_integer",
    "determinant",
]


class Matrix:
    """Immutable dense matrix with an explicit shape (so 0 x n is representable)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols=None):
        data = tuple(tuple(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self):
        return Matrix([[self._data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return Matrix([[sum(a * b for a, b in zip(r, c)) for c in ocols]
                       for r in self._data], other.cols)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vector)) for r in self._data)

    def __mul__(self, scalar):
        return Matrix([[scalar * x for x in r] for r in self._data], self.cols)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self._data, other._data)], self.cols)

    def __sub__(self, other):
        return self + (-1) * other

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def is_zero(self):
        return all(x == 0 for r in self._data for x in r)

    def stack(self, other):
        """Rows of ``self`` followed by rows of ``other``."""
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self._data + other._data, self.cols)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix([a + b for a, b in zip(self._data, other._data)],
                      self.cols + other.cols)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        cols = list(cols)
        return Matrix([[self._data[i][j] for j in cols] for i in rows], len(cols))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _as_fraction_rows(M):
    return [[Fraction(x) for x in M.row(i)] for i in range(M.rows)]


def rref(M):
    """Reduced row-echelon form over the rationals.

    Returns ``(R, pivots, rank)``; ``R`` has the same shape as ``M`` with the
    zero rows at the bottom.
    """
    A = _as_fraction_rows(M)
    nrows, ncols = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            A[r] = [x / piv for x in A[r]]
        pr = A[r]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return Matrix(A, ncols), pivots, len(pivots)


def rank(M):
    return rref(M)[2]


def kernel_basis(M):
    """Basis of ``{v : M v = 0}`` as the columns of a ``cols x nullity`` matrix."""
    R, pivots, rk = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    columns = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        columns.append(v)
    return Matrix.from_columns(columns, M.cols)


def left_kernel_basis(M):
    """Basis of ``{w : w^T M = 0}`` as columns."""
    return kernel_basis(M.T)


def determinant(M):
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    A = _as_fraction_rows(M)
    n = M.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def inverse(M):
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    R, pivots, rk = rref(M.hstack(Matrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R.submatrix(cols=range(n, 2 * n))


def solve(M, b):
    """One rational solution of ``M x = b`` or ``None`` if inconsistent."""
    aug = M.hstack(Matrix([[x] for x in b], 1))
    R, pivots, rk = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = R[i, M.cols]
    return tuple(x)


# -- integer lattices -------------------------------------------------------

def _xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def column_hnf(M):
    """Column-style Hermite normal form.

    Returns ``(H, V)`` with ``M @ V == H``, ``V`` unimodular and ``H`` in
    lower echelon form: the pivot of column ``j`` sits strictly below the
    pivot of column ``j - 1``, pivots are positive, entries left of a pivot
    lie in ``[0, pivot)`` and the trailing ``cols - rank`` columns are zero.
    """
    n, m = M.rows, M.cols
    H = [list(M.column(j)) for j in range(m)]  # work column-wise
    V = [[int(i == j) for i in range(m)] for j in range(m)]

    def combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for X in (H, V):
            cj, ck = X[j], X[k]
            X[j] = [a * x + b * y for x, y in zip(cj, ck)]
            X[k] = [c * x + d * y for x, y in zip(cj, ck)]

    r = 0
    for i in range(n):
        if r == m:
            break
        for k in range(r + 1, m):
            if H[k][i] == 0:
                continue
            a, b = H[r][i], H[k][i]
            g, s, t = _xgcd(a, b)
            combine(r, k, s, t, -b // g, a // g)
        if H[r][i] == 0:
            continue
        if H[r][i] < 0:
            H[r] = [-x for x in H[r]]
            V[r] = [-x for x in V[r]]
        p = H[r][i]
        for j in range(r):
            q = H[j][i] // p
            if q:
                H[j] = [x - q * y for x, y in zip(H[j], H[r])]
                V[j] = [x - q * y for x, y in zip(V[j], V[r])]
        r += 1
    return Matrix.from_columns(H, n), Matrix.from_columns(V, m)


def _hnf_rank(H):
    return sum(1 for c in H.columns() if any(c))


def integer_kernel(M):
    """Saturated integer kernel of ``M`` as HNF-normalized columns."""
    H, V = column_hnf(M)
    rk = _hnf_rank(H)
    K = V.submatrix(cols=range(rk, M.cols))
    if K.cols == 0:
        return K
    return column_hnf(K)[0]


def integer_kernel_with_congruences(A_free, A_tors, moduli):
    """Basis of ``{m in Z^n : A_free m = 0, A_tors m = 0 mod moduli}``.

    The lattice is returned as the columns of an ``n x rank`` integer matrix
    in column-style Hermite normal form.
    """
    n = A_free.cols
    if A_tors.cols != n:
        raise ValueError("A_free and A_tors must have the same column count")
    if len(moduli) != A_tors.rows:
        raise ValueError("one modulus per torsion row is required")
    t = A_tors.rows
    top = A_free.hstack(Matrix.zeros(A_free.rows, t))
    diag = Matrix([[moduli[i] if i == j else 0 for j in range(t)] for i in range(t)], t)
    bottom = A_tors.hstack(diag)
    B = top.stack(bottom)
    K = integer_kernel(B)
    proj = K.submatrix(rows=range(n))
    H, _ = column_hnf(proj)
    rk = _hnf_rank(H)
    return H.submatrix(cols=range(rk))


def solve_integer(M, b):
    """One integer solution of ``M x = b`` or ``None``."""
    H, V = column_hnf(M)
    rk = _hnf_rank(H)
    z = [0] * M.cols
    residual = list(b)
    r = 0
    for i in range(M.rows):
        if r < rk and H[i, r] != 0:
            q, rem = divmod(residual[i], H[i, r])
            if rem:
                return None
            z[r] = q
            col = H.column(r)
            residual = [x - q * y for x, y in zip(residual, col)]
            r += 1
        elif residual[i] != 0:
            return None
    return V.apply(z)


def smith_normal_form(M):
    """Smith normal form ``U @ M @ V == D`` with unimodular ``U``, ``V``.

    ``D`` has nonnegative diagonal entries ``d_1 | d_2 | ...``.
    """
    n, m = M.rows, M.cols
    D = [list(M.row(i)) for i in range(n)]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(n, m)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, n) for j in range(t, m)
                       if D[i][j] != 0]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, m):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < n and t < m and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return Matrix(U, n), Matrix(D, m), Matrix(V, m)


def primitive(vector):
    """Divide an integer vector by the gcd of its entries; returns ``(v, g)``."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return tuple(vector), 0
    return tuple(x // g for x in vector), g
