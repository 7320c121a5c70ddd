"""Exact rational scalars and sparse matrices.

Scalars are ``gmpy2.mpq`` values (always reduced, positive denominator).
Matrices store only their nonzero entries, row by row.  Rank uses
fraction-free Bareiss elimination on integer rows after dropping empty
rows and columns.
"""

from fractions import Fraction

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)


class ShapeError(ValueError):
    pass


class NotUnipotentError(ValueError):
    pass


class SingularMatrixError(ZeroDivisionError):
    pass


def rat(x):
    """Coerce an int, Fraction, mpq or "p/q" string to an exact rational."""
    if isinstance(x, str):
        return Q(x.strip())
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Q(x)


def rat_str(x):
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_dyadic(x):
    d = rat(x).denominator
    return d & (d - 1) == 0


class Matrix:
    """Sparse exact matrix.  Treat instances as immutable."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows, cols, data=None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimension")
        self.rows = rows
        self.cols = cols
        clean = {}
        if data:
            for i, row in data.items():
                if not 0 <= i < rows:
                    raise ShapeError(f"row index {i} out of range")
                kept = {}
                for j, v in row.items():
                    if not 0 <= j < cols:
                        raise ShapeError(f"column index {j} out of range")
                    if v:
                        kept[j] = v if type(v) is type(ONE) else rat(v)
                if kept:
                    clean[i] = kept
        self._rows = clean

    @classmethod
    def _trusted(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._rows = data
        return m

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls._trusted(rows, rows if cols is None else cols, {})

    @classmethod
    def identity(cls, n):
        return cls._trusted(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def unit(cls, n, i, j):
        """Matrix unit with a single 1 at (i, j), zero-based."""
        return cls(n, n, {i: {j: ONE}})

    @classmethod
    def from_entries(cls, rows, cols, entries):
        data = {}
        for (i, j), v in entries.items():
            data.setdefault(i, {})[j] = v
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, grid):
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        return cls(rows, cols, {i: dict(enumerate(r)) for i, r in enumerate(grid)})

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self):
        return sum(len(r) for r in self._rows.values())

    def get(self, i, j):
        return self._rows.get(i, {}).get(j, ZERO)

    def row(self, i):
        return dict(self._rows.get(i, {}))

    def entries(self):
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def to_dense(self):
        grid = [[ZERO] * self.cols for _ in range(self.rows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                grid[i][j] = v
        return grid

    def is_zero(self):
        return not self._rows

    def __bool__(self):
        return bool(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries())))

    def __repr__(self):
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(rat_str(v) for v in r) for r in self.to_dense())
            return f"Matrix({self.rows}x{self.cols}: [{body}])"
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same(other)
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            acc = out.setdefault(i, {})
            for j, v in row.items():
                w = acc.get(j, ZERO) + v
                if w:
                    acc[j] = w
                else:
                    acc.pop(j, None)
            if not acc:
                del out[i]
        return Matrix._trusted(self.rows, self.cols, out)

    def __neg__(self):
        return Matrix._trusted(self.rows, self.cols,
                               {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rat(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._trusted(self.rows, self.cols,
                               {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()})

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        brows = other._rows
        out = {}
        for i, row in self._rows.items():
            acc = {}
            for k, v in row.items():
                rb = brows.get(k)
                if rb is None:
                    continue
                for j, w in rb.items():
                    acc[j] = acc.get(j, ZERO) + v * w
            acc = {j: x for j, x in acc.items() if x}
            if acc:
                out[i] = acc
        return Matrix._trusted(self.rows, other.cols, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def transpose(self):
        out = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return Matrix._trusted(self.cols, self.rows, out)

    def block(self, r0, c0, rows, cols):
        """Submatrix of the given size starting at (r0, c0)."""
        out = {}
        for i, row in self._rows.items():
            if r0 <= i < r0 + rows:
                kept = {j - c0: v for j, v in row.items() if c0 <= j < c0 + cols}
                if kept:
                    out[i - r0] = kept
        return Matrix._trusted(rows, cols, out)

    @staticmethod
    def assemble(blocks):
        """Build a block matrix from a square grid of equally sized blocks."""
        d = len(blocks)
        size = blocks[0][0].rows
        out = {}
        for bi in range(d):
            for bj in range(d):
                for (i, j), v in blocks[bi][bj].entries():
                    out.setdefault(bi * size + i, {})[bj * size + j] = v
        return Matrix._trusted(d * size, d * size, out)


def _integer_rows(m):
    """Rows of m scaled to integers, with empty rows and columns dropped."""
    cols = sorted({j for row in m._rows.values() for j in row})
    where = {j: k for k, j in enumerate(cols)}
    out = []
    for row in m._rows.values():
        den = 1
        for v in row.values():
            den = gmpy2.lcm(den, v.denominator)
        dense = [0] * len(cols)
        for j, v in row.items():
            dense[where[j]] = int(v.numerator * (den // v.denominator))
        out.append(dense)
    return out, len(cols)


def rank(m):
    """Rank over Q by fraction-free Bareiss elimination."""
    a, ncols = _integer_rows(m)
    nrows = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                ar = a[r]
                a[i] = [(p * ai[k] - f * ar[k]) // prev if k > c else 0 for k in range(ncols)]
            else:
                a[i] = [(p * x) // prev for x in ai]
        prev = p
        r += 1
    return r


def rref(m):
    """Reduced row echelon form as (dense rows, pivot columns)."""
    a = m.to_dense()
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def kernel_basis(m):
    """Basis of the right kernel {v : m v = 0} as lists of rationals."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(m, b):
    """One rational solution x of m x = b, or None when inconsistent."""
    aug = Matrix(m.rows, m.cols + 1,
                 {i: {**m.row(i), **({m.cols: rat(b[i])} if b[i] else {})} for i in range(m.rows)})
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return x


def unipotent_inverse(m):
    """Inverse of 1 + N with N nilpotent, as the finite series sum of (-N)^k."""
    if m.rows != m.cols:
        raise ShapeError("unipotent_inverse needs a square matrix")
    n = m.rows
    for i in range(n):
        if m.get(i, i) != 1:
            raise NotUnipotentError(f"diagonal entry {i} is {rat_str(m.get(i, i))}, not 1")
    step = Matrix.identity(n) - m
    result = Matrix.identity(n)
    term = Matrix.identity(n)
    for _ in range(n + 1):
        term = term * step
        if term.is_zero():
            return result
        result = result + term
    raise NotUnipotentError("off-diagonal part is not nilpotent")


def _is_triangular_unipotent(m):
    lower = upper = True
    for i, row in m._rows.items():
        for j in row:
            if j > i:
                lower = False
            elif j < i:
                upper = False
        if row.get(i) != 1:
            return False
    return (lower or upper) and len(m._rows) == m.rows


def inverse(m):
    """Exact inverse; raises SingularMatrixError for singular input."""
    if m.rows != m.cols:
        raise ShapeError("inverse needs a square matrix")
    n = m.rows
    if _is_triangular_unipotent(m):
        return unipotent_inverse(m)
    a = [dict(m._rows.get(i, {})) for i in range(n)]
    inv = [{i: ONE} for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i].get(c):
                if piv is None or len(a[i]) < len(a[piv]):
                    piv = i
        if piv is None:
            raise SingularMatrixError(f"matrix of size {n} is singular")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = 1 / a[c][c]
        a[c] = {j: v * p for j, v in a[c].items()}
        inv[c] = {j: v * p for j, v in inv[c].items()}
        for i in range(n):
            f = a[i].get(c) if i != c else None
            if not f:
                continue
            for src, dst in ((a[c], a[i]), (inv[c], inv[i])):
                for j, v in src.items():
                    w = dst.get(j, ZERO) - f * v
                    if w:
                        dst[j] = w
                    else:
                        dst.pop(j, None)
    return Matrix(n, n, dict(enumerate(inv)))


def lower_shift(n, k=1):
    """Sum of e_{j+k, j}: the shift sending basis vector j to j + k."""
    return Matrix._trusted(n, n, {j + k: {j: ONE} for j in range(n - k)} if k < n else {})


def upper_shift(n, k=1):
    return lower_shift(n, k).transpose()


def span_solve(vectors, target):
    """Express target as a combination of sparse vectors (dicts key -> value).

    Returns (coefficients, residual).  coefficients is a dict index -> value
    when the residual is empty, otherwise None.
    """
    basis = []  # (pivot key, vector, combination over input indices)
    for idx, vec in enumerate(vectors):
        v = {k: rat(x) for k, x in vec.items() if x}
        combo = {idx: ONE}
        v, combo = _reduce(v, combo, basis)
        if v:
            pivot = min(v)
            inv = 1 / v[pivot]
            basis.append((pivot, {k: x * inv for k, x in v.items()},
                          {k: x * inv for k, x in combo.items()}))
    t = {k: rat(x) for k, x in target.items() if x}
    residual, combo = _reduce(t, {}, basis)
    if residual:
        return None, residual
    coeffs = {k: -x for k, x in combo.items() if x}
    return coeffs, {}


def _reduce(v, combo, basis):
    v = dict(v)
    combo = dict(combo)
    for pivot, bvec, bcombo in basis:
        c = v.get(pivot)
        if not c:
            continue
        for k, x in bvec.items():
            w = v.get(k, ZERO) - c * x
            if w:
                v[k] = w
            else:
                v.pop(k, None)
        for k, x in bcombo.items():
            w = combo.get(k, ZERO) - c * x
            if w:
                combo[k] = w
            else:
                combo.pop(k, None)
    return v, combo
