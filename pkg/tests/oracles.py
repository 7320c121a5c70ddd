"""Independent reference implementations used by the tests."""

from fractions import Fraction


def gauss_rank(grid):
    """Rank by plain Gaussian elimination over Fraction."""
    rows = [[Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)
             for x in row] for row in grid]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def dense_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def series_coeffs(num, den, n):
    """First n coefficients of num/den by long division over Fraction."""
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in den]
    out = []
    for k in range(n):
        v = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            v -= den[j] * out[k - j]
        out.append(v / den[0])
    return out


def walk_matrix(letters, n):
    """Component n image of a word in s, S by multiplying shift matrices."""
    size = n + 1
    lower = [[1 if r == c + 1 else 0 for c in range(size)] for r in range(size)]
    upper = [[lower[c][r] for c in range(size)] for r in range(size)]
    out = [[1 if r == c else 0 for c in range(size)] for r in range(size)]
    for ch in letters:
        out = dense_mul(out, lower if ch == "s" else upper)
    return out
