"""Truncated matrix representation and the weighted rank.

Component n is the (n+1)-dimensional block: s acts as the lower shift and
s* as the upper shift.  A unit of rank in component n weighs 2^-(n+2), so the
identity has total weight 1.
"""

from dataclasses import dataclass

from . import free_inverse_monoid as fim
from . import rational_series as rs
from .exact_linalg import (ONE, ZERO, Matrix, inverse, lower_shift, rank, rat,
                           rat_str, unipotent_inverse)
from .semigroup_algebra import AlgebraElem


class TruncatedRep:
    """Components 0..T; component n is a d(n+1) x d(n+1) matrix."""

    __slots__ = ("T", "d", "comps")

    def __init__(self, comps, d=1):
        self.comps = list(comps)
        self.T = len(self.comps) - 1
        self.d = d
        for n, c in enumerate(self.comps):
            if c.shape != (d * (n + 1), d * (n + 1)):
                raise ValueError(f"component {n} has shape {c.shape}")

    @classmethod
    def identity(cls, T, d=1):
        return cls([Matrix.identity(d * (n + 1)) for n in range(T + 1)], d)

    @classmethod
    def zero(cls, T, d=1):
        return cls([Matrix.zeros(d * (n + 1)) for n in range(T + 1)], d)

    @classmethod
    def central(cls, values, d=1):
        """The central element with scalar values[n] in component n."""
        return cls([Matrix.identity(d * (n + 1)).scale(v) for n, v in enumerate(values)], d)

    def _zip(self, other, op):
        if isinstance(other, TruncatedRep):
            if (other.T, other.d) != (self.T, self.d):
                raise ValueError("truncations differ")
            return TruncatedRep([op(a, b) for a, b in zip(self.comps, other.comps)], self.d)
        other = TruncatedRep.identity(self.T, self.d).scale(other)
        return self._zip(other, op)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncatedRep([-c for c in self.comps], self.d)

    def __mul__(self, other):
        if isinstance(other, TruncatedRep):
            return self._zip(other, lambda a, b: a * b)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        return TruncatedRep([m.scale(c) for m in self.comps], self.d)

    def adj(self):
        return TruncatedRep([c.transpose() for c in self.comps], self.d)

    def inv(self):
        out = []
        for n, c in enumerate(self.comps):
            try:
                out.append(inverse(c))
            except ZeroDivisionError as exc:
                raise SingularComponentError(n) from exc
        return TruncatedRep(out, self.d)

    def __pow__(self, k):
        out = TruncatedRep.identity(self.T, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedRep):
            return NotImplemented
        return self.d == other.d and self.comps == other.comps

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def agree_from(self, other):
        """Least n such that components n..T agree (T+1 if even the last differs)."""
        n = self.T + 1
        while n > 0 and self.comps[n - 1] == other.comps[n - 1]:
            n -= 1
        return n

    def vanish_from(self):
        return self.agree_from(TruncatedRep.zero(self.T, self.d))

    def truncate(self, T):
        return TruncatedRep(self.comps[:T + 1], self.d)

    def __repr__(self):
        return f"TruncatedRep(T={self.T}, d={self.d})"


class SingularComponentError(ZeroDivisionError):
    def __init__(self, n):
        super().__init__(f"component {n} is singular")
        self.component = n


def triple_matrix(t, n):
    """Image of the walk triple t in component n (size n+1)."""
    # the triple maps basis vector c to c + end whenever the reversed walk
    # from c stays inside 0..n: rows r with hi <= r <= n + lo
    data = {r: {r - t.end: ONE} for r in range(t.hi, n + t.lo + 1)}
    return Matrix._trusted(n + 1, n + 1, data)


def represent(a, T):
    if not isinstance(a, AlgebraElem):
        a = AlgebraElem.scalar(a)
    comps = []
    for n in range(T + 1):
        m = Matrix.zeros(n + 1)
        for t, c in a.terms.items():
            m = m + triple_matrix(t, n).scale(c)
        comps.append(m)
    return TruncatedRep(comps)


def represent_matrix(grid, T):
    """Blockwise image of a d x d matrix over the algebra."""
    d = len(grid)
    reps = [[represent(x, T) for x in row] for row in grid]
    comps = [Matrix.assemble([[reps[i][j].comps[n] for j in range(d)] for i in range(d)])
             for n in range(T + 1)]
    return TruncatedRep(comps, d)


def shift_rep(T):
    return TruncatedRep([lower_shift(n + 1) for n in range(T + 1)])


def poly_rep(coeffs, T, adjoint=False):
    """Image of sum_k coeffs[k] s^k (or its adjoint)."""
    comps = []
    for n in range(T + 1):
        m = Matrix.zeros(n + 1)
        for k, c in enumerate(coeffs):
            if c and k <= n:
                m = m + lower_shift(n + 1, k).scale(c)
        comps.append(m.transpose() if adjoint else m)
    return TruncatedRep(comps)


def rank_sequence(r):
    return [rank(c) for c in r.comps]


# -- weighted rank -----------------------------------------------------------

def weight(n):
    return ONE / (1 << (n + 2))


def tail_bound(T, d=1):
    """sum over n > T of d(n+1) 2^-(n+2), in closed form."""
    return rat(d) * (T + 3) / (1 << (T + 2))


def row_growth(a):
    """Number of distinct walk minima among the triples of a.

    Component n+1 of a triple's image is component n padded by a zero row and
    column plus one entry in row n+1+lo, so the ranks of consecutive
    components of a differ by at most this number.
    """
    return len({t.lo for t in a.terms})


def _geometric_sums(K):
    """(sum_{k=1..K} 2^-k, sum_{k=1..K} k 2^-k)."""
    q = ONE / (1 << K)
    return 1 - q, 2 - (K + 2) * q


def growth_tail(rT, T, c, d=1):
    """Lower and upper bounds for sum over n > T of rank_n 2^-(n+2), given
    |rank_(n+1) - rank_n| <= c and 0 <= rank_n <= d(n+1)."""
    w = ONE / (1 << (T + 2))
    # lower: max(0, rT - c k) is positive for k < rT / c
    K = rT // c - (rT % c == 0) if c else None
    if c == 0:
        lower = rat(rT)
    else:
        g0, g1 = _geometric_sums(K) if K > 0 else (ZERO, ZERO)
        lower = rT * g0 - c * g1
    # upper: min(d(T+1+k), rT + c k); the cap wins once (c - d) k > d(T+1) - rT
    cap = d * (T + 1) - rT
    if c <= d:
        upper = rT + 2 * rat(c)
    else:
        K = cap // (c - d)
        g0, g1 = _geometric_sums(K) if K > 0 else (ZERO, ZERO)
        rest = ONE / (1 << K)
        upper = rT * g0 + c * g1 + d * ((T + 1) * rest + (K + 2) * rest)
    return lower * w, upper * w


@dataclass
class RankResult:
    ranks: list
    d: int
    partial: object
    tail: object
    pattern: object = None
    exact: object = None
    lower_tail: object = ZERO
    growth: object = None

    @property
    def T(self):
        return len(self.ranks) - 1

    @property
    def lower(self):
        return self.partial + self.lower_tail

    @property
    def upper(self):
        return self.partial + self.tail

    @property
    def width(self):
        return self.tail - self.lower_tail

    def to_json(self, expr=None):
        pat = None
        if self.pattern:
            pat = {"n0": self.pattern["n0"], "N": self.pattern["N"],
                   "residues": [{"alpha": rat_str(a), "beta": rat_str(b)}
                                for a, b in self.pattern["residues"]]}
        return {"expr": expr, "T": self.T, "ranks": list(self.ranks),
                "partial": rat_str(self.partial), "tail": rat_str(self.tail),
                "lower": rat_str(self.lower), "upper": rat_str(self.upper),
                "width": rat_str(self.width), "growth": self.growth,
                "pattern": pat, "exact": rat_str(self.exact) if self.exact is not None else None}


def detect_pattern(ranks, d=1, max_period=8):
    """Find n0 <= T/2 and N <= max_period with rank_n affine in n+1 per residue."""
    T = len(ranks) - 1
    for N in range(1, max_period + 1):
        for n0 in range(0, T // 2 + 1):
            fits = []
            for r in range(N):
                pts = [n for n in range(n0, T + 1) if n % N == r]
                if len(pts) < 3:
                    fits = None
                    break
                n1, n2 = pts[0], pts[1]
                alpha = rat(ranks[n2] - ranks[n1]) / (n2 - n1)
                beta = ranks[n1] - alpha * (n1 + 1)
                if not (0 <= alpha <= d):
                    fits = None
                    break
                if any(alpha * (n + 1) + beta != ranks[n] for n in pts):
                    fits = None
                    break
                fits.append((r, pts[0], alpha, beta))
            if fits:
                return {"n0": n0, "N": N, "fits": fits,
                        "residues": [(a, b) for _, _, a, b in fits]}
    return None


def pattern_value(ranks, pattern):
    """Exact sum of rank_n 2^-(n+2) over all n, assuming the pattern."""
    n0, N = pattern["n0"], pattern["N"]
    total = sum((ranks[n] * weight(n) for n in range(n0)), ZERO)
    q = ONE / (1 << N)
    for _, first, alpha, beta in pattern["fits"]:
        lead = weight(first)
        total += lead * ((alpha * (first + 1) + beta) / (1 - q) + alpha * N * q / (1 - q) ** 2)
    return total


def vn_rank(r, max_period=8, growth=None):
    """Weighted rank from the components 0..T.

    The enclosure is [partial + lower tail, partial + upper tail]; without a
    growth bound the tail is only known to lie in [0, tail_bound(T, d)].
    The pattern value is reported as exact only inside the enclosure.
    """
    ranks = r if isinstance(r, list) else rank_sequence(r)
    d = 1 if isinstance(r, list) else r.d
    T = len(ranks) - 1
    partial = sum((k * weight(n) for n, k in enumerate(ranks)), ZERO)
    if growth is None:
        lo_tail, tail = ZERO, tail_bound(T, d)
    else:
        lo_tail, tail = growth_tail(ranks[-1], T, growth, d)
    pattern = detect_pattern(ranks, d, max_period)
    exact = None
    if pattern:
        value = pattern_value(ranks, pattern)
        if partial + lo_tail <= value <= partial + tail:
            exact = value
        else:
            pattern = None
    return RankResult(ranks, d, partial, tail, pattern, exact, lo_tail, growth)


def algebra_rank(a, T, max_period=8):
    """vn_rank of an algebra element, using its row growth for the tail."""
    if not isinstance(a, AlgebraElem):
        a = AlgebraElem.scalar(a)
    return vn_rank(represent(a, T), max_period, row_growth(a))


# -- localization ------------------------------------------------------------

def localize_inverse(f, T):
    """Componentwise inverse of f(s) for a polynomial f with f(0) = 1."""
    f = rs.ptrim(f)
    if not f or f[0] != 1:
        raise ValueError("constant term must be 1")
    return TruncatedRep([unipotent_inverse(c) for c in poly_rep(f, T).comps])


def adjoint_inverse(f, T):
    """Componentwise inverse of f(s)* (upper unipotent)."""
    f = rs.ptrim(f)
    if not f or f[0] != 1:
        raise ValueError("constant term must be 1")
    return TruncatedRep([unipotent_inverse(c) for c in poly_rep(f, T, adjoint=True).comps])


def _poly_inverse(coeffs, T):
    c0 = coeffs[0]
    return localize_inverse(rs.pscale(coeffs, 1 / c0), T).scale(1 / c0)


def inverse_formula_sides(f, T):
    """Both sides of the congruence expressing (f(s)*)^-1 through f1(s)^-1."""
    f = rs.ptrim(f)
    n = rs.pdeg(f)
    if n < 1:
        raise ValueError("f must have degree at least 1")
    a = list(f)  # a[0] = 1, a[j] = a_j
    f1 = tuple(a[n - j] for j in range(n + 1))
    f1_inv = _poly_inverse(f1, T)
    fstar_inv = adjoint_inverse(f, T)
    s = shift_rep(T)
    p1 = TruncatedRep.identity(T) - s * s.adj()
    rhs = f1_inv * s ** n
    for i in range(n):
        p_i = tuple(-a[n - (i - k)] for k in range(i + 1))  # coefficient of x^k
        rhs = rhs - f1_inv * s ** i * p1 * poly_rep(p_i, T, adjoint=True) * fstar_inv
    return fstar_inv, rhs


def verify_inverse_formula(f, T):
    lhs, rhs = inverse_formula_sides(f, T)
    n = rs.pdeg(rs.ptrim(f))
    first = lhs.agree_from(rhs)
    return {"f": [rat_str(c) for c in rs.ptrim(f)], "T": T, "degree": n,
            "agree_from": first, "ok": first <= n}


def basis_element(i, k, j, f, T):
    """(s*)^i (1 - s*s) s^j f(s)^-1 (1 - ss*) (s*)^k."""
    s = shift_rep(T)
    one = TruncatedRep.identity(T)
    sa = s.adj()
    return (sa ** i * (one - sa * s) * s ** j * localize_inverse(f, T)
            * (one - s * sa) * sa ** k)


def basis_independence_probe(samples, T):
    """Check the single-entry shape of basis elements against series coefficients.

    Each sample is (i, k, j, f).  Component n should equal
    beta_{n-j} e_{n+1-i, k+1} (one-based) where beta are the coefficients of
    1/f, and vanish when that position is outside the block or n < j.
    """
    results = []
    for i, k, j, f in samples:
        f = rs.ptrim(f)
        if not f or f[0] != 1:
            raise ValueError("malformed sample: f(0) must be 1")
        b = basis_element(i, k, j, f, T)
        beta = rs.RationalSeries((1,), f)
        bad = []
        for n, comp in enumerate(b.comps):
            row, col = n - i, k  # zero-based
            if n >= j and 0 <= row and col <= n:
                want = Matrix(n + 1, n + 1, {row: {col: beta.coeff(n - j)}})
            else:
                want = Matrix.zeros(n + 1)
            if comp != want:
                bad.append(n)
        results.append({"sample": [i, k, j, [rat_str(c) for c in f]], "mismatches": bad})
    return {"T": T, "results": results, "ok": all(not r["mismatches"] for r in results)}


def monomial_independence(max_l, T):
    """Rank of the stacked images of all s^k (s*)^l s^m with l <= max_l."""
    monos = [fim.from_normal(fim.NormalWord(k, l, m))
             for l in range(max_l + 1) for k in range(l + 1) for m in range(l + 1)]
    offsets = []
    total = 0
    for n in range(T + 1):
        offsets.append(total)
        total += (n + 1) ** 2
    data = {}
    for idx, t in enumerate(monos):
        row = {}
        for n in range(T + 1):
            for (r, c), v in triple_matrix(t, n).entries():
                row[offsets[n] + r * (n + 1) + c] = v
        data[idx] = row
    stacked = Matrix(len(monos), total, data)
    return {"count": len(monos), "rank": rank(stacked), "T": T}
