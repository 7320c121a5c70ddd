"""The rational semigroup algebra of the monogenic free inverse monoid.

Elements are finite linear combinations of walk triples.  Equality is
equality of the coefficient tables, since triples are canonical.
"""

from functools import lru_cache

from . import free_inverse_monoid as fim
from .exact_linalg import rat, rat_str
from .free_inverse_monoid import MunnTriple


class AlgebraElem:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for t, c in (terms or {}).items():
            c = rat(c)
            if c:
                clean[t] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, terms):
        a = cls.__new__(cls)
        a.terms = terms
        return a

    @classmethod
    def scalar(cls, c):
        return cls({fim.ONE: c})

    @classmethod
    def of(cls, triple, c=1):
        return cls({triple: c})

    def __eq__(self, other):
        if isinstance(other, (int,)) or not isinstance(other, AlgebraElem):
            other = _coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return AlgebraElem._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElem._trusted({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = fim.mul(t1, t2)
                v = out.get(t, 0) + c1 * c2
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return AlgebraElem._trusted(out)

    def __rmul__(self, other):
        return _coerce(other) * self

    def __pow__(self, n):
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def star(self):
        return AlgebraElem._trusted({fim.star(t): c for t, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for t in sorted(self.terms):
            c = self.terms[t]
            parts.append(f"{rat_str(c)}*[{fim.normal_text(t)}]")
        return " + ".join(parts)


def _coerce(x):
    if isinstance(x, AlgebraElem):
        return x
    if isinstance(x, MunnTriple):
        return AlgebraElem.of(x)
    return AlgebraElem.scalar(x)


def star(a):
    return a.star()


ZERO = AlgebraElem()
ONE = AlgebraElem.of(fim.ONE)
s = AlgebraElem.of(fim.S)
s_star = AlgebraElem.of(fim.S_STAR)


def monomial(k, l, m):
    """The element s^k (s*)^l s^m for l >= k, l >= m."""
    return AlgebraElem.of(fim.from_normal(fim.NormalWord(k, l, m)))


def s_pow(i):
    return AlgebraElem.of(MunnTriple(0, i, i))


def s_star_pow(i):
    return AlgebraElem.of(MunnTriple(-i, 0, -i))


def range_proj(i):
    """s^i (s*)^i."""
    return AlgebraElem.of(MunnTriple(0, i, 0))


def source_proj(j):
    """(s*)^j s^j."""
    return AlgebraElem.of(MunnTriple(-j, 0, 0))


@lru_cache(maxsize=None)
def q_proj(i, j):
    """(s^i s*^i - s^{i+1} s*^{i+1}) ((s*)^j s^j - (s*)^{j+1} s^{j+1})."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    return (range_proj(i) - range_proj(i + 1)) * (source_proj(j) - source_proj(j + 1))


@lru_cache(maxsize=None)
def h_proj(n):
    out = ZERO
    for i in range(n + 1):
        out = out + q_proj(i, n - i)
    return out


def matrix_unit(n, i, j):
    """The (i, j) matrix unit of the block h_n A, with 1 <= i, j <= n + 1."""
    base = q_proj(i - 1, n + 1 - i)
    if i <= j:
        return base * s_star_pow(j - i)
    return base * s_pow(i - j)


def is_socle_supported(a, T):
    """True when a equals the sum over n <= T of h_n a."""
    total = ZERO
    for n in range(T + 1):
        total = total + h_proj(n) * a
    return total == a


def polynomial_in_s(coeffs, adjoint=False):
    """sum_k coeffs[k] s^k, or its adjoint sum_k coeffs[k] (s*)^k."""
    out = ZERO
    for k, c in enumerate(coeffs):
        if c:
            out = out + (s_star_pow(k) if adjoint else s_pow(k)) * rat(c)
    return out


def to_json(a):
    return [{"triple": fim.to_json(t), "coeff": rat_str(a.terms[t])} for t in sorted(a.terms)]


def from_json(data):
    return AlgebraElem({fim.from_json(d["triple"]): rat(d["coeff"]) for d in data})
