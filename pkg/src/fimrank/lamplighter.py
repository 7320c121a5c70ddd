"""The lamplighter group Z/2 wr Z, its rational group algebra, and the
embedding of the monoid algebra sending s to e_0 t.

A group element a_L t^m is stored as (L, m), with L the finite set of lit
lamps.  The shift acts by t^-1 a_i t = a_{i+1}, so
(L, m)(L', m') = (L xor (L' - m), m + m').  The trace is the coefficient of
the identity element; on idempotents it is the rank used elsewhere.
"""

import re
from functools import lru_cache

from . import free_inverse_monoid as fim
from . import representation as rep
from . import semigroup_algebra as alg
from .exact_linalg import ONE, ZERO, rat, rat_str


class LampElem(tuple):
    """a_L t^m as the pair (frozenset L, m)."""

    __slots__ = ()

    def __new__(cls, lamps=(), shift=0):
        lamps = list(lamps)
        if len(set(lamps)) != len(lamps):
            raise ValueError("repeated lamp")
        return tuple.__new__(cls, (frozenset(int(i) for i in lamps), int(shift)))

    @property
    def lamps(self):
        return self[0]

    @property
    def shift(self):
        return self[1]

    def sort_key(self):
        return (sorted(self[0]), self[1])

    def __mul__(self, other):
        return group_mul(self, other)

    def inverse(self):
        m = self[1]
        return _elem(frozenset(i + m for i in self[0]) if m else self[0], -m)

    def __str__(self):
        parts = [f"a({i})" for i in sorted(self[0])]
        if self[1]:
            parts.append("t" if self[1] == 1 else f"t^{self[1]}")
        return " ".join(parts) or "1"

    def __repr__(self):
        return f"LampElem({str(self)!r})"

    def to_json(self):
        return {"lamps": sorted(self[0]), "shift": self[1]}

    @classmethod
    def from_json(cls, data):
        return cls([int(i) for i in data.get("lamps", [])], int(data.get("shift", 0)))


def _elem(lamps, shift):
    return tuple.__new__(LampElem, (lamps, shift))


IDENTITY = LampElem()

_TEXT = re.compile(r"\s*(?:a\((-?\d+)\)|t(?:\^(-?\d+))?|(1))")


def parse_group_elem(text):
    """Parse products like "a(-1) a(0) t^3"; letters multiply left to right."""
    out = IDENTITY
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TEXT.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot read group element at position {pos}")
        if m.group(1) is not None:
            out = out * LampElem((int(m.group(1)),))
        elif m.group(3) is None:
            out = out * LampElem((), int(m.group(2)) if m.group(2) else 1)
        pos = m.end()
    return out


def group_mul(g, h):
    m = g[1]
    moved = frozenset(i - m for i in h[0]) if m else h[0]
    return _elem(g[0] ^ moved, m + h[1])


class GroupAlgElem:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {g: rat(c) for g, c in (terms or {}).items() if c}

    @classmethod
    def _trusted(cls, terms):
        x = cls.__new__(cls)
        x.terms = terms
        return x

    @classmethod
    def of(cls, g, c=1):
        return cls({g: c})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g, ZERO) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return GroupAlgElem._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgElem._trusted({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        return alg_mul(self, _coerce(other))

    def __rmul__(self, other):
        return alg_mul(_coerce(other), self)

    def __eq__(self, other):
        return self.terms == _coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def star(self):
        return alg_star(self)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{rat_str(self.terms[g])}*[{g}]" for g in sorted(self.terms, key=LampElem.sort_key))

    __repr__ = __str__

    def to_json(self):
        return [{"elem": g.to_json(), "coeff": rat_str(self.terms[g])} for g in sorted(self.terms, key=LampElem.sort_key)]

    @classmethod
    def from_json(cls, data):
        out = {}
        for d in data:
            g = LampElem.from_json(d["elem"])
            out[g] = out.get(g, ZERO) + rat(d["coeff"])
        return cls(out)


def _coerce(x):
    if isinstance(x, GroupAlgElem):
        return x
    if isinstance(x, LampElem):
        return GroupAlgElem.of(x)
    return GroupAlgElem({IDENTITY: x})


def alg_mul(x, y):
    out = {}
    for g, c in x.terms.items():
        for h, d in y.terms.items():
            k = group_mul(g, h)
            v = out.get(k, ZERO) + c * d
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return GroupAlgElem._trusted(out)


def alg_star(x):
    """Rational coefficients are fixed; group elements go to their inverses."""
    return GroupAlgElem._trusted({g.inverse(): c for g, c in x.terms.items()})


def trace(x):
    return x.terms.get(IDENTITY, ZERO)


def t_pow(m):
    return GroupAlgElem.of(LampElem((), m))


def a_gen(i):
    return GroupAlgElem.of(LampElem((i,), 0))


def e(i):
    """(1 + a_i) / 2."""
    return GroupAlgElem({IDENTITY: rat("1/2"), LampElem((i,), 0): rat("1/2")})


def f(i):
    return 1 - e(i)


def e_product(lo, hi):
    """e_lo e_(lo+1) ... e_hi (1 when lo > hi)."""
    out = GroupAlgElem({IDENTITY: ONE})
    for i in range(lo, hi + 1):
        out = out * e(i)
    return out


S_IMAGE = e(0) * t_pow(1)
S_STAR_IMAGE = alg_star(S_IMAGE)


@lru_cache(maxsize=None)
def _embed_letters(word):
    if not word:
        return GroupAlgElem({IDENTITY: ONE})
    head = _embed_letters(word[:-1])
    return head * (S_IMAGE if word[-1] == "s" else S_STAR_IMAGE)


def embed_triple(t):
    return _embed_letters(fim.normal_letters(t))


def trace_of_triple(t):
    """Trace of the image of one monoid element.

    The normal-form word is split into halves u v and
    trace(u v) = sum over g of u_g v_(g^-1), so only the two halves are
    expanded.
    """
    word = fim.normal_letters(t)
    half = len(word) // 2
    u, v = _embed_letters(word[:half]), _embed_letters(word[half:])
    total = ZERO
    vt = v.terms
    for g, c in u.terms.items():
        d = vt.get(g.inverse())
        if d:
            total += c * d
    return total


def embed_A(a):
    """Image of an element of the monoid algebra, letter by letter."""
    out = GroupAlgElem()
    for t, c in a.terms.items():
        out = out + GroupAlgElem._trusted({g: c * v for g, v in embed_triple(t).terms.items()})
    return out


def q_image_direct(i, j):
    """f_(-i) (e_(-i+1) ... e_j) f_(j+1), built in the group algebra."""
    return f(-i) * e_product(-i + 1, j) * f(j + 1)


def verify_embedding_suite(bound=10, h_bound=12, cross_check_T=32, catalog_bound=6):
    """Checks on the embedded projections.

    For i + j <= bound: the image of q(i, j) equals the direct product
    f_(-i)(e_(-i+1)...e_j)f_(j+1), is idempotent, and has trace 2^-(i+j+2).
    For n <= h_bound: trace of the image of h_n is (n+1) 2^-(n+2).
    Every projection of the catalog with indices <= catalog_bound has trace
    equal to the exact weighted rank of its matrix representation.
    """
    report = {"q": [], "h": [], "catalog": []}
    ok = True
    for total in range(bound + 1):
        for i in range(total + 1):
            j = total - i
            img = embed_A(alg.q_proj(i, j))
            tr = trace(img)
            row = {"i": i, "j": j, "trace": rat_str(tr),
                   "product": img == q_image_direct(i, j),
                   "idempotent": img * img == img if total <= 6 else None}
            row["ok"] = row["product"] and row["idempotent"] is not False and tr == rat(1) / 2 ** (total + 2)
            ok &= row["ok"]
            report["q"].append(row)
    for n in range(h_bound + 1):
        # the trace is linear, so sum over the terms instead of building the sum
        tr = sum((c * trace_of_triple(t) for t, c in alg.h_proj(n).terms.items()), ZERO)
        want = rat(n + 1) / 2 ** (n + 2)
        good = tr == want
        if n <= 6:
            good &= trace(embed_A(alg.h_proj(n))) == tr
        report["h"].append({"n": n, "trace": rat_str(tr), "ok": good})
        ok &= good
    for name, a in projection_catalog(catalog_bound):
        tr = trace(embed_A(a))
        res = rep.vn_rank(rep.represent(a, cross_check_T))
        agree = res.exact is not None and res.exact == tr
        report["catalog"].append({"name": name, "trace": rat_str(tr),
                                  "rank": None if res.exact is None else rat_str(res.exact),
                                  "ok": agree})
        ok &= agree
    report["ok"] = ok
    return report


def projection_catalog(bound=6):
    """Named projections of the monoid algebra with indices <= bound."""
    out = [("s s*", alg.range_proj(1)), ("s* s", alg.source_proj(1))]
    for i in range(bound + 1):
        out.append((f"s^{i} s*^{i}", alg.range_proj(i)))
        out.append((f"s*^{i} s^{i}", alg.source_proj(i)))
        out.append((f"h_{i}", alg.h_proj(i)))
        for j in range(bound + 1 - i):
            out.append((f"q({i},{j})", alg.q_proj(i, j)))
    return out
