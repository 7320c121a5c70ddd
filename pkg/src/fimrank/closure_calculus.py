"""Expressions in s, s*, inverses and central series elements, evaluated at
a truncation, plus the identity checks built on them."""

from dataclasses import dataclass

from . import rational_series as rs
from .exact_linalg import ONE, rat, rat_str, span_solve
from . import semigroup_algebra as alg
from .representation import (TruncatedRep, adjoint_inverse, localize_inverse,
                             poly_rep, rank_sequence, row_growth, shift_rep, vn_rank)


class Expr:
    def __add__(self, other):
        return Add(self, lift(other))

    def __radd__(self, other):
        return Add(lift(other), self)

    def __sub__(self, other):
        return Sub(self, lift(other))

    def __rsub__(self, other):
        return Sub(lift(other), self)

    def __mul__(self, other):
        return Mul(self, lift(other))

    def __rmul__(self, other):
        return Mul(lift(other), self)

    def __neg__(self):
        return Neg(self)


@dataclass(frozen=True, eq=True)
class Sym(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: object


@dataclass(frozen=True, eq=True)
class Psi(Expr):
    """Central element with the coefficients of a series (or Hadamard fraction)."""
    text: str
    value: object = None

    def __post_init__(self):
        if self.value is None:
            object.__setattr__(self, "value", rs.parse_series(self.text))

    def __eq__(self, other):
        return isinstance(other, Psi) and self.text == other.text

    def __hash__(self):
        return hash(("psi", self.text))


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Adj(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Inv(Expr):
    arg: Expr


def lift(x):
    return x if isinstance(x, Expr) else Const(rat(x))


S = Sym()
S_STAR = Adj(S)


def psi(text_or_series):
    if isinstance(text_or_series, str):
        return Psi(text_or_series)
    if isinstance(text_or_series, rs.QFraction):
        return Psi(repr(text_or_series), text_or_series)
    return Psi(text_or_series.text(), text_or_series)


def psi_rep(value, T):
    return TruncatedRep.central([value.coeff(n) for n in range(T + 1)])


def evaluate(e, T, _memo=None):
    memo = {} if _memo is None else _memo
    key = e
    if key in memo:
        return memo[key]
    if isinstance(e, Sym):
        out = shift_rep(T)
    elif isinstance(e, Const):
        out = TruncatedRep.identity(T).scale(e.value)
    elif isinstance(e, Psi):
        out = psi_rep(e.value, T)
    elif isinstance(e, Add):
        out = evaluate(e.left, T, memo) + evaluate(e.right, T, memo)
    elif isinstance(e, Sub):
        out = evaluate(e.left, T, memo) - evaluate(e.right, T, memo)
    elif isinstance(e, Mul):
        out = evaluate(e.left, T, memo) * evaluate(e.right, T, memo)
    elif isinstance(e, Neg):
        out = -evaluate(e.arg, T, memo)
    elif isinstance(e, Adj):
        out = evaluate(e.arg, T, memo).adj()
    elif isinstance(e, Inv):
        out = evaluate(e.arg, T, memo).inv()
    else:
        raise TypeError(f"not an expression: {e!r}")
    memo[key] = out
    return out


def to_algebra(e):
    """The algebra element of an expression free of inv and psi, else None."""
    if isinstance(e, Sym):
        return alg.s
    if isinstance(e, Const):
        return alg.AlgebraElem.scalar(e.value)
    if isinstance(e, (Psi, Inv)):
        return None
    if isinstance(e, (Neg, Adj)):
        inner = to_algebra(e.arg)
        if inner is None:
            return None
        return -inner if isinstance(e, Neg) else inner.star()
    left, right = to_algebra(e.left), to_algebra(e.right)
    if left is None or right is None:
        return None
    if isinstance(e, Add):
        return left + right
    if isinstance(e, Sub):
        return left - right
    return left * right


def expression_rank(e, T, max_period=8):
    """vn_rank of an expression; algebra elements get the row-growth tail."""
    a = to_algebra(e)
    return vn_rank(evaluate(e, T), max_period, None if a is None else row_growth(a))


def series_at_s(a, T, adjoint=False):
    """Image of A(s) = P(s) Q(s)^-1 for a rational series A = P/Q (or its adjoint)."""
    a = rs.series(a)
    val = poly_rep(a.num, T) * localize_inverse(a.den, T)
    return val.adj() if adjoint else val


def _check(name, ok, **details):
    return {"check": name, "ok": bool(ok), **details}


def _projections(T):
    s = shift_rep(T)
    one = TruncatedRep.identity(T)
    return s, s.adj(), one - s * s.adj(), one - s.adj() * s


def verify_equivalence_identities(T=64):
    if T < 2:
        raise ValueError("T must be at least 2")
    s, sa, p, q = _projections(T)
    lower = localize_inverse((1, -1), T)
    upper = adjoint_inverse((1, -1), T)
    first = p * upper * q * lower * p
    second = q * lower * p * upper * q
    u = s + p * upper * q
    v = sa + q * lower * p
    one = TruncatedRep.identity(T)
    checks = [
        _check("range idempotent identity", first == p, T=T),
        _check("source idempotent identity", second == q, T=T),
        _check("u v = 1", u * v == one, T=T),
        _check("v u = 1", v * u == one, T=T),
    ]
    return {"T": T, "checks": checks, "ok": all(c["ok"] for c in checks)}


def verify_hadamard_identity(A, B, T=32):
    """Corner identities turning a product of series in s and s* into psi(A . B)."""
    A, B = rs.series(A), rs.series(B)
    _, _, p, q = _projections(T)
    had = rs.hadamard(rs.conj(A), B)
    central = psi_rep(had, T)
    lhs = p * series_at_s(A, T, adjoint=True) * q * series_at_s(B, T) * p
    mirror_had = rs.hadamard(A, rs.conj(B))
    mirror = q * series_at_s(A, T) * p * series_at_s(B, T, adjoint=True) * q
    checks = [
        _check("corner identity", lhs == central * p),
        _check("mirror identity", mirror == psi_rep(mirror_had, T) * q),
        _check("hadamard coefficients", all(had.coeff(n) == A.coeff(n) * B.coeff(n) for n in range(T + 1))),
    ]
    return {"A": A.text(), "B": B.text(), "T": T, "hadamard": had.text(),
            "checks": checks, "ok": all(c["ok"] for c in checks)}


# -- normal-form term closure ------------------------------------------------

def _poly_key(f):
    return tuple(rat_str(c) for c in rs.ptrim(f))


def term_rep(term, T, cache=None):
    """Image of a tagged term.

    ("A", f, i, j):    f(s)^-1 s^i (1-ss*) (s*)^j
    ("B", i, j, f):    (s*)^i (1-s*s) s^j f(s)^-1
    ("C", i, j, f, k): (s*)^i (1-s*s) s^j f(s)^-1 (1-ss*) (s*)^k
    ("D", rep):        a truncated element assumed finitely supported
    """
    cache = {} if cache is None else cache
    s, sa, p, q = cache.get("proj") or cache.setdefault("proj", _projections(T))

    def finv(f):
        key = ("inv", _poly_key(f))
        if key not in cache:
            cache[key] = localize_inverse(f, T)
        return cache[key]

    kind = term[0]
    if kind == "A":
        _, f, i, j = term
        return finv(f) * s ** i * p * sa ** j
    if kind == "B":
        _, i, j, f = term
        return sa ** i * q * s ** j * finv(f)
    if kind == "C":
        _, i, j, f, k = term
        return sa ** i * q * s ** j * finv(f) * p * sa ** k
    if kind == "D":
        return term[1]
    raise ValueError(f"unknown term form {kind!r}")


def _multiplier_rep(b, T, cache):
    s, sa, _, _ = cache["proj"]
    if b == "s":
        return s
    if b == "s*":
        return sa
    if isinstance(b, tuple) and b[0] == "inv":
        return localize_inverse(b[1], T)
    raise ValueError(f"unknown multiplier {b!r}")


def _dictionary(term, b, bound):
    polys = {(1,)}
    for piece in (term, b):
        for x in piece[1:] if isinstance(piece, tuple) else ():
            if isinstance(x, tuple):
                polys.add(tuple(rs.ptrim(x)))
    base = list(polys)
    for f in base:
        for g in base:
            polys.add(tuple(rs.pmul(f, g)))
    polys = sorted(polys, key=lambda f: (len(f), [str(c) for c in f]))
    kind = term[0]
    out = []
    if kind == "A":
        i = term[2]
        out += [("A", f, i, j) for f in polys for j in range(bound + 1)]
    elif kind in "BC":
        i = term[1]
        out += [("B", i, j, f) for f in polys for j in range(bound + 1)]
        out += [("C", i, j, f, k) for f in polys for j in range(bound + 1) for k in range(bound + 1)]
    return out


def _as_vector(rep, lo):
    vec = {}
    for n in range(lo, rep.T + 1):
        for (r, c), v in rep.comps[n].entries():
            vec[(n, r, c)] = v
    return vec


def _term_text(term):
    if term[0] == "D":
        return "socle element"
    parts = [term[0]]
    for x in term[1:]:
        parts.append("(" + ",".join(rat_str(c) for c in x) + ")" if isinstance(x, tuple) else str(x))
    return " ".join(parts)


def term_form_closure_probe(samples, T=24, cut=None, bound=None):
    """Right-multiply each sample by s, s* and g(s)^-1 and re-express mod socle.

    samples: list of (term, multipliers).  Equality is required only on
    components cut..T; lower components are absorbed by the socle part.
    """
    cut = T // 2 if cut is None else cut
    results = []
    cache = {}
    for term, mults in samples:
        base = term_rep(term, T, cache)
        exps = [x for x in term[1:] if isinstance(x, int)]
        bnd = bound if bound is not None else min(2 * max(exps, default=0) + 2, 10)
        for b in mults:
            target = base * _multiplier_rep(b, T, cache)
            dictionary = _dictionary(term, b, bnd) if term[0] != "D" else []
            vectors = [_as_vector(term_rep(d, T, cache), cut) for d in dictionary]
            coeffs, residual = span_solve(vectors, _as_vector(target, cut))
            entry = {"term": _term_text(term), "times": b if isinstance(b, str) else "inv" + _poly_key(b[1]).__repr__(),
                     "representable": coeffs is not None}
            if coeffs is not None:
                entry["combination"] = {_term_text(dictionary[k]): rat_str(v) for k, v in sorted(coeffs.items())}
            else:
                entry["residual_entries"] = len(residual)
            results.append(entry)
    return {"T": T, "cut": cut, "results": results, "ok": all(r["representable"] for r in results)}


def mixed_product_support(a_term, b_term, T):
    """Components of (form A) x (form B) vanish beyond j + i' (first index returned)."""
    cache = {}
    prod = term_rep(a_term, T, cache) * term_rep(b_term, T, cache)
    return prod.vanish_from()


# -- the worked decomposition of s + s* ---------------------------------------

def example_suite_s_plus_sstar(T=32):
    if T < 8:
        raise ValueError("T must be at least 8")
    s, sa, p, q = _projections(T)
    one = TruncatedRep.identity(T)
    g1 = psi_rep(rs.parse_series("1/(1-x^2)"), T)
    g2 = one - g1
    plus = poly_rep((1, 0, 1), T)
    alpha = g1 * q * s ** 2 * localize_inverse((1, 0, 1), T)
    beta = sa * s * adjoint_inverse((1, 0, 1), T) * sa * q * s * g2
    total = s + sa
    left = (one + alpha) * sa * plus
    right = g2 * q * s
    r_total, r_left, r_right = rank_sequence(total), rank_sequence(left), rank_sequence(right)
    rk = {
        "s*s": vn_rank(sa * s),
        "g2(1-s*s)ss*": vn_rank(g2 * q * s * sa),
        "s+s*": vn_rank(total),
    }
    want = {"s*s": rat("1/2"), "g2(1-s*s)ss*": rat("1/6"), "s+s*": rat("2/3")}
    checks = [
        _check("alpha squared vanishes", (alpha * alpha).is_zero()),
        _check("alpha s*(1+s^2) = g1(1-s*s)s", alpha * sa * plus == g1 * q * s),
        _check("(s+s*) beta = g2(1-s*s)s", total * beta == right),
        _check("rank additivity", all(a == b + c for a, b, c in zip(r_total, r_left, r_right)),
               ranks=[r_total, r_left, r_right]),
    ]
    for name, res in rk.items():
        checks.append(_check(f"rank of {name}", res.exact == want[name],
                             exact=rat_str(res.exact) if res.exact is not None else None))
    return {"T": T, "checks": checks, "ok": all(c["ok"] for c in checks)}


def psi_idempotent_ranks(samples, T=32):
    """Weighted ranks of psi(e) and psi(e)(1-ss*) for 0/1 periodic series e.

    The expected values are summed directly from the support, independently
    of pattern detection.
    """
    _, _, p, _ = _projections(T)
    out = []
    for text in samples:
        e = rs.parse_series(text)
        cen = psi_rep(e, T)
        zs = rs.zero_set(e - rs.HADAMARD_ONE)  # support of e as the zeros of e - 1
        ok_idem = cen * cen == cen
        r_central = vn_rank(cen)
        r_corner = vn_rank(cen * p)
        # closed forms over the support set: sum (n+1) 2^-(n+2) and sum 2^-(n+2)
        want_central, want_corner = _support_sums(zs)
        out.append({"series": text, "idempotent": ok_idem,
                    "central": rat_str(r_central.exact) if r_central.exact is not None else None,
                    "corner": rat_str(r_corner.exact) if r_corner.exact is not None else None,
                    "ok": ok_idem and r_central.exact == want_central and r_corner.exact == want_corner})
    return {"T": T, "results": out, "ok": all(r["ok"] for r in out)}


def _support_sums(zs):
    central = corner = rat(0)
    for n in zs.finite:
        central += rat(n + 1) / (1 << (n + 2))
        corner += ONE / (1 << (n + 2))
    N = zs.period
    q = ONE / (1 << N)
    for r in zs.residues:
        first = zs.start + (r - zs.start) % N
        w = ONE / (1 << (first + 2))
        corner += w / (1 - q)
        central += w * ((first + 1) / (1 - q) + N * q / (1 - q) ** 2)
    return central, corner
