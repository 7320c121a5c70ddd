"""Rational power series in one variable and their Hadamard calculus.

A series is stored as a reduced fraction P(x)/Q(x) with Q(0) = 1.  Its
coefficients obey the recurrence read off Q, so identities between series
are decided exactly by cross-multiplying numerators and denominators.
"""

import math
import re
from dataclasses import dataclass, field

from .exact_linalg import ONE, ZERO, Matrix, rat, rat_str


class BoundExceeded(RuntimeError):
    """A search ran past its configured bound without a certified answer."""


# -- polynomials as tuples of rationals, lowest degree first ---------------

def ptrim(p):
    p = [rat(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def pdeg(p):
    return len(p) - 1


def padd(p, q):
    n = max(len(p), len(q))
    return ptrim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def pscale(p, c):
    return ptrim([c * x for x in p])


def psub(p, q):
    return padd(p, pscale(q, -1))


def pmul(p, q):
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return ptrim(out)


def pdivmod(p, q):
    q = ptrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(ptrim(p))
    quo = [ZERO] * max(len(rem) - len(q) + 1, 0)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        c = rem[-1] / lead
        shift = len(rem) - len(q)
        quo[shift] = c
        for i, y in enumerate(q):
            rem[shift + i] -= c * y
        rem = list(ptrim(rem))
    return ptrim(quo), ptrim(rem)


def pgcd(p, q):
    p, q = ptrim(p), ptrim(q)
    while q:
        p, q = q, pdivmod(p, q)[1]
    if not p:
        return ()
    return pscale(p, 1 / p[-1])


def pshift(p, k):
    return ptrim([ZERO] * k + list(p))


def ppow(p, k):
    out = (ONE,)
    for _ in range(k):
        out = pmul(out, p)
    return out


def poly_text(p, var="x"):
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        coef = rat_str(mag)
        if mono:
            coef = "" if mag == 1 else (coef if mag.denominator == 1 else f"({coef})")
        body = coef + mono if coef and mono else (coef or mono)
        parts.append(("-" if c < 0 else "+", body))
    text = "".join(f" {sgn} {b}" for sgn, b in parts)
    text = text[3:] if parts[0][0] == "+" else "-" + text[3:]
    return text


# -- series -----------------------------------------------------------------

class RationalSeries:
    __slots__ = ("num", "den", "_coeffs")

    def __init__(self, num, den=(1,)):
        num, den = ptrim(num), ptrim(den)
        if not den or not den[0]:
            raise ValueError("denominator must have nonzero constant term")
        g = pgcd(num, den) if num else (ONE,)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
        if not num:
            den = (ONE,)
        c0 = den[0]
        self.num = pscale(num, 1 / c0)
        self.den = pscale(den, 1 / c0)
        self._coeffs = []

    @property
    def order(self):
        """Order of the minimal recurrence (degree of the reduced denominator)."""
        return pdeg(self.den)

    @property
    def start(self):
        """First index from which the homogeneous recurrence describes a_n."""
        return max(0, len(self.num) - len(self.den) + 1)

    def coeff(self, n):
        c = self._coeffs
        num, den = self.num, self.den
        while len(c) <= n:
            k = len(c)
            v = num[k] if k < len(num) else ZERO
            for j in range(1, min(k, len(den) - 1) + 1):
                v -= den[j] * c[k - j]
            c.append(v)
        return c[n]

    def coeffs(self, n):
        if n:
            self.coeff(n - 1)
        return list(self._coeffs[:n])

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            other = series(other)
        return pmul(self.num, other.den) == pmul(other.num, self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = series(other)
        return RationalSeries(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                              pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(pscale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-series(other))

    def __rsub__(self, other):
        return series(other) - self

    def __mul__(self, other):
        other = series(other)
        return RationalSeries(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = series(other)
        if not other.num or not other.num[0]:
            raise ZeroDivisionError("divisor is not invertible as a power series")
        return RationalSeries(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return series(other) / self

    def __pow__(self, k):
        out = series(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self):
        return not self.num

    def __repr__(self):
        return f"RationalSeries({self.text()})"

    def text(self):
        if self.den == (ONE,):
            return poly_text(self.num)
        return f"({poly_text(self.num)})/({poly_text(self.den)})"


def series(x):
    if isinstance(x, RationalSeries):
        return x
    if isinstance(x, str):
        return parse_series(x)
    if isinstance(x, (tuple, list)):
        return RationalSeries(x)
    return RationalSeries((rat(x),))


X = RationalSeries((0, 1))
HADAMARD_ONE = RationalSeries((1,), (1, -1))


def polynomial(coeffs):
    return RationalSeries(coeffs)


def geometric(c):
    """1/(1 - c x), with coefficients c^n."""
    return RationalSeries((1,), (1, -rat(c)))


def _companion(den):
    """Companion matrix of the homogeneous recurrence attached to den."""
    d = pdeg(den)
    data = {}
    for j in range(1, d + 1):
        if den[j]:
            data.setdefault(0, {})[j - 1] = -den[j]
    for i in range(1, d):
        data.setdefault(i, {})[i - 1] = ONE
    return Matrix(d, d, data)


def _reverse_charpoly(m):
    """Coefficients of det(I - x m) by the Faddeev-LeVerrier recursion."""
    d = m.rows
    coeffs = [ONE]
    ident = Matrix.identity(d)
    mk = Matrix.zeros(d)
    c = ONE
    for k in range(1, d + 1):
        mk = m * mk + ident.scale(c)
        prod = m * mk
        c = -sum((prod.get(i, i) for i in range(d)), ZERO) / k
        coeffs.append(c)
    return ptrim(coeffs)


def _kron(a, b):
    data = {}
    for (i, j), v in a.entries():
        for (k, l), w in b.entries():
            data.setdefault(i * b.rows + k, {})[j * b.cols + l] = v * w
    return Matrix(a.rows * b.rows, a.cols * b.cols, data)


def hadamard(a, b):
    """Coefficientwise product, built from the tensor product of recurrences."""
    a, b = series(a), series(b)
    if a.is_zero() or b.is_zero():
        return RationalSeries(())
    den = _reverse_charpoly(_kron(_companion(a.den), _companion(b.den)))
    cut = max(a.start, b.start) + pdeg(den)
    prod = [a.coeff(n) * b.coeff(n) for n in range(cut)]
    num = pmul(prod, den)[:cut]
    return RationalSeries(num, den)


def conj(a):
    """Coefficient conjugation; the identity over the rationals."""
    return a


# -- zero sets --------------------------------------------------------------

@dataclass(frozen=True)
class QuasiPeriodicSet:
    """F together with {n >= start : n mod N in residues}."""

    finite: frozenset = frozenset()
    period: int = 1
    residues: frozenset = frozenset()
    start: int = 0
    certificate: dict = field(default_factory=dict, compare=False, hash=False)

    def __contains__(self, n):
        if n in self.finite:
            return True
        return n >= self.start and n % self.period in self.residues

    def is_empty(self):
        return not self.finite and not self.residues

    def members(self, limit):
        return [n for n in range(limit) if n in self]

    def indicator(self):
        """The 0/1 rational series supported on this set."""
        out = RationalSeries(tuple(ONE if n in self.finite else ZERO
                                   for n in range(max(self.finite, default=-1) + 1)))
        N = self.period
        for r in sorted(self.residues):
            first = self.start + (r - self.start) % N
            out = out + RationalSeries(pshift((ONE,), first), padd((ONE,), pshift((-ONE,), N)))
        return out


_SMALL_PRIMES = [p for p in range(3, 400) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def _mod_p_orbit(a, p, limit):
    """Residues of a_n mod p as (prefix length, period, values), or None."""
    num, den = a.num, a.den
    d = pdeg(den)
    for c in num + den:
        if c.denominator % p == 0:
            return None
    if d == 0 or den[-1].numerator % p == 0:
        return None

    def red(c):
        return int(c.numerator) * pow(int(c.denominator), -1, p) % p

    nm = [red(c) for c in num]
    dn = [red(c) for c in den]
    m0 = max(len(num), d)
    vals = []
    for k in range(m0 + d):
        v = nm[k] if k < len(nm) else 0
        for j in range(1, min(k, d) + 1):
            v -= dn[j] * vals[k - j]
        vals.append(v % p)
    first = tuple(vals[m0 - d:m0])
    k = m0
    while True:
        v = 0
        for j in range(1, d + 1):
            v -= dn[j] * vals[k - j]
        vals.append(v % p)
        k += 1
        if tuple(vals[k - d:k]) == first:
            return m0 - d, k - m0, vals
        if k - m0 > limit:
            return None


def _certify_nonzero(a, N, r, from_pos, limit=20000):
    """Try to prove a_n != 0 for all n >= from_pos with n = r mod N."""
    if a.order == 0:
        return None
    for p in _SMALL_PRIMES:
        orbit = _mod_p_orbit(a, p, limit)
        if orbit is None:
            continue
        base, period, vals = orbit
        lo = max(from_pos, base)
        span = period * N // math.gcd(period, N)
        ok = True
        for n in range(lo, lo + span):
            if n % N != r:
                continue
            idx = base + (n - base) % period
            if vals[idx] == 0:
                ok = False
                break
        if ok:
            return p
    return None


def zero_set(a, period_bound=64, scan_window=256):
    """Certified zero set of the coefficient sequence of a.

    For each candidate period N the upper half of the scanned window must
    split the residue classes cleanly into all-zero and all-nonzero ones.
    An all-zero class is then proved zero forever: its subsequence obeys a
    recurrence of order at most d, and the window holds more than d
    consecutive zeros of it past the start of the recurrence.  Nonzero
    classes carry a witness, and a mod-p certificate when one is found.
    """
    a = series(a)
    if period_bound < 1 or scan_window < 1:
        raise ValueError("bounds must be positive")
    if a.is_zero():
        cert = {"kind": "zero series"}
        return QuasiPeriodicSet(frozenset(), 1, frozenset({0}), 0, cert)
    d, s0 = a.order, a.start
    for N in range(1, period_bound + 1):
        window = max(scan_window, 2 * (s0 + N * (d + 2)))
        half = window // 2
        vals = a.coeffs(window)
        zero_classes, nonzero = {}, {}
        mixed = False
        for r in range(N):
            upper = [n for n in range(half, window) if n % N == r]
            if all(not vals[n] for n in upper):
                z = upper[0]
                while z - N >= 0 and not vals[z - N]:
                    z -= N
                zero_classes[r] = z
            elif any(not vals[n] for n in upper):
                mixed = True
                break
            else:
                nonzero[r] = next(n for n in upper if vals[n])
        if mixed:
            continue
        start = max(zero_classes.values(), default=0)
        finite = frozenset(n for n in range(window) if not vals[n]
                           and not (n >= start and n % N in zero_classes))
        cert = {
            "period": N,
            "recurrence_order": d,
            "recurrence_start": s0,
            "window": window,
            "zero_classes": {r: {"vanishes_from": z,
                                 "consecutive_zeros_checked": len([n for n in range(max(z, s0), window) if n % N == r])}
                             for r, z in sorted(zero_classes.items())},
            "nonzero_classes": {r: {"witness": w,
                                    "mod_p_certificate": _certify_nonzero(a, N, r, half)}
                                for r, w in sorted(nonzero.items())},
            "finite_zeros_below": half,
        }
        for r, info in cert["zero_classes"].items():
            if info["consecutive_zeros_checked"] < max(d, 1):
                raise BoundExceeded(f"residue class {r} mod {N} lacks enough zeros to certify")
        if not zero_classes:
            start = 0
        return QuasiPeriodicSet(finite, N, frozenset(zero_classes), start, cert)
    raise BoundExceeded(f"no certified period up to {period_bound}")


def nonzero_fully_certified(zs):
    return all(info["mod_p_certificate"] is not None
               for info in zs.certificate.get("nonzero_classes", {}).values())


def support_idempotent(a, period_bound=64, scan_window=256):
    """0/1 series supported exactly on the zero set of a."""
    return zero_set(a, period_bound, scan_window).indicator()


# -- the quotient ring of the Hadamard algebra -----------------------------

class QFraction:
    """Formal Hadamard fraction num / den with den free of zero coefficients."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=HADAMARD_ONE, check=True, period_bound=64):
        self.num = series(num)
        self.den = series(den)
        if check:
            zs = zero_set(self.den, period_bound)
            if not zs.is_empty():
                raise ValueError("denominator has zero coefficients")

    def coeff(self, n):
        return self.num.coeff(n) / self.den.coeff(n)

    def __repr__(self):
        return f"QFraction({self.num.text()} ./ {self.den.text()})"


def q_equal(p, q):
    return hadamard(p.num, q.den) == hadamard(q.num, p.den)


def q_mul(p, q):
    return QFraction(hadamard(p.num, q.num), hadamard(p.den, q.den), check=False)


def q_add(p, q):
    return QFraction(hadamard(p.num, q.den) + hadamard(q.num, p.den),
                     hadamard(p.den, q.den), check=False)


def q_quasi_inverse(p, period_bound=64):
    e = support_idempotent(p.num, period_bound)
    return QFraction(hadamard(HADAMARD_ONE - e, p.den), p.num + e, check=False)


# -- literal syntax -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


class SeriesSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.msg = msg
        self.pos = pos


def parse_series(text, offset=0):
    """Parse a rational function of x such as "1/(1-x^2)" or "(1+x)/(1-2x)"."""
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise SeriesSyntaxError(f"unexpected {text[pos]!r}", offset + pos)
        kind = "int" if m.group(1) else "x" if m.group(2) else m.group(3)
        toks.append((kind, m.group(1), offset + m.start(m.lastindex)))
        pos = m.end()
    toks.append(("end", None, offset + len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take(kind=None):
        nonlocal i
        tok = toks[i]
        if kind and tok[0] != kind:
            raise SeriesSyntaxError(f"expected {kind!r}", tok[2])
        i += 1
        return tok

    def expr():
        out = term()
        while peek() in "+-":
            op = take()[0]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term():
        out = unary()
        while peek() in ("*", "/", "(", "x", "int"):
            if peek() == "/":
                take()
                out = out / unary()
            else:
                if peek() == "*":
                    take()
                out = out * unary()
        return out

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() in ("^", "**"):
            take()
            exp = int(take("int")[1])
            base = base ** exp
        return base

    def atom():
        kind, val, where = toks[i]
        if kind == "int":
            take()
            return series(int(val))
        if kind == "x":
            take()
            return X
        if kind == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise SeriesSyntaxError(f"unexpected {kind!r}", where)

    try:
        result = expr()
    except ZeroDivisionError as exc:
        raise SeriesSyntaxError(str(exc), offset) from exc
    if peek() != "end":
        raise SeriesSyntaxError(f"unexpected {peek()!r}", toks[i][2])
    return result
